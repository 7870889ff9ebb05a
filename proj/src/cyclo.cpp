#include "hmx/cyclo.hpp"

#include <mutex>
#include <numeric>
#include <unordered_map>

namespace hmx {

namespace {

long mod_pos(long e, long n) {
    long r = e % n;
    return r < 0 ? r + n : r;
}

// Exact division of integer polynomials (little-endian), divisor monic-ish.
std::vector<Int> poly_div_exact(const std::vector<Int>& num, const std::vector<Int>& den) {
    std::vector<Int> rem = num;
    std::vector<Int> quo(num.size() - den.size() + 1, Int(0));
    for (long i = static_cast<long>(num.size()) - 1; i >= static_cast<long>(den.size()) - 1; --i) {
        if (rem[i] == 0) continue;
        Int c = rem[i] / den.back();
        long shift = i - static_cast<long>(den.size()) + 1;
        quo[shift] = c;
        for (size_t j = 0; j < den.size(); ++j) rem[shift + j] -= c * den[j];
    }
    for (const Int& r : rem)
        if (r != 0) throw DomainError("cyclotomic division not exact");
    return quo;
}

} // namespace

long euler_phi(long n) {
    long result = n, m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

const std::vector<Int>& cyclotomic_poly(long n) {
    static std::map<long, std::vector<Int>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::function<std::vector<Int>(long)> build = [&](long m) -> std::vector<Int> {
        auto found = cache.find(m);
        if (found != cache.end()) return found->second;
        std::vector<Int> poly(m + 1, Int(0));
        poly[0] = -1;
        poly[m] = 1; // x^m - 1
        for (long dd = 1; dd < m; ++dd) {
            if (m % dd == 0) poly = poly_div_exact(poly, build(dd));
        }
        cache[m] = poly;
        return poly;
    };
    build(n);
    return cache[n];
}

Cyclo Cyclo::of_rat(const Rat& r) {
    Cyclo c;
    if (r != 0) c.terms_[0] = r;
    return c;
}

Cyclo Cyclo::root_of_unity(const Rat& r) {
    Rat f = r - Rat(rat_floor(r)); // in [0,1)
    Cyclo c;
    c.order_ = static_cast<long>(f.get_den().get_si());
    c.terms_[static_cast<long>(f.get_num().get_si())] = 1;
    return c;
}

void Cyclo::add_term(long e, const Rat& c) {
    if (c == 0) return;
    e = mod_pos(e, order_);
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_[e] = c;
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Cyclo Cyclo::lifted(long n) const {
    Cyclo r;
    r.order_ = n;
    long f = n / order_;
    for (const auto& [e, c] : terms_) r.terms_[e * f] = c;
    return r;
}

void Cyclo::canonicalize() {
    if (terms_.empty()) {
        order_ = 1;
        return;
    }
    long g = order_;
    for (const auto& [e, c] : terms_) g = std::gcd(g, e);
    if (g > 1) {
        std::map<long, Rat> t;
        for (auto& [e, c] : terms_) t[e / g] = c;
        terms_ = std::move(t);
        order_ /= g;
    }
}

Cyclo operator+(const Cyclo& x, const Cyclo& y) {
    long n = std::lcm(x.order_, y.order_);
    Cyclo r = x.lifted(n);
    long f = n / y.order_;
    for (const auto& [e, c] : y.terms_) r.add_term(e * f, c);
    r.canonicalize();
    return r;
}

Cyclo Cyclo::operator-() const {
    Cyclo r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Cyclo operator-(const Cyclo& x, const Cyclo& y) { return x + (-y); }

Cyclo operator*(const Cyclo& x, const Cyclo& y) {
    long n = std::lcm(x.order_, y.order_);
    Cyclo a = x.lifted(n), b = y.lifted(n);
    Cyclo r;
    r.order_ = n;
    for (const auto& [e1, c1] : a.terms_)
        for (const auto& [e2, c2] : b.terms_) r.add_term(e1 + e2, c1 * c2);
    r.canonicalize();
    return r;
}

Cyclo operator*(const Cyclo& x, const Rat& r) {
    Cyclo out;
    if (r == 0) return out;
    out.order_ = x.order_;
    for (const auto& [e, c] : x.terms_) out.terms_[e] = c * r;
    return out;
}

std::vector<Rat> Cyclo::coords() const { return coords_at(order_); }

std::vector<Rat> Cyclo::coords_at(long n) const {
    if (n % order_ != 0) throw DomainError("coords_at: order does not divide the target");
    long deg = euler_phi(n);
    long f = n / order_;
    std::vector<Rat> dense(n, Rat(0));
    for (const auto& [e, c] : terms_) dense[e * f] += c;
    const std::vector<Int>& phi = cyclotomic_poly(n);
    // Reduce modulo phi (monic of degree deg).
    for (long i = n - 1; i >= deg; --i) {
        if (dense[i] == 0) continue;
        Rat c = dense[i];
        dense[i] = 0;
        for (long j = 0; j < deg; ++j) dense[i - deg + j] -= c * Rat(phi[j]);
    }
    dense.resize(deg);
    return dense;
}

std::pair<long, std::vector<Rat>> Cyclo::canonical_order_coords() const {
    Cyclo c = *this;
    c.canonicalize();
    long n = c.order_;
    std::vector<Rat> target = c.coords_at(n);
    long degn = euler_phi(n);
    for (long m = 1; m <= n; ++m) {
        if (n % m != 0) continue;
        long degm = euler_phi(m);
        // Columns: coordinates at order n of zeta_n^((n/m) j), j < phi(m).
        std::vector<std::vector<Rat>> cols;
        for (long j = 0; j < degm; ++j) {
            Cyclo zj = Cyclo::root_of_unity(make_rat(j, m));
            cols.push_back(zj.coords_at(n));
        }
        // Solve sum_j x_j cols[j] = target exactly.
        std::vector<std::vector<Rat>> aug(static_cast<size_t>(degn),
                                          std::vector<Rat>(static_cast<size_t>(degm) + 1, Rat(0)));
        for (long r = 0; r < degn; ++r) {
            for (long j = 0; j < degm; ++j) aug[r][j] = cols[j][r];
            aug[r][degm] = target[r];
        }
        std::vector<Rat> sol(static_cast<size_t>(degm), Rat(0));
        long rank = 0;
        std::vector<long> pivot_col;
        for (long col = 0; col < degm && rank < degn; ++col) {
            long piv = -1;
            for (long r = rank; r < degn; ++r)
                if (aug[r][col] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) continue;
            std::swap(aug[piv], aug[rank]);
            for (long r = 0; r < degn; ++r) {
                if (r == rank || aug[r][col] == 0) continue;
                Rat fct = aug[r][col] / aug[rank][col];
                for (long cc = col; cc <= degm; ++cc) aug[r][cc] -= fct * aug[rank][cc];
            }
            pivot_col.push_back(col);
            ++rank;
        }
        bool consistent = true;
        for (long r = rank; r < degn; ++r)
            if (aug[r][degm] != 0) consistent = false;
        if (!consistent) continue;
        for (long r = 0; r < rank; ++r)
            sol[static_cast<size_t>(pivot_col[r])] = aug[r][degm] / aug[r][pivot_col[r]];
        return {m, sol};
    }
    return {n, target}; // unreachable: m = n always solves
}

Cyclo Cyclo::from_coords(long order, const std::vector<Rat>& coords) {
    Cyclo c;
    c.order_ = order;
    for (size_t i = 0; i < coords.size(); ++i) c.add_term(static_cast<long>(i), coords[i]);
    c.canonicalize();
    return c;
}

bool Cyclo::is_zero() const {
    if (terms_.empty()) return true;
    for (const Rat& c : coords())
        if (c != 0) return false;
    return true;
}

bool Cyclo::is_rational() const {
    std::vector<Rat> c = coords();
    for (size_t i = 1; i < c.size(); ++i)
        if (c[i] != 0) return false;
    return true;
}

Rat Cyclo::to_rational() const {
    std::vector<Rat> c = coords();
    for (size_t i = 1; i < c.size(); ++i)
        if (c[i] != 0) throw DomainError("cyclotomic value is not rational");
    return c.empty() ? Rat(0) : c[0];
}

Complex Cyclo::to_complex(mpfr_prec_t prec) const {
    Complex acc(prec);
    for (const auto& [e, c] : terms_) {
        Complex w = e_rat(make_rat(Int(e), Int(order_)), prec);
        acc = acc + Complex{w.re * Real::of_rat(c, prec), w.im * Real::of_rat(c, prec)};
    }
    return acc;
}

} // namespace hmx
