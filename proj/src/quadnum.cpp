#include "hmx/quadnum.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <unordered_set>

namespace hmx {

namespace {

bool is_square_free(long d) {
    if (d <= 1) return false;
    for (long p = 2; p * p <= d; ++p) {
        if (d % (p * p) == 0) return false;
    }
    return true;
}

void check_field(long d) {
    static thread_local std::unordered_set<long> ok;
    if (ok.count(d)) return;
    if (!is_square_free(d)) throw InputError("field discriminator must be square-free and > 1");
    ok.insert(d);
}

} // namespace

QuadNum::QuadNum(Rat a_, Rat b_, long d_) : a(std::move(a_)), b(std::move(b_)), d(d_) {
    check_field(d);
    a.canonicalize();
    b.canonicalize();
}

long common_field(const QuadNum& x, const QuadNum& y) {
    if (x.d == y.d) return x.d;
    if (x.is_rational()) return y.d;
    if (y.is_rational()) return x.d;
    throw InputError("mixing values from different quadratic fields");
}

QuadNum operator+(const QuadNum& x, const QuadNum& y) {
    return QuadNum(x.a + y.a, x.b + y.b, common_field(x, y));
}

QuadNum operator-(const QuadNum& x, const QuadNum& y) {
    return QuadNum(x.a - y.a, x.b - y.b, common_field(x, y));
}

QuadNum operator*(const QuadNum& x, const QuadNum& y) {
    long d = common_field(x, y);
    return QuadNum(x.a * y.a + x.b * y.b * d, x.a * y.b + x.b * y.a, d);
}

QuadNum operator-(const QuadNum& x) { return QuadNum(-x.a, -x.b, x.d); }

QuadNum conj(const QuadNum& x) { return QuadNum(x.a, -x.b, x.d); }

Rat trace(const QuadNum& x) { return 2 * x.a; }

Rat norm(const QuadNum& x) { return x.a * x.a - x.b * x.b * x.d; }

QuadNum inv(const QuadNum& x) {
    if (x.is_zero()) throw DomainError("division by zero");
    Rat n = norm(x);
    return QuadNum(x.a / n, -x.b / n, x.d);
}

QuadNum operator/(const QuadNum& x, const QuadNum& y) { return x * inv(y); }

bool operator==(const QuadNum& x, const QuadNum& y) {
    if (x.a != y.a || x.b != y.b) return false;
    return x.b == 0 || x.d == y.d;
}

QuadNum operator*(const QuadNum& x, const Rat& r) { return QuadNum(x.a * r, x.b * r, x.d); }
QuadNum operator*(const Rat& r, const QuadNum& x) { return x * r; }

int sgn(const QuadNum& x) {
    int sa = sgn(x.a);
    int sb = sgn(x.b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 with b^2 d. They cannot be equal since d is
    // not a rational square.
    int c = cmp(x.a * x.a, x.b * x.b * x.d);
    return sa > 0 ? c : -c;
}

Int qfloor(const QuadNum& x) {
    // Common denominator: x = (P1 + P2*sqrt(d)) / Q with Q > 0.
    Int Q = lcm(x.a.get_den(), x.b.get_den());
    Int P1 = x.a.get_num() * (Q / x.a.get_den());
    Int P2 = x.b.get_num() * (Q / x.b.get_den());
    if (P2 == 0) return floor_div(P1, Q);
    Int S = isqrt(P2 * P2 * x.d);
    // sqrt(P2^2 d) is irrational, strictly between S and S+1.
    if (P2 > 0) return floor_div(P1 + S, Q);
    return floor_div(P1 - S - 1, Q);
}

Int floor_scaled(const Int& l, const QuadNum& w) {
    return qfloor(QuadNum(w.a * Rat(l), w.b * Rat(l), w.d));
}

namespace {

// State of the quadratic-surd recurrence: x = (P + sqrt(D)) / Q with Q | D - P^2.
struct SurdState {
    Int P, Q, D;
    bool operator<(const SurdState& o) const {
        if (P != o.P) return P < o.P;
        return Q < o.Q;
    }
};

Int surd_floor(const SurdState& s) {
    Int S = isqrt(s.D);
    if (s.Q > 0) return floor_div(s.P + S, s.Q);
    return floor_div(s.P + S + 1, s.Q);
}

// Bring x (irrational) to normalized surd form.
SurdState surd_of(const QuadNum& x) {
    Int Q = lcm(x.a.get_den(), x.b.get_den());
    Int P = x.a.get_num() * (Q / x.a.get_den());
    Int B = x.b.get_num() * (Q / x.b.get_den());
    Int D = B * B * x.d;
    if (B < 0) {
        P = -P;
        Q = -Q;
    }
    // Enforce Q | D - P^2.
    if ((D - P * P) % Q != 0) {
        Int q = abs(Q);
        P *= q;
        D *= q * q;
        Q *= q;
    }
    return {P, Q, D};
}

} // namespace

CFExpansion cf_expand(const QuadNum& w) {
    if (w.is_rational()) throw DomainError("cf_expand requires an irrational argument");
    if (!(sgn(w) > 0 && sgn(w - QuadNum::rational(Rat(1), w.d)) < 0))
        throw DomainError("cf_expand requires 0 < w < 1");

    // Digits of w = 1/(c1 + 1/(c2 + ...)) are the partial quotients of 1/w.
    SurdState s = surd_of(inv(w));
    std::vector<Int> digits;
    std::map<SurdState, size_t> seen;
    size_t start = 0, len = 0;
    for (size_t k = 0;; ++k) {
        auto it = seen.find(s);
        if (it != seen.end()) {
            start = it->second;
            len = k - start;
            break;
        }
        seen.emplace(s, k);
        Int a = surd_floor(s);
        digits.push_back(a);
        Int Pn = a * s.Q - s.P;
        Int Qn = (s.D - Pn * Pn) / s.Q;
        if (Qn == 0) throw DomainError("cf_expand: rational value slipped through");
        s = SurdState{Pn, Qn, s.D};
        if (k > 100000) throw SizeError("cf_expand: state space too large");
    }

    CFExpansion cf;
    cf.preperiod.assign(digits.begin(), digits.begin() + static_cast<long>(start));
    cf.period.assign(digits.begin() + static_cast<long>(start),
                     digits.begin() + static_cast<long>(start + len));
    if (cf.period.size() % 2 != 0) {
        std::vector<Int> doubled = cf.period;
        doubled.insert(doubled.end(), cf.period.begin(), cf.period.end());
        cf.period = std::move(doubled);
    }
    return cf;
}

bool is_perron(const QuadNum& theta) {
    if (theta.is_rational()) throw DomainError("is_perron requires an irrational argument");
    QuadNum one = QuadNum::rational(Rat(1), theta.d);
    return sgn(theta) > 0 && sgn(theta - one) < 0 && sgn(conj(theta) + one) < 0;
}

Mat2z operator*(const Mat2z& x, const Mat2z& y) {
    Mat2z r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r.m[i][j] = x.m[i][0] * y.m[0][j] + x.m[i][1] * y.m[1][j];
    return r;
}

Mat2z mat_pow(const Mat2z& x, unsigned long k) {
    Mat2z acc = Mat2z::identity();
    Mat2z base = x;
    while (k) {
        if (k & 1UL) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

Mat2z mat_transpose(const Mat2z& x) {
    return Mat2z(x.m[0][0], x.m[1][0], x.m[0][1], x.m[1][1]);
}

Mat2z mat_adjugate(const Mat2z& x) {
    return Mat2z(x.m[1][1], -x.m[0][1], -x.m[1][0], x.m[0][0]);
}

QuadNum moebius(const Mat2z& m, const QuadNum& x) {
    QuadNum num = QuadNum(Rat(m.m[0][0]), Rat(0), x.d) * x + QuadNum::rational(Rat(m.m[0][1]), x.d);
    QuadNum den = QuadNum(Rat(m.m[1][0]), Rat(0), x.d) * x + QuadNum::rational(Rat(m.m[1][1]), x.d);
    return num / den;
}

namespace {

// Value of the purely periodic tail [0; c_1, c_2, ...] with period `period`,
// as the attracting fixed point in (0,1) of the period's Moebius map.
QuadNum periodic_tail_value(const std::vector<Int>& period, long d) {
    Mat2z m = Mat2z::identity();
    for (const Int& c : period) m = m * Mat2z(Int(0), Int(1), Int(1), c);
    // t = (m00 t + m01)/(m10 t + m11):  m10 t^2 + (m11 - m00) t - m01 = 0
    Int A = m.m[1][0], B = m.m[1][1] - m.m[0][0], C = -m.m[0][1];
    Int disc = B * B - 4 * A * C;
    Int msq = disc / d;
    if (msq * d != disc) throw DomainError("periodic tail does not lie in the expected field");
    Int root = isqrt(msq);
    if (root * root != msq) throw DomainError("periodic tail does not lie in the expected field");
    QuadNum t1((-B + Rat(0)) / (2 * Rat(A)), Rat(root) / (2 * Rat(A)), d);
    QuadNum one = QuadNum::rational(Rat(1), d);
    if (sgn(t1) > 0 && sgn(t1 - one) < 0) return t1;
    QuadNum t2(t1.a, -t1.b, d);
    if (sgn(t2) > 0 && sgn(t2 - one) < 0) return t2;
    throw DomainError("no periodic tail root in (0,1)");
}

} // namespace

ReductionResult reduce_w(const QuadNum& w) {
    if (w.is_rational()) throw DomainError("reduce_w requires an irrational argument");
    if (sgn(w) <= 0) throw DomainError("reduce_w requires w > 0");

    Int k = qfloor(w);
    QuadNum w0 = w - QuadNum::rational(Rat(k), w.d);
    CFExpansion cf = cf_expand(w0);

    QuadNum theta = periodic_tail_value(cf.period, w.d);

    Mat2z D(Int(1), k, Int(0), Int(1));
    Mat2z T = Mat2z::identity();
    for (const Int& c : cf.preperiod) {
        D = D * Mat2z(Int(0), Int(1), Int(1), c);
        T = Mat2z(c, Int(1), Int(1), Int(0)) * T;
    }

    if (!is_perron(theta)) throw DomainError("reduction produced a non-Perron theta");
    if (abs(D.det()) != 1 || abs(T.det()) != 1)
        throw DomainError("reduction matrices are not unimodular");
    if (moebius(D, theta) != w) throw DomainError("reduction identity failed");
    return {theta, D, T};
}

QuadNum positive_unit(const QuadNum& theta) {
    if (!is_perron(theta)) throw DomainError("positive_unit requires a Perron theta");
    CFExpansion cf = cf_expand(theta);
    if (!cf.preperiod.empty())
        throw DomainError("Perron theta must have a purely periodic expansion");
    // theta^-1 = [b0; b1, ..., b_{2r-1}, ...]; one even period yields the unit
    // eta = q * theta^-1 + q' from the convergent matrix [[p,p'],[q,q']].
    Mat2z m = Mat2z::identity();
    for (const Int& c : cf.period) m = m * Mat2z(c, Int(1), Int(1), Int(0));
    QuadNum ti = inv(theta);
    QuadNum eta = QuadNum::rational(Rat(m.m[1][0]), theta.d) * ti +
                  QuadNum::rational(Rat(m.m[1][1]), theta.d);
    QuadNum one = QuadNum::rational(Rat(1), theta.d);
    if (!(sgn(eta - one) > 0 && sgn(conj(eta)) > 0 && norm(eta) == 1))
        throw DomainError("period product did not yield a totally positive unit");
    return eta;
}

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw InputError(std::string("expected '") + c + "' in quadratic literal");
    }
    bool eat_word(const char* w) {
        skip_ws();
        size_t n = std::strlen(w);
        if (s.compare(i, n, w) == 0) {
            i += n;
            return true;
        }
        return false;
    }
    Int integer() {
        skip_ws();
        size_t start = i;
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
        size_t digits = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            ++i;
            ++digits;
        }
        if (digits == 0) throw InputError("expected integer in quadratic literal");
        return Int(s.substr(start, i - start));
    }
};

} // namespace

QuadNum quadnum_parse(const std::string& s) {
    Cursor c{s};
    c.expect('(');
    Int p = c.integer();
    c.skip_ws();
    int sign;
    if (c.eat('+'))
        sign = 1;
    else if (c.eat('-'))
        sign = -1;
    else
        throw InputError("expected '+' or '-' in quadratic literal");
    Int q = c.integer();
    c.expect('*');
    if (!c.eat_word("sqrt")) throw InputError("expected sqrt(...) in quadratic literal");
    c.expect('(');
    Int d = c.integer();
    c.expect(')');
    c.expect(')');
    c.expect('/');
    Int r = c.integer();
    c.skip_ws();
    if (c.i != s.size()) throw InputError("trailing characters in quadratic literal");
    if (r <= 0) throw InputError("denominator must be positive in quadratic literal");
    if (!d.fits_slong_p()) throw InputError("field discriminator too large");
    return QuadNum(make_rat(p, r), make_rat(sign * q, r), d.get_si());
}

std::string quadnum_to_string(const QuadNum& x) {
    Int r = lcm(x.a.get_den(), x.b.get_den());
    Int p = x.a.get_num() * (r / x.a.get_den());
    Int q = x.b.get_num() * (r / x.b.get_den());
    std::ostringstream os;
    os << "(" << p << (q >= 0 ? "+" : "-") << abs(q) << "*sqrt(" << x.d << "))/" << r;
    return os.str();
}

} // namespace hmx
