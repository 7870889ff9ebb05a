#include "hmx/rfun.hpp"

#include <algorithm>
#include <set>

namespace hmx {

namespace {

long to_long(const Int& n) {
    if (!n.fits_slong_p()) throw SizeError("exponent does not fit a machine word");
    return n.get_si();
}

} // namespace

void poly_add_term(Poly2& p, long i, long j, const Cyclo& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(i, j);
    auto it = p.find(key);
    if (it == p.end()) {
        p.emplace(key, c);
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) p.erase(it);
    }
}

Poly2 poly_mul(const Poly2& x, const Poly2& y) {
    Poly2 r;
    for (const auto& [e1, c1] : x)
        for (const auto& [e2, c2] : y)
            poly_add_term(r, e1.first + e2.first, e1.second + e2.second, c1 * c2);
    return r;
}

namespace {

// p * (1 - c * u^a v^b)
Poly2 poly_mul_binomial(const Poly2& p, long a, long b, const Cyclo& c) {
    Poly2 r = p;
    for (const auto& [e, coef] : p)
        poly_add_term(r, e.first + a, e.second + b, -(coef * c));
    return r;
}

Poly2 poly_shift_scale(const Poly2& p, long a, long b, const Cyclo& c) {
    Poly2 r;
    for (const auto& [e, coef] : p) poly_add_term(r, e.first + a, e.second + b, coef * c);
    return r;
}

Poly2 den_to_poly(const std::vector<DenFactor>& den) {
    Poly2 r;
    r[{0, 0}] = Cyclo::of_long(1);
    for (const DenFactor& f : den)
        for (int k = 0; k < f.mult; ++k) r = poly_mul_binomial(r, f.a, f.b, Cyclo::of_long(1));
    return r;
}

void merge_den(std::vector<DenFactor>& den) {
    std::sort(den.begin(), den.end(), [](const DenFactor& x, const DenFactor& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    std::vector<DenFactor> out;
    for (const DenFactor& f : den) {
        if (f.mult == 0) continue;
        if (!out.empty() && out.back().a == f.a && out.back().b == f.b)
            out.back().mult += f.mult;
        else
            out.push_back(f);
    }
    den = std::move(out);
}

// Exact division of num by (1 - u^a v^b); nullopt when not divisible.
std::optional<Poly2> try_divide(const Poly2& num, long a, long b) {
    // Partition the support into residue lines along the direction (a, b).
    std::map<std::pair<long, long>, std::map<long, Cyclo>> lines;
    for (const auto& [e, c] : num) {
        long t = (a != 0) ? to_long(floor_div(Int(e.first), Int(a)))
                          : to_long(floor_div(Int(e.second), Int(b)));
        lines[{e.first - t * a, e.second - t * b}][t] = c;
    }
    Poly2 quo;
    for (const auto& [base, line] : lines) {
        // N = Q (1 - w) along the line: q_t = sum_{s <= t} n_s, total must vanish.
        Cyclo acc;
        long prev = line.begin()->first;
        for (auto it = line.begin(); it != line.end(); ++it) {
            // Fill the gap (prev, it->first): q is constant there.
            if (!acc.is_zero()) {
                if (it->first - prev > 100000) return std::nullopt;
                for (long t = prev; t < it->first; ++t)
                    poly_add_term(quo, base.first + t * a, base.second + t * b, acc);
            }
            acc = acc + it->second;
            prev = it->first;
        }
        if (!acc.is_zero()) return std::nullopt; // remainder on this line
    }
    return quo;
}

} // namespace

RationalFn2 rf_zero() { return RationalFn2{}; }

RationalFn2 rf_monomial(long i, long j, const Cyclo& c) {
    RationalFn2 r;
    poly_add_term(r.num, i, j, c);
    return r;
}

void rf_push_den(RationalFn2& r, long a, long b, int mult) {
    if (mult == 0) return;
    if (a == 0 && b == 0) throw DomainError("denominator factor (1 - 1) is forbidden");
    if (a < 0 || (a == 0 && b < 0)) {
        // 1 - u^a v^b = -u^a v^b (1 - u^-a v^-b): dividing by the left side
        // multiplies the numerator by (-1)^mult u^(-a*mult) v^(-b*mult).
        Cyclo sign = Cyclo::of_long(mult % 2 == 0 ? 1 : -1);
        r.num = poly_shift_scale(r.num, -a * mult, -b * mult, sign);
        a = -a;
        b = -b;
    }
    r.den.push_back({a, b, mult});
    merge_den(r.den);
}

void rf_simplify(RationalFn2& r) {
    if (r.num.empty()) {
        r.den.clear();
        return;
    }
    bool progress = true;
    while (progress) {
        progress = false;
        for (DenFactor& f : r.den) {
            while (f.mult > 0) {
                auto q = try_divide(r.num, f.a, f.b);
                if (!q) break;
                r.num = std::move(*q);
                --f.mult;
                progress = true;
                if (r.num.empty()) {
                    r.den.clear();
                    return;
                }
            }
        }
        std::erase_if(r.den, [](const DenFactor& f) { return f.mult == 0; });
    }
}

namespace {

// Union denominator and the two cofactor multipliers.
void align(const RationalFn2& x, const RationalFn2& y, std::vector<DenFactor>& den, Poly2& nx,
           Poly2& ny) {
    den = x.den;
    for (const DenFactor& f : y.den) den.push_back(f);
    merge_den(den);
    // max multiplicity instead of the sum
    std::vector<DenFactor> u;
    for (const DenFactor& f : den) {
        int mx = 0, my = 0;
        for (const DenFactor& g : x.den)
            if (g.a == f.a && g.b == f.b) mx = g.mult;
        for (const DenFactor& g : y.den)
            if (g.a == f.a && g.b == f.b) my = g.mult;
        if (!u.empty() && u.back().a == f.a && u.back().b == f.b) continue;
        u.push_back({f.a, f.b, std::max(mx, my)});
    }
    den = u;
    nx = x.num;
    ny = y.num;
    for (const DenFactor& f : den) {
        int mx = 0, my = 0;
        for (const DenFactor& g : x.den)
            if (g.a == f.a && g.b == f.b) mx = g.mult;
        for (const DenFactor& g : y.den)
            if (g.a == f.a && g.b == f.b) my = g.mult;
        for (int k = mx; k < f.mult; ++k) nx = poly_mul_binomial(nx, f.a, f.b, Cyclo::of_long(1));
        for (int k = my; k < f.mult; ++k) ny = poly_mul_binomial(ny, f.a, f.b, Cyclo::of_long(1));
    }
}

} // namespace

RationalFn2 rf_add(const RationalFn2& x, const RationalFn2& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    RationalFn2 r;
    Poly2 nx, ny;
    align(x, y, r.den, nx, ny);
    r.num = nx;
    for (const auto& [e, c] : ny) poly_add_term(r.num, e.first, e.second, c);
    r.v_open = x.v_open || y.v_open;
    rf_simplify(r);
    return r;
}

RationalFn2 rf_neg(const RationalFn2& x) {
    RationalFn2 r = x;
    for (auto& [e, c] : r.num) c = -c;
    return r;
}

RationalFn2 rf_sub(const RationalFn2& x, const RationalFn2& y) { return rf_add(x, rf_neg(y)); }

RationalFn2 rf_scale(const RationalFn2& x, const Cyclo& c) {
    if (c.is_zero()) return rf_zero();
    RationalFn2 r = x;
    for (auto& [e, coef] : r.num) coef = coef * c;
    return r;
}

bool rf_equal(const RationalFn2& x, const RationalFn2& y) {
    Poly2 lhs = poly_mul(x.num, den_to_poly(y.den));
    Poly2 rhs = poly_mul(y.num, den_to_poly(x.den));
    for (const auto& [e, c] : rhs) poly_add_term(lhs, e.first, e.second, -c);
    return lhs.empty();
}

RationalFn2 twist(const RationalFn2& x, const std::pair<Rat, Rat>& rot) {
    RationalFn2 r;
    r.v_open = x.v_open;
    for (const auto& [e, c] : x.num) {
        Rat ang = rot.first * e.first + rot.second * e.second;
        poly_add_term(r.num, e.first, e.second, c * Cyclo::root_of_unity(ang));
    }
    for (const DenFactor& f : x.den) {
        Rat s = rot.first * f.a + rot.second * f.b;
        s -= Rat(rat_floor(s));
        if (s == 0) {
            rf_push_den(r, f.a, f.b, f.mult);
            continue;
        }
        // prod_{j=0..k-1} (1 - e(js) w) = 1 - w^k clears the phase
        long k = to_long(s.get_den());
        Poly2 cof;
        cof[{0, 0}] = Cyclo::of_long(1);
        for (long j = 0; j < k; ++j) {
            if (j == 1) continue;
            cof = poly_mul_binomial(cof, f.a, f.b, Cyclo::root_of_unity(s * j));
        }
        for (int m = 0; m < f.mult; ++m) r.num = poly_mul(r.num, cof);
        rf_push_den(r, k * f.a, k * f.b, f.mult);
    }
    rf_simplify(r);
    return r;
}

RationalFn2 compose_pow(const RationalFn2& x, const Mat2z& m) {
    if (m.det() == 0) throw DomainError("compose_pow requires a non-singular matrix");
    long a = to_long(m.at(0, 0)), b = to_long(m.at(0, 1));
    long c = to_long(m.at(1, 0)), d = to_long(m.at(1, 1));
    RationalFn2 r;
    r.v_open = x.v_open;
    for (const auto& [e, coef] : x.num)
        poly_add_term(r.num, a * e.first + c * e.second, b * e.first + d * e.second, coef);
    for (const DenFactor& f : x.den) rf_push_den(r, a * f.a + c * f.b, b * f.a + d * f.b, f.mult);
    rf_simplify(r);
    return r;
}

Complex rf_eval(const RationalFn2& x, const NumericPoint& p, mpfr_prec_t prec) {
    Complex num(prec);
    for (const auto& [e, c] : x.num) {
        Complex term = c.to_complex(prec) * p.u.pow_si(e.first) * p.v.pow_si(e.second);
        num = num + term;
    }
    Complex den = Complex::of_long(1, prec);
    Complex one = Complex::of_long(1, prec);
    for (const DenFactor& f : x.den) {
        Complex w = one - p.u.pow_si(f.a) * p.v.pow_si(f.b);
        if (w.abs().abs_below_pow2(-(3 * static_cast<long>(prec)) / 4))
            throw PoleError("evaluation at a denominator zero");
        for (int k = 0; k < f.mult; ++k) den = den * w;
    }
    return num / den;
}

RationalFn2 f_inf() {
    RationalFn2 r = rf_monomial(1, 1, Cyclo::of_long(1));
    rf_push_den(r, 1, 0, 1);
    rf_push_den(r, 0, 1, 1);
    return r;
}

namespace {

// A(rho) = sum_{l >= 1} u^l v^(floor(rho l) + 1) as numerator over (1 - u^q v^p).
RationalFn2 staircase_piece(const Rat& rho) {
    long p = to_long(rho.get_num());
    long q = to_long(rho.get_den());
    RationalFn2 r;
    for (long rr = 0; rr < q; ++rr) {
        long m0 = (rr == 0) ? 1 : 0;
        long i = rr + q * m0;
        long j = to_long(floor_div(Int(p) * rr, Int(q))) + 1 + p * m0;
        poly_add_term(r.num, i, j, Cyclo::of_long(1));
    }
    rf_push_den(r, q, p, 1);
    return r;
}

// sum_{m >= 1} (u^q v^p)^m for the primitive direction of rho.
RationalFn2 boundary_ray(const Rat& rho) {
    long p = to_long(rho.get_num());
    long q = to_long(rho.get_den());
    RationalFn2 r = rf_monomial(q, p, Cyclo::of_long(1));
    rf_push_den(r, q, p, 1);
    return r;
}

} // namespace

RationalFn2 cone_sum(const Rat& rho1, const std::optional<Rat>& rho2, const Mat2z& sub,
                     bool lower_inc, bool upper_inc) {
    Int det = sub.det();
    if (det == 0) throw DomainError("cone_sum requires a non-singular sublattice");

    RationalFn2 s;
    if (rho2) {
        if (*rho2 < 0) throw DomainError("cone_sum requires rho2 >= 0");
        if (rho1 == *rho2) {
            if (!(lower_inc && upper_inc)) return rf_zero();
            s = boundary_ray(rho1); // the closed boundary ray alone
        } else {
            if (!(-*rho2 < rho1 && rho1 < *rho2))
                throw DomainError("cone_sum requires -rho2 < rho1 <= rho2");
            s = rf_sub(staircase_piece(rho1), staircase_piece(*rho2));
            rf_push_den(s, 0, 1, 1);
            if (lower_inc) s = rf_add(s, boundary_ray(rho1));
            if (!upper_inc) s = rf_sub(s, boundary_ray(*rho2));
        }
    } else {
        s = staircase_piece(rho1);
        rf_push_den(s, 0, 1, 1);
        if (lower_inc) s = rf_add(s, boundary_ray(rho1));
        s.v_open = true;
    }

    Int g = abs(det);
    if (g != 1) {
        // Restrict to the sublattice by averaging over the dual characters.
        long gl = to_long(g);
        std::set<std::pair<Rat, Rat>> ys;
        for (long i = 0; i < gl && ys.size() < static_cast<size_t>(gl); ++i) {
            for (long j = 0; j < gl && ys.size() < static_cast<size_t>(gl); ++j) {
                Rat y1 = make_rat(sub.at(1, 1) * i - sub.at(1, 0) * j, det);
                Rat y2 = make_rat(-sub.at(0, 1) * i + sub.at(0, 0) * j, det);
                y1 -= Rat(rat_floor(y1));
                y2 -= Rat(rat_floor(y2));
                ys.insert({y1, y2});
            }
        }
        if (ys.size() != static_cast<size_t>(gl))
            throw DomainError("cone_sum: character enumeration failed");
        RationalFn2 acc;
        bool open = s.v_open;
        for (const auto& y : ys) acc = rf_add(acc, twist(s, y));
        acc = rf_scale(acc, Cyclo::of_rat(make_rat(Int(1), g)));
        acc.v_open = open;
        s = std::move(acc);
    }
    rf_simplify(s);
    return s;
}

Slopes slopes(const QuadNum& beta, const Frame& f) {
    if (!f.theta) throw DomainError("slopes requires a Perron frame");
    if (beta.is_zero() || sgn(beta) <= 0) throw DomainError("slopes requires beta > 0");
    QuadNum dsq_inv = inv(disc_sqrt(f.module));
    QuadNum thinv = inv(*f.theta);

    Slopes s;
    Rat n1 = trace(beta * dsq_inv), d1 = trace(thinv * beta * dsq_inv);
    Rat n2 = trace(beta), d2 = trace(thinv * beta);
    if (d1 != 0) s.rho = n1 / d1;
    if (d2 != 0) s.rho_plus = n2 / d2;

    // Ordering invariant, checked in the strictly dominant sign classes.
    QuadNum bp = conj(beta);
    auto cmp_theta = [&](const Rat& r) { return sgn(QuadNum::rational(r, beta.d) - *f.theta); };
    if (sgn(bp) > 0 && sgn(beta - bp) > 0) {
        if (!(s.rho && s.rho_plus && cmp_theta(*s.rho_plus) > 0 && cmp_theta(*s.rho) < 0 &&
              *s.rho > 0))
            throw DomainError("slope ordering violated for a totally positive beta");
    } else if (sgn(bp) < 0 && sgn(beta + bp) > 0) {
        if (!(s.rho && s.rho_plus && cmp_theta(*s.rho) > 0 && cmp_theta(*s.rho_plus) < 0 &&
              *s.rho_plus > 0))
            throw DomainError("slope ordering violated for a mixed-sign beta");
    }
    return s;
}

Mat2z dual_sublattice(const Frame& f, const ZModule& N, const QuadNum& beta) {
    DualData dn = dual(N);
    Mat2z z;
    int col = 0;
    for (const QuadNum& gen : {beta * dn.b0s, beta * dn.b1s}) {
        Rat l = trace(gen * f.module.b0);
        Rat h = trace(gen * f.module.b1);
        if (!is_integer(l) || !is_integer(h))
            throw DomainError("beta*N* does not lie inside M*");
        z.at(0, col) = l.get_num();
        z.at(1, col) = h.get_num();
        ++col;
    }
    return z;
}

RationalFn2 r_fn(const QuadNum& alpha, const QuadNum& beta, const ZModule& N, RVariant variant,
                 const Frame& f) {
    if (!f.theta) throw DomainError("r_fn requires a Perron frame");
    if (beta.is_zero() || sgn(beta) <= 0)
        throw DomainError("r_fn requires beta > 0 under the real embedding");
    if (!module_subset(f.module, N)) throw DomainError("r_fn requires N to contain M");
    if (!(contains(N, beta * N.b0) && contains(N, beta * N.b1)))
        throw NotInOrderError("beta does not stabilise N");
    if (!module_equal(stabiliser(N), stabiliser(f.module)))
        throw DomainError("r_fn requires S(N) = S(M)");
    QuadNum bp = conj(beta);
    QuadNum absbp = sgn(bp) >= 0 ? bp : -bp;
    if (sgn(beta - absbp) < 0)
        throw DomainError("r_fn requires the dominant embedding: beta >= |beta'|");

    Slopes sl = slopes(beta, f);
    Rat rho_plus_one = Rat(2) / trace(inv(*f.theta));
    Mat2z z = dual_sublattice(f, N, beta);

    RationalFn2 r;
    bool mixed = sgn(bp) < 0; // beta in S_pm
    if (variant == RVariant::minus) {
        if (!mixed)
            r = cone_sum(Rat(0), sl.rho, z, false, true);
        else
            r = cone_sum(Rat(0), sl.rho_plus, z, false, false);
    } else {
        if (!mixed)
            r = cone_sum(*sl.rho_plus, rho_plus_one, z, false, true);
        else
            r = cone_sum(*sl.rho, rho_plus_one, z, true, true);
    }

    auto rot = rotation(f, alpha / beta);
    if (rot.first != 0 || rot.second != 0) r = twist(r, rot);
    return r;
}

RationalFn2 theta_fn(const ZModule& N, const Frame& f) {
    if (!f.theta) throw DomainError("theta_fn requires a Perron frame");
    if (!module_subset(f.module, N)) throw DomainError("theta_fn requires N to contain M");
    if (!module_equal(stabiliser(N), stabiliser(f.module)))
        throw DomainError("theta_fn requires S(N) = S(M)");
    Rat rho_plus_one = Rat(2) / trace(inv(*f.theta));
    QuadNum one = QuadNum::rational(Rat(1), f.module.field());
    return cone_sum(Rat(0), rho_plus_one, dual_sublattice(f, N, one), false, true);
}

bool gauss_average_check(const QuadNum& beta, const QuadNum& eta, const Frame& f) {
    if (sgn(beta) <= 0 || sgn(conj(beta)) <= 0 || sgn(beta - conj(beta)) < 0)
        throw DomainError("gauss_average_check requires beta >= beta' > 0");
    std::vector<TorsionPoint> ker = kernel(f, beta);
    for (const TorsionPoint& z : ker)
        if (!contains(f.module, eta * z.alpha - z.alpha))
            throw DomainError("eta does not fix the kernel of beta");

    RationalFn2 base = r_fn(QuadNum::rational(Rat(0), f.module.field()), eta, f.module,
                            RVariant::minus, f);
    RationalFn2 lhs;
    for (const TorsionPoint& z : ker) lhs = rf_add(lhs, twist(base, rotation(f, z.alpha)));

    Rat nb = norm(beta);
    if (nb < 0) nb = -nb;
    RationalFn2 rhs = r_fn(QuadNum::rational(Rat(0), f.module.field()), eta,
                           scale(f.module, inv(beta)), RVariant::minus, f);
    rhs = rf_scale(rhs, Cyclo::of_rat(nb));
    return rf_equal(lhs, rhs);
}

Poly2 expand_weighted(const RationalFn2& x, long w1, long w2, long bound) {
    for (const DenFactor& f : x.den)
        if (w1 * f.a + w2 * f.b <= 0)
            throw DomainError("expansion weight is not positive on a denominator direction");
    auto weight = [&](const std::pair<long, long>& e) { return w1 * e.first + w2 * e.second; };
    Poly2 acc;
    for (const auto& [e, c] : x.num)
        if (weight(e) <= bound) acc.emplace(e, c);
    for (const DenFactor& f : x.den) {
        long fw = w1 * f.a + w2 * f.b;
        for (int m = 0; m < f.mult; ++m) {
            Poly2 next;
            for (const auto& [e, c] : acc) {
                long base = weight(e);
                for (long k = 0; base + k * fw <= bound; ++k)
                    poly_add_term(next, e.first + k * f.a, e.second + k * f.b, c);
            }
            acc = std::move(next);
        }
    }
    std::erase_if(acc, [&](const auto& kv) { return weight(kv.first) > bound; });
    return acc;
}

Poly2 expand_total(const RationalFn2& x, long total_degree) {
    return expand_weighted(x, 1, 1, total_degree);
}

} // namespace hmx
