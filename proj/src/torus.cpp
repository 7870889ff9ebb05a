#include "hmx/torus.hpp"

namespace hmx {

Frame make_frame(const ZModule& m) { return Frame{m, dual(m), std::nullopt}; }

Frame perron_frame(const QuadNum& theta) {
    if (!is_perron(theta)) throw DomainError("perron_frame requires 0 < theta < 1, theta' < -1");
    QuadNum one = QuadNum::rational(Rat(1), theta.d);
    ZModule m(inv(theta), one);
    Frame f{m, dual(m), theta};
    return f;
}

Real to_real(const QuadNum& x, mpfr_prec_t prec) {
    return Real::of_rat(x.a, prec) + Real::of_rat(x.b, prec) * Real::sqrt_int(Int(x.d), prec);
}

std::pair<Rat, Rat> rotation(const Frame& f, const QuadNum& alpha) {
    Rat r0 = trace(alpha * f.dualdata.b0s);
    Rat r1 = trace(alpha * f.dualdata.b1s);
    r0 -= Rat(rat_floor(r0));
    r1 -= Rat(rat_floor(r1));
    return {r0, r1};
}

NumericPoint torsion_coords(const Frame& f, const QuadNum& alpha, mpfr_prec_t prec) {
    auto [r0, r1] = rotation(f, alpha);
    return {e_rat(r0, prec), e_rat(r1, prec)};
}

NumericPoint phi_eval(const Frame& f, const Complex& z, const Complex& zp) {
    mpfr_prec_t prec = std::max(z.prec(), zp.prec());
    auto line = [&](const QuadNum& bs) {
        Real c0 = to_real(bs, prec), c1 = to_real(conj(bs), prec);
        Complex tau{c0 * z.re + c1 * zp.re, c0 * z.im + c1 * zp.im};
        return e_tau(tau);
    };
    return {line(f.dualdata.b0s), line(f.dualdata.b1s)};
}

ActionMatrix action_matrix(const Frame& f, const QuadNum& nu) {
    if (nu.is_zero()) throw NotInOrderError("action matrix of zero");
    const QuadNum bs[2] = {f.dualdata.b0s, f.dualdata.b1s};
    const QuadNum bb[2] = {f.module.b0, f.module.b1};
    Mat2z m;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Rat e = trace(nu * bb[j] * bs[i]);
            if (!is_integer(e)) throw NotInOrderError("element is not in the stabiliser order");
            m.at(i, j) = e.get_num();
        }
    }
    if (Rat(m.det()) != norm(nu)) throw DomainError("action matrix determinant mismatch");
    return {m, nu};
}

NumericPoint act(const Mat2z& m, const NumericPoint& p) {
    auto powll = [&](const Int& e) {
        if (!e.fits_slong_p()) throw SizeError("action exponent too large");
        return e.get_si();
    };
    Complex u = p.u.pow_si(powll(m.at(0, 0))) * p.v.pow_si(powll(m.at(0, 1)));
    Complex v = p.u.pow_si(powll(m.at(1, 0))) * p.v.pow_si(powll(m.at(1, 1)));
    return {u, v};
}

TorusPoint act(const Frame& f, const ActionMatrix& a, const TorusPoint& p) {
    if (std::holds_alternative<TorsionPoint>(p)) {
        const auto& t = std::get<TorsionPoint>(p);
        return TorsionPoint{reduce_mod(f.module, a.nu * t.alpha)};
    }
    if (std::holds_alternative<NumericPoint>(p)) return act(a.m, std::get<NumericPoint>(p));
    throw DomainError("act expects a torsion or numeric point");
}

bool is_analytic(const Frame& f, const QuadNum& nu) {
    ActionMatrix a = action_matrix(f, nu);
    bool entries_ok = true;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (a.m.at(i, j) < 0) entries_ok = false;

    if (f.theta) {
        // Cone test: nu >= max(nu', (theta'/theta) nu') > 0, exactly.
        const QuadNum& th = *f.theta;
        QuadNum nup = conj(nu);
        QuadNum scaled = (conj(th) / th) * nup;
        QuadNum mx = sgn(nup - scaled) >= 0 ? nup : scaled;
        bool cone_ok = sgn(mx) > 0 && sgn(nu - mx) >= 0;
        if (cone_ok != entries_ok)
            throw DomainError("analyticity criteria disagree (internal error)");
    }
    return entries_ok;
}

bool is_good(const Mat2z& m) {
    const Int &a = m.at(0, 0), &b = m.at(0, 1), &c = m.at(1, 0), &d = m.at(1, 1);
    if (a < 0 || b < 0 || c < 0 || d < 0) throw DomainError("is_good requires non-negative entries");
    Int T = a + d, D = m.det();
    if (D == 0) return false;
    // Root-of-unity eigenvalues, decided from the characteristic polynomial:
    // eigenvalue +-1, or a conjugate pair on the unit circle (det 1, |trace| <= 1).
    if (1 - T + D == 0) return false;
    if (1 + T + D == 0) return false;
    if (D == 1 && (T == 0 || T == 1 || T == -1)) return false;
    // Dominant eigenvector positivity.
    if (b > 0 && c > 0) return true;
    if (b == 0 && c == 0) return a == d;
    if (b > 0) return d > a; // c == 0
    return a > d;            // b == 0, c > 0
}

std::vector<TorsionPoint> kernel(const Frame& f, const QuadNum& beta) {
    if (beta.is_zero()) throw DomainError("kernel of the zero isogeny");
    action_matrix(f, beta); // stabiliser membership check
    ZModule pre = scale(f.module, inv(beta));
    std::vector<TorsionPoint> out;
    for (const QuadNum& rep : coset_reps(pre, f.module))
        out.push_back(TorsionPoint{reduce_mod(f.module, rep)});
    return out;
}

QuadNum fixing_unit(const Frame& f, const std::vector<TorsionPoint>& zetas) {
    if (!f.theta) throw DomainError("fixing_unit requires a Perron frame");
    QuadNum eta = positive_unit(*f.theta);
    QuadNum power = eta;
    for (int k = 1; k <= 1 << 20; ++k) {
        bool fixes = true;
        for (const TorsionPoint& z : zetas) {
            if (!contains(f.module, power * z.alpha - z.alpha)) {
                fixes = false;
                break;
            }
        }
        if (fixes) return power;
        power = power * eta;
    }
    throw SizeError("fixing_unit: power search exceeded the cap");
}

} // namespace hmx
