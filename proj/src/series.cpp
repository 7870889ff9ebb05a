#include "hmx/series.hpp"

#include <functional>

namespace hmx {

namespace {

Real abs_u(const NumericPoint& p) { return p.u.abs(); }

// |u| * max(1,|v|)^slope, the decay ratio of the row bounds.
Real decay_ratio(const NumericPoint& p, const Real& slope) {
    Real au = p.u.abs(), av = p.v.abs();
    Real one = Real::of_long(1, au.prec());
    Real m = av > one ? av : one;
    return au * m.pow(slope);
}

} // namespace

bool in_domain(const NumericPoint& p, const QuadNum& w, DomainTag tag, mpfr_prec_t prec) {
    Real g = Real::pow2(-static_cast<long>(prec) / 2, prec);
    Real one = Real::of_long(1, prec);
    Real au = p.u.abs(), av = p.v.abs();
    if (!(au < one - g)) return false;
    switch (tag) {
        case DomainTag::D:
        case DomainTag::W_halfplane: {
            Real wr = to_real(w, prec);
            return au * av.pow(wr) < one - g;
        }
        case DomainTag::Dplus:
        case DomainTag::Wplus_halfplane: {
            // |u|^t(1/w) |v|^2 < 1 with w = theta
            Real t = Real::of_rat(trace(inv(w)), prec);
            return au.pow(t) * av * av < one - g;
        }
    }
    return false;
}

namespace {

// Shared staircase evaluator: sum_{l>=1} u^l * sum_{h=lo(l)+1}^{hi(l)} v^h,
// with lo/hi exact integer staircases and hi(l) <= slope*l + 1.
EvalResult eval_staircase(const NumericPoint& p, const EvalConfig& cfg, const Real& slope,
                          const std::function<Int(const Int&)>& lo,
                          const std::function<Int(const Int&)>& hi) {
    mpfr_prec_t wp = cfg.work_prec();
    Complex u = p.u, v = p.v;
    Complex acc(wp);
    long err_bits = cfg.prec - cfg.tail_margin;

    if (abs_u(p).is_zero()) return {acc, err_bits, true};

    Real r = decay_ratio(p, slope);
    Real one = Real::of_long(1, wp);
    if (!(r < one)) throw DomainError("series does not converge at this point");
    Real margin = Real::of_str("1.0000001", 64);
    Real vmax = p.v.abs() > one ? p.v.abs() : one;
    Real target = Real::pow2(-(static_cast<long>(cfg.prec) + 4), 64);

    // v near 1 switches to incremental prefix sums to avoid the cancellation
    // in (v^m - 1)/(v - 1).
    Complex vm1 = v - Complex::of_long(1, wp);
    bool v_is_one = vm1.is_zero();
    bool near_one = !v_is_one && vm1.abs() < Real::pow2(-8, 64);

    // Prefix state P(m) = sum_{h=1..m} v^h for the near-one branch.
    Int pref_m_lo(0), pref_m_hi(0);
    Complex pref_lo(wp), pref_hi(wp);
    Complex vpow_lo = Complex::of_long(1, wp), vpow_hi = Complex::of_long(1, wp);
    auto extend_prefix = [&](Int target_m, Int& cur_m, Complex& pref, Complex& vpow) {
        while (cur_m < target_m) {
            vpow = vpow * v;
            pref = pref + vpow;
            ++cur_m;
        }
    };

    Complex upow = Complex::of_long(1, wp);
    for (long l = 1; l <= cfg.max_terms; ++l) {
        upow = upow * u;
        Int il(l);
        Int m1 = lo(il), m2 = hi(il);
        if (m2 > m1) {
            Complex inner(wp);
            if (v_is_one) {
                inner = Complex{Real::of_int(m2 - m1, wp), Real::of_long(0, wp)};
            } else if (near_one) {
                if (m1 < pref_m_lo || m2 < pref_m_hi)
                    throw ConvergenceError("staircase bounds are not monotone");
                extend_prefix(m1, pref_m_lo, pref_lo, vpow_lo);
                extend_prefix(m2, pref_m_hi, pref_hi, vpow_hi);
                inner = pref_hi - pref_lo;
            } else {
                // sum_{h=m1+1}^{m2} v^h = (v^(m2+1) - v^(m1+1)) / (v - 1)
                auto vpow_of = [&](const Int& e) {
                    if (!e.fits_slong_p()) throw SizeError("staircase exponent overflow");
                    return v.pow_si(e.get_si());
                };
                inner = (vpow_of(m2 + 1) - vpow_of(m1 + 1)) / vm1;
            }
            acc = acc + upow * inner;
        }
        // Tail bound: rows l' > l contribute at most
        //   vmax * sum_{l'>l} (slope*l'+1) r^l'  (closed form below).
        Real rl = r.pow_si(l + 1);
        Real denom = one - r;
        Real lin = slope * Real::of_long(l + 1, 64) + Real::of_long(1, 64) +
                   slope * r / denom;
        Real bound = vmax * lin * rl / denom * margin;
        if (bound < target) return {acc, err_bits, true};
    }
    throw ConvergenceError("staircase series did not converge within max_terms");
}

} // namespace

EvalResult eval_f(const QuadNum& w, const NumericPoint& p, const EvalConfig& cfg) {
    if (sgn(w) <= 0) throw DomainError("eval_f requires w > 0");
    if (!in_domain(p, w, DomainTag::D, cfg.prec)) throw DomainError("point outside the domain of f_w");
    Real slope = to_real(w, cfg.work_prec());
    return eval_staircase(
        p, cfg, slope, [](const Int&) { return Int(0); },
        [&](const Int& l) { return floor_scaled(l, w); });
}

EvalResult eval_fplus(const QuadNum& theta, const NumericPoint& p, const EvalConfig& cfg,
                      const Frame& f) {
    if (!f.theta || !(*f.theta == theta)) throw DomainError("eval_fplus requires the frame's theta");
    if (!in_domain(p, theta, DomainTag::Dplus, cfg.prec))
        throw DomainError("point outside the domain of f+");
    Rat upper = Rat(2) / trace(inv(theta));
    Real slope = Real::of_rat(upper, cfg.work_prec());
    return eval_staircase(
        p, cfg, slope, [&](const Int& l) { return floor_scaled(l, theta); },
        [&](const Int& l) { return rat_floor(upper * Rat(l)); });
}

EvalResult eval_f_module(const QuadNum& beta, RVariant variant, const NumericPoint& p,
                         const EvalConfig& cfg, const Frame& f) {
    if (!f.theta) throw DomainError("eval_f_module requires a Perron frame");
    ActionMatrix a = action_matrix(f, beta);
    if (sgn(beta) <= 0) throw DomainError("eval_f_module requires beta > 0");
    NumericPoint pb = act(a.m, p);
    bool mixed = sgn(conj(beta)) < 0;

    bool inner_plus = (variant == RVariant::minus) ? mixed : !mixed;
    EvalResult inner = inner_plus ? eval_fplus(*f.theta, pb, cfg, f)
                                  : eval_f(*f.theta, pb, cfg);

    QuadNum zero = QuadNum::rational(Rat(0), f.module.field());
    RationalFn2 corr = r_fn(zero, beta, f.module, variant, f);
    Complex c = rf_eval(corr, p, cfg.work_prec());
    return {inner.value + c, inner.err_bits, inner.rigorous};
}

namespace {

NumericPoint scaled_point(const Frame& f, const Complex& z, const Complex& zp, const QuadNum& s,
                          mpfr_prec_t wp) {
    Real sr = to_real(s, wp), sc = to_real(conj(s), wp);
    Complex zz{z.re * sr, z.im * sr};
    Complex zzp{zp.re * sc, zp.im * sc};
    return phi_eval(f, zz, zzp);
}

void check_halfplanes(HeckeKind kind, const Complex& z, const Complex& zp) {
    if (kind == HeckeKind::A) {
        if (!(z.im.sgn() > 0 && zp.im.sgn() < 0))
            throw DomainError("Hecke A series requires Im z > 0 > Im z'");
    } else {
        if (!(z.im.sgn() > 0 && zp.im.sgn() > 0))
            throw DomainError("Hecke B series requires Im z > 0 and Im z' > 0");
    }
}

} // namespace

EvalResult eval_hecke(HeckeKind kind, const ZModule& N, const Complex& z, const Complex& zp,
                      const EvalConfig& cfg, const Frame& f) {
    if (!f.theta) throw DomainError("eval_hecke requires a Perron frame");
    check_halfplanes(kind, z, zp);
    mpfr_prec_t wp = cfg.work_prec();
    QuadNum eta = positive_unit(*f.theta);
    QuadNum zero = QuadNum::rational(Rat(0), f.module.field());
    RationalFn2 shell =
        r_fn(zero, eta, N, kind == HeckeKind::A ? RVariant::minus : RVariant::plus, f);

    Real target = Real::pow2(-(static_cast<long>(cfg.prec) + 4), 64);
    Complex acc = rf_eval(shell, scaled_point(f, z, zp, QuadNum::rational(Rat(1), eta.d), wp), wp);
    QuadNum up = eta, down = inv(eta);
    bool up_done = false, down_done = false;
    for (long k = 1; k <= cfg.max_terms; ++k) {
        if (!up_done) {
            Complex t = rf_eval(shell, scaled_point(f, z, zp, up, wp), wp);
            acc = acc + t;
            if (k >= 2 && t.abs() < target) up_done = true;
            up = up * eta;
        }
        if (!down_done) {
            Complex t = rf_eval(shell, scaled_point(f, z, zp, down, wp), wp);
            acc = acc + t;
            if (k >= 2 && t.abs() < target) down_done = true;
            down = down * inv(eta);
        }
        if (up_done && down_done)
            return {acc, cfg.prec - cfg.tail_margin, false}; // heuristic tail
    }
    throw ConvergenceError("Hecke shell sum did not stabilize");
}

EvalResult hecke_direct(HeckeKind kind, const ZModule& N, const Complex& z, const Complex& zp,
                        const EvalConfig& cfg, const Frame& f) {
    if (!f.theta) throw DomainError("hecke_direct requires a Perron frame");
    check_halfplanes(kind, z, zp);
    mpfr_prec_t wp = cfg.work_prec();
    NumericPoint p = phi_eval(f, Complex{z.re, z.im}, Complex{zp.re, zp.im});
    // Coordinates (l,h) of N* inside M*; restrict to the kind's sign quadrant.
    QuadNum one = QuadNum::rational(Rat(1), f.module.field());
    Mat2z zl = dual_sublattice(f, N, one);
    Int det = zl.det();
    auto member = [&](long l, long h) {
        // solve zl * (m,n)^T = (l,h)^T over Q, integrality test
        Int a = zl.at(0, 0), b = zl.at(0, 1), c = zl.at(1, 0), d = zl.at(1, 1);
        Int mn = d * l - b * h, nn = -c * l + a * h;
        return mn % det == 0 && nn % det == 0;
    };
    const QuadNum& theta = *f.theta;
    QuadNum theta_p = conj(theta);            // slope of the lower A-boundary
    QuadNum theta_pinv = inv(conj(theta));    // lower l-boundary slope for B

    // A: nu in K_pm <=> theta' l < h < theta l (rows in l).
    // B: nu in K_+  <=> theta l < h and theta'^-1 h < l (rows in h).
    Complex acc(wp);
    Real target = Real::pow2(-(static_cast<long>(cfg.prec) + 8), 64);
    long quiet_rows = 0;
    for (long row = 1; row <= cfg.max_terms; ++row) {
        Int lo_i, hi_i;
        if (kind == HeckeKind::A) {
            lo_i = floor_scaled(Int(row), theta_p); // h > theta' l
            hi_i = floor_scaled(Int(row), theta);   // h < theta l (irrational)
        } else {
            lo_i = floor_scaled(Int(row), theta_pinv); // l > theta'^-1 h
            hi_i = floor_scaled(Int(row), inv(theta)); // l < theta^-1 h
        }
        Real row_max = Real::of_long(0, 64);
        for (Int x = lo_i + 1; x <= hi_i; ++x) {
            long l = kind == HeckeKind::A ? row : x.get_si();
            long h = kind == HeckeKind::A ? x.get_si() : row;
            if (!member(l, h)) continue;
            Complex term = p.u.pow_si(l) * p.v.pow_si(h);
            acc = acc + term;
            Real t = term.abs();
            if (row_max < t) row_max = t;
        }
        if (row_max < target)
            ++quiet_rows;
        else
            quiet_rows = 0;
        if (quiet_rows >= 12) return {acc, cfg.prec - cfg.tail_margin, false};
    }
    throw ConvergenceError("direct Hecke sum did not stabilize");
}

} // namespace hmx
