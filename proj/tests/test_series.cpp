#include <doctest.h>

#include "hmx/series.hpp"
#include "hmx/verify.hpp"

using namespace hmx;

namespace {

QuadNum qn(long a, long b, long den, long d) {
    return QuadNum(make_rat(a, den), make_rat(b, den), d);
}

NumericPoint rat_point(long un, long ud, long vn, long vd, mpfr_prec_t prec) {
    return {Complex{Real::of_rat(make_rat(un, ud), prec), Real::of_long(0, prec)},
            Complex{Real::of_rat(make_rat(vn, vd), prec), Real::of_long(0, prec)}};
}

} // namespace

TEST_CASE("domain checks") {
    QuadNum theta = qn(-1, 1, 1, 2);
    mpfr_prec_t prec = 96;
    CHECK(in_domain(rat_point(3, 10, 1, 2, prec + 32), theta, DomainTag::D, prec));
    CHECK(in_domain(rat_point(3, 10, 1, 2, prec + 32), theta, DomainTag::Dplus, prec));
    CHECK_FALSE(in_domain(rat_point(1, 1, 1, 2, prec + 32), theta, DomainTag::D, prec));
    // outside D: |u| |v|^theta >= 1 with |v| large
    NumericPoint big{Complex{Real::of_str("0.9", prec), Real::of_long(0, prec)},
                     Complex{Real::of_str("2.0", prec), Real::of_long(0, prec)}};
    CHECK_FALSE(in_domain(big, theta, DomainTag::D, prec));
}

TEST_CASE("staircase evaluation basics") {
    QuadNum theta = qn(-1, 1, 1, 2);
    EvalConfig cfg{96, 200000, 8};
    mpfr_prec_t wp = cfg.work_prec();

    NumericPoint zero_u{Complex(wp), Complex{Real::of_str("0.5", wp), Real::of_long(0, wp)}};
    CHECK(eval_f(theta, zero_u, cfg).value.abs().is_zero());

    // Small-slope staircase at an exactly computable truncation: compare with
    // a direct partial sum at much lower tolerance.
    NumericPoint p = rat_point(1, 4, 1, 3, wp);
    EvalResult r = eval_f(theta, p, cfg);
    Complex direct(wp);
    Complex upow = Complex::of_long(1, wp);
    for (long l = 1; l <= 400; ++l) {
        upow = upow * p.u;
        Int m = floor_scaled(Int(l), theta);
        Complex vpow = Complex::of_long(1, wp);
        for (Int h = 1; h <= m; ++h) {
            vpow = vpow * p.v;
            direct = direct + upow * vpow;
        }
    }
    CHECK((r.value - direct).abs().abs_below_pow2(-88));
    CHECK(r.rigorous);
    CHECK(r.err_bits == 88);

    // Precision self-consistency.
    EvalConfig lo{64, 200000, 8}, hi{128, 200000, 8};
    NumericPoint p64 = rat_point(3, 10, 1, 2, 96);
    Complex a = eval_f(theta, p64, lo).value;
    Complex b = eval_f(theta, p64, hi).value;
    CHECK((a - b).abs().abs_below_pow2(-56));

    // v = 1 specialization: sum floor(l w) u^l.
    NumericPoint v1{Complex{Real::of_rat(make_rat(1, 4), wp), Real::of_long(0, wp)},
                    Complex::of_long(1, wp)};
    EvalResult rv1 = eval_f(theta, v1, cfg);
    Complex direct1(wp);
    upow = Complex::of_long(1, wp);
    for (long l = 1; l <= 300; ++l) {
        upow = upow * v1.u;
        direct1 = direct1 + Complex{Real::of_int(floor_scaled(Int(l), theta), wp),
                                    Real::of_long(0, wp)} *
                               upow;
    }
    CHECK((rv1.value - direct1).abs().abs_below_pow2(-88));

    // v near 1 takes the cancellation-free branch and stays accurate.
    NumericPoint pnear{Complex{Real::of_rat(make_rat(1, 4), wp), Real::of_long(0, wp)},
                       Complex{Real::of_long(1, wp) + Real::pow2(-40, wp), Real::of_long(0, wp)}};
    EvalResult rn = eval_f(theta, pnear, cfg);
    CHECK((rn.value - rv1.value).abs().abs_below_pow2(-30)); // continuity sanity
}

TEST_CASE("twin series and the theta identity") {
    QuadNum theta = qn(-1, 1, 1, 2);
    Frame f = perron_frame(theta);
    EvalConfig cfg{96, 200000, 8};
    mpfr_prec_t wp = cfg.work_prec();

    NumericPoint zero_u{Complex(wp), Complex{Real::of_str("0.5", wp), Real::of_long(0, wp)}};
    CHECK(eval_fplus(theta, zero_u, cfg, f).value.abs().is_zero());

    NumericPoint p = rat_point(3, 10, 1, 2, wp);
    Complex th = rf_eval(theta_fn(f.module, f), p, wp);
    Complex split = eval_f(theta, p, cfg).value + eval_fplus(theta, p, cfg, f).value;
    CHECK((th - split).abs().abs_below_pow2(-88));

    EvalConfig lo{64, 200000, 8}, hi{128, 200000, 8};
    Complex a = eval_fplus(theta, p, lo, f).value;
    Complex b = eval_fplus(theta, p, hi, f).value;
    CHECK((a - b).abs().abs_below_pow2(-56));
}

TEST_CASE("functional equations numerically") {
    QuadNum theta = qn(-1, 1, 1, 2);
    Frame f = perron_frame(theta);
    QuadNum eta = positive_unit(theta);
    QuadNum zero = qn(0, 0, 1, 2);
    EvalConfig cfg{96, 200000, 8};
    mpfr_prec_t wp = cfg.work_prec();
    Mat2z be = action_matrix(f, eta).m;
    RationalFn2 reta = r_fn(zero, eta, f.module, RVariant::minus, f);

    unsigned long seed = 2024;
    for (int k = 0; k < 10; ++k) {
        NumericPoint p = sample_domain_point(theta, DomainTag::D, cfg.prec, seed);
        Complex resid = eval_f(theta, act(be, p), cfg).value - eval_f(theta, p, cfg).value +
                        rf_eval(reta, p, wp);
        CHECK(resid.abs().abs_below_pow2(-88));
    }

    // Orbit partial sums approach f: sum_{n<K} R_eta(u^(eta^n)) -> f(u).
    NumericPoint p = rat_point(3, 10, 1, 2, wp);
    Complex fval = eval_f(theta, p, cfg).value;
    Complex acc(wp);
    NumericPoint q = p;
    Real prev_err = Real::of_long(2, wp);
    for (int n = 0; n < 16; ++n) {
        acc = acc + rf_eval(reta, q, wp);
        q = act(be, q);
        Real err = (acc - fval).abs();
        // accuracy improves until it hits the working-precision floor
        if (n >= 4) CHECK((err < prev_err || err.abs_below_pow2(-100)));
        prev_err = err;
    }
    CHECK(prev_err.abs_below_pow2(-60));
}

TEST_CASE("module series") {
    QuadNum theta = qn(-1, 1, 1, 2);
    Frame f = perron_frame(theta);
    QuadNum zero = qn(0, 0, 1, 2);
    EvalConfig cfg{96, 200000, 8};
    mpfr_prec_t wp = cfg.work_prec();
    NumericPoint p = rat_point(3, 10, 1, 2, wp);

    // beta = 1 reduces to f itself.
    Complex lhs = eval_f_module(qn(1, 0, 1, 2), RVariant::minus, p, cfg, f).value;
    Complex rhs = eval_f(theta, p, cfg).value;
    CHECK((lhs - rhs).abs().abs_below_pow2(-88));

    // Defining identity for beta = 2 + sqrt(2).
    QuadNum beta = qn(2, 1, 1, 2);
    Complex fm = eval_f_module(beta, RVariant::minus, p, cfg, f).value;
    Complex inner = eval_f(theta, act(action_matrix(f, beta).m, p), cfg).value;
    Complex corr = rf_eval(r_fn(zero, beta, f.module, RVariant::minus, f), p, wp);
    CHECK((fm - inner - corr).abs().abs_below_pow2(-88));

    // Rational beta: the correction vanishes.
    Complex f3 = eval_f_module(qn(3, 0, 1, 2), RVariant::minus, p, cfg, f).value;
    Complex i3 = eval_f(theta, act(action_matrix(f, qn(3, 0, 1, 2)).m, p), cfg).value;
    CHECK((f3 - i3).abs().abs_below_pow2(-88));
}

TEST_CASE("hecke series") {
    QuadNum theta = qn(-1, 1, 1, 2);
    Frame f = perron_frame(theta);
    EvalConfig cfg{72, 200000, 8};
    mpfr_prec_t wp = cfg.work_prec();

    Complex z{Real::of_str("0.125", wp), Real::of_str("0.8", wp)};
    Complex zp{Real::of_str("-0.0625", wp), Real::of_str("-0.75", wp)};

    EvalResult shell = eval_hecke(HeckeKind::A, f.module, z, zp, cfg, f);
    CHECK_FALSE(shell.rigorous);
    EvalResult direct = hecke_direct(HeckeKind::A, f.module, z, zp, cfg, f);
    CHECK((shell.value - direct.value).abs().abs_below_pow2(-36));

    Complex zb{Real::of_str("0.125", wp), Real::of_str("0.8", wp)};
    Complex zpb{Real::of_str("0.0625", wp), Real::of_str("0.7", wp)};
    EvalResult shellb = eval_hecke(HeckeKind::B, f.module, zb, zpb, cfg, f);
    EvalResult directb = hecke_direct(HeckeKind::B, f.module, zb, zpb, cfg, f);
    CHECK((shellb.value - directb.value).abs().abs_below_pow2(-36));

    CHECK_THROWS_AS(eval_hecke(HeckeKind::A, f.module, zb, zpb, cfg, f), DomainError);
    CHECK_THROWS_AS(eval_hecke(HeckeKind::B, f.module, z, zp, cfg, f), DomainError);
}

TEST_CASE("hecke relation induced by a kernel witness") {
    // The witness (2,-1,-1) of the kernel triple forces, at the level of the
    // Hecke series, 2 A_{beta^-1 M}(u) = A_M(u) + A_M(zeta u) for the
    // non-trivial kernel point zeta. Evaluate both sides as shell sums.
    QuadNum theta = qn(-1, 1, 1, 2);
    Frame f = perron_frame(theta);
    QuadNum eta = positive_unit(theta);
    QuadNum beta = qn(2, 1, 1, 2);
    QuadNum zero = qn(0, 0, 1, 2);
    EvalConfig cfg{72, 200000, 8};
    mpfr_prec_t wp = cfg.work_prec();

    Complex z{Real::of_str("0.125", wp), Real::of_str("0.8", wp)};
    Complex zp{Real::of_str("-0.0625", wp), Real::of_str("-0.75", wp)};

    ZModule pre = scale(f.module, inv(beta));
    Complex lhs = eval_hecke(HeckeKind::A, pre, z, zp, cfg, f).value;
    lhs = lhs + lhs;

    // A_M(zeta u) as the shell sum of the twisted R-function; eta fixes zeta.
    RationalFn2 rm = r_fn(zero, eta, f.module, RVariant::minus, f);
    RationalFn2 rtw = twist(rm, rotation(f, qn(0, 1, 2, 2)));
    auto shell_at = [&](const QuadNum& s) {
        Real sr = to_real(s, wp), sc = to_real(conj(s), wp);
        NumericPoint pt =
            phi_eval(f, Complex{z.re * sr, z.im * sr}, Complex{zp.re * sc, zp.im * sc});
        return rf_eval(rtw, pt, wp);
    };
    Complex rhs = eval_hecke(HeckeKind::A, f.module, z, zp, cfg, f).value;
    rhs = rhs + shell_at(qn(1, 0, 1, 2));
    for (const QuadNum& step : {eta, inv(eta)}) {
        QuadNum pw = step;
        for (long k = 1; k <= 24; ++k) {
            Complex t = shell_at(pw);
            rhs = rhs + t;
            if (k >= 2 && t.abs().abs_below_pow2(-(static_cast<long>(cfg.prec) + 4))) break;
            pw = pw * step;
        }
    }
    CHECK((lhs - rhs).abs().abs_below_pow2(-36));
}

TEST_CASE("truncation failure raises ConvergenceError") {
    QuadNum theta = qn(-1, 1, 1, 2);
    EvalConfig tiny{96, 3, 8};
    NumericPoint p = rat_point(9, 10, 1, 2, tiny.work_prec());
    CHECK_THROWS_AS(eval_f(theta, p, tiny), ConvergenceError);
}

TEST_CASE("masser identity for generic and rational w") {
    EvalConfig cfg{96, 200000, 8};
    mpfr_prec_t wp = cfg.work_prec();
    const QuadNum ws[2] = {qn(-1, 1, 1, 3), qn(2, 0, 3, 2)}; // sqrt(3)-1 and 2/3
    for (const QuadNum& w : ws) {
        NumericPoint p = rat_point(1, 4, 2, 5, wp);
        NumericPoint p2{p.u * p.u, p.v * p.v};
        Complex val = Complex::of_long(4, wp) * eval_f(w, p2, cfg).value -
                      eval_f(w, p, cfg).value -
                      eval_f(w, NumericPoint{-p.u, p.v}, cfg).value -
                      eval_f(w, NumericPoint{p.u, -p.v}, cfg).value -
                      eval_f(w, NumericPoint{-p.u, -p.v}, cfg).value;
        CHECK(val.abs().abs_below_pow2(-88));
    }
}
