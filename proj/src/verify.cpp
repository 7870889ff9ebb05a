#include "hmx/verify.hpp"

#include <chrono>
#include <sstream>

namespace hmx {

namespace {

unsigned long lcg(unsigned long& s) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return s >> 17;
}

long pick(unsigned long& s, long lo, long hi) { // inclusive
    return lo + static_cast<long>(lcg(s) % static_cast<unsigned long>(hi - lo + 1));
}

Complex small_complex(unsigned long& s, long num_range, long den, mpfr_prec_t prec) {
    Rat re = make_rat(pick(s, -num_range, num_range), den);
    Rat im = make_rat(pick(s, -num_range, num_range), den);
    return Complex{Real::of_rat(re, prec), Real::of_rat(im, prec)};
}

void push(std::vector<CheckResult>& out, const std::string& name, bool pass,
          const std::string& detail = "") {
    out.push_back({name, pass, detail});
}

Real tol_bits(long bits, mpfr_prec_t prec) { return Real::pow2(-bits, prec); }

QuadNum qn(long a, long b, long den, long d) {
    return QuadNum(make_rat(a, den), make_rat(b, den), d);
}

} // namespace

bool all_pass(const std::vector<CheckResult>& checks) {
    for (const CheckResult& c : checks)
        if (!c.pass) return false;
    return true;
}

NumericPoint sample_domain_point(const QuadNum& w, DomainTag tag, mpfr_prec_t prec,
                                 unsigned long& state) {
    for (int tries = 0; tries < 1000; ++tries) {
        Complex u = small_complex(state, 45, 128, prec);
        Complex v = small_complex(state, 80, 128, prec);
        if (u.abs().abs_below_pow2(-6) || v.abs().abs_below_pow2(-6)) continue;
        NumericPoint p{u, v};
        if (in_domain(p, w, tag, prec)) return p;
    }
    throw DomainError("failed to sample a domain point");
}

std::vector<CheckResult> suite_masser(mpfr_prec_t prec, unsigned long seed) {
    std::vector<CheckResult> out;
    EvalConfig cfg{prec, 200000, 8};
    Real tol = tol_bits(88, prec);
    unsigned long s = seed * 2 + 1;

    const QuadNum ws[3] = {qn(-1, 1, 1, 2), qn(-1, 1, 2, 5), qn(-1, 1, 1, 3)};
    for (const QuadNum& w : ws) {
        for (int k = 0; k < 3; ++k) {
            NumericPoint p = sample_domain_point(w, DomainTag::D, prec, s);
            mpfr_prec_t wp = cfg.work_prec();
            NumericPoint p2{p.u * p.u, p.v * p.v};
            NumericPoint pmu{-p.u, p.v}, pmv{p.u, -p.v}, pmm{-p.u, -p.v};
            Complex four = Complex::of_long(4, wp);
            Complex val = four * eval_f(w, p2, cfg).value - eval_f(w, p, cfg).value -
                          eval_f(w, pmu, cfg).value - eval_f(w, pmv, cfg).value -
                          eval_f(w, pmm, cfg).value;
            std::ostringstream name;
            name << "masser identity d=" << w.d << " point " << k;
            push(out, name.str(), val.abs() < tol, "|residual|=" + val.abs().str(6));
        }
    }

    // Rational form of the same relation through f_inf and its 2-torsion twists.
    QuadNum theta = qn(-1, 1, 1, 2);
    Frame f = perron_frame(theta);
    RationalFn2 lhs = rf_scale(compose_pow(f_inf(), Mat2z(Int(2), Int(0), Int(0), Int(2))),
                               Cyclo::of_long(4));
    RationalFn2 rhs;
    ZModule half = scale(f.module, QuadNum::rational(make_rat(1, 2), theta.d));
    for (const QuadNum& rep : coset_reps(half, f.module))
        rhs = rf_add(rhs, twist(f_inf(), rotation(f, rep)));
    push(out, "f_inf two-torsion identity", rf_equal(lhs, rhs));
    return out;
}

std::vector<CheckResult> suite_feq(mpfr_prec_t prec, unsigned long seed) {
    std::vector<CheckResult> out;
    EvalConfig cfg{prec, 200000, 8};
    Real tol = tol_bits(88, prec);
    unsigned long s = seed * 3 + 5;

    QuadNum theta = qn(-1, 1, 1, 2);
    Frame f = perron_frame(theta);
    QuadNum eta = positive_unit(theta);
    QuadNum zero = QuadNum::rational(Rat(0), theta.d);
    Mat2z be = action_matrix(f, eta).m;

    RationalFn2 reta = r_fn(zero, eta, f.module, RVariant::minus, f);
    push(out, "R_eta closed form",
         rf_equal(reta, cone_sum(make_rat(0, 1), make_rat(2, 5), Mat2z::identity())));
    for (int k = 0; k < 10; ++k) {
        NumericPoint p = sample_domain_point(theta, DomainTag::D, prec, s);
        NumericPoint pe = act(be, p);
        Complex resid = eval_f(theta, pe, cfg).value - eval_f(theta, p, cfg).value +
                        rf_eval(reta, p, cfg.work_prec());
        push(out, "functional equation point " + std::to_string(k), resid.abs() < tol,
             "|residual|=" + resid.abs().str(6));
    }

    RationalFn2 reta_p = r_fn(zero, eta, f.module, RVariant::plus, f);
    push(out, "R+_eta closed form",
         rf_equal(reta_p, cone_sum(make_rat(3, 7), make_rat(1, 1), Mat2z::identity())));
    for (int k = 0; k < 10; ++k) {
        NumericPoint p = sample_domain_point(theta, DomainTag::Dplus, prec, s);
        NumericPoint pe = act(be, p);
        Complex resid = eval_fplus(theta, pe, cfg, f).value - eval_fplus(theta, p, cfg, f).value +
                        rf_eval(reta_p, p, cfg.work_prec());
        push(out, "twin functional equation point " + std::to_string(k), resid.abs() < tol,
             "|residual|=" + resid.abs().str(6));
    }

    RationalFn2 th = theta_fn(f.module, f);
    RationalFn2 th_expect = rf_monomial(1, 1, Cyclo::of_long(1));
    rf_push_den(th_expect, 1, 0, 1);
    rf_push_den(th_expect, 1, 1, 1);
    push(out, "Theta_M = uv/((1-u)(1-uv))", rf_equal(th, th_expect));
    for (int k = 0; k < 5; ++k) {
        NumericPoint p = sample_domain_point(theta, DomainTag::Dplus, prec, s);
        Complex resid = rf_eval(th, p, cfg.work_prec()) - eval_f(theta, p, cfg).value -
                        eval_fplus(theta, p, cfg, f).value;
        push(out, "Theta splitting point " + std::to_string(k), resid.abs() < tol,
             "|residual|=" + resid.abs().str(6));
    }

    Slopes sl = slopes(eta, f);
    bool a6 = sl.rho && sl.rho_plus && *sl.rho == make_rat(2, 5) && *sl.rho_plus == make_rat(3, 7);
    a6 = a6 && sgn(QuadNum::rational(*sl.rho_plus, 2) - theta) > 0 &&
         sgn(theta - QuadNum::rational(*sl.rho, 2)) > 0 && *sl.rho > 0;
    push(out, "slope sandwich for eta", a6);
    QuadNum beta_mixed = qn(1, 1, 1, 2); // 1 + sqrt(2), mixed sign class
    Slopes sm = slopes(beta_mixed, f);
    bool a6m = sm.rho && sm.rho_plus && sgn(QuadNum::rational(*sm.rho, 2) - theta) > 0 &&
               sgn(theta - QuadNum::rational(*sm.rho_plus, 2)) > 0 && *sm.rho_plus > 0;
    push(out, "mirrored slope sandwich", a6m);
    return out;
}

namespace {

SemiFreeTuple base_tuple(const Frame& f) {
    SemiFreeTuple t;
    t.frame = f;
    mpfr_prec_t prec = 96;
    t.bases.emplace("v", NumericPoint{Complex{Real::of_rat(make_rat(3, 10), prec + 32),
                                              Real::of_long(0, prec + 32)},
                                      Complex{Real::of_rat(make_rat(1, 2), prec + 32),
                                              Real::of_long(0, prec + 32)}});
    return t;
}

bool witness_is(const Verdict& v, size_t cls, const std::vector<long>& expect) {
    if (cls >= v.classes.size() || !v.classes[cls].witness) return false;
    const std::vector<Int>& w = *v.classes[cls].witness;
    if (w.size() != expect.size()) return false;
    for (size_t i = 0; i < w.size(); ++i)
        if (w[i] != expect[i]) return false;
    return true;
}

} // namespace

std::vector<CheckResult> suite_kernel(mpfr_prec_t prec, unsigned long seed, long trials) {
    std::vector<CheckResult> out;
    EvalConfig cfg{prec, 200000, 8};
    unsigned long s = seed * 5 + 11;

    double max_decide_ms = 0;
    auto timed_decide = [&](const SemiFreeTuple& t, const DecideOptions& opt = {}) {
        auto t0 = std::chrono::steady_clock::now();
        Verdict v = decide(t, opt);
        double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        if (ms > max_decide_ms) max_decide_ms = ms;
        return v;
    };

    QuadNum theta = qn(-1, 1, 1, 2);
    Frame f = perron_frame(theta);
    QuadNum eta = positive_unit(theta);
    QuadNum zero = QuadNum::rational(Rat(0), theta.d);
    QuadNum one = QuadNum::rational(Rat(1), theta.d);
    QuadNum beta = qn(2, 1, 1, 2); // 2 + sqrt(2)
    QuadNum half_rt2 = qn(0, 1, 2, 2);

    // (v^eta, v): witness (1, -1), Lambda = -R_eta.
    SemiFreeTuple t1 = base_tuple(f);
    t1.points = {{zero, eta, "v"}, {zero, one, "v"}};
    Verdict v1 = timed_decide(t1);
    push(out, "decide (v^eta, v)", !v1.semifree && witness_is(v1, 0, {1, -1}));
    {
        Certificate c = certificate(t1, v1.classes[0].indices, *v1.classes[0].witness);
        RationalFn2 expect = rf_neg(r_fn(zero, eta, f.module, RVariant::minus, f));
        push(out, "certificate (v^eta, v) = -R_eta", rf_equal(c.lambda, expect));
        CrosscheckReport r = numeric_crosscheck(t1, v1.classes[0].indices, c, cfg);
        push(out, "crosscheck (v^eta, v)", r.pass, "err=" + r.err_hex);
    }

    // Kernel triple for beta = 2+sqrt(2): witness (2, -1, -1), L = 16.
    SemiFreeTuple t2 = base_tuple(f);
    t2.points = {{zero, beta, "v"}, {zero, one, "v"}, {half_rt2, one, "v"}};
    Verdict v2 = timed_decide(t2);
    push(out, "decide kernel triple",
         !v2.semifree && witness_is(v2, 0, {2, -1, -1}) && v2.classes[0].L == 16);
    {
        Certificate c = certificate(t2, v2.classes[0].indices, *v2.classes[0].witness);
        RationalFn2 expect =
            rf_scale(r_fn(zero, beta, f.module, RVariant::minus, f), Cyclo::of_long(-2));
        push(out, "certificate kernel triple = -2 R_beta", rf_equal(c.lambda, expect));
        CrosscheckReport r = numeric_crosscheck(t2, v2.classes[0].indices, c, cfg);
        push(out, "crosscheck kernel triple", r.pass, "err=" + r.err_hex);
    }

    // Masser five-tuple: witness (-1,-1,-1,-1,4), Lambda = 0.
    ZModule half = scale(f.module, QuadNum::rational(make_rat(1, 2), theta.d));
    std::vector<QuadNum> reps = coset_reps(half, f.module);
    SemiFreeTuple t3 = base_tuple(f);
    for (const QuadNum& rep : reps) t3.points.push_back({rep, one, "v"});
    t3.points.push_back({zero, qn(2, 0, 1, 2), "v"});
    Verdict v3 = timed_decide(t3);
    push(out, "decide masser five-tuple", !v3.semifree && witness_is(v3, 0, {-1, -1, -1, -1, 4}));
    {
        Certificate c = certificate(t3, v3.classes[0].indices, *v3.classes[0].witness);
        push(out, "certificate masser five-tuple = 0", c.lambda.is_zero());
        CrosscheckReport r = numeric_crosscheck(t3, v3.classes[0].indices, c, cfg);
        push(out, "crosscheck masser five-tuple", r.pass, "err=" + r.err_hex);
    }

    // Every proper sub-tuple of the five-tuple is semi-free.
    bool subs_ok = true;
    for (unsigned mask = 1; mask + 1 < (1u << 5); ++mask) {
        if (__builtin_popcount(mask) == 5) continue;
        SemiFreeTuple sub = base_tuple(f);
        for (int i = 0; i < 5; ++i)
            if (mask & (1u << i)) sub.points.push_back(t3.points[i]);
        if (!timed_decide(sub).semifree) subs_ok = false;
    }
    push(out, "all proper sub-tuples semi-free", subs_ok);

    // Corollary-1 oracle: points zeta_i w^{r_i} on a 1-dimensional subgroup.
    long c1_trials = trials > 0 ? trials : 20;
    bool c1_ok = true;
    QuadNum dsq = disc_sqrt(f.module);
    for (long trial = 0; trial < c1_trials; ++trial) {
        long hh = pick(s, 0, 1), ll = 1 - hh; // direction (l,h) in {(1,0),(0,1)}
        QuadNum nu = QuadNum::rational(Rat(ll), theta.d) * f.dualdata.b0s +
                     QuadNum::rational(Rat(hh), theta.d) * f.dualdata.b1s;
        QuadNum gen = dsq / nu; // trace-zero direction against nu
        long q = pick(s, 2, 3);
        SemiFreeTuple t = base_tuple(f);
        long m = pick(s, 2, 3);
        std::vector<std::pair<long, QuadNum>> pts;
        for (long i = 0; i < m; ++i) {
            long ri = pick(s, 1, 2);
            long si = pick(s, 0, q - 1);
            QuadNum alpha = reduce_mod(f.module, QuadNum::rational(make_rat(si, q), theta.d) * gen);
            pts.push_back({ri, alpha});
            t.points.push_back({alpha, QuadNum::rational(Rat(ri), theta.d), "w"});
        }
        bool distinct = true;
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = i + 1; j < pts.size(); ++j)
                if (pts[i].first == pts[j].first &&
                    contains(f.module, pts[i].second - pts[j].second))
                    distinct = false;
        Verdict v;
        try {
            v = timed_decide(t);
        } catch (const SizeError&) {
            continue; // configuration exceeded the coset cap; resampled trial
        }
        if (v.semifree != distinct) c1_ok = false;
    }
    push(out, "corollary-1 oracle agreement", c1_ok);

    // Corollary-2 oracle: torsion-free points v^{beta_i} in a free S-module.
    long c2_trials = trials > 0 ? (trials + 1) / 2 : 10;
    bool c2_ok = true;
    ZModule S = stabiliser(f.module);
    for (long trial = 0; trial < c2_trials; ++trial) {
        long m = pick(s, 2, 3);
        std::vector<QuadNum> betas;
        SemiFreeTuple t = base_tuple(f);
        for (long i = 0; i < m; ++i) {
            QuadNum b = zero;
            while (b.is_zero()) b = qn(pick(s, -3, 3), pick(s, -2, 2), 1, 2);
            if (sgn(b) < 0) b = -b;
            betas.push_back(b);
            t.points.push_back({zero, b, "v"});
        }
        bool related = false;
        for (size_t i = 0; i < betas.size(); ++i) {
            for (size_t j = i + 1; j < betas.size(); ++j) {
                QuadNum tau = betas[j] / betas[i];
                Rat n = norm(tau);
                if (contains(S, tau) && (n == 1 || n == -1)) related = true;
            }
        }
        Verdict v;
        try {
            v = timed_decide(t);
        } catch (const SizeError&) {
            continue;
        }
        if (v.semifree != !related) c2_ok = false;
    }
    push(out, "corollary-2 oracle agreement", c2_ok);
    push(out, "decide stays under 2 s per decision", max_decide_ms < 2000.0,
         "max=" + std::to_string(max_decide_ms) + " ms");
    return out;
}

std::vector<CheckResult> suite_gauss(mpfr_prec_t prec) {
    (void)prec;
    std::vector<CheckResult> out;
    QuadNum theta = qn(-1, 1, 1, 2);
    Frame f = perron_frame(theta);
    QuadNum eta = positive_unit(theta);

    push(out, "gauss average beta=2+sqrt(2)", gauss_average_check(qn(2, 1, 1, 2), eta, f));
    push(out, "gauss average beta=2", gauss_average_check(qn(2, 0, 1, 2), eta, f));
    push(out, "gauss average beta=1", gauss_average_check(qn(1, 0, 1, 2), eta, f));

    // Gauss-sum lemma on module pairs: sum over reps is 0 or the index.
    struct Pair {
        QuadNum scale_outer, scale_inner;
    };
    QuadNum one = QuadNum::rational(Rat(1), theta.d);
    QuadNum half = QuadNum::rational(make_rat(1, 2), theta.d);
    const QuadNum pairs[5][2] = {
        {one, qn(2, 0, 1, 2)},  {one, qn(3, 0, 1, 2)}, {one, qn(2, 1, 1, 2)},
        {half, one},            {one, qn(0, 1, 1, 2)},
    };
    bool lemma_ok = true;
    for (const auto& pr : pairs) {
        ZModule M1 = scale(f.module, pr[0]);
        ZModule M2 = scale(M1, pr[1]);
        if (!module_subset(M2, M1)) {
            lemma_ok = false;
            continue;
        }
        Rat idx = index(M1, M2);
        std::vector<QuadNum> reps = coset_reps(M1, M2);
        DualData d1 = dual(M1), d2 = dual(M2);
        // Sample nus in M2* — some inside M1*, some outside.
        std::vector<QuadNum> nus = {d2.b0s, d2.b1s, d2.b0s + d2.b1s, d1.b0s, d1.b0s + d1.b1s};
        for (const QuadNum& nu : nus) {
            Cyclo sum;
            for (const QuadNum& mu : reps) sum = sum + Cyclo::root_of_unity(trace(mu * nu));
            bool inside = contains(d1.dual_module(), nu);
            Cyclo expect = inside ? Cyclo::of_rat(idx) : Cyclo();
            if (!(sum == expect)) lemma_ok = false;
        }
    }
    push(out, "gauss sum lemma on 5 module pairs", lemma_ok);
    return out;
}

std::vector<CheckResult> suite_vandermonde() {
    std::vector<CheckResult> out;
    QuadNum theta = qn(-1, 1, 1, 2);
    Frame f = perron_frame(theta);
    const ZModule& M = f.module;

    for (long L : {2L, 3L, 4L, 6L}) {
        // Entries e(t(mu nu)) for mu in L^-1 M/M, nu in M*/L M*.
        long n = L * L;
        long phi = euler_phi(L);
        std::vector<std::vector<Rat>> big(static_cast<size_t>(n) * phi,
                                          std::vector<Rat>(static_cast<size_t>(n) * phi, Rat(0)));
        Rat invL = make_rat(1, L);
        long row = 0;
        for (long a = 0; a < L; ++a) {
            for (long b = 0; b < L; ++b, ++row) {
                QuadNum mu = QuadNum::rational(invL * a, theta.d) * M.b0 +
                             QuadNum::rational(invL * b, theta.d) * M.b1;
                long col = 0;
                for (long c = 0; c < L; ++c) {
                    for (long dd = 0; dd < L; ++dd, ++col) {
                        QuadNum nu = QuadNum::rational(Rat(c), theta.d) * f.dualdata.b0s +
                                     QuadNum::rational(Rat(dd), theta.d) * f.dualdata.b1s;
                        Cyclo e = Cyclo::root_of_unity(trace(mu * nu));
                        // Regular representation over Q: phi x phi block of
                        // multiplication by e on the power basis of Q(zeta_L).
                        for (long k = 0; k < phi; ++k) {
                            Cyclo prod = e * Cyclo::root_of_unity(make_rat(k, L));
                            std::vector<Rat> cc = prod.coords_at(L);
                            for (long r2 = 0; r2 < phi; ++r2)
                                big[row * phi + r2][col * phi + k] = cc[static_cast<size_t>(r2)];
                        }
                    }
                }
            }
        }
        // Exact rank via Gaussian elimination.
        size_t dim = big.size();
        size_t rank = 0;
        for (size_t col = 0; col < dim && rank < dim; ++col) {
            size_t piv = rank;
            while (piv < dim && big[piv][col] == 0) ++piv;
            if (piv == dim) continue;
            std::swap(big[piv], big[rank]);
            for (size_t r2 = rank + 1; r2 < dim; ++r2) {
                if (big[r2][col] == 0) continue;
                Rat factor = big[r2][col] / big[rank][col];
                for (size_t c2 = col; c2 < dim; ++c2) big[r2][c2] -= factor * big[rank][c2];
            }
            ++rank;
        }
        push(out, "vandermonde matrix non-singular L=" + std::to_string(L), rank == dim);
    }
    return out;
}

std::vector<CheckResult> suite_hecke(mpfr_prec_t prec, unsigned long seed) {
    std::vector<CheckResult> out;
    EvalConfig cfg{prec, 200000, 8};
    unsigned long s = seed * 7 + 3;
    mpfr_prec_t wp = cfg.work_prec();

    QuadNum theta = qn(-1, 1, 1, 2);
    Frame f = perron_frame(theta);
    QuadNum eta = positive_unit(theta);
    QuadNum zero = QuadNum::rational(Rat(0), theta.d);

    Complex z{Real::of_rat(make_rat(pick(s, -4, 4), 16), wp),
              Real::of_rat(make_rat(pick(s, 9, 15), 16), wp)};
    Complex zp{Real::of_rat(make_rat(pick(s, -4, 4), 16), wp),
               Real::of_rat(make_rat(pick(s, -15, -9), 16), wp)};

    // Cauchy stabilization of the shell partial sums.
    RationalFn2 shell = r_fn(zero, eta, f.module, RVariant::minus, f);
    auto at_power = [&](long k) {
        QuadNum p = QuadNum::rational(Rat(1), theta.d);
        QuadNum step = k >= 0 ? eta : inv(eta);
        for (long i = 0; i < std::abs(k); ++i) p = p * step;
        Real sr = to_real(p, wp), sc = to_real(conj(p), wp);
        return phi_eval(f, Complex{z.re * sr, z.im * sr}, Complex{zp.re * sc, zp.im * sc});
    };
    Complex partial = rf_eval(shell, at_power(0), wp);
    Real last_delta = Real::of_long(1, wp);
    bool stabilized = false;
    for (long K = 1; K <= 64; ++K) {
        Complex delta = rf_eval(shell, at_power(K), wp) + rf_eval(shell, at_power(-K), wp);
        partial = partial + delta;
        last_delta = delta.abs();
        if (K >= 3 && last_delta.abs_below_pow2(-44)) {
            stabilized = true;
            break;
        }
    }
    push(out, "hecke shell sum cauchy-stable", stabilized, "last shell=" + last_delta.str(6));

    EvalResult shellsum = eval_hecke(HeckeKind::A, f.module, z, zp, cfg, f);
    push(out, "hecke heuristic tail flagged", !shellsum.rigorous);
    EvalResult direct = hecke_direct(HeckeKind::A, f.module, z, zp, cfg, f);
    Real diff = (shellsum.value - direct.value).abs();
    push(out, "hecke shell sum matches direct sum",
         diff.abs_below_pow2(-(static_cast<long>(prec) / 2)), "diff=" + diff.str(6));

    // C_N at conjugated arguments is the complex conjugate of A_N: evaluate
    // the C-series directly (negated support) at Phi(conj z, conj z').
    NumericPoint pc = phi_eval(f, z.conj(), zp.conj());
    QuadNum theta_p = conj(theta);
    Real target = Real::pow2(-(static_cast<long>(prec) + 8), 64);
    Complex cval(wp);
    long quiet = 0;
    for (long l = 1; quiet < 12 && l < 4000; ++l) {
        Int lo = floor_scaled(Int(l), theta_p);
        Int hi = floor_scaled(Int(l), theta);
        Real row_max = Real::of_long(0, 64);
        for (Int h = lo + 1; h <= hi; ++h) {
            Complex term = pc.u.pow_si(-l) * pc.v.pow_si(-h.get_si());
            cval = cval + term;
            if (row_max < term.abs()) row_max = term.abs();
        }
        if (row_max < target)
            ++quiet;
        else
            quiet = 0;
    }
    Real cdiff = (cval - direct.value.conj()).abs();
    push(out, "hecke conjugation identity", cdiff.abs_below_pow2(-(static_cast<long>(prec) / 2)),
         "diff=" + cdiff.str(6));
    return out;
}

std::vector<CheckResult> suite_structure() {
    std::vector<CheckResult> out;
    QuadNum theta = qn(-1, 1, 1, 2);
    Frame f = perron_frame(theta);
    QuadNum eta = positive_unit(theta);

    Mat2z be = action_matrix(f, eta).m;
    push(out, "action matrix of the unit",
         be == Mat2z(Int(5), Int(2), Int(2), Int(1)) && be.det() == 1);

    CFExpansion cf = cf_expand(theta);
    push(out, "purely periodic expansion",
         cf.preperiod.empty() && cf.period == std::vector<Int>{Int(2), Int(2)});

    QuadNum w = qn(0, 1, 2, 2); // sqrt(2)/2
    ReductionResult red = reduce_w(w);
    bool ok = red.theta == theta && abs(red.matD.det()) == 1 && moebius(red.matD, red.theta) == w &&
              red.matD == Mat2z(Int(0), Int(1), Int(1), Int(1));
    push(out, "reduction of sqrt(2)/2", ok);
    return out;
}

std::vector<CheckResult> run_suite(const std::string& name, mpfr_prec_t prec, unsigned long seed,
                                   long trials) {
    if (name == "masser") return suite_masser(prec, seed);
    if (name == "feq") return suite_feq(prec, seed);
    if (name == "kernel") return suite_kernel(prec, seed, trials);
    if (name == "gauss") return suite_gauss(prec);
    if (name == "vandermonde") return suite_vandermonde();
    if (name == "hecke") return suite_hecke(prec, seed);
    if (name == "structure") return suite_structure();
    if (name == "all") {
        std::vector<CheckResult> out;
        for (const char* n :
             {"masser", "feq", "kernel", "gauss", "vandermonde", "hecke", "structure"}) {
            auto part = run_suite(n, prec, seed, trials);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    }
    throw InputError("unknown suite: " + name);
}

} // namespace hmx
