#include "hmx/semifree.hpp"

#include <algorithm>

namespace hmx {

namespace {

// Least l >= 1 with l*alpha in M.
Int torsion_order(const ZModule& M, const QuadNum& alpha) {
    auto [u, v] = coords(M, alpha);
    return lcm(u.get_den(), v.get_den());
}

Int norm_abs(const QuadNum& beta) {
    Rat n = norm(beta);
    if (!is_integer(n)) throw InputError("beta is not integral over the module");
    Int a = n.get_num();
    return a < 0 ? Int(-a) : a;
}

// Normalize a class: reduce alphas mod M; flip the base orientation when all
// betas are negative under the real embedding.
void normalize_class(const Frame& f, std::vector<SemiFreePoint>& pts,
                     const std::vector<size_t>& cls) {
    bool all_neg = true;
    for (size_t i : cls)
        if (sgn(pts[i].beta) > 0) all_neg = false;
    for (size_t i : cls) {
        if (all_neg) pts[i].beta = -pts[i].beta;
        pts[i].alpha = reduce_mod(f.module, pts[i].alpha);
    }
}

std::vector<Int> primitive(std::vector<Rat> v) {
    Int den(1), num(0);
    for (const Rat& x : v) den = lcm(den, x.get_den());
    std::vector<Int> out;
    out.reserve(v.size());
    for (const Rat& x : v) out.push_back(x.get_num() * (den / x.get_den()));
    for (const Int& x : out) num = gcd(num, x);
    if (num > 1)
        for (Int& x : out) x /= num;
    // Sign convention: the first entry of maximal absolute value is positive.
    size_t arg = 0;
    Int best(0);
    for (size_t i = 0; i < out.size(); ++i) {
        Int a = abs(out[i]);
        if (a > best) {
            best = a;
            arg = i;
        }
    }
    if (out[arg] < 0)
        for (Int& x : out) x = -x;
    return out;
}

} // namespace

long choose_L(const SemiFreeTuple& t, const std::vector<size_t>& cls, const DecideOptions& opt) {
    if (cls.empty()) throw InputError("choose_L on an empty class");
    Int acc = opt.lcm_mode ? Int(1) : Int(1);
    for (size_t i : cls) {
        Int li = torsion_order(t.frame.module, t.points[i].alpha);
        Int gi = norm_abs(t.points[i].beta);
        Int gl = gi * li;
        acc = opt.lcm_mode ? lcm(acc, gl) : acc * gl;
    }
    Int L = Int(static_cast<long>(cls.size()) + opt.nprime_offset) * acc;
    if (L * L > Int(1) << 20) throw SizeError("coset space exceeds the 2^20 cap");
    return L.get_si();
}

std::vector<int> char_vector(const Frame& f, const QuadNum& alpha, const QuadNum& beta, long L) {
    const ZModule& M = f.module;
    // chi(mu) for mu = (a b0 + b b1)/L tests integrality of the coordinates of
    // beta*mu + alpha = (a*beta*b0 + b*beta*b1)/L + alpha. Work with a common
    // integer scaling so the box scan is pure integer arithmetic.
    auto [u0, v0] = coords(M, beta * M.b0);
    auto [u1, v1] = coords(M, beta * M.b1);
    auto [ua, va] = coords(M, alpha);
    Int q(1);
    for (const Rat& r : {u0, v0, u1, v1, ua, va}) q = lcm(q, r.get_den());
    Int mod = q * L;
    auto scaled = [&](const Rat& r) { return Int(r.get_num() * (q / r.get_den())); };
    Int U0 = scaled(u0), V0 = scaled(v0), U1 = scaled(u1), V1 = scaled(v1);
    Int UA = scaled(ua) * L, VA = scaled(va) * L;

    std::vector<int> out;
    out.reserve(static_cast<size_t>(L) * L);
    long ones = 0;
    Int xa = UA, ya = VA;
    for (long a = 0; a < L; ++a) {
        Int x = xa, y = ya;
        for (long b = 0; b < L; ++b) {
            bool in = (x % mod == 0) && (y % mod == 0);
            out.push_back(in ? 1 : 0);
            if (in) ++ones;
            x += U1;
            y += V1;
        }
        xa += U0;
        ya += V0;
    }
    if (Int(ones) != norm_abs(beta))
        throw DomainError("characteristic vector support does not match |norm(beta)|");
    return out;
}

Verdict decide(const SemiFreeTuple& t, const DecideOptions& opt) {
    SemiFreeTuple work = t;
    const Frame& f = work.frame;
    const ZModule S = stabiliser(f.module);
    for (const SemiFreePoint& p : work.points) {
        if (p.beta.is_zero()) throw InputError("beta must be non-zero");
        if (!contains(S, p.beta)) throw InputError("beta is not in the stabiliser order");
    }

    // Classes follow the declared base labels, in first-appearance order.
    std::vector<std::string> order;
    std::map<std::string, std::vector<size_t>> classes;
    for (size_t i = 0; i < work.points.size(); ++i) {
        const std::string& b = work.points[i].base;
        if (!classes.count(b)) order.push_back(b);
        classes[b].push_back(i);
    }

    Verdict v;
    for (const std::string& base : order) {
        std::vector<size_t>& cls = classes[base];
        normalize_class(f, work.points, cls);
        long L = choose_L(work, cls, opt);

        size_t m = cls.size();
        std::vector<std::vector<Rat>> rows;   // chi rows, eliminated in place
        std::vector<std::vector<Rat>> combo;  // row_i as a combination of inputs
        std::vector<long> pivots;
        std::optional<std::vector<Int>> witness;

        for (size_t r = 0; r < m && !witness; ++r) {
            const SemiFreePoint& pt = work.points[cls[r]];
            std::vector<int> chi = char_vector(f, pt.alpha, pt.beta, L);
            std::vector<Rat> row(chi.begin(), chi.end());
            std::vector<Rat> cb(m, Rat(0));
            cb[r] = 1;
            for (size_t k = 0; k < rows.size(); ++k) {
                const Rat& lead = row[static_cast<size_t>(pivots[k])];
                if (lead == 0) continue;
                Rat factor = lead / rows[k][static_cast<size_t>(pivots[k])];
                for (size_t j = 0; j < row.size(); ++j) row[j] -= factor * rows[k][j];
                for (size_t j = 0; j < m; ++j) cb[j] -= factor * combo[k][j];
            }
            long piv = -1;
            for (size_t j = 0; j < row.size(); ++j) {
                if (row[j] != 0) {
                    piv = static_cast<long>(j);
                    break;
                }
            }
            if (piv < 0) {
                // Dependent row: cb holds b with sum b_i chi_i = 0.
                std::vector<Rat> c(m);
                for (size_t j = 0; j < m; ++j)
                    c[j] = cb[j] * Rat(norm_abs(work.points[cls[j]].beta));
                witness = primitive(std::move(c));
            } else {
                rows.push_back(std::move(row));
                combo.push_back(std::move(cb));
                pivots.push_back(piv);
            }
        }

        if (witness) {
            // Re-verify the chi-linear system exactly before reporting.
            std::vector<Rat> sum(static_cast<size_t>(L) * L, Rat(0));
            for (size_t j = 0; j < m; ++j) {
                const SemiFreePoint& pt = work.points[cls[j]];
                Rat bj = Rat((*witness)[j]) / Rat(norm_abs(pt.beta));
                std::vector<int> chi = char_vector(f, pt.alpha, pt.beta, L);
                for (size_t k = 0; k < chi.size(); ++k)
                    if (chi[k]) sum[k] += bj;
            }
            for (const Rat& s : sum)
                if (s != 0) throw DomainError("witness failed exact re-verification");
            v.semifree = false;
        }
        v.classes.push_back({base, cls, witness, L});
    }
    return v;
}

Certificate certificate(const SemiFreeTuple& t, const std::vector<size_t>& cls,
                        const std::vector<Int>& witness) {
    const Frame& f = t.frame;
    if (!f.theta) throw CertificateError("certificate requires a Perron frame");
    if (witness.size() != cls.size()) throw CertificateError("witness length mismatch");
    long fieldd = f.module.field();
    QuadNum zero = QuadNum::rational(Rat(0), fieldd);

    std::vector<QuadNum> alphas, betas;
    for (size_t i : cls) {
        const SemiFreePoint& p = t.points[i];
        if (sgn(p.beta) <= 0)
            throw CertificateError("certificate requires beta > 0 (normalize the base first)");
        alphas.push_back(reduce_mod(f.module, p.alpha));
        betas.push_back(p.beta);
    }

    // Re-anchor the base to v^(eta^-k) until every beta is dominant.
    QuadNum eta = positive_unit(*f.theta);
    long boost = 0;
    auto dominant = [&](const QuadNum& b) {
        QuadNum bp = conj(b);
        QuadNum a = sgn(bp) >= 0 ? bp : -bp;
        return sgn(b - a) >= 0;
    };
    for (; boost <= 64; ++boost) {
        bool ok = true;
        for (const QuadNum& b : betas)
            if (!dominant(b)) ok = false;
        if (ok) break;
        for (QuadNum& b : betas) b = b * eta;
    }
    if (boost > 64) throw CertificateError("could not reach the dominant sign classes");

    // Common fixing unit for all torsion data.
    std::vector<TorsionPoint> tors;
    for (size_t i = 0; i < alphas.size(); ++i) {
        tors.push_back(TorsionPoint{reduce_mod(f.module, alphas[i])});
        tors.push_back(TorsionPoint{reduce_mod(f.module, alphas[i] / betas[i])});
    }
    QuadNum eta_fix = fixing_unit(f, tors);

    // Shell identities for both variants, with the witness coefficients.
    for (RVariant variant : {RVariant::minus, RVariant::plus}) {
        RationalFn2 sum;
        for (size_t i = 0; i < betas.size(); ++i) {
            ZModule Ni = scale(f.module, inv(betas[i]));
            RationalFn2 shell = r_fn(zero, eta_fix, Ni, variant, f);
            shell = twist(shell, rotation(f, alphas[i] / betas[i]));
            sum = rf_add(sum, rf_scale(shell, Cyclo::of_rat(Rat(witness[i]))));
        }
        if (!sum.is_zero())
            throw CertificateError("shell identity failed: witness does not annihilate the class");
    }

    // Lambda = -sum_i c_i R_(alpha_i, beta_i, M) - sum_(mixed i) c_i Theta_M(zeta_i u^beta_i).
    RationalFn2 lambda;
    RationalFn2 theta_m = theta_fn(f.module, f);
    std::vector<Int> rel = witness;
    for (size_t i = 0; i < betas.size(); ++i) {
        Cyclo ci = Cyclo::of_rat(Rat(witness[i]));
        RationalFn2 ri = r_fn(alphas[i], betas[i], f.module, RVariant::minus, f);
        lambda = rf_sub(lambda, rf_scale(ri, ci));
        if (sgn(conj(betas[i])) < 0) {
            RationalFn2 th = twist(theta_m, rotation(f, alphas[i]));
            th = compose_pow(th, action_matrix(f, betas[i]).m);
            lambda = rf_sub(lambda, rf_scale(th, ci));
            rel[i] = -rel[i];
        }
    }
    rf_simplify(lambda);
    return Certificate{lambda, rel, boost};
}

CrosscheckReport numeric_crosscheck(const SemiFreeTuple& t, const std::vector<size_t>& cls,
                                    const Certificate& cert, const EvalConfig& cfg) {
    const Frame& f = t.frame;
    if (!f.theta) throw DomainError("numeric_crosscheck requires a Perron frame");
    if (cls.empty()) throw InputError("empty class");
    const std::string& label = t.points[cls[0]].base;
    auto it = t.bases.find(label);
    if (it == t.bases.end()) throw InputError("no numeric value supplied for base " + label);

    mpfr_prec_t wp = cfg.work_prec();
    QuadNum eta = positive_unit(*f.theta);

    // Anchored base: v_anchor = v^(eta^-boost).
    NumericPoint anchor = it->second;
    if (cert.eta_boost > 0) {
        Mat2z inv_eta = mat_adjugate(action_matrix(f, eta).m); // det(eta-action) = 1
        for (long k = 0; k < cert.eta_boost; ++k) anchor = act(inv_eta, anchor);
    }

    Complex lhs(wp);
    for (size_t idx = 0; idx < cls.size(); ++idx) {
        const SemiFreePoint& p = t.points[cls[idx]];
        QuadNum beta = p.beta;
        for (long k = 0; k < cert.eta_boost; ++k) beta = beta * eta;
        NumericPoint ui = act(action_matrix(f, beta).m, anchor);
        NumericPoint zi = torsion_coords(f, reduce_mod(f.module, p.alpha), wp);
        ui = NumericPoint{ui.u * zi.u, ui.v * zi.v};
        if (!in_domain(ui, *f.theta, DomainTag::D, cfg.prec))
            throw DomainError("tuple point leaves the convergence domain");
        EvalResult fe = eval_f(*f.theta, ui, cfg);
        Real c = Real::of_int(cert.relation_coeffs[idx], wp);
        lhs = lhs + Complex{fe.value.re * c, fe.value.im * c};
    }

    Complex rhs = rf_eval(cert.lambda, anchor, wp);
    Real err = (lhs - rhs).abs();
    long tol_bits = cfg.prec - cfg.tail_margin;
    CrosscheckReport rep;
    rep.pass = err.abs_below_pow2(-tol_bits);
    rep.err_hex = err.str(8);
    rep.tol_bits = tol_bits;
    return rep;
}

} // namespace hmx
