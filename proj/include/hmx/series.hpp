#pragma once

#include "hmx/rfun.hpp"

namespace hmx {

struct EvalConfig {
    mpfr_prec_t prec = 96;  // requested bits
    long max_terms = 200000;
    long tail_margin = 8;   // result accurate to 2^-(prec - tail_margin)

    mpfr_prec_t work_prec() const { return prec + 32; }
};

enum class DomainTag { D, Dplus, W_halfplane, Wplus_halfplane };

struct EvalResult {
    Complex value;
    long err_bits;  // |error| < 2^-err_bits
    bool rigorous;  // false for the Hecke shell sums (heuristic tail)
};

// Membership with a guard band: points within 2^(-prec/2) of the boundary are
// rejected. The W tags are the modulus form of the same conditions.
bool in_domain(const NumericPoint& p, const QuadNum& w, DomainTag tag, mpfr_prec_t prec);

// f_w(u,v) = sum_{l>=1} sum_{h=1..floor(lw)} u^l v^h. Exact floors, closed-form
// inner sums, geometric tail bound. Accepts any w > 0 (quadratic or rational).
EvalResult eval_f(const QuadNum& w, const NumericPoint& p, const EvalConfig& cfg);

// Twin series: h runs over floor(theta l)+1 .. floor((2/t(theta^-1)) l).
EvalResult eval_fplus(const QuadNum& theta, const NumericPoint& p, const EvalConfig& cfg,
                      const Frame& f);

// f_N or f+_N for N = beta^-1 M, via the series at u^beta plus the exact
// rational correction.
EvalResult eval_f_module(const QuadNum& beta, RVariant variant, const NumericPoint& p,
                         const EvalConfig& cfg, const Frame& f);

enum class HeckeKind { A, B };

// Hecke geometric series as a two-sided sum of unit-orbit shells of the
// corresponding R-function. The tail cut-off is heuristic (flagged).
EvalResult eval_hecke(HeckeKind kind, const ZModule& N, const Complex& z, const Complex& zp,
                      const EvalConfig& cfg, const Frame& f);

// Direct lattice-sum evaluation of the same series (test oracle).
EvalResult hecke_direct(HeckeKind kind, const ZModule& N, const Complex& z, const Complex& zp,
                        const EvalConfig& cfg, const Frame& f);

} // namespace hmx
