#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hmx/cyclo.hpp"
#include "hmx/torus.hpp"

namespace hmx {

// Sparse bivariate Laurent polynomial with cyclotomic coefficients.
using Poly2 = std::map<std::pair<long, long>, Cyclo>;

void poly_add_term(Poly2& p, long i, long j, const Cyclo& c);
Poly2 poly_mul(const Poly2& x, const Poly2& y);

// Denominator factor (1 - u^a v^b)^mult, normalized so a > 0 or (a = 0, b > 0).
struct DenFactor {
    long a = 0, b = 0;
    int mult = 1;
};

// Bivariate rational function: Laurent numerator over a product of binomial
// factors. Equality is decided by cross-multiplication.
struct RationalFn2 {
    Poly2 num;
    std::vector<DenFactor> den;
    bool v_open = false; // built with rho2 = infinity; series form needs |v| < 1

    bool is_zero() const { return num.empty(); }
};

RationalFn2 rf_zero();
RationalFn2 rf_monomial(long i, long j, const Cyclo& c);
// Multiply the numerator by a monomial and append a normalized denominator factor.
void rf_push_den(RationalFn2& r, long a, long b, int mult);
// Cancel denominator factors that divide the numerator exactly.
void rf_simplify(RationalFn2& r);

RationalFn2 rf_add(const RationalFn2& x, const RationalFn2& y);
RationalFn2 rf_sub(const RationalFn2& x, const RationalFn2& y);
RationalFn2 rf_neg(const RationalFn2& x);
RationalFn2 rf_scale(const RationalFn2& x, const Cyclo& c);
bool rf_equal(const RationalFn2& x, const RationalFn2& y);

// Substitute (u, v) -> (e(r1) u, e(r2) v); exact, phases cleared from the
// denominator by grouping conjugate factors.
RationalFn2 twist(const RationalFn2& x, const std::pair<Rat, Rat>& rot);
// Substitute the monomial action u -> B.u (exponent map by the transpose).
RationalFn2 compose_pow(const RationalFn2& x, const Mat2z& m);

Complex rf_eval(const RationalFn2& x, const NumericPoint& p, mpfr_prec_t prec);

// f_inf(u,v) = uv / ((1-u)(1-v)).
RationalFn2 f_inf();

// Generating function of { (l,h) in Z : l > 0, rho1 l < h <= rho2 l } over a
// finite-index sublattice Z of Z^2 (columns of `sub` generate it). Boundary
// inclusion is configurable; rho2 = nullopt means +infinity (v_open result).
RationalFn2 cone_sum(const Rat& rho1, const std::optional<Rat>& rho2, const Mat2z& sub,
                     bool lower_inc = false, bool upper_inc = true);

struct Slopes {
    std::optional<Rat> rho, rho_plus; // nullopt = +infinity
};

// rho(beta) = t(beta/sqrt(D)) / t(theta^-1 beta/sqrt(D)), rho+(beta) = t(beta)/t(theta^-1 beta).
Slopes slopes(const QuadNum& beta, const Frame& f);

enum class RVariant { minus, plus };

// The rational functions R_(alpha,beta,N) and R+_(alpha,beta,N) as exact cone
// sums over the coordinate lattice of beta*N* twisted by the torsion point
// attached to alpha/beta.
RationalFn2 r_fn(const QuadNum& alpha, const QuadNum& beta, const ZModule& N, RVariant variant,
                 const Frame& f);

// Rational function of the full staircase sum attached to N (contains M).
RationalFn2 theta_fn(const ZModule& N, const Frame& f);

// Checks the kernel-averaging identity
//   sum_{zeta in Ker(beta)} R_(eta,M)(zeta u) = |n(beta)| R_(eta, beta^-1 M)(u)
// by exact rational-function equality.
bool gauss_average_check(const QuadNum& beta, const QuadNum& eta, const Frame& f);

// Coordinate lattice of beta*N* in the (B0*, B1*) basis of M*; columns generate.
Mat2z dual_sublattice(const Frame& f, const ZModule& N, const QuadNum& beta);

// Power-series coefficients of x up to weighted degree bound; weight (1,1)
// must be positive on every denominator direction (asserted).
Poly2 expand_total(const RationalFn2& x, long total_degree);
Poly2 expand_weighted(const RationalFn2& x, long w1, long w2, long bound);

} // namespace hmx
