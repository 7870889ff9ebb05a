#pragma once

#include <map>
#include <string>

#include "hmx/series.hpp"

namespace hmx {

struct SemiFreePoint {
    QuadNum alpha, beta;
    std::string base;
};

// Input of the semi-freeness decision: coset points grouped by declared base
// labels, over a Perron frame; optional numeric anchors for cross-checking.
struct SemiFreeTuple {
    Frame frame;
    std::vector<SemiFreePoint> points;
    std::map<std::string, NumericPoint> bases;
};

struct ClassVerdict {
    std::string base;
    std::vector<size_t> indices;           // positions in the input tuple
    std::optional<std::vector<Int>> witness; // primitive c-vector when rank-deficient
    long L = 0;
};

struct Verdict {
    bool semifree = true;
    std::vector<ClassVerdict> classes;
};

struct DecideOptions {
    bool lcm_mode = false;   // experimental: lcm of the g_i l_i in place of the product
    long nprime_offset = 1;  // N' = m + offset, any offset >= 1 is valid
};

// L = N' * prod(g_i * l_i) with l_i the torsion order of alpha_i and
// g_i = |norm(beta_i)|.
long choose_L(const SemiFreeTuple& t, const std::vector<size_t>& cls, const DecideOptions& opt);

// 0/1 indicator of mu in beta^-1(M - alpha)/M over mu in L^-1 M / M,
// flattened row-major over the (a, b) coordinate box [0,L)^2.
std::vector<int> char_vector(const Frame& f, const QuadNum& alpha, const QuadNum& beta, long L);

Verdict decide(const SemiFreeTuple& t, const DecideOptions& opt = {});

struct Certificate {
    RationalFn2 lambda;
    std::vector<Int> relation_coeffs; // f-value relation; sign-flipped on the mixed block
    long eta_boost = 0;               // base re-anchored to v^(eta^-boost)
};

// Exact rational certificate for a witnessed class: the shell identities are
// re-verified symbolically first, then Lambda is assembled so that
// sum_i relation_coeffs_i * f(u_i) = Lambda(anchored base).
Certificate certificate(const SemiFreeTuple& t, const std::vector<size_t>& cls,
                        const std::vector<Int>& witness);

struct CrosscheckReport {
    bool pass = false;
    std::string err_hex; // |sum - Lambda| as a short decimal string
    long tol_bits = 0;
};

CrosscheckReport numeric_crosscheck(const SemiFreeTuple& t, const std::vector<size_t>& cls,
                                    const Certificate& cert, const EvalConfig& cfg);

} // namespace hmx
