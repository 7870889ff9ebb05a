#pragma once

#include <optional>
#include <vector>

#include "hmx/quadnum.hpp"

namespace hmx {

// Complete Z-module of K with an ordered basis (b0, b1). Module identity
// (membership, equality, index) is basis-independent; the ordered basis is
// kept because the torus action depends on it.
struct ZModule {
    QuadNum b0, b1;

    ZModule() = default;
    ZModule(QuadNum b0_, QuadNum b1_);

    long field() const { return common_field(b0, b1); }
};

// Coordinates of x in the basis of M (exact 2x2 solve).
std::pair<Rat, Rat> coords(const ZModule& M, const QuadNum& x);

bool contains(const ZModule& M, const QuadNum& x);
bool module_subset(const ZModule& inner, const ZModule& outer);
bool module_equal(const ZModule& a, const ZModule& b);

// Generalized index [N : M] = |det| of the change of basis, a positive
// rational; equals the group order when M is contained in N.
Rat index(const ZModule& N, const ZModule& M);

ZModule scale(const ZModule& M, const QuadNum& nu); // throws on nu = 0

// Representatives of N/M for M contained in N, via Hermite reduction of the
// inclusion matrix. Exactly index(N, M) elements.
std::vector<QuadNum> coset_reps(const ZModule& N, const ZModule& M);

struct DualData {
    ZModule primal;
    QuadNum b0s, b1s; // trace-dual basis: trace(b_i * b_j*) = delta_ij

    ZModule dual_module() const { return ZModule(b0s, b1s); }
    // Rows of the basis matrix [[B0*, B0*'], [B1*, B1*']].
    std::array<QuadNum, 4> goth() const { return {b0s, conj(b0s), b1s, conj(b1s)}; }
};

DualData dual(const ZModule& M);

// The stabiliser order S(M) = { beta : beta*M inside M }, returned with
// basis (1, f*omega) for the conductor f.
ZModule stabiliser(const ZModule& M);

// Positive square root of the discriminant of M: |b0*b1' - b1*b0'|, a pure
// sqrt(d)-multiple with conj(x) = -x.
QuadNum disc_sqrt(const ZModule& M);

// Canonical coset representative of alpha modulo M (coordinates in [0,1)).
QuadNum reduce_mod(const ZModule& M, const QuadNum& alpha);

} // namespace hmx
