#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hmx/lattice.hpp"
#include "hmx/real.hpp"

namespace hmx {

// A framed module: ordered basis plus its trace dual. Perron frames also
// carry theta, which fixes the analyticity cone.
struct Frame {
    ZModule module;
    DualData dualdata;
    std::optional<QuadNum> theta;
};

Frame make_frame(const ZModule& m);
// M = Z + theta^-1 Z with basis (theta^-1, 1); requires the Perron condition.
Frame perron_frame(const QuadNum& theta);

// Point of G_m^2 given as the torsion point Phi(alpha, alpha'), alpha mod M.
struct TorsionPoint {
    QuadNum alpha;
};

struct NumericPoint {
    Complex u, v;
};

// Phi(alpha, alpha') * v_base^beta for a named base point.
struct CosetPoint {
    QuadNum alpha, beta;
    std::string base;
};

using TorusPoint = std::variant<TorsionPoint, NumericPoint, CosetPoint>;

// Rotation numbers of the torsion point Phi(alpha, alpha'): the exact pair
// (t(alpha*B0*), t(alpha*B1*)) reduced mod 1; coordinates are e() of these.
std::pair<Rat, Rat> rotation(const Frame& f, const QuadNum& alpha);
NumericPoint torsion_coords(const Frame& f, const QuadNum& alpha, mpfr_prec_t prec);

Real to_real(const QuadNum& x, mpfr_prec_t prec);

// (u, v) = (e(B0* z + B0*' z'), e(B1* z + B1*' z')).
NumericPoint phi_eval(const Frame& f, const Complex& z, const Complex& zp);

struct ActionMatrix {
    Mat2z m;
    QuadNum nu;
};

// Integer matrix of u -> u^nu; throws NotInOrderError when nu is not in S(M).
ActionMatrix action_matrix(const Frame& f, const QuadNum& nu);

NumericPoint act(const Mat2z& m, const NumericPoint& p);
TorusPoint act(const Frame& f, const ActionMatrix& a, const TorusPoint& p);

// u -> u^nu extends to an analytic self-map of C^2 iff all matrix entries are
// non-negative; on Perron frames the exact cone criterion is checked too.
bool is_analytic(const Frame& f, const QuadNum& nu);

// Non-singular, no root-of-unity eigenvalue, and the dominant eigenvector has
// strictly positive coordinates. Requires non-negative entries.
bool is_good(const Mat2z& m);

// The |norm(beta)| torsion points killed by u -> u^beta.
std::vector<TorsionPoint> kernel(const Frame& f, const QuadNum& beta);

// Smallest power of the canonical positive unit acting trivially on all the
// given torsion points.
QuadNum fixing_unit(const Frame& f, const std::vector<TorsionPoint>& zetas);

} // namespace hmx
