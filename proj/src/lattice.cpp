#include "hmx/lattice.hpp"

namespace hmx {

namespace {

// Determinant of the basis matrix [[b0, b1], [b0', b1']]; nonzero iff the
// basis is Q-linearly independent.
QuadNum basis_det(const QuadNum& b0, const QuadNum& b1) {
    return b0 * conj(b1) - b1 * conj(b0);
}

} // namespace

ZModule::ZModule(QuadNum b0_, QuadNum b1_) : b0(std::move(b0_)), b1(std::move(b1_)) {
    common_field(b0, b1);
    if (basis_det(b0, b1).is_zero())
        throw InputError("module basis is linearly dependent over Q");
}

std::pair<Rat, Rat> coords(const ZModule& M, const QuadNum& x) {
    // Solve x = u*b0 + v*b1 componentwise on (1, sqrt(d)).
    const Rat &p = M.b0.a, &q = M.b0.b, &r = M.b1.a, &s = M.b1.b;
    Rat det = p * s - q * r;
    Rat u = (x.a * s - x.b * r) / det;
    Rat v = (p * x.b - q * x.a) / det;
    return {u, v};
}

bool contains(const ZModule& M, const QuadNum& x) {
    auto [u, v] = coords(M, x);
    return is_integer(u) && is_integer(v);
}

bool module_subset(const ZModule& inner, const ZModule& outer) {
    return contains(outer, inner.b0) && contains(outer, inner.b1);
}

bool module_equal(const ZModule& a, const ZModule& b) {
    return module_subset(a, b) && module_subset(b, a);
}

Rat index(const ZModule& N, const ZModule& M) {
    auto [u0, v0] = coords(N, M.b0);
    auto [u1, v1] = coords(N, M.b1);
    Rat det = u0 * v1 - v0 * u1;
    return det < 0 ? Rat(-det) : det;
}

ZModule scale(const ZModule& M, const QuadNum& nu) {
    if (nu.is_zero()) throw DomainError("scaling a module by zero");
    return ZModule(nu * M.b0, nu * M.b1);
}

std::vector<QuadNum> coset_reps(const ZModule& N, const ZModule& M) {
    if (!module_subset(M, N)) throw DomainError("coset_reps requires M contained in N");
    auto [u0, v0] = coords(N, M.b0);
    auto [u1, v1] = coords(N, M.b1);
    // Rows of C are the coordinates of M's basis in N's basis; integral here.
    Int r0[2] = {u0.get_num(), v0.get_num()};
    Int r1[2] = {u1.get_num(), v1.get_num()};
    // Hermite form by row operations: clear the first column.
    while (r1[0] != 0) {
        Int q = floor_div(r0[0], r1[0]);
        r0[0] -= q * r1[0];
        r0[1] -= q * r1[1];
        std::swap(r0[0], r1[0]);
        std::swap(r0[1], r1[1]);
    }
    // Now r1[0] == 0; make pivots positive.
    if (r0[0] < 0) {
        r0[0] = -r0[0];
        r0[1] = -r0[1];
    }
    if (r1[1] < 0) r1[1] = -r1[1];
    if (r0[0] == 0 || r1[1] == 0) throw DomainError("degenerate inclusion matrix");
    std::vector<QuadNum> reps;
    for (Int a = 0; a < r0[0]; ++a)
        for (Int b = 0; b < r1[1]; ++b)
            reps.push_back(QuadNum::rational(Rat(a), N.field()) * N.b0 +
                           QuadNum::rational(Rat(b), N.field()) * N.b1);
    return reps;
}

DualData dual(const ZModule& M) {
    QuadNum det = basis_det(M.b0, M.b1);
    DualData dd;
    dd.primal = M;
    dd.b0s = conj(M.b1) / det;
    dd.b1s = -conj(M.b0) / det;
    return dd;
}

ZModule stabiliser(const ZModule& M) {
    long d = M.field();
    // Maximal-order generator: omega = (1+sqrt(d))/2 if d = 1 mod 4, else sqrt(d).
    QuadNum omega = (d % 4 == 1) ? QuadNum(make_rat(1, 2), make_rat(1, 2), d)
                                 : QuadNum::sqrt_d(d);
    // {x in Q : x*omega*M inside M} is a fractional ideal fZ; f is the conductor.
    Int num_gcd(0), den_lcm(1);
    for (const QuadNum& b : {M.b0, M.b1}) {
        auto [u, v] = coords(M, omega * b);
        for (const Rat& c : {u, v}) {
            if (c == 0) continue;
            num_gcd = gcd(num_gcd, c.get_num());
            den_lcm = lcm(den_lcm, c.get_den());
        }
    }
    if (num_gcd == 0) throw DomainError("stabiliser: degenerate multiplication data");
    Rat f = make_rat(den_lcm, num_gcd);
    if (!is_integer(f)) throw DomainError("stabiliser conductor is not integral");
    return ZModule(QuadNum::rational(Rat(1), d), QuadNum::rational(f, d) * omega);
}

QuadNum disc_sqrt(const ZModule& M) {
    QuadNum det = basis_det(M.b0, M.b1);
    return sgn(det) < 0 ? -det : det;
}

QuadNum reduce_mod(const ZModule& M, const QuadNum& alpha) {
    auto [u, v] = coords(M, alpha);
    Rat fu = u - Rat(rat_floor(u));
    Rat fv = v - Rat(rat_floor(v));
    return QuadNum::rational(fu, M.field()) * M.b0 + QuadNum::rational(fv, M.field()) * M.b1;
}

} // namespace hmx
