#include <doctest.h>

#include "hmx/torus.hpp"

using namespace hmx;

namespace {

QuadNum qn(long a, long b, long den, long d) {
    return QuadNum(make_rat(a, den), make_rat(b, den), d);
}

struct Rng {
    unsigned long s;
    long next(long lo, long hi) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return lo + static_cast<long>((s >> 17) % static_cast<unsigned long>(hi - lo + 1));
    }
};

bool close(const Complex& a, const Complex& b, long bits) {
    return (a - b).abs().abs_below_pow2(-bits);
}

} // namespace

TEST_CASE("phi at the origin and periodicity") {
    Frame f = perron_frame(qn(-1, 1, 1, 2));
    mpfr_prec_t prec = 128;
    Complex zero(prec);
    NumericPoint p = phi_eval(f, zero, zero);
    CHECK(close(p.u, Complex::of_long(1, prec), 120));
    CHECK(close(p.v, Complex::of_long(1, prec), 120));

    // Shift by a period Sigma(mu), mu in M.
    Complex z{Real::of_str("0.125", prec), Real::of_str("0.375", prec)};
    Complex zp{Real::of_str("-0.25", prec), Real::of_str("0.0625", prec)};
    NumericPoint base = phi_eval(f, z, zp);
    QuadNum mu = f.module.b0 + f.module.b0 - f.module.b1; // 2 theta^-1 - 1
    Complex zs = z + Complex{to_real(mu, prec), Real::of_long(0, prec)};
    Complex zps = zp + Complex{to_real(conj(mu), prec), Real::of_long(0, prec)};
    NumericPoint shifted = phi_eval(f, zs, zps);
    CHECK(close(base.u, shifted.u, 120));
    CHECK(close(base.v, shifted.v, 120));

    // Torsion lift of alpha = sqrt(2)/2 is the point (-1, -1).
    NumericPoint t = torsion_coords(f, qn(0, 1, 2, 2), prec);
    CHECK(close(t.u, Complex::of_long(-1, prec), 120));
    CHECK(close(t.v, Complex::of_long(-1, prec), 120));
}

TEST_CASE("action matrices") {
    Frame f = perron_frame(qn(-1, 1, 1, 2));
    CHECK(action_matrix(f, qn(3, 2, 1, 2)).m == Mat2z(Int(5), Int(2), Int(2), Int(1)));
    CHECK(action_matrix(f, qn(0, 1, 1, 2)).m == Mat2z(Int(1), Int(1), Int(1), Int(-1)));
    CHECK(action_matrix(f, qn(4, 0, 1, 2)).m == Mat2z(Int(4), Int(0), Int(0), Int(4)));
    CHECK_THROWS_AS(action_matrix(f, qn(1, 0, 2, 2)), NotInOrderError);

    // Ring homomorphism and determinant = norm, on random pairs in S.
    Rng rng{13};
    for (int i = 0; i < 50; ++i) {
        QuadNum a = qn(rng.next(-5, 5), rng.next(-5, 5), 1, 2);
        QuadNum b = qn(rng.next(-5, 5), rng.next(-5, 5), 1, 2);
        if (a.is_zero() || b.is_zero() || (a + b).is_zero()) continue;
        Mat2z ma = action_matrix(f, a).m, mb = action_matrix(f, b).m;
        CHECK(action_matrix(f, a * b).m == ma * mb);
        Mat2z sum = action_matrix(f, a + b).m;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) CHECK(sum.at(r, c) == ma.at(r, c) + mb.at(r, c));
        CHECK(Rat(ma.det()) == norm(a));
    }
}

TEST_CASE("monomial action on points") {
    Frame f = perron_frame(qn(-1, 1, 1, 2));
    mpfr_prec_t prec = 96;
    QuadNum eta = qn(3, 2, 1, 2);
    Mat2z be = action_matrix(f, eta).m;

    NumericPoint p{Complex{Real::of_str("0.3", prec), Real::of_long(0, prec)},
                   Complex{Real::of_str("0.5", prec), Real::of_long(0, prec)}};
    NumericPoint q = act(be, p);
    Complex expect_u = p.u.pow_si(5) * p.v.pow_si(2);
    Complex expect_v = p.u.pow_si(2) * p.v;
    CHECK(close(q.u, expect_u, 90));
    CHECK(close(q.v, expect_v, 90));

    TorusPoint t = TorsionPoint{qn(0, 1, 2, 2)};
    TorusPoint r = act(f, action_matrix(f, qn(0, 1, 1, 2)), t);
    CHECK(std::get<TorsionPoint>(r).alpha.is_zero()); // sqrt(2)*sqrt(2)/2 = 1 in M

    TorusPoint id = act(f, action_matrix(f, qn(1, 0, 1, 2)), t);
    CHECK(contains(f.module, std::get<TorsionPoint>(id).alpha - qn(0, 1, 2, 2)));
}

TEST_CASE("analytic and good isogenies") {
    Frame f = perron_frame(qn(-1, 1, 1, 2));
    CHECK(is_analytic(f, qn(3, 2, 1, 2)));
    CHECK_FALSE(is_analytic(f, qn(0, 1, 1, 2)));
    CHECK(is_analytic(f, qn(1, 0, 1, 2)));

    CHECK(is_good(action_matrix(f, qn(3, 2, 1, 2)).m));
    CHECK_FALSE(is_good(Mat2z::identity()));
    CHECK_FALSE(is_good(Mat2z(Int(1), Int(1), Int(0), Int(1))));
    CHECK(is_good(Mat2z(Int(2), Int(0), Int(0), Int(2)))); // doubling map
    CHECK_THROWS_AS(is_good(Mat2z(Int(1), Int(-1), Int(0), Int(1))), DomainError);
}

TEST_CASE("isogeny kernels") {
    Frame f = perron_frame(qn(-1, 1, 1, 2));
    auto ker = kernel(f, qn(0, 1, 1, 2)); // sqrt(2)
    CHECK(ker.size() == 2);
    auto ker2 = kernel(f, qn(2, 1, 1, 2)); // 2+sqrt(2)
    CHECK(ker2.size() == 2);
    bool has_half = false;
    for (const auto& z : ker2)
        if (contains(f.module, z.alpha - qn(0, 1, 2, 2))) has_half = true;
    CHECK(has_half);
    CHECK(kernel(f, qn(1, 0, 1, 2)).size() == 1);
    CHECK(kernel(f, qn(2, 0, 1, 2)).size() == 4);
    CHECK_THROWS_AS(kernel(f, qn(0, 0, 1, 2)), DomainError);

    // Kernel is a group under addition of the torsion parameters.
    for (const auto& a : ker2)
        for (const auto& b : ker2) {
            QuadNum sum = reduce_mod(f.module, a.alpha + b.alpha);
            bool found = false;
            for (const auto& c : ker2)
                if (contains(f.module, sum - c.alpha)) found = true;
            CHECK(found);
        }
}

TEST_CASE("fixing units") {
    Frame f = perron_frame(qn(-1, 1, 1, 2));
    QuadNum eta = qn(3, 2, 1, 2);
    CHECK(fixing_unit(f, {TorsionPoint{qn(0, 1, 2, 2)}}) == eta);
    CHECK(fixing_unit(f, {TorsionPoint{qn(0, 0, 1, 2)}}) == eta); // identity, k = 1
    CHECK(fixing_unit(f, kernel(f, qn(2, 1, 1, 2))) == eta);
}

TEST_CASE("analytic action agrees with the algebraic one") {
    Frame f = perron_frame(qn(-1, 1, 1, 2));
    mpfr_prec_t prec = 128;
    QuadNum eta = qn(3, 2, 1, 2);
    Mat2z be = action_matrix(f, eta).m;

    Complex z{Real::of_str("0.0625", prec), Real::of_str("0.5", prec)};
    Complex zp{Real::of_str("-0.125", prec), Real::of_str("-0.25", prec)};
    NumericPoint p = phi_eval(f, z, zp);
    Real er = to_real(eta, prec), erc = to_real(conj(eta), prec);
    NumericPoint lhs = phi_eval(f, Complex{z.re * er, z.im * er}, Complex{zp.re * erc, zp.im * erc});
    NumericPoint rhs = act(be, p);
    CHECK(close(lhs.u, rhs.u, 116));
    CHECK(close(lhs.v, rhs.v, 116));
}

TEST_CASE("two frames over the same module act differently") {
    // K = Q(sqrt 5), M = Z + eps Z with eps the golden unit; bases (eps, 1)
    // and (1, eps) give different integer actions for the same multiplier.
    QuadNum eps = qn(1, 1, 2, 5);
    ZModule m1(eps, qn(1, 0, 1, 5));
    ZModule m2(qn(1, 0, 1, 5), eps);
    Frame f1 = make_frame(m1), f2 = make_frame(m2);
    Mat2z a1 = action_matrix(f1, eps).m;
    Mat2z a2 = action_matrix(f2, eps).m;
    CHECK(a1 == Mat2z(Int(1), Int(1), Int(1), Int(0)));
    CHECK(a2 == Mat2z(Int(0), Int(1), Int(1), Int(1)));
    CHECK_FALSE(a1 == a2);
    CHECK(a1.det() == norm(eps).get_num());
    CHECK(a2.det() == norm(eps).get_num());
}
