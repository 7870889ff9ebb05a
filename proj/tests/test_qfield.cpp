#include <doctest.h>

#include "hmx/quadnum.hpp"
#include "hmx/real.hpp"

using namespace hmx;

namespace {

QuadNum qn(long a, long b, long den, long d) {
    return QuadNum(make_rat(a, den), make_rat(b, den), d);
}

// Deterministic small surd generator for property tests.
struct Rng {
    unsigned long s;
    long next(long lo, long hi) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return lo + static_cast<long>((s >> 17) % static_cast<unsigned long>(hi - lo + 1));
    }
};

QuadNum random_surd(Rng& rng, long d) {
    while (true) {
        long b = rng.next(-8, 8);
        if (b == 0) continue;
        long a = rng.next(-20, 20);
        long den = rng.next(1, 12);
        return qn(a, b, den, d);
    }
}

// Evaluate preperiod + periodic tail back to an exact value: the tail is the
// fixed point in (0,1) of the period's Moebius map.
QuadNum cf_value(const CFExpansion& cf, long d) {
    Mat2z per = Mat2z::identity();
    for (const Int& c : cf.period) per = per * Mat2z(Int(0), Int(1), Int(1), c);
    Int A = per.at(1, 0), B = per.at(1, 1) - per.at(0, 0), C = -per.at(0, 1);
    Int disc = B * B - 4 * A * C;
    Int msq = disc / d;
    REQUIRE(msq * d == disc);
    Int root = isqrt(msq);
    REQUIRE(root * root == msq);
    QuadNum t(Rat(-B) / (2 * Rat(A)), Rat(root) / (2 * Rat(A)), d);
    QuadNum one = QuadNum::rational(Rat(1), d);
    if (!(sgn(t) > 0 && sgn(t - one) < 0)) t = conj(t);
    REQUIRE(sgn(t) > 0);
    REQUIRE(sgn(t - one) < 0);
    Mat2z pre = Mat2z::identity();
    for (const Int& c : cf.preperiod) pre = pre * Mat2z(Int(0), Int(1), Int(1), c);
    return moebius(pre, t);
}

} // namespace

TEST_CASE("field arithmetic") {
    QuadNum x = qn(1, 1, 1, 2), y = qn(-1, 1, 1, 2);
    CHECK(x * y == qn(1, 0, 1, 2)); // conjugate product is the norm of 1+sqrt(2)

    QuadNum u = qn(3, 2, 1, 2);
    CHECK(u * conj(u) == qn(1, 0, 1, 2)); // 9 - 2*4 = 1
    CHECK(norm(u) == 1);

    CHECK_THROWS_AS(x / qn(0, 0, 1, 2), DomainError);
    CHECK_THROWS_AS(qn(1, 1, 1, 2) * qn(1, 1, 1, 3), InputError); // mixed fields
}

TEST_CASE("conj, trace, norm, sign") {
    QuadNum u = qn(3, 2, 1, 2);
    CHECK(trace(u) == 6);
    CHECK(norm(qn(2, 1, 1, 2)) == 2);
    CHECK(sgn(qn(-4, 3, 1, 2)) == 1); // 3*sqrt(2) > 4 since 18 > 16
    CHECK(sgn(qn(4, -3, 1, 2)) == -1);
    CHECK(sgn(qn(0, 0, 1, 2)) == 0);

    Rng rng{99};
    for (int i = 0; i < 50; ++i) {
        QuadNum x = random_surd(rng, 2);
        CHECK(conj(conj(x)) == x);
        int lhs = sgn(x) * sgn(conj(x));
        Rat n = norm(x);
        CHECK(lhs == sgn(n));
    }
}

TEST_CASE("floor_scaled") {
    QuadNum w = qn(-1, 1, 1, 2); // sqrt(2) - 1
    CHECK(floor_scaled(Int(3), w) == 1);
    CHECK(floor_scaled(Int(5), w) == 2);
    CHECK(floor_scaled(Int(4), qn(1, 0, 2, 2)) == 2); // rational case

    // Agreement with 256-bit floating floors on sampled surds and scales.
    Rng rng{7};
    for (int i = 0; i < 12; ++i) {
        QuadNum x = random_surd(rng, i % 2 ? 2 : 5);
        Real xr = Real::of_rat(x.a, 256) + Real::of_rat(x.b, 256) * Real::sqrt_int(Int(x.d), 256);
        for (long l : {1L, 2L, 7L, 100L, 9999L, 10000L}) {
            Int exact = floor_scaled(Int(l), x);
            Real approx = Real::of_long(l, 256) * xr;
            CHECK(exact == approx.to_int_floor());
        }
    }
}

TEST_CASE("continued fraction expansion") {
    CFExpansion cf = cf_expand(qn(-1, 1, 1, 2)); // sqrt(2)-1
    CHECK(cf.preperiod.empty());
    CHECK(cf.period == std::vector<Int>{Int(2), Int(2)});

    cf = cf_expand(qn(-1, 1, 2, 5)); // (sqrt(5)-1)/2
    CHECK(cf.preperiod.empty());
    CHECK(cf.period == std::vector<Int>{Int(1), Int(1)});

    cf = cf_expand(qn(0, 1, 2, 2)); // sqrt(2)/2
    CHECK(cf.preperiod == std::vector<Int>{Int(1)});
    CHECK(cf.period == std::vector<Int>{Int(2), Int(2)});

    CHECK_THROWS_AS(cf_expand(qn(1, 0, 2, 2)), DomainError);

    // Round trip: the expansion reconstructs the value exactly.
    Rng rng{21};
    int done = 0;
    while (done < 25) {
        QuadNum x = random_surd(rng, done % 3 == 0 ? 5 : (done % 3 == 1 ? 3 : 2));
        QuadNum frac = x - QuadNum::rational(Rat(qfloor(x)), x.d);
        if (frac.is_zero() || sgn(frac) <= 0) continue;
        CFExpansion e = cf_expand(frac);
        CHECK(cf_value(e, x.d) == frac);
        CHECK(e.period.size() % 2 == 0);
        ++done;
    }
}

TEST_CASE("perron condition") {
    CHECK(is_perron(qn(-1, 1, 1, 2)));
    CHECK(is_perron(qn(-1, 1, 2, 5)));
    CHECK_FALSE(is_perron(qn(0, 1, 2, 2))); // conj = -sqrt(2)/2 > -1

    // Perron <=> purely periodic expansion, both directions.
    Rng rng{5};
    int checked = 0;
    while (checked < 20) {
        QuadNum x = random_surd(rng, checked % 2 ? 2 : 3);
        QuadNum frac = x - QuadNum::rational(Rat(qfloor(x)), x.d);
        if (frac.is_zero() || sgn(frac) <= 0) continue;
        CFExpansion e = cf_expand(frac);
        CHECK(is_perron(frac) == e.preperiod.empty());
        ++checked;
    }
}

TEST_CASE("reduction of w to a Perron theta") {
    QuadNum golden = qn(-1, 1, 2, 5);
    ReductionResult r = reduce_w(golden);
    CHECK(r.theta == golden);
    CHECK(r.matD == Mat2z::identity());
    CHECK(r.matT == Mat2z::identity());

    r = reduce_w(qn(0, 1, 2, 2)); // sqrt(2)/2
    CHECK(r.theta == qn(-1, 1, 1, 2));
    CHECK(r.matD == Mat2z(Int(0), Int(1), Int(1), Int(1)));
    CHECK(r.matD.det() == -1);
    // sqrt(2)/2 = 1/(theta+1) exactly
    CHECK(qn(0, 1, 2, 2) * (r.theta + qn(1, 0, 1, 2)) == qn(1, 0, 1, 2));

    r = reduce_w(qn(-1, 1, 1, 2));
    CHECK(r.theta == qn(-1, 1, 1, 2));
    CHECK(r.matD == Mat2z::identity());

    CHECK_THROWS_AS(reduce_w(qn(1, 0, 2, 2)), DomainError);

    // w > 1 and general positive w: the Moebius identity always holds.
    Rng rng{31};
    int done = 0;
    while (done < 15) {
        QuadNum x = random_surd(rng, 2 + (done % 2) * 3);
        if (sgn(x) <= 0) continue;
        ReductionResult rr = reduce_w(x);
        CHECK(is_perron(rr.theta));
        CHECK(moebius(rr.matD, rr.theta) == x);
        Int dt = rr.matD.det();
        CHECK((dt == 1 || dt == -1));
        ++done;
    }
}

TEST_CASE("positive unit from the period") {
    QuadNum theta = qn(-1, 1, 1, 2);
    QuadNum eta = positive_unit(theta);
    CHECK(eta == qn(3, 2, 1, 2));
    CHECK(norm(eta) == 1);

    QuadNum golden = qn(-1, 1, 2, 5);
    QuadNum eps = positive_unit(golden);
    CHECK(eps == qn(3, 1, 2, 5)); // (3+sqrt(5))/2
    CHECK(norm(eps) == 1);

    // Totally positive, > 1, and eta > eta' > 0.
    for (const QuadNum& u : {eta, eps}) {
        CHECK(sgn(u - QuadNum::rational(Rat(1), u.d)) > 0);
        CHECK(sgn(conj(u)) > 0);
        CHECK(sgn(u - conj(u)) > 0);
    }
}

TEST_CASE("quadratic literal round trip") {
    QuadNum x = quadnum_parse("(-1+1*sqrt(2))/1");
    CHECK(x == qn(-1, 1, 1, 2));
    CHECK(quadnum_parse(quadnum_to_string(x)) == x);
    CHECK(quadnum_parse("( 3 - 2*sqrt(7) )/ 5") == qn(3, -2, 5, 7));
    CHECK_THROWS_AS(quadnum_parse("(1+2*sqrt(4))/1"), InputError); // not square-free
    CHECK_THROWS_AS(quadnum_parse("1+sqrt(2)"), InputError);
}
