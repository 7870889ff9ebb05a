#include <doctest.h>

#include "hmx/jsonio.hpp"

using namespace hmx;

namespace {

QuadNum qn(long a, long b, long den, long d) {
    return QuadNum(make_rat(a, den), make_rat(b, den), d);
}

} // namespace

TEST_CASE("json round trips") {
    QuadNum x = qn(3, -2, 5, 7);
    CHECK(quadnum_from_json(quadnum_to_json(x)) == x);

    ZModule m(qn(1, 0, 1, 2), qn(1, 1, 1, 2));
    ZModule m2 = module_from_json(module_to_json(m));
    CHECK(m2.b0 == m.b0);
    CHECK(m2.b1 == m.b1);

    Cyclo c = Cyclo::root_of_unity(make_rat(1, 3)) * Rat(2) +
              Cyclo::root_of_unity(make_rat(1, 4));
    CHECK(cyclo_from_json(cyclo_to_json(c)) == c);

    Frame f = perron_frame(qn(-1, 1, 1, 2));
    RationalFn2 r = r_fn(qn(0, 1, 2, 2), qn(2, 1, 1, 2), f.module, RVariant::minus, f);
    RationalFn2 r2 = rfun_from_json(rfun_to_json(r));
    CHECK(rf_equal(r, r2));
    json j1 = rfun_to_json(r);
    json j2 = rfun_to_json(r2);
    CHECK(j1 == j2); // bit-identical re-emission

    TorusPoint tp = CosetPoint{qn(0, 1, 2, 2), qn(2, 1, 1, 2), "v1"};
    json jp = point_to_json(tp);
    TorusPoint tp2 = point_from_json(jp, 96);
    CHECK(point_to_json(tp2) == jp);
}

TEST_CASE("semifree tuple json") {
    json j = {
        {"theta", {{"a", "-1"}, {"b", "1"}, {"d", 2}}},
        {"points",
         {{{"alpha", {{"a", "0"}, {"b", "0"}, {"d", 2}}},
           {"beta", {{"a", "3"}, {"b", "2"}, {"d", 2}}},
           {"base", "v1"}},
          {{"alpha", {{"a", "0"}, {"b", "0"}, {"d", 2}}},
           {"beta", {{"a", "1"}, {"b", "0"}, {"d", 2}}},
           {"base", "v1"}}}},
        {"bases", {{"v1", {{"u", {"0.3", "0"}}, {"v", {"0.5", "0"}}}}}},
    };
    SemiFreeTuple t = semifree_from_json(j, 128);
    CHECK(t.points.size() == 2);
    CHECK(t.bases.count("v1") == 1);
    Verdict v = decide(t);
    CHECK_FALSE(v.semifree);
    json out = verdict_to_json(v);
    CHECK(out["semifree"] == false);
    CHECK(out["classes"][0]["L"] == 3); // N' = m+1 = 3, unit-norm betas
    CHECK(out["classes"][0]["witness"][0] == "1");
    CHECK(out["classes"][0]["witness"][1] == "-1");
}
