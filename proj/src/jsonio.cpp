#include "hmx/jsonio.hpp"

namespace hmx {

json quadnum_to_json(const QuadNum& x) {
    return json{{"a", rat_to_string(x.a)}, {"b", rat_to_string(x.b)}, {"d", x.d}};
}

QuadNum quadnum_from_json(const json& j) {
    return QuadNum(rat_from_string(j.at("a").get<std::string>()),
                   rat_from_string(j.at("b").get<std::string>()), j.at("d").get<long>());
}

json module_to_json(const ZModule& m) {
    return json{{"basis", json::array({quadnum_to_json(m.b0), quadnum_to_json(m.b1)})}};
}

ZModule module_from_json(const json& j) {
    const json& b = j.at("basis");
    return ZModule(quadnum_from_json(b.at(0)), quadnum_from_json(b.at(1)));
}

json cyclo_to_json(const Cyclo& c) {
    auto [order, coords] = c.canonical_order_coords();
    json jc = json::array();
    for (const Rat& q : coords) jc.push_back(rat_to_string(q));
    return json{{"order", order}, {"coords", jc}};
}

Cyclo cyclo_from_json(const json& j) {
    long order = j.at("order").get<long>();
    std::vector<Rat> coords;
    for (const json& c : j.at("coords")) coords.push_back(rat_from_string(c.get<std::string>()));
    return Cyclo::from_coords(order, coords);
}

json rfun_to_json(const RationalFn2& r) {
    json num = json::array();
    for (const auto& [e, c] : r.num)
        num.push_back(json::array({e.first, e.second, cyclo_to_json(c)}));
    json den = json::array();
    for (const DenFactor& f : r.den) den.push_back(json::array({f.a, f.b, f.mult}));
    json out{{"num", num}, {"den", den}};
    if (r.v_open) out["v_open"] = true;
    return out;
}

RationalFn2 rfun_from_json(const json& j) {
    RationalFn2 r;
    for (const json& t : j.at("num"))
        poly_add_term(r.num, t.at(0).get<long>(), t.at(1).get<long>(), cyclo_from_json(t.at(2)));
    for (const json& f : j.at("den"))
        rf_push_den(r, f.at(0).get<long>(), f.at(1).get<long>(), f.at(2).get<int>());
    r.v_open = j.value("v_open", false);
    return r;
}

namespace {

json complex_to_json(const Complex& c) {
    return json::array({c.re.str(), c.im.str()});
}

Complex complex_from_json(const json& j, mpfr_prec_t prec) {
    return Complex{Real::of_str(j.at(0).get<std::string>(), prec),
                   Real::of_str(j.at(1).get<std::string>(), prec)};
}

} // namespace

json point_to_json(const TorusPoint& p) {
    if (std::holds_alternative<TorsionPoint>(p))
        return json{{"torsion", {{"alpha", quadnum_to_json(std::get<TorsionPoint>(p).alpha)}}}};
    if (std::holds_alternative<NumericPoint>(p)) {
        const auto& n = std::get<NumericPoint>(p);
        return json{{"numeric", {{"u", complex_to_json(n.u)}, {"v", complex_to_json(n.v)}}}};
    }
    const auto& c = std::get<CosetPoint>(p);
    return json{{"coset",
                 {{"alpha", quadnum_to_json(c.alpha)},
                  {"beta", quadnum_to_json(c.beta)},
                  {"base", c.base}}}};
}

TorusPoint point_from_json(const json& j, mpfr_prec_t prec) {
    if (j.contains("torsion")) return TorsionPoint{quadnum_from_json(j.at("torsion").at("alpha"))};
    if (j.contains("numeric")) {
        const json& n = j.at("numeric");
        return NumericPoint{complex_from_json(n.at("u"), prec), complex_from_json(n.at("v"), prec)};
    }
    if (j.contains("coset")) {
        const json& c = j.at("coset");
        return CosetPoint{quadnum_from_json(c.at("alpha")), quadnum_from_json(c.at("beta")),
                          c.at("base").get<std::string>()};
    }
    throw InputError("unknown torus point form");
}

json eval_result_to_json(const EvalResult& r) {
    return json{{"value", complex_to_json(r.value)},
                {"err_bits", r.err_bits},
                {"rigorous", r.rigorous}};
}

SemiFreeTuple semifree_from_json(const json& j, mpfr_prec_t prec) {
    SemiFreeTuple t;
    QuadNum theta = quadnum_from_json(j.at("theta"));
    t.frame = perron_frame(theta);
    for (const json& p : j.at("points")) {
        t.points.push_back(SemiFreePoint{quadnum_from_json(p.at("alpha")),
                                         quadnum_from_json(p.at("beta")),
                                         p.at("base").get<std::string>()});
    }
    if (j.contains("bases")) {
        for (auto it = j.at("bases").begin(); it != j.at("bases").end(); ++it) {
            t.bases.emplace(it.key(),
                            NumericPoint{complex_from_json(it.value().at("u"), prec),
                                         complex_from_json(it.value().at("v"), prec)});
        }
    }
    return t;
}

json verdict_to_json(const Verdict& v) {
    json classes = json::array();
    for (const ClassVerdict& c : v.classes) {
        json w;
        if (c.witness) {
            w = json::array();
            for (const Int& x : *c.witness) w.push_back(x.get_str());
        } else {
            w = nullptr;
        }
        classes.push_back(json{{"base", c.base}, {"witness", w}, {"L", c.L}});
    }
    return json{{"semifree", v.semifree}, {"classes", classes}};
}

} // namespace hmx
