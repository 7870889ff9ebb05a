#pragma once

#include <json.hpp>

#include "hmx/semifree.hpp"

namespace hmx {

using json = nlohmann::json;

json quadnum_to_json(const QuadNum& x);
QuadNum quadnum_from_json(const json& j);

json module_to_json(const ZModule& m);
ZModule module_from_json(const json& j);

json cyclo_to_json(const Cyclo& c);
Cyclo cyclo_from_json(const json& j);

json rfun_to_json(const RationalFn2& r);
RationalFn2 rfun_from_json(const json& j);

json point_to_json(const TorusPoint& p);
TorusPoint point_from_json(const json& j, mpfr_prec_t prec);

json eval_result_to_json(const EvalResult& r);

SemiFreeTuple semifree_from_json(const json& j, mpfr_prec_t prec);
json verdict_to_json(const Verdict& v);

} // namespace hmx
