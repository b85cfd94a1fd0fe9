#pragma once

#include <string>

#include "hhkit/hhkit.hpp"
#include "json.hpp"

namespace hhkit::cli {

using nlohmann::json;

/// Accepts inline JSON or "@path" to read it from a file.
json parse_json_argument(const std::string& text);

// {"kind":"constant","value":1} | {"kind":"polynomial","coefficients":[...]}
// | {"kind":"piecewise","knots":[...],"values":[...]}; the bare string
// "constant" is shorthand for the uniform weight.
WeightFunction weight_from_json(const json& j);
json weight_to_json(const WeightFunction& rho);

// {"kind":"power","atoms":[[c,q],...]} (kind may be omitted when atoms are
// present), {"kind":"constant","value":e}, or
// {"kind":"profile","samples":[[r,v],...],"increasing":bool}.
RadialErrorFunction error_from_json(const json& j);
PowerError power_from_json(const json& atoms);
json power_to_json(const PowerError& p);

// {"kind":"perturbed","base":"quadratic","epsilon":e,"seed":s}
// | {"kind":"power_premise","base":"abs","a":a,"q":q,"seed":s}
// | {"kind":"polynomial","coefficients":[...]}; all accept "radius".
SegmentFunction function_from_json(const json& j);

json report_to_json(const CheckReport& r);
CheckReport report_from_json(const json& j);
json theorem_report_to_json(const TheoremReport& r);

}  // namespace hhkit::cli
