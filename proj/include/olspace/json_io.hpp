#pragma once

#include <string>

#include <json.hpp>

#include "olspace/compare.hpp"
#include "olspace/measure.hpp"
#include "olspace/orlicz.hpp"
#include "olspace/space.hpp"
#include "olspace/weights.hpp"
#include "olspace/witness.hpp"

namespace olspace::io {

using json = nlohmann::ordered_json;

// ---- step functions -------------------------------------------------------
// {"pieces":[{"value":3.0,"intervals":[[2.0,4.0]]}, ...]}, intervals half-open
json to_json(const StepFunction& f);
StepFunction step_from_json(const json& j);

json to_json(const IntervalSet& s);
IntervalSet interval_set_from_json(const json& j);

json to_json(const DecreasingStep& d);

// ---- generator functions --------------------------------------------------
// {"family":"power","p":2.0} | {"family":"powerlog","p":2,"q":1} |
// {"family":"expm1"} | {"family":"spline","knots":[...],"slopes":[...]} |
// {"family":"expr","src":"u^2*log(1+u)"}
json to_json(const OrliczFn& phi);
OrliczFn orlicz_from_json(const json& j);

// {"family":"constant","c":1.0} | {"family":"power","alpha":0.5} |
// {"family":"pcd","breaks":[...],"values":[...]} | {"family":"expr","src":...}
json to_json(const WeightFn& w);
WeightFn weight_from_json(const json& j);

json to_json(const SpaceSpec& spec);
SpaceSpec spec_from_json(const json& j);

// ---- results --------------------------------------------------------------
json to_json(const NormResult& r);
json to_json(const ConditionVerdict& v);
json to_json(const RatioVerdict& v);
json to_json(const InclusionReport& r);
json to_json(const DssVerdict& v);
json to_json(const DssCounterexample& c);
json to_json(const DominatingWeightResult& r);
json to_json(const EllInftyReport& r);

/// Self-contained dominating-weight record: inputs plus results, so `verify`
/// can recompute the construction from scratch.
json dominating_weight_record(const OrliczFn& phi, const WeightFn& w, const StepFunction& f,
                              double gamma, const DominatingWeightResult& r);
struct DomVerify {
  bool ok = true;
  std::vector<std::string> failures;
};
DomVerify verify_dominating_weight(const json& record);

// ---- bundles ---------------------------------------------------------------
json to_json(const WitnessBundle& b);
WitnessBundle bundle_from_json(const json& j);

/// Display serialization: floats rendered with 12 significant digits.
/// Bundle files use nlohmann's lossless round-trip formatting instead, so
/// `verify` reconstructs bit-identical values.
std::string dump12(const json& j);

/// Shorthand parsers used by the CLI: "power:2", "expm1", "u^2", JSON, ...
OrliczFn parse_orlicz_spec(const std::string& text);
WeightFn parse_weight_spec(const std::string& text);

}  // namespace olspace::io
