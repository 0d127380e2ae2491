#pragma once

// JSON spec files and result records.
//
// Profile:
//   {"kind": "piecewise", "support": [lo, hi], "codomain": "real",
//    "segments": [{"from": a, "to": b, "coeffs": [c0, c1, ...]}, ...]}
//   coeffs are in the local variable t = x - from; "value": c is shorthand
//   for a constant segment. Uncovered parts of the support are zero.
//   {"kind": "grid", "support": [lo, hi], "samples": [...], "codomain": ...}
//   An optional "rescale": [lo, hi] maps the support affinely.
// Complex numbers are written as a number or as [re, im].

#include <string>

#include <json.hpp>

#include "reslab/harness.hpp"

namespace reslab {

using json = nlohmann::json;

json load_json_file(const std::string& path);

cplx complex_from_json(const json& j);
json to_json(cplx v);

Profile profile_from_json(const json& j);
json to_json(const Profile& p);

// Reads key from a family spec; a missing key or null gives the zero profile.
Profile optional_profile(const json& spec, const std::string& key);

PointInteraction point_interaction_from_json(const json& j);
json to_json(const PointInteraction& pi);
json to_json(const LimitModel& model);
json to_json(const ScatteringData& s);
json to_json(const ResonanceCircle& c);
json to_json(const ConvergenceReport& r);

Theorem1Setup theorem1_from_json(const json& spec);
Theorem2Setup theorem2_from_json(const json& spec);

}  // namespace reslab
