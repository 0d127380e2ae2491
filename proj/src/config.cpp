#include "reslab/config.hpp"

#include <cmath>
#include <fstream>

#include "reslab/errors.hpp"

namespace reslab {
namespace {

double number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError(what + " must be a number");
  return j.get<double>();
}

Interval interval_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(what + " must be [lo, hi]");
  Interval iv{number(j[0], what), number(j[1], what)};
  if (!(iv.hi > iv.lo)) throw ConfigError(what + " must satisfy lo < hi");
  return iv;
}

Codomain codomain_from_json(const json& j) {
  const std::string c = j.value("codomain", std::string("real"));
  if (c == "real") return Codomain::real;
  if (c == "complex") return Codomain::complex;
  throw ConfigError("profile codomain must be \"real\" or \"complex\"");
}

json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open spec file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("cannot parse '" + path + "': " + e.what());
  }
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError("complex value must be a number or [re, im]");
}

json to_json(cplx v) { return json::array({v.real(), v.imag()}); }

Profile profile_from_json(const json& j) {
  if (j.is_null()) return {};
  if (!j.is_object()) throw ConfigError("profile must be a JSON object");
  const std::string kind = j.value("kind", std::string());
  if (!j.contains("support")) throw ConfigError("profile needs a support");
  const Interval support = interval_from_json(j["support"], "profile support");
  const Codomain codomain = codomain_from_json(j);

  Profile p;
  if (kind == "grid") {
    if (!j.contains("samples") || !j["samples"].is_array()) throw ConfigError("grid profile needs samples");
    std::vector<cplx> samples;
    for (const auto& s : j["samples"]) samples.push_back(complex_from_json(s));
    p = Profile::grid(support, samples, codomain);
  } else if (kind == "piecewise") {
    if (!j.contains("segments") || !j["segments"].is_array()) throw ConfigError("piecewise profile needs segments");
    std::vector<double> breaks{support.lo};
    std::vector<Polynomial> pieces;
    for (const auto& seg : j["segments"]) {
      const double from = number(seg.at("from"), "segment from");
      const double to = number(seg.at("to"), "segment to");
      if (!(to > from)) throw ConfigError("segment must satisfy from < to");
      if (from < breaks.back() || to > support.hi) throw ConfigError("segments must be ordered and inside the support");
      if (from > breaks.back()) {
        pieces.emplace_back();
        breaks.push_back(from);
      }
      std::vector<cplx> coeffs;
      if (seg.contains("value")) {
        coeffs.push_back(complex_from_json(seg["value"]));
      } else if (seg.contains("coeffs") && seg["coeffs"].is_array()) {
        for (const auto& c : seg["coeffs"]) coeffs.push_back(complex_from_json(c));
      } else {
        throw ConfigError("segment needs \"value\" or \"coeffs\"");
      }
      pieces.emplace_back(std::move(coeffs));
      breaks.push_back(to);
    }
    if (breaks.back() < support.hi) {
      pieces.emplace_back();
      breaks.push_back(support.hi);
    }
    p = Profile::piecewise(std::move(breaks), std::move(pieces), codomain);
  } else {
    throw ConfigError("profile kind must be \"piecewise\" or \"grid\"");
  }
  if (j.contains("rescale")) p = rescale(p, interval_from_json(j["rescale"], "profile rescale"));
  return p;
}

json to_json(const Profile& p) {
  json j;
  j["kind"] = "piecewise";
  j["codomain"] = p.is_real() ? "real" : "complex";
  if (p.empty()) {
    j["support"] = json::array({0.0, 0.0});
    j["segments"] = json::array();
    return j;
  }
  j["support"] = json::array({p.support().lo, p.support().hi});
  json segs = json::array();
  for (std::size_t i = 0; i < p.segment_count(); ++i) {
    json coeffs = json::array();
    for (cplx c : p.pieces()[i].coeffs()) coeffs.push_back(p.is_real() ? json(c.real()) : to_json(c));
    segs.push_back({{"from", p.breaks()[i]}, {"to", p.breaks()[i + 1]}, {"coeffs", coeffs}});
  }
  j["segments"] = segs;
  return j;
}

Profile optional_profile(const json& spec, const std::string& key) {
  if (!spec.is_object() || !spec.contains(key)) return {};
  try {
    return profile_from_json(spec[key]);
  } catch (const ConfigError& e) {
    throw ConfigError("field '" + key + "': " + e.what());
  }
}

PointInteraction point_interaction_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("point interaction must be a JSON object");
  PointInteraction pi;
  pi.phase = j.contains("phase") ? number(j["phase"], "phase") : 0.0;
  pi.c11 = number(j.at("c11"), "c11");
  pi.c12 = number(j.at("c12"), "c12");
  pi.c21 = number(j.at("c21"), "c21");
  pi.c22 = number(j.at("c22"), "c22");
  return pi;
}

json to_json(const PointInteraction& pi) {
  return {{"model", "point_interaction"}, {"phase", pi.phase}, {"c11", pi.c11},          {"c12", pi.c12},
          {"c21", pi.c21},                {"c22", pi.c22},     {"det", pi.determinant()}};
}

json to_json(const LimitModel& model) {
  if (const auto* pi = std::get_if<PointInteraction>(&model)) return to_json(*pi);
  return {{"model", "dirichlet"}};
}

json to_json(const ScatteringData& s) {
  return {{"k", s.k},
          {"r_left", to_json(s.r_left)},
          {"t_left", to_json(s.t_left)},
          {"r_right", to_json(s.r_right)},
          {"t_right", to_json(s.t_right)},
          {"abs_r", std::abs(s.r_left)},
          {"abs_t", std::abs(s.t_left)},
          {"unitarity_defect", s.unitarity_defect()}};
}

json to_json(const ResonanceCircle& c) {
  return {{"beta0_re", c.beta0.real()}, {"beta0_im", c.beta0.imag()}, {"rho", c.rho},
          {"m1", c.m1},                 {"m2", c.m2},                   {"tau_re", c.tau.real()},
          {"tau_im", c.tau.imag()}};
}

json to_json(const ConvergenceReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json jr = {{"eps", row.eps},     {"nu", row.nu},         {"k", row.k},
               {"err", real_or_null(row.err)}, {"abs_t", row.abs_t}, {"abs_r", row.abs_r},
               {"unitarity_defect", row.unitarity_defect}};
    if (!row.ok()) jr["failure"] = row.failure;
    rows.push_back(jr);
  }
  return {{"k", r.k},
          {"rows", rows},
          {"monotone_tail", r.monotone_tail},
          {"final_err", real_or_null(r.final_err)},
          {"limit", to_json(r.limit)}};
}

Theorem1Setup theorem1_from_json(const json& spec) {
  if (!spec.is_object()) throw ConfigError("family spec must be a JSON object");
  Theorem1Setup s;
  s.V0 = optional_profile(spec, "V0");
  s.V = optional_profile(spec, "V");
  s.U = optional_profile(spec, "U");
  s.A = optional_profile(spec, "A");
  s.alpha = spec.contains("alpha") ? number(spec["alpha"], "alpha") : 0.0;
  return s;
}

Theorem2Setup theorem2_from_json(const json& spec) {
  if (!spec.is_object()) throw ConfigError("family spec must be a JSON object");
  Theorem2Setup s;
  s.V0 = optional_profile(spec, "V0");
  s.f1 = optional_profile(spec, "f1");
  s.f2 = optional_profile(spec, "f2");
  s.U = optional_profile(spec, "U");
  s.A = optional_profile(spec, "A");
  if (!spec.contains("beta")) throw ConfigError("rank-two spec needs beta");
  s.beta = complex_from_json(spec["beta"]);
  return s;
}

}  // namespace reslab
