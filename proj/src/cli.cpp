#include "reslab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "reslab/config.hpp"
#include "reslab/errors.hpp"

namespace reslab {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("cannot parse " + what + " value '" + s + "'");
  }
}

Interval parse_range(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 2) throw ConfigError("range must be lo:hi, got '" + s + "'");
  return {parse_double(parts[0], "range"), parse_double(parts[1], "range")};
}

std::vector<double> parse_k_grid(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw ConfigError("k grid must be lo:hi:n, got '" + s + "'");
  const double lo = parse_double(parts[0], "k grid");
  const double hi = parse_double(parts[1], "k grid");
  const double n = parse_double(parts[2], "k grid");
  if (!(n >= 1.0) || n != std::floor(n)) throw ConfigError("k grid needs a positive integer count");
  std::vector<double> ks;
  const auto count = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < count; ++i)
    ks.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1));
  return ks;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  for (const auto& part : split(s, ',')) v.push_back(parse_double(part, "list"));
  return v;
}

Lambda parse_lambda(const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "+inf") return Lambda::infinity();
  return Lambda::finite(parse_double(s, "lambda"));
}

std::string lambda_text(const json& spec, const std::string& flag) {
  if (!flag.empty()) return flag;
  if (spec.is_object() && spec.contains("lambda")) {
    const auto& l = spec["lambda"];
    if (l.is_string()) return l.get<std::string>();
    if (l.is_number()) {
      std::ostringstream s;
      s.precision(17);
      s << l.get<double>();
      return s.str();
    }
  }
  return "1";
}

Profile potential_from_spec(const json& spec) {
  if (spec.is_object() && spec.contains("kind")) return profile_from_json(spec);
  return optional_profile(spec, "V");
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Common {
  std::string spec;
  std::string out;
};

class Emitter {
 public:
  Emitter(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}
  void write(const std::string& text) {
    if (path_.empty()) {
      fallback_ << text;
      return;
    }
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path_ + "'");
    f << text;
  }

 private:
  std::string path_;
  std::ostream& fallback_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"reslab: zero-energy resonances, point-interaction limits and scattering of shrinking potentials"};
  app.require_subcommand(1);

  // resonances
  Common res_c;
  std::string res_range;
  int res_grid = 400;
  double res_tol = kResonanceTol;
  auto* res = app.add_subcommand("resonances", "resonant couplings alpha of a potential V");
  res->add_option("--spec", res_c.spec, "profile or family spec (uses key V)")->required();
  res->add_option("--alpha-range", res_range, "scan interval lo:hi (default from spec alpha_range)");
  res->add_option("--grid", res_grid, "scan grid points");
  res->add_option("--tol", res_tol, "miss-value tolerance");
  res->add_option("--out", res_c.out, "output path (default stdout)");

  // halfbound
  Common hb_c;
  double hb_alpha = 0.0;
  double hb_tol = kResonanceTol;
  std::string hb_csv;
  auto* hb = app.add_subcommand("halfbound", "half-bound state at a resonant alpha");
  hb->add_option("--spec", hb_c.spec, "profile or family spec (uses key V)")->required();
  hb->add_option("--alpha", hb_alpha, "resonant coupling")->required();
  hb->add_option("--tol", hb_tol, "miss-value tolerance");
  hb->add_option("--csv", hb_csv, "write samples x,v to this path");
  hb->add_option("--out", hb_c.out, "output path (default stdout)");

  // limit-matrix
  Common lm_c;
  bool lm_rank2 = false;
  std::string lm_lambda;
  std::string lm_convention = "coupling";
  double lm_tol = kResonanceTol;
  auto* lm = app.add_subcommand("limit-matrix", "limit point interaction of a family");
  lm->add_option("--spec", lm_c.spec, "family spec")->required();
  lm->add_flag("--rank2", lm_rank2, "rank-two family (f1, f2, beta)");
  lm->add_option("--lambda", lm_lambda, "limit of nu/eps: 0, inf or a positive number");
  lm->add_option("--phase-convention", lm_convention, "coupling | gauge")
      ->check(CLI::IsMember({"coupling", "gauge"}));
  lm->add_option("--tol", lm_tol, "resonance tolerance");
  lm->add_option("--out", lm_c.out, "output path (default stdout)");

  // circle
  Common ci_c;
  auto* ci = app.add_subcommand("circle", "double-resonance circle of a rank-two pair");
  ci->add_option("--spec", ci_c.spec, "spec with f1, f2 and optional A")->required();
  ci->add_option("--out", ci_c.out, "output path (default stdout)");

  // scatter
  Common sc_c;
  std::string sc_model, sc_family, sc_kgrid;
  double sc_k = 0.0, sc_eps = 0.0, sc_nu = 0.0;
  auto* sc = app.add_subcommand("scatter", "scattering amplitudes of a point interaction or a family");
  sc->add_option("--model", sc_model, "point interaction JSON ({\"model\": \"dirichlet\"} for decoupling)");
  sc->add_option("--family", sc_family, "pot | rank2")->check(CLI::IsMember({"pot", "rank2"}));
  sc->add_option("--spec", sc_c.spec, "family spec");
  sc->add_option("--eps", sc_eps, "shrinking parameter");
  sc->add_option("--nu", sc_nu, "delta-scale parameter (default eps)");
  sc->add_option("--k", sc_k, "wavenumber");
  sc->add_option("--k-grid", sc_kgrid, "wavenumbers lo:hi:n");
  sc->add_option("--out", sc_c.out, "output path (default stdout)");

  // converge
  Common cv_c;
  int cv_theorem = 0;
  double cv_k = 1.0;
  std::string cv_eps = "0.2,0.1,0.05,0.025";
  std::string cv_lambda;
  double cv_tol = kResonanceTol;
  bool cv_json = false;
  auto* cv = app.add_subcommand("converge", "convergence sweep of a family against its limit model");
  cv->add_option("--spec", cv_c.spec, "family spec")->required();
  cv->add_option("--theorem", cv_theorem, "1 (potential family) or 2 (rank-two family); inferred from spec if omitted")
      ->check(CLI::IsMember({1, 2}));
  cv->add_option("--k", cv_k, "wavenumber");
  cv->add_option("--eps-list", cv_eps, "comma-separated decreasing eps values");
  cv->add_option("--lambda", cv_lambda, "limit of nu/eps: 0, inf or a positive number");
  cv->add_option("--tol", cv_tol, "resonance tolerance");
  cv->add_flag("--json", cv_json, "emit the JSON report instead of CSV");
  cv->add_option("--out", cv_c.out, "output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "reslab: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (res->parsed()) {
      const json spec = load_json_file(res_c.spec);
      const Profile V = potential_from_spec(spec);
      Interval range;
      if (!res_range.empty())
        range = parse_range(res_range);
      else if (spec.is_object() && spec.contains("alpha_range"))
        range = {spec["alpha_range"].at(0).get<double>(), spec["alpha_range"].at(1).get<double>()};
      else
        throw ConfigError("resonances: --alpha-range is required");
      const ResonanceScan scan = find_resonances(V, range, res_grid, res_tol);
      for (const auto& w : scan.warnings) err << "reslab: warning: " << w << "\n";
      json records = json::array();
      for (double a : scan.alphas) {
        const HalfBoundState h = half_bound_state(V, a, res_tol);
        records.push_back({{"alpha", a}, {"theta", h.theta}, {"v_minus", h.v_minus}, {"v_plus", h.v_plus}});
      }
      Emitter(res_c.out, out).write(records.dump(2) + "\n");
    } else if (hb->parsed()) {
      const Profile V = potential_from_spec(load_json_file(hb_c.spec));
      const HalfBoundState h = half_bound_state(V, hb_alpha, hb_tol);
      json rec = {{"alpha", h.alpha}, {"theta", h.theta}, {"v_minus", h.v_minus}, {"v_plus", h.v_plus}};
      if (!hb_csv.empty()) {
        std::string csv = "x,v\n";
        const auto b = h.v.breaks();
        for (double x : b) csv += fmt17(x) + "," + fmt17(h(x)) + "\n";
        Emitter(hb_csv, out).write(csv);
      }
      Emitter(hb_c.out, out).write(rec.dump(2) + "\n");
    } else if (lm->parsed()) {
      const json spec = load_json_file(lm_c.spec);
      json rec;
      if (lm_rank2) {
        HarnessOptions opts;
        opts.phase_convention =
            lm_convention == "gauge" ? PhaseConvention::gauge_reduction : PhaseConvention::coupling_conditions;
        const Theorem2Limit lim = theorem2_limit(theorem2_from_json(spec), opts);
        rec = to_json(lim.model);
        rec["kappa"] = to_json(lim.data.kappa);
        rec["a0"] = lim.data.coeffs.a0;
        rec["a1"] = to_json(lim.data.coeffs.a1);
        rec["a2"] = lim.data.coeffs.a2;
      } else {
        const Theorem1Setup s = theorem1_from_json(spec);
        const Lambda lambda = parse_lambda(lambda_text(spec, lm_lambda));
        HarnessOptions opts;
        opts.resonance_tol = lm_tol;
        rec = to_json(theorem1_limit(s, lambda, opts));
        rec["alpha"] = s.alpha;
        rec["lambda"] = lambda.to_string();
      }
      Emitter(lm_c.out, out).write(rec.dump(2) + "\n");
    } else if (ci->parsed()) {
      const Theorem2Setup s = theorem2_from_json(load_json_file(ci_c.spec));
      Profile g1 = s.f1, g2 = s.f2;
      if (!s.A.empty()) {
        const GaugeData gauge = gauge_phase(s.A);
        g1 = gauge_twist(s.f1, gauge);
        g2 = gauge_twist(s.f2, gauge);
      }
      Emitter(ci_c.out, out).write(to_json(resonance_circle(g1, g2)).dump(2) + "\n");
    } else if (sc->parsed()) {
      std::vector<double> ks;
      if (!sc_kgrid.empty())
        ks = parse_k_grid(sc_kgrid);
      else if (sc_k > 0.0)
        ks = {sc_k};
      else
        throw ConfigError("scatter: give --k or --k-grid");
      if (!sc_model.empty()) {
        const json m = load_json_file(sc_model);
        LimitModel model = DirichletDecoupled{};
        if (!(m.is_object() && m.value("model", std::string()) == "dirichlet")) {
          const PointInteraction pi = point_interaction_from_json(m);
          const ValidationReport rep = validate(pi, 1e-10);
          if (!rep.ok) throw ConfigError("point interaction: " + rep.message);
          model = pi;
        }
        std::string csv = "k,re_r,im_r,re_t,im_t,abs_t2\n";
        for (double k : ks) {
          const ScatteringData s = scatter_limit(model, Profile{}, k);
          csv += fmt17(k) + "," + fmt17(s.r_left.real()) + "," + fmt17(s.r_left.imag()) + "," +
                 fmt17(s.t_left.real()) + "," + fmt17(s.t_left.imag()) + "," + fmt17(std::norm(s.t_left)) + "\n";
        }
        Emitter(sc_c.out, out).write(csv);
      } else if (!sc_family.empty()) {
        if (sc_c.spec.empty()) throw ConfigError("scatter: --family needs --spec");
        if (!(sc_eps > 0.0)) throw ConfigError("scatter: --family needs a positive --eps");
        const json spec = load_json_file(sc_c.spec);
        json recs = json::array();
        for (double k : ks) {
          if (sc_family == "pot") {
            const Theorem1Setup s = theorem1_from_json(spec);
            PotentialFamilySpec f{s.V0, s.V, s.U, s.A, s.alpha, sc_eps, sc_nu > 0.0 ? sc_nu : sc_eps};
            recs.push_back(to_json(scatter_potential_family(f, k)));
          } else {
            const Theorem2Setup s = theorem2_from_json(spec);
            RankTwoFamilySpec f{s.V0, s.f1, s.f2, s.U, s.A, s.beta, sc_eps};
            recs.push_back(to_json(scatter_rank_two_family(f, k)));
          }
        }
        Emitter(sc_c.out, out).write((recs.size() == 1 ? recs[0] : recs).dump(2) + "\n");
      } else {
        throw ConfigError("scatter: give --model or --family");
      }
    } else if (cv->parsed()) {
      const json spec = load_json_file(cv_c.spec);
      const int theorem = cv_theorem != 0 ? cv_theorem : (spec.is_object() && spec.contains("f1") ? 2 : 1);
      const std::vector<double> eps = parse_list(cv_eps);
      HarnessOptions opts;
      opts.resonance_tol = cv_tol;
      ConvergenceReport rep;
      if (theorem == 1) {
        const Schedule schedule(parse_lambda(lambda_text(spec, cv_lambda)), eps);
        rep = converge_theorem1(theorem1_from_json(spec), schedule, cv_k, opts);
      } else {
        rep = converge_theorem2(theorem2_from_json(spec), eps, cv_k, opts);
      }
      for (const auto& row : rep.rows)
        if (!row.ok()) err << "reslab: eps = " << row.eps << ": " << row.failure << "\n";
      Emitter(cv_c.out, out).write(cv_json ? to_json(rep).dump(2) + "\n" : to_csv(rep));
    }
  } catch (const HypothesisError& e) {
    err << "reslab: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const SolverError& e) {
    err << "reslab: " << e.what() << "\n";
    return kExitSolver;
  } catch (const ConfigError& e) {
    err << "reslab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "reslab: malformed spec: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace reslab
