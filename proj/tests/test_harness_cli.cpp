#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "reslab/cli.hpp"
#include "reslab/config.hpp"
#include "reslab/errors.hpp"
#include "support/fixtures.hpp"

using namespace reslab;
using fx::box;

namespace {

const std::vector<double> kEps{0.2, 0.1, 0.05, 0.025};

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(RESLAB_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = "reslab_test_" + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("schedule") {
  const Schedule lin(Lambda::finite(2.0), kEps);
  CHECK(lin.nu(0.1) == doctest::Approx(0.2));
  CHECK(Schedule(Lambda::zero(), kEps).nu(0.1) == doctest::Approx(0.01));
  CHECK(Schedule(Lambda::infinity(), kEps).nu(0.04) == doctest::Approx(0.2));
  CHECK_THROWS_AS(Schedule(Lambda::zero(), {0.1, 0.2}), ConfigError);
  CHECK_THROWS_AS(Schedule(Lambda::zero(), {0.1, -0.2}), ConfigError);
  CHECK_THROWS_AS(Schedule(Lambda::zero(), {}), ConfigError);
  CHECK_THROWS(Lambda::finite(-1.0));
}

TEST_CASE("free family converges trivially") {
  Theorem1Setup s;
  s.V = box(-1, 1, 5.0);
  const ConvergenceReport r = converge_theorem1(s, Schedule(Lambda::finite(1.0), kEps), 1.0);
  for (const auto& row : r.rows) CHECK(row.err == 0.0);
  CHECK(r.monotone_tail);
}

TEST_CASE("theorem 1 sweeps") {
  const ConvergenceReport r = converge_theorem1(fx::square_well(-M_PI * M_PI), Schedule(Lambda::finite(1.0), kEps), 1.0);
  REQUIRE(r.rows.size() == 4);
  for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].err < r.rows[i - 1].err);
  CHECK(r.monotone_tail);
  for (const auto& row : r.rows) CHECK(row.unitarity_defect < 1e-8);

  const ConvergenceReport nr = converge_theorem1(fx::square_well(-1.0), Schedule(Lambda::finite(1.0), kEps), 1.0);
  for (std::size_t i = 1; i < nr.rows.size(); ++i) CHECK(nr.rows[i].abs_t < nr.rows[i - 1].abs_t);
  CHECK(nr.rows.back().abs_t <= 0.2);

  SUBCASE("lambda endpoints") {
    for (const Lambda l : {Lambda::zero(), Lambda::infinity()}) {
      const ConvergenceReport e = converge_theorem1(fx::square_well(-M_PI * M_PI), Schedule(l, kEps), 1.0);
      CHECK(e.rows.back().err < e.rows.front().err);
    }
  }

  SUBCASE("wrong limit is detected") {
    const Theorem1Setup s = fx::square_well(-M_PI * M_PI);
    auto pi = std::get<PointInteraction>(theorem1_limit(s, Lambda::finite(1.0)));
    pi.c11 = -pi.c11;
    pi.c22 = -pi.c22;
    const ConvergenceReport w = converge_theorem1_against(s, Schedule(Lambda::finite(1.0), kEps), 1.0, pi);
    for (const auto& row : w.rows) CHECK(row.err > 0.1);
  }
}

TEST_CASE("theorem 2 sweeps") {
  const std::vector<double> eps{0.2, 0.1, 0.05};
  const ConvergenceReport r = converge_theorem2(fx::bundled_pair(), eps, 1.0);
  for (std::size_t i = 1; i < r.rows.size(); ++i) CHECK(r.rows[i].err <= r.rows[i - 1].err);

  CHECK_THROWS_AS(converge_theorem2(fx::bundled_pair(0.0), eps, 1.0), HypothesisError);

  SUBCASE("flux outside the pair only moves the transmitted phase") {
    Theorem2Setup m = fx::bundled_pair();
    m.A = box(1.0, 2.0, 0.5);
    const Theorem2Limit a = theorem2_limit(fx::bundled_pair());
    const Theorem2Limit b = theorem2_limit(m);
    const ScatteringData sa = scatter_pi(a.model, 1.0), sb = scatter_pi(b.model, 1.0);
    CHECK(std::abs(std::abs(sa.t_left) - std::abs(sb.t_left)) < 1e-12);
    CHECK(std::abs(std::abs(sa.r_left) - std::abs(sb.r_left)) < 1e-12);
    CHECK(std::abs(std::remainder(std::arg(sb.t_left) - std::arg(sa.t_left) - 0.5, 2 * M_PI)) < 1e-12);
    const ConvergenceReport rm = converge_theorem2(m, eps, 1.0);
    for (std::size_t i = 0; i < eps.size(); ++i) CHECK(std::abs(rm.rows[i].err - r.rows[i].err) < 1e-10);
  }
}

TEST_CASE("parallel sweeps are deterministic") {
  HarnessOptions one, many;
  one.threads = 1;
  many.threads = 4;
  const Schedule s(Lambda::finite(1.0), kEps);
  const std::string a = to_csv(converge_theorem1(fx::square_well(-M_PI * M_PI), s, 1.0, one));
  const std::string b = to_csv(converge_theorem1(fx::square_well(-M_PI * M_PI), s, 1.0, many));
  CHECK(a == b);
  CHECK(a.rfind("eps,nu,k,err,abs_t,abs_r\n", 0) == 0);
}

TEST_CASE("config parsing") {
  const json j = json::parse(R"({"kind": "piecewise", "support": [-1, 2],
      "segments": [{"from": 0, "to": 1, "coeffs": [1, 2]}]})");
  const Profile p = profile_from_json(j);
  CHECK(p(-0.5) == cplx{});
  CHECK(p(0.5) == cplx{2.0});
  CHECK(std::abs(integral(p) - cplx{2.0}) < 1e-14);
  const Profile back = profile_from_json(to_json(p));
  CHECK(std::abs(back(0.25) - p(0.25)) < 1e-15);

  CHECK_THROWS_AS(profile_from_json(json::parse(R"({"kind": "spline", "support": [0, 1]})")), ConfigError);
  CHECK_THROWS_AS(profile_from_json(json::parse(R"({"kind": "piecewise", "support": [1, 0], "segments": []})")),
                  ConfigError);
  CHECK(complex_from_json(json::parse("[1, -2]")) == cplx{1.0, -2.0});
  CHECK_THROWS_AS(theorem2_from_json(json::parse("{}")), ConfigError);

  const json g = json::parse(R"({"kind": "grid", "support": [0, 1], "samples": [0, 0.25, 1], "rescale": [-1, 1]})");
  const Profile pg = profile_from_json(g);
  CHECK(pg.support().lo == -1.0);
  CHECK(std::abs(integral(pg) - cplx{2.0 / 3.0}) < 1e-14);
}

TEST_CASE("command line") {
  CHECK(cli({"--help"}).code == kExitOk);
  CHECK(cli({"converge", "--help"}).code == kExitOk);
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"bogus"}).code == kExitUsage);
  CHECK(cli({"circle", "--spec", "does/not/exist.json"}).code == kExitUsage);
  CHECK(cli({"circle", "--spec", temp_file("bad.json", "{ nope")}).code == kExitUsage);

  SUBCASE("resonances") {
    const CliRun r = cli({"resonances", "--spec", data("square_well.json"), "--alpha-range", "-12:1"});
    REQUIRE(r.code == kExitOk);
    const json j = json::parse(r.out);
    REQUIRE(j.size() == 3);
    CHECK(std::abs(j[0]["alpha"].get<double>() + M_PI * M_PI) < 1e-8);
    CHECK(std::abs(j[1]["alpha"].get<double>() + M_PI * M_PI / 4) < 1e-8);
    CHECK(j[2]["alpha"].get<double>() == 0.0);
    CHECK(std::abs(j[1]["theta"].get<double>() + 1.0) < 1e-8);
  }

  SUBCASE("hypothesis and usage exits") {
    CHECK(cli({"halfbound", "--spec", data("square_well.json"), "--alpha", "-1"}).code == kExitHypothesis);
    const std::string off = temp_file("off.json", R"({"f1": {"kind": "piecewise", "support": [-1, 1],
        "segments": [{"from": -1, "to": 0, "value": 1}, {"from": 0, "to": 1, "value": -1}]},
        "f2": {"kind": "piecewise", "support": [-1, 1],
        "segments": [{"from": -1, "to": -0.5, "value": 1}, {"from": -0.5, "to": 0.5, "value": -1},
                     {"from": 0.5, "to": 1, "value": 1}]}, "beta": 0})");
    CHECK(cli({"limit-matrix", "--rank2", "--spec", off}).code == kExitHypothesis);
    CHECK(cli({"converge", "--spec", data("square_well.json"), "--eps-list", "0.1,0.2"}).code == kExitUsage);
    CHECK(cli({"scatter", "--k", "1"}).code == kExitUsage);
  }

  SUBCASE("limit matrices and circle") {
    const CliRun m = cli({"limit-matrix", "--spec", data("square_well.json"), "--lambda", "inf"});
    REQUIRE(m.code == kExitOk);
    const json jm = json::parse(m.out);
    CHECK(jm["model"] == "point_interaction");
    CHECK(std::abs(jm["det"].get<double>() - 1.0) < 1e-12);

    const CliRun c = cli({"circle", "--spec", data("rank_two_pair.json")});
    REQUIRE(c.code == kExitOk);
    const json jc = json::parse(c.out);
    CHECK(std::abs(jc["rho"].get<double>() - 1.0) < 1e-10);

    const CliRun r2 = cli({"limit-matrix", "--rank2", "--spec", data("rank_two_pair.json"), "--phase-convention", "gauge"});
    REQUIRE(r2.code == kExitOk);
    CHECK(std::abs(json::parse(r2.out)["det"].get<double>() - 1.0) < 1e-10);
  }

  SUBCASE("scatter") {
    const CliRun s = cli({"scatter", "--model", data("point_interaction.json"), "--k-grid", "0.5:4:8"});
    REQUIRE(s.code == kExitOk);
    std::istringstream in(s.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "k,re_r,im_r,re_t,im_t,abs_t2");
    int rows = 0;
    while (std::getline(in, line)) {
      double k, rr, ri, tr, ti, t2;
      REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &k, &rr, &ri, &tr, &ti, &t2) == 6);
      CHECK(std::abs(rr * rr + ri * ri + t2 - 1.0) < 1e-8);
      ++rows;
    }
    CHECK(rows == 8);

    const CliRun f = cli({"scatter", "--family", "rank2", "--spec", data("rank_two_pair.json"), "--eps", "0.1", "--k", "1"});
    REQUIRE(f.code == kExitOk);
    CHECK(json::parse(f.out)["unitarity_defect"].get<double>() < 1e-8);

    const CliRun p = cli({"scatter", "--family", "pot", "--spec", data("square_well.json"), "--eps", "0.1", "--nu",
                          "0.1", "--k-grid", "0.5:1.5:3"});
    REQUIRE(p.code == kExitOk);
    CHECK(json::parse(p.out).size() == 3);
  }

  SUBCASE("converge writes the csv") {
    const std::string path = "reslab_test_converge.csv";
    const CliRun c = cli({"converge", "--spec", data("rank_two_pair.json"), "--k", "1", "--eps-list", "0.2,0.1",
                          "--out", path});
    REQUIRE(c.code == kExitOk);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "eps,nu,k,err,abs_t,abs_r");
    const CliRun j = cli({"converge", "--theorem", "1", "--spec", data("square_well.json"), "--json"});
    REQUIRE(j.code == kExitOk);
    CHECK(json::parse(j.out)["rows"].size() == 4);
  }
}
