#include <doctest.h>

#include <cmath>

#include "reslab/errors.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace reslab;
using fx::box;

namespace {

double phase_diff(cplx a, cplx b) { return std::remainder(std::arg(a) - std::arg(b), 2.0 * M_PI); }

}  // namespace

TEST_CASE("free and pure-gauge families") {
  PotentialFamilySpec f;
  f.eps = 0.1;
  f.nu = 0.1;
  const ScatteringData s = scatter_potential_family(f, 1.0);
  CHECK(std::abs(s.r_left) == 0.0);
  CHECK(std::abs(s.t_left - 1.0) == 0.0);

  f.A = box(-1, 1, 0.7);
  const ScatteringData g = scatter_potential_family(f, 1.0);
  CHECK(std::abs(g.r_left) == 0.0);
  CHECK(std::abs(g.t_left - std::exp(I * 1.4)) < 1e-14);
  CHECK(std::abs(g.t_right - std::exp(-I * 1.4)) < 1e-14);

  RankTwoFamilySpec r;
  r.eps = 0.3;
  r.beta = 1.0;
  const ScatteringData t = scatter_rank_two_family(r, 2.0);
  CHECK(std::abs(t.t_left - 1.0) == 0.0);
}

TEST_CASE("rectangular barrier") {
  for (double eps : {1.0, 0.5}) {
    for (double k : {0.5, 1.0, 3.0}) {
      PotentialFamilySpec f;
      f.U = box(0.2, 1.2, 2.5);
      f.eps = eps;
      f.nu = 1.0;
      const ScatteringData s = scatter_potential_family(f, k);
      const ScatteringData o = oracle::barrier(2.5, 0.2, 1.0, k);
      CHECK(fx::max_entry_diff(s, o) < 1e-8);
      CHECK(s.unitarity_defect() < 1e-8);
    }
  }
  // well, oscillatory inside
  PotentialFamilySpec f;
  f.U = box(-0.5, 0.5, -8.0);
  f.nu = 1.0;
  CHECK(fx::max_entry_diff(scatter_potential_family(f, 1.3), oracle::barrier(-8.0, -0.5, 1.0, 1.3)) < 1e-8);
}

TEST_CASE("gauge invariance of probabilities") {
  PotentialFamilySpec f;
  f.V = box(-1, 1);
  f.U = box(0, 1);
  f.alpha = -3.0;
  f.eps = 0.2;
  f.nu = 0.1;
  const ScatteringData a = scatter_potential_family(f, 1.0);
  f.A = fx::steps({-1, 0, 1}, {0.5, 1.0});
  const ScatteringData b = scatter_potential_family(f, 1.0);
  CHECK(std::abs(std::abs(a.t_left) - std::abs(b.t_left)) < 1e-10);
  CHECK(std::abs(std::abs(a.r_left) - std::abs(b.r_left)) < 1e-10);
  CHECK(std::abs(a.r_left - b.r_left) < 1e-10);
  CHECK(std::abs(phase_diff(b.t_left, a.t_left) - 1.5) < 1e-8);
}

TEST_CASE("rank-two family") {
  SUBCASE("beta = 0 reduces to the potential family") {
    RankTwoFamilySpec r;
    r.f1 = fx::pair_f1();
    r.f2 = fx::pair_f2();
    r.U = box(0, 1);
    r.eps = 0.2;
    PotentialFamilySpec p;
    p.U = box(0, 1);
    p.eps = 0.2;
    p.nu = 0.2;
    CHECK(fx::max_entry_diff(scatter_rank_two_family(r, 1.0), scatter_potential_family(p, 1.0)) < 1e-12);
  }

  SUBCASE("agrees with dense collocation") {
    for (const cplx beta : {cplx{1.0}, std::exp(I * 1.0), cplx{-0.4, 2.0}}) {
      RankTwoFamilySpec r;
      r.f1 = fx::pair_f1();
      r.f2 = fx::pair_f2();
      r.U = box(0, 1);
      r.beta = beta;
      r.eps = 0.5;
      for (double k : {0.7, 1.0, 2.5}) {
        const ScatteringData s = scatter_rank_two_family(r, k);
        const double e3 = r.eps * r.eps * r.eps;
        const ScatteringData o = oracle::collocation(cplx{1.0 / r.eps} * dilate(r.U, r.eps), dilate(r.f1, r.eps),
                                                     dilate(r.f2, r.eps), beta / e3, k);
        CHECK(fx::max_entry_diff(s, o) < 1e-8);
        CHECK(s.unitarity_defect() < 1e-8);
      }
    }
  }

  SUBCASE("step refinement") {
    RankTwoFamilySpec r = {Profile{}, fx::pair_f1(), fx::pair_f2(), box(0, 1), Profile{}, 1.0, 0.1};
    FamilyOptions fine;
    fine.integrator.phase_step *= 0.5;
    CHECK(fx::max_entry_diff(scatter_rank_two_family(r, 1.0), scatter_rank_two_family(r, 1.0, fine)) < 1e-8);
  }

  SUBCASE("gauge") {
    // magnetic family vs the non-magnetic family with the twisted pair
    RankTwoFamilySpec r = {Profile{}, fx::pair_f1(), fx::pair_f2(), box(0, 1), box(-1, 1, M_PI / 4), 1.0, 0.1};
    const ScatteringData b = scatter_rank_two_family(r, 1.0);
    const GaugeData gauge = gauge_phase(r.A);
    RankTwoFamilySpec plain = r;
    plain.A = Profile{};
    plain.f1 = gauge_twist(r.f1, gauge);
    plain.f2 = gauge_twist(r.f2, gauge);
    const ScatteringData a = scatter_rank_two_family(plain, 1.0);
    CHECK(b.unitarity_defect() < 1e-8);
    CHECK(std::abs(std::abs(a.t_left) - std::abs(b.t_left)) < 1e-10);
    CHECK(std::abs(a.r_left - b.r_left) < 1e-10);
    CHECK(std::abs(phase_diff(b.t_left, a.t_left) - M_PI / 2) < 1e-8);
  }
}

TEST_CASE("eps guard") {
  PotentialFamilySpec f;
  f.V = box(-1, 1);
  f.eps = 1e-6;
  CHECK_THROWS_AS(scatter_potential_family(f, 1.0), ConfigError);
}
