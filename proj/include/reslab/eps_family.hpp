#pragma once

// Scattering data of the shrinking families at fixed eps.
//
// The magnetic term never enters an integrator. Both families are gauge
// equivalent, through multiplication by e^{i a(x/eps)}, to non-magnetic
// operators, so we scatter on the non-magnetic operator and then multiply
// the left-incidence transmission by e^{i mu} and the right-incidence one by
// e^{-i mu}.

#include "reslab/ode.hpp"
#include "reslab/point_interaction.hpp"
#include "reslab/profile.hpp"

namespace reslab {

// (i d/dx + A(x/eps)/eps)^2 + V0 + alpha V(x/eps)/eps^2 + U(x/nu)/nu
struct PotentialFamilySpec {
  Profile V0;
  Profile V;
  Profile U;
  Profile A;
  double alpha = 0.0;
  double eps = 1.0;
  double nu = 1.0;
};

// (i d/dx + A(x/eps)/eps)^2 + V0 + F_eps / eps^3 + U(x/eps)/eps with
// F_eps = conj(beta) <f2(./eps), .> f1(x/eps) + beta <f1(./eps), .> f2(x/eps)
struct RankTwoFamilySpec {
  Profile V0;
  Profile f1;
  Profile f2;
  Profile U;
  Profile A;
  cplx beta{0.0, 0.0};
  double eps = 1.0;
};

struct FamilyOptions {
  IntegratorOptions integrator;
  double eps_min = 1e-4;
  TwistOptions twist;
};

// V0 + alpha eps^-2 V(x/eps) + nu^-1 U(x/nu).
Profile scaled_potential(const PotentialFamilySpec& spec, const FamilyOptions& options = {});

// Transmission phases for a gauge with total flux mu.
ScatteringData apply_gauge(ScatteringData s, double mu);

ScatteringData scatter_potential_family(const PotentialFamilySpec& spec, double k, const FamilyOptions& options = {});

ScatteringData scatter_rank_two_family(const RankTwoFamilySpec& spec, double k, const FamilyOptions& options = {});

}  // namespace reslab
