#pragma once

// Propagation of -u'' + q(x) u = E u across an interval.
//
// The interval is cut at every breakpoint of q (and of any source/weight
// profile) so each cell has polynomial coefficients. Cells with constant q
// and no source are crossed with the exact cos/cosh propagator; all other
// cells use classical RK4 with a step tied to the local wavenumber.

#include <span>
#include <vector>

#include "reslab/profile.hpp"
#include "reslab/types.hpp"

namespace reslab {

struct State {
  cplx u{0.0, 0.0};
  cplx du{0.0, 0.0};
};

struct IntegratorOptions {
  // Step h per cell satisfies h * sqrt(max|q - E|) <= phase_step.
  double phase_step = 2e-3;
  int min_steps = 32;
  // Use the closed-form propagator on constant-q cells without sources.
  bool exact_constant_blocks = true;
  // Refuse to take more steps than this over one propagation.
  std::size_t max_steps = 20'000'000;
};

struct Solution {
  // Recorded nodes (empty unless recording was requested).
  std::vector<double> x;
  std::vector<cplx> u;
  std::vector<cplx> du;
  State terminal;
  // int conj(w_j) u over the interval, one entry per weight profile.
  std::vector<cplx> accumulated;

  // Cubic Hermite interpolant of the recorded nodes.
  Profile as_profile(Codomain codomain = Codomain::complex) const;
  double max_abs_u() const;
};

struct TransferMatrix {
  Mat2 m;
  double energy = 0.0;
  Interval interval;

  cplx det() const { return m.det(); }
};

struct Propagation {
  const Profile* q = nullptr;
  double energy = 0.0;
  Interval interval;
  State init;
  // Inhomogeneity s in -u'' + (q - E) u = -s.
  const Profile* source = nullptr;
  // Profiles w_j whose overlaps int conj(w_j) u are accumulated.
  std::span<const Profile> weights{};
  bool record = false;
};

Solution integrate(const Propagation& job, const IntegratorOptions& options = {});

// Solution of -u'' + q u = E u from init at interval.lo; recorded.
Solution propagate(const Profile& q, double energy, State init, Interval interval,
                   const IntegratorOptions& options = {});

// Columns are the propagations of (1, 0) and (0, 1).
TransferMatrix transfer_matrix(const Profile& q, double energy, Interval interval,
                               const IntegratorOptions& options = {});

// Particular solution of -u'' + q u - E u = -s with zero initial data.
Solution source_response(const Profile& q, double energy, const Profile& s, Interval interval,
                         const IntegratorOptions& options = {});

// Exact propagator over length len for constant z = q - E.
Mat2 constant_block(double z, double len);

}  // namespace reslab
