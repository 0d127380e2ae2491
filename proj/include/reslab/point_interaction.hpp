#pragma once

#include <string>
#include <variant>

#include "reslab/ode.hpp"
#include "reslab/profile.hpp"
#include "reslab/types.hpp"

namespace reslab {

// Coupling (psi, psi')(+0) = e^{i phase} C (psi, psi')(-0) with real C,
// det C = 1.
struct PointInteraction {
  double phase = 0.0;
  double c11 = 1.0;
  double c12 = 0.0;
  double c21 = 0.0;
  double c22 = 1.0;

  static PointInteraction identity() { return {}; }
  double determinant() const { return c11 * c22 - c12 * c21; }
  // e^{i phase} C as a complex transfer matrix across the origin.
  Mat2 coupling() const;
};

// Limit where the line decouples into two Dirichlet half-lines.
struct DirichletDecoupled {};

using LimitModel = std::variant<PointInteraction, DirichletDecoupled>;

struct ValidationReport {
  bool ok = true;
  double det_deviation = 0.0;
  std::string message;
};

ValidationReport validate(const PointInteraction& pi, double tol = 1e-12);

// Reduces the phase to [-pi/2, pi/2] using e^{i phase} C = e^{i (phase - pi)} (-C).
PointInteraction canonicalize(const PointInteraction& pi);

// Reflection and transmission amplitudes for waves incident from the left
// (e^{ikx} + r e^{-ikx} -> t e^{ikx}) and from the right.
struct ScatteringData {
  double k = 0.0;
  cplx r_left{0.0, 0.0};
  cplx t_left{0.0, 0.0};
  cplx r_right{0.0, 0.0};
  cplx t_right{0.0, 0.0};

  // max over sides of | |r|^2 + |t|^2 - 1 |.
  double unitarity_defect() const;
};

// Euclidean norm of the difference of (r_left, t_left, r_right, t_right).
double distance(const ScatteringData& a, const ScatteringData& b);

// Amplitudes for a region [interval.lo, interval.hi] with transfer matrix m
// and free motion outside. A point interface is the case lo = hi.
ScatteringData scattering_from_transfer(const Mat2& m, Interval interval, double k);

ScatteringData scatter_pi(const PointInteraction& pi, double k);
ScatteringData scatter_dirichlet(double k);

// Scattering by -d^2/dx^2 + V0 with the limit model imposed at the origin.
ScatteringData scatter_limit(const LimitModel& model, const Profile& V0, double k,
                             const IntegratorOptions& options = {});

}  // namespace reslab
