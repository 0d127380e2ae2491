#pragma once

// Double zero-energy resonances of
//   B = -d^2/dx^2 + conj(beta) <g2, .> g1 + beta <g1, .> g2
// for zero-mean, linearly independent g1, g2, and the point interaction that
// the rank-two family converges to.

#include "reslab/point_interaction.hpp"
#include "reslab/profile.hpp"

namespace reslab {

// Couplings beta with a double resonance: |beta - beta0| = rho.
struct ResonanceCircle {
  cplx beta0{0.0, 0.0};
  double rho = 0.0;
  double m1 = 0.0;     // ||g1^(-1)||
  double m2 = 0.0;     // ||g2^(-1)||
  cplx tau{0.0, 0.0};  // <g1^(-1), g2^(-1)>

  // ||beta - beta0| - rho| <= rel_tol * rho.
  bool contains(cplx beta, double rel_tol = 1e-8) const;
  // [[beta m1^2, beta tau + 1], [conj(beta tau) + 1, conj(beta) m2^2]]
  Mat2 coefficient_matrix(cplx beta) const;
  double smallest_singular_value(cplx beta) const;
};

struct CircleOptions {
  double mean_tol = 1e-10;
  // Gram determinant threshold relative to m1^2 m2^2.
  double gram_tol = 1e-12;
};

ResonanceCircle resonance_circle(const Profile& g1, const Profile& g2, const CircleOptions& options = {});

struct InteractionCoefficients {
  double a0 = 0.0;        // int U
  cplx a1{0.0, 0.0};      // int U omega
  double a2 = 0.0;        // int U |omega|^2
};

struct ResonanceData {
  TailedProfile omega;  // zero to the left, constant kappa to the right
  cplx kappa{0.0, 0.0};
  InteractionCoefficients coeffs;
};

// omega = e^{i arg(1/beta + tau)} m2 g1^(-2) - m1 g2^(-2). Throws OffCircle
// when beta is not on the resonance circle.
ResonanceData half_bound_omega(const Profile& g1, const Profile& g2, cplx beta, double rel_tol = 1e-8,
                               const CircleOptions& options = {});

InteractionCoefficients interaction_coefficients(const Profile& U, const TailedProfile& omega);

// || -w'' + conj(beta) <g2, w> g1 + beta <g1, w> g2 || for w given on a window
// containing both supports.
double half_bound_residual(const Profile& g1, const Profile& g2, cplx beta, const Profile& w);

// The two displayed forms of the coupling phase. They agree because a2 is
// real: arg(a2 - kappa conj(a1)) = -arg(a2 - conj(kappa) a1).
enum class PhaseConvention {
  coupling_conditions,  // mu - arg(a2 - conj(kappa) a1)
  gauge_reduction,      // mu + arg(a2 - kappa conj(a1))
};

// Throws DegenerateCase when |a2 - conj(kappa) a1| <= tol.
PointInteraction limit_matrix_rank_two(const InteractionCoefficients& coeffs, cplx kappa, double mu,
                                       PhaseConvention convention = PhaseConvention::coupling_conditions,
                                       double tol = 1e-12);

}  // namespace reslab
