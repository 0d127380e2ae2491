#include "reslab/rank_two.hpp"

#include <cmath>
#include <sstream>

#include "reslab/errors.hpp"

namespace reslab {
namespace {

Interval joint_support(const Profile& a, const Profile& b) {
  if (a.empty()) return b.support();
  if (b.empty()) return a.support();
  return hull(a.support(), b.support());
}

}  // namespace

bool ResonanceCircle::contains(cplx beta, double rel_tol) const {
  return std::abs(std::abs(beta - beta0) - rho) <= rel_tol * rho;
}

Mat2 ResonanceCircle::coefficient_matrix(cplx beta) const {
  return Mat2{{beta * m1 * m1, beta * tau + 1.0, std::conj(beta * tau) + 1.0, std::conj(beta) * m2 * m2}};
}

double ResonanceCircle::smallest_singular_value(cplx beta) const {
  // Eigenvalues of M^* M from its trace and determinant.
  const Mat2 m = coefficient_matrix(beta);
  double fro2 = 0.0;
  for (cplx v : m.a) fro2 += std::norm(v);
  const double d = std::abs(m.det());
  const double disc = std::sqrt(std::max(0.0, fro2 * fro2 - 4.0 * d * d));
  const double big = 0.5 * (fro2 + disc);
  // s_min^2 = d^2 / s_max^2 avoids cancellation.
  return big > 0.0 ? d / std::sqrt(big) : 0.0;
}

ResonanceCircle resonance_circle(const Profile& g1, const Profile& g2, const CircleOptions& options) {
  for (const Profile* g : {&g1, &g2}) {
    if (!zero_mean(*g, options.mean_tol)) {
      std::ostringstream msg;
      msg << "|int g| = " << std::abs(integral(*g)) << " exceeds " << options.mean_tol;
      throw HypothesisError(Hypothesis::non_zero_mean, msg.str());
    }
  }
  const Profile G1 = antiderivative(g1, 1).body;
  const Profile G2 = antiderivative(g2, 1).body;
  ResonanceCircle c;
  c.m1 = l2_norm(G1);
  c.m2 = l2_norm(G2);
  c.tau = inner_product(G1, G2);
  const double mm = c.m1 * c.m1 * c.m2 * c.m2;
  const double gram = mm - std::norm(c.tau);
  if (!(mm > 0.0) || gram <= options.gram_tol * mm) {
    std::ostringstream msg;
    msg << "Gram determinant " << gram << " of the first antiderivatives is not above " << options.gram_tol
        << " * m1^2 m2^2";
    throw HypothesisError(Hypothesis::dependent_inputs, msg.str());
  }
  c.beta0 = std::conj(c.tau) / gram;
  c.rho = c.m1 * c.m2 / gram;
  return c;
}

ResonanceData half_bound_omega(const Profile& g1, const Profile& g2, cplx beta, double rel_tol,
                               const CircleOptions& options) {
  const ResonanceCircle circle = resonance_circle(g1, g2, options);
  if (beta == cplx{0.0, 0.0} || !circle.contains(beta, rel_tol)) {
    std::ostringstream msg;
    msg << "beta = " << beta << " is not on |beta - " << circle.beta0 << "| = " << circle.rho;
    throw HypothesisError(Hypothesis::off_circle, msg.str());
  }
  const cplx phase = std::exp(I * std::arg(1.0 / beta + circle.tau));
  const TailedProfile h1 = antiderivative(g1, 2);
  const TailedProfile h2 = antiderivative(g2, 2);

  // Both second antiderivatives are extended to the joint window so the sum
  // keeps the zero-left / constant-right shape.
  const Interval w = joint_support(g1, g2);
  ResonanceData rd;
  rd.omega.body = (phase * circle.m2) * h1.over(w) - cplx{circle.m1, 0.0} * h2.over(w);
  rd.omega.tail_value = rd.omega.body(w.hi);
  rd.omega.tail_slope = 0.0;
  rd.kappa = rd.omega.tail_value;
  return rd;
}

InteractionCoefficients interaction_coefficients(const Profile& U, const TailedProfile& omega) {
  if (!U.is_real()) throw ConfigError("interaction coefficients: U must be real");
  InteractionCoefficients c;
  c.a0 = integral(U).real();
  if (U.empty() || omega.body.empty()) return c;
  const Interval w = hull(U.support(), omega.body.support());
  const Profile om = omega.over(w);
  const Profile u_om = product(U, om);
  c.a1 = integral(u_om);
  c.a2 = integral(product(conjugate(om), u_om)).real();
  return c;
}

double half_bound_residual(const Profile& g1, const Profile& g2, cplx beta, const Profile& w) {
  const Profile w2 = derivative(derivative(w));
  const cplx c1 = std::conj(beta) * inner_product(g2, w);
  const cplx c2 = beta * inner_product(g1, w);
  return l2_norm(c1 * g1 + c2 * g2 - w2);
}

PointInteraction limit_matrix_rank_two(const InteractionCoefficients& c, cplx kappa, double mu,
                                       PhaseConvention convention, double tol) {
  const cplx d = c.a2 - std::conj(kappa) * c.a1;
  const double ad = std::abs(d);
  if (!(ad > tol)) {
    std::ostringstream msg;
    msg << "|a2 - conj(kappa) a1| = " << ad << " is not above " << tol;
    throw HypothesisError(Hypothesis::degenerate_case, msg.str());
  }
  const double k2 = std::norm(kappa);
  PointInteraction pi;
  pi.c11 = (c.a0 * k2 - 2.0 * (std::conj(kappa) * c.a1).real() + c.a2) / ad;
  pi.c12 = k2 / ad;
  pi.c21 = (c.a0 * c.a2 - std::norm(c.a1)) / ad;
  pi.c22 = c.a2 / ad;
  pi.phase = convention == PhaseConvention::coupling_conditions
                 ? mu - std::arg(d)
                 : mu + std::arg(c.a2 - kappa * std::conj(c.a1));
  return pi;
}

}  // namespace reslab
