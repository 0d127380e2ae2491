#include "reslab/point_interaction.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "reslab/errors.hpp"

namespace reslab {

Mat2 PointInteraction::coupling() const { return std::exp(I * phase) * Mat2{{c11, c12, c21, c22}}; }

ValidationReport validate(const PointInteraction& pi, double tol) {
  ValidationReport rep;
  for (double v : {pi.phase, pi.c11, pi.c12, pi.c21, pi.c22}) {
    if (!std::isfinite(v)) {
      rep.ok = false;
      rep.det_deviation = std::numeric_limits<double>::infinity();
      rep.message = "non-finite entry";
      return rep;
    }
  }
  rep.det_deviation = std::abs(pi.determinant() - 1.0);
  if (rep.det_deviation > tol) {
    rep.ok = false;
    std::ostringstream msg;
    msg << "det C = " << pi.determinant() << " differs from 1 by " << rep.det_deviation;
    rep.message = msg.str();
  }
  return rep;
}

PointInteraction canonicalize(const PointInteraction& pi) {
  PointInteraction out = pi;
  double phi = std::remainder(pi.phase, 2.0 * std::numbers::pi);  // (-pi, pi]
  if (phi > std::numbers::pi / 2 || phi < -std::numbers::pi / 2) {
    phi += phi > 0 ? -std::numbers::pi : std::numbers::pi;
    out.c11 = -out.c11;
    out.c12 = -out.c12;
    out.c21 = -out.c21;
    out.c22 = -out.c22;
  }
  out.phase = phi;
  return out;
}

double ScatteringData::unitarity_defect() const {
  const double l = std::norm(r_left) + std::norm(t_left) - 1.0;
  const double r = std::norm(r_right) + std::norm(t_right) - 1.0;
  return std::max(std::abs(l), std::abs(r));
}

double distance(const ScatteringData& a, const ScatteringData& b) {
  return std::sqrt(std::norm(a.r_left - b.r_left) + std::norm(a.t_left - b.t_left) +
                   std::norm(a.r_right - b.r_right) + std::norm(a.t_right - b.t_right));
}

ScatteringData scattering_from_transfer(const Mat2& m, Interval interval, double k) {
  if (!(k > 0.0)) throw ConfigError("scattering: wavenumber must be positive");
  const cplx ea = std::exp(I * k * interval.lo);
  const cplx eb = std::exp(I * k * interval.hi);
  const cplx ik = I * k;
  // Images at hi of the right- and left-moving waves leaving lo.
  const auto p = m.apply(ea, ik * ea);
  const auto q = m.apply(1.0 / ea, -ik / ea);
  const cplx den = q[1] - ik * q[0];
  if (std::abs(den) <= 1e-300 || !std::isfinite(std::abs(den)))
    throw SolverError(SolverFailure::singular_system, "interface system is singular");

  ScatteringData s;
  s.k = k;
  s.r_left = -(p[1] - ik * p[0]) / den;
  s.t_left = (p[0] + s.r_left * q[0]) / eb;
  s.t_right = 2.0 * ik / (eb * (ik * q[0] - q[1]));
  s.r_right = (s.t_right * q[0] - 1.0 / eb) / eb;
  return s;
}

ScatteringData scatter_pi(const PointInteraction& pi, double k) {
  return scattering_from_transfer(pi.coupling(), {0.0, 0.0}, k);
}

ScatteringData scatter_dirichlet(double k) {
  if (!(k > 0.0)) throw ConfigError("scattering: wavenumber must be positive");
  ScatteringData s;
  s.k = k;
  s.r_left = -1.0;
  s.r_right = -1.0;
  return s;
}

ScatteringData scatter_limit(const LimitModel& model, const Profile& V0, double k, const IntegratorOptions& options) {
  if (!(k > 0.0)) throw ConfigError("scattering: wavenumber must be positive");
  const double E = k * k;
  Interval window{0.0, 0.0};
  if (!V0.empty()) window = hull(V0.support(), window);
  const Interval left{window.lo, 0.0};
  const Interval right{0.0, window.hi};
  const Mat2 ml = transfer_matrix(V0, E, left, options).m;
  const Mat2 mr = transfer_matrix(V0, E, right, options).m;

  if (const auto* pi = std::get_if<PointInteraction>(&model))
    return scattering_from_transfer(mr * pi->coupling() * ml, window, k);

  // Dirichlet wall at the origin: each side sees psi(0) = 0.
  const cplx ik = I * k;
  const auto wl = ml.inverse().apply(0.0, 1.0);
  const auto wr = mr.apply(0.0, 1.0);
  ScatteringData s;
  s.k = k;
  s.r_left = -std::exp(2.0 * ik * window.lo) * (wl[1] - ik * wl[0]) / (wl[1] + ik * wl[0]);
  s.r_right = -std::exp(-2.0 * ik * window.hi) * (wr[1] + ik * wr[0]) / (wr[1] - ik * wr[0]);
  return s;
}

}  // namespace reslab
