#include "reslab/eps_family.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "reslab/errors.hpp"

namespace reslab {
namespace {

using Vec3 = std::array<cplx, 3>;
using Mat3 = std::array<Vec3, 3>;

// Gaussian elimination with partial pivoting.
Vec3 solve3(Mat3 a, Vec3 b) {
  double scale = 0.0;
  for (const auto& row : a)
    for (cplx v : row) scale = std::max(scale, std::abs(v));
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (!(std::abs(a[piv][col]) > 1e-14 * scale)) {
      std::ostringstream msg;
      msg << "closure matrix is numerically singular (pivot " << std::abs(a[piv][col]) << ", scale " << scale << ")";
      throw SolverError(SolverFailure::singular_consistency, msg.str());
    }
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < 3; ++r) {
      const cplx f = a[r][col] / a[col][col];
      for (int c = col; c < 3; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  Vec3 x{};
  for (int r = 2; r >= 0; --r) {
    cplx s = b[r];
    for (int c = r + 1; c < 3; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

void check_common(double eps, double k, const FamilyOptions& options) {
  if (!(k > 0.0)) throw ConfigError("family scattering: wavenumber must be positive");
  if (!(eps >= options.eps_min))
    throw ConfigError("family scattering: eps must be at least " + std::to_string(options.eps_min));
}

double flux(const Profile& A) { return A.empty() ? 0.0 : gauge_phase(A).mu; }

ScatteringData free_scattering(double k) {
  ScatteringData s;
  s.k = k;
  s.t_left = 1.0;
  s.t_right = 1.0;
  return s;
}

Interval window_of(std::initializer_list<const Profile*> ps) {
  bool first = true;
  Interval w{0.0, 0.0};
  for (const Profile* p : ps) {
    if (p->empty()) continue;
    w = first ? p->support() : hull(w, p->support());
    first = false;
  }
  return w;
}

}  // namespace

Profile scaled_potential(const PotentialFamilySpec& spec, const FamilyOptions& options) {
  if (!(spec.eps >= options.eps_min))
    throw ConfigError("family scattering: eps must be at least " + std::to_string(options.eps_min));
  if (!(spec.nu > 0.0)) throw ConfigError("family scattering: nu must be positive");
  for (const Profile* p : {&spec.V0, &spec.V, &spec.U, &spec.A})
    if (!p->is_real()) throw ConfigError("family scattering: potentials must be real");
  Profile q = spec.V0;
  if (!spec.V.empty() && spec.alpha != 0.0) q = q + cplx{spec.alpha / (spec.eps * spec.eps), 0.0} * dilate(spec.V, spec.eps);
  if (!spec.U.empty()) q = q + cplx{1.0 / spec.nu, 0.0} * dilate(spec.U, spec.nu);
  return q;
}

ScatteringData apply_gauge(ScatteringData s, double mu) {
  s.t_left *= std::exp(I * mu);
  s.t_right *= std::exp(-I * mu);
  return s;
}

ScatteringData scatter_potential_family(const PotentialFamilySpec& spec, double k, const FamilyOptions& options) {
  check_common(spec.eps, k, options);
  const Profile q = scaled_potential(spec, options);
  const double mu = flux(spec.A);
  if (q.empty()) return apply_gauge(free_scattering(k), mu);
  const TransferMatrix tm = transfer_matrix(q, k * k, q.support(), options.integrator);
  return apply_gauge(scattering_from_transfer(tm.m, q.support(), k), mu);
}

ScatteringData scatter_rank_two_family(const RankTwoFamilySpec& spec, double k, const FamilyOptions& options) {
  check_common(spec.eps, k, options);
  for (const Profile* p : {&spec.V0, &spec.U, &spec.A})
    if (!p->is_real()) throw ConfigError("family scattering: potentials must be real");
  const double eps = spec.eps;
  const double mu = flux(spec.A);

  Profile g1, g2;
  if (spec.A.empty()) {
    g1 = spec.f1;
    g2 = spec.f2;
  } else {
    const GaugeData gauge = gauge_phase(spec.A);
    g1 = gauge_twist(spec.f1, gauge, options.twist);
    g2 = gauge_twist(spec.f2, gauge, options.twist);
  }
  const std::array<Profile, 2> g{g1.empty() ? g1 : dilate(g1, eps), g2.empty() ? g2 : dilate(g2, eps)};
  Profile q = spec.V0;
  if (!spec.U.empty()) q = q + cplx{1.0 / eps, 0.0} * dilate(spec.U, eps);

  const bool coupled = spec.beta != cplx{0.0, 0.0} && !(g[0].empty() && g[1].empty());
  const Interval w = coupled ? window_of({&q, &g[0], &g[1]}) : window_of({&q});
  if (q.empty() && !coupled) return apply_gauge(free_scattering(k), mu);

  const double E = k * k;
  const cplx ik = I * k;
  const cplx ea = std::exp(ik * w.lo);
  const cplx eb = std::exp(ik * w.hi);

  if (!coupled) {
    const TransferMatrix tm = transfer_matrix(q, E, w, options.integrator);
    return apply_gauge(scattering_from_transfer(tm.m, w, k), mu);
  }

  Propagation job;
  job.q = &q;
  job.energy = E;
  job.interval = w;
  job.weights = g;
  job.init = {ea, ik * ea};
  const Solution inc = integrate(job, options.integrator);
  job.init = {1.0 / ea, -ik / ea};
  const Solution ref = integrate(job, options.integrator);
  job.init = {0.0, 0.0};
  job.source = &g[0];
  const Solution w1 = integrate(job, options.integrator);
  job.source = &g[1];
  const Solution w2 = integrate(job, options.integrator);

  // d1 = conj(beta) eps^-3 <g2_eps, u>, d2 = beta eps^-3 <g1_eps, u>.
  const cplx b1 = std::conj(spec.beta) / (eps * eps * eps);
  const cplx b2 = spec.beta / (eps * eps * eps);
  auto closure_rows = [&](Mat3& a, Vec3& rhs, const Solution& lead, const Solution* fixed) {
    a[1] = {-b1 * lead.accumulated[1], 1.0 - b1 * w1.accumulated[1], -b1 * w2.accumulated[1]};
    a[2] = {-b2 * lead.accumulated[0], -b2 * w1.accumulated[0], 1.0 - b2 * w2.accumulated[0]};
    rhs[1] = fixed ? b1 * fixed->accumulated[1] : cplx{};
    rhs[2] = fixed ? b2 * fixed->accumulated[0] : cplx{};
  };
  auto outgoing = [&](const Solution& s) { return s.terminal.du - ik * s.terminal.u; };
  auto incoming = [&](const Solution& s) { return ik * s.terminal.u - s.terminal.du; };

  ScatteringData out;
  out.k = k;
  {
    // Left incidence: unknowns (r, d1, d2); only e^{ikx} leaves at hi.
    Mat3 a{};
    Vec3 rhs{};
    a[0] = {outgoing(ref), outgoing(w1), outgoing(w2)};
    rhs[0] = -outgoing(inc);
    closure_rows(a, rhs, ref, &inc);
    const Vec3 x = solve3(a, rhs);
    out.r_left = x[0];
    const cplx ub = inc.terminal.u + x[0] * ref.terminal.u + x[1] * w1.terminal.u + x[2] * w2.terminal.u;
    out.t_left = ub / eb;
  }
  {
    // Right incidence: unknowns (t', d1, d2); unit e^{-ikx} arrives at hi.
    Mat3 a{};
    Vec3 rhs{};
    a[0] = {incoming(ref), incoming(w1), incoming(w2)};
    rhs[0] = 2.0 * ik / eb;
    closure_rows(a, rhs, ref, nullptr);
    const Vec3 x = solve3(a, rhs);
    out.t_right = x[0];
    const cplx ub = x[0] * ref.terminal.u + x[1] * w1.terminal.u + x[2] * w2.terminal.u;
    const cplx dub = x[0] * ref.terminal.du + x[1] * w1.terminal.du + x[2] * w2.terminal.du;
    out.r_right = (ik * ub + dub) / (2.0 * ik * eb);
  }
  return apply_gauge(out, mu);
}

}  // namespace reslab
