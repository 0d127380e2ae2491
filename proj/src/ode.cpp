#include "reslab/ode.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "reslab/errors.hpp"

namespace reslab {
namespace {

std::vector<double> cell_breaks(const Propagation& job) {
  const Interval w = job.interval;
  std::vector<double> xs{w.lo, w.hi};
  auto add = [&](const Profile* p) {
    if (p == nullptr) return;
    for (double b : p->breaks())
      if (b > w.lo && b < w.hi) xs.push_back(b);
  };
  add(job.q);
  add(job.source);
  for (const auto& wt : job.weights) add(&wt);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

double max_abs_on(const Polynomial& p, double len) {
  const int n = 4 * std::max(p.degree(), 0) + 4;
  double m = 0.0;
  for (int j = 0; j <= n; ++j) m = std::max(m, std::abs(p(len * j / n)));
  return m;
}

struct Cell {
  double x0 = 0.0;
  double len = 0.0;
  Polynomial z;  // q - E in local coordinates (real)
  Polynomial s;
  std::vector<Polynomial> w;  // conjugated weights
};

// Augmented state y = (u, u', I_1, ..., I_m).
void rk4_rhs(const Cell& c, double t, std::span<const cplx> y, std::span<cplx> dy) {
  dy[0] = y[1];
  dy[1] = c.z(t).real() * y[0] + (c.s.is_zero() ? cplx{} : c.s(t));
  for (std::size_t j = 0; j < c.w.size(); ++j) dy[2 + j] = c.w[j](t) * y[0];
}

}  // namespace

Mat2 constant_block(double z, double len) {
  double C = 1.0, S = len, dC = 0.0;
  if (z > 0.0) {
    const double r = std::sqrt(z);
    C = std::cosh(r * len);
    S = std::sinh(r * len) / r;
    dC = r * std::sinh(r * len);
  } else if (z < 0.0) {
    const double r = std::sqrt(-z);
    C = std::cos(r * len);
    S = std::sin(r * len) / r;
    dC = -r * std::sin(r * len);
  }
  return Mat2{{C, S, dC, C}};
}

Solution integrate(const Propagation& job, const IntegratorOptions& options) {
  if (job.q == nullptr) throw ConfigError("integrate: missing potential");
  if (!(job.interval.hi >= job.interval.lo)) throw ConfigError("integrate: reversed interval");
  const std::size_t m = job.weights.size();
  Solution sol;
  sol.accumulated.assign(m, cplx{});

  std::vector<cplx> y(2 + m, cplx{});
  y[0] = job.init.u;
  y[1] = job.init.du;
  auto record = [&](double x) {
    if (!job.record) return;
    sol.x.push_back(x);
    sol.u.push_back(y[0]);
    sol.du.push_back(y[1]);
  };
  record(job.interval.lo);

  if (job.interval.length() == 0.0) {
    sol.terminal = {y[0], y[1]};
    return sol;
  }

  const auto xs = cell_breaks(job);
  std::vector<cplx> k1(2 + m), k2(2 + m), k3(2 + m), k4(2 + m), tmp(2 + m);
  std::size_t total_steps = 0;

  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    Cell c;
    c.x0 = xs[i];
    c.len = xs[i + 1] - xs[i];
    c.z = job.q->local_piece(xs[i], xs[i + 1]).real_part() - Polynomial::constant(job.energy);
    if (job.source) c.s = job.source->local_piece(xs[i], xs[i + 1]);
    for (const auto& wt : job.weights) c.w.push_back(wt.local_piece(xs[i], xs[i + 1]).conjugate());

    const bool has_source = !c.s.is_zero();
    const bool has_weights = std::any_of(c.w.begin(), c.w.end(), [](const Polynomial& p) { return !p.is_zero(); });
    const bool exact = options.exact_constant_blocks && c.z.degree() <= 0 && !has_source && !has_weights;

    const double zmax = max_abs_on(c.z, c.len);
    const double steps_needed = std::ceil(c.len * std::sqrt(zmax) / options.phase_step);
    std::size_t n = static_cast<std::size_t>(std::max<double>(options.min_steps, steps_needed));
    if (exact && !job.record) n = 1;
    total_steps += n;
    if (!std::isfinite(steps_needed) || total_steps > options.max_steps) {
      std::ostringstream msg;
      msg << "cell [" << xs[i] << ", " << xs[i + 1] << "] needs " << steps_needed
          << " steps (max |q - E| = " << zmax << "); suggested step " << options.phase_step / std::sqrt(zmax)
          << ", raise max_steps or coarsen the input";
      throw SolverError(SolverFailure::integrator, msg.str());
    }

    const double h = c.len / static_cast<double>(n);
    if (exact) {
      const double z = c.z.is_zero() ? 0.0 : c.z.coeffs()[0].real();
      const Mat2 step = constant_block(z, h);
      for (std::size_t k = 0; k < n; ++k) {
        const auto next = step.apply(y[0], y[1]);
        y[0] = next[0];
        y[1] = next[1];
        record(k + 1 == n ? xs[i + 1] : c.x0 + h * static_cast<double>(k + 1));
      }
    } else {
      for (std::size_t k = 0; k < n; ++k) {
        const double t = h * static_cast<double>(k);
        rk4_rhs(c, t, y, k1);
        for (std::size_t j = 0; j < y.size(); ++j) tmp[j] = y[j] + 0.5 * h * k1[j];
        rk4_rhs(c, t + 0.5 * h, tmp, k2);
        for (std::size_t j = 0; j < y.size(); ++j) tmp[j] = y[j] + 0.5 * h * k2[j];
        rk4_rhs(c, t + 0.5 * h, tmp, k3);
        for (std::size_t j = 0; j < y.size(); ++j) tmp[j] = y[j] + h * k3[j];
        rk4_rhs(c, t + h, tmp, k4);
        for (std::size_t j = 0; j < y.size(); ++j) y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        record(k + 1 == n ? xs[i + 1] : c.x0 + h * static_cast<double>(k + 1));
      }
    }
    if (!std::isfinite(std::abs(y[0])) || !std::isfinite(std::abs(y[1])))
      throw SolverError(SolverFailure::integrator, "non-finite solution value");
  }

  sol.terminal = {y[0], y[1]};
  for (std::size_t j = 0; j < m; ++j) sol.accumulated[j] = y[2 + j];
  return sol;
}

Profile Solution::as_profile(Codomain codomain) const { return Profile::hermite(x, u, du, codomain); }

double Solution::max_abs_u() const {
  double v = std::max(std::abs(terminal.u), 0.0);
  for (cplx w : u) v = std::max(v, std::abs(w));
  return v;
}

Solution propagate(const Profile& q, double energy, State init, Interval interval, const IntegratorOptions& options) {
  Propagation job;
  job.q = &q;
  job.energy = energy;
  job.interval = interval;
  job.init = init;
  job.record = true;
  return integrate(job, options);
}

TransferMatrix transfer_matrix(const Profile& q, double energy, Interval interval, const IntegratorOptions& options) {
  Propagation job;
  job.q = &q;
  job.energy = energy;
  job.interval = interval;
  job.init = {1.0, 0.0};
  const State c0 = integrate(job, options).terminal;
  job.init = {0.0, 1.0};
  const State c1 = integrate(job, options).terminal;
  TransferMatrix t;
  t.m = Mat2{{c0.u, c1.u, c0.du, c1.du}};
  t.energy = energy;
  t.interval = interval;
  return t;
}

Solution source_response(const Profile& q, double energy, const Profile& s, Interval interval,
                         const IntegratorOptions& options) {
  Propagation job;
  job.q = &q;
  job.energy = energy;
  job.interval = interval;
  job.source = &s;
  job.record = true;
  return integrate(job, options);
}

}  // namespace reslab
