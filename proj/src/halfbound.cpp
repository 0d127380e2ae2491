#include "reslab/halfbound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "reslab/errors.hpp"

namespace reslab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ShootResult shoot(const Profile& V, double alpha, bool record, const IntegratorOptions& options) {
  if (V.empty()) return {};
  const Profile q = cplx{alpha, 0.0} * V;
  Propagation job;
  job.q = &q;
  job.energy = 0.0;
  job.interval = V.support();
  job.init = {1.0, 0.0};
  job.record = record;
  const Solution sol = integrate(job, options);
  ShootResult r;
  r.miss = sol.terminal.du.real();
  r.v_lo = 1.0;
  r.v_hi = sol.terminal.u.real();
  r.v_max = record ? sol.max_abs_u() : std::max(1.0, std::abs(r.v_hi));
  return r;
}

bool accepted(const ShootResult& r, double tol) { return std::abs(r.miss) <= tol * std::max(1.0, r.v_max); }

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(10);
  s << v;
  return s.str();
}

}  // namespace

ShootResult shoot_neumann(const Profile& V, double alpha, const IntegratorOptions& options) {
  if (!V.is_real()) throw ConfigError("shoot_neumann: potential must be real");
  return shoot(V, alpha, true, options);
}

ResonanceScan find_resonances(const Profile& V, Interval range, int grid, double tol,
                              const IntegratorOptions& options) {
  if (!V.is_real()) throw ConfigError("find_resonances: potential must be real");
  if (!std::isfinite(range.lo) || !std::isfinite(range.hi) || !(range.hi > range.lo))
    throw ConfigError("find_resonances: alpha range must be a finite non-empty interval");
  if (grid < 2) throw ConfigError("find_resonances: grid must have at least two points");
  if (!(tol > 0.0)) throw ConfigError("find_resonances: tolerance must be positive");

  ResonanceScan scan;
  if (range.contains(0.0)) scan.alphas.push_back(0.0);
  if (V.empty()) {
    scan.warnings.push_back("potential is identically zero: every alpha is resonant");
    return scan;
  }

  const auto n = static_cast<std::size_t>(grid);
  std::vector<double> a(n), m(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = i + 1 == n ? range.hi : range.lo + range.length() * static_cast<double>(i) / static_cast<double>(n - 1);
    m[i] = shoot(V, a[i], false, options).miss;
  }

  const double zero_tol = 1e-9 * std::max({1.0, std::abs(range.lo), std::abs(range.hi)});
  auto add_root = [&](double alpha) {
    if (std::abs(alpha) <= zero_tol && range.contains(0.0)) return;
    const ShootResult r = shoot(V, alpha, true, options);
    if (!accepted(r, tol))
      scan.warnings.push_back("root near alpha = " + fmt(alpha) + " has |miss| = " + fmt(std::abs(r.miss)) +
                              " above tolerance");
    scan.alphas.push_back(alpha);
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (m[i] == 0.0) add_root(a[i]);
    if (i + 1 == n || !(m[i] * m[i + 1] < 0.0)) continue;
    double lo = a[i], hi = a[i + 1];
    double mlo = m[i];
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double mm = shoot(V, mid, false, options).miss;
      if (mm == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((mm < 0.0) == (mlo < 0.0)) {
        lo = mid;
        mlo = mm;
      } else {
        hi = mid;
      }
    }
    add_root(0.5 * (lo + hi));
  }

  // A dip of |miss| without a sign change can hide two roots in one cell.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const bool same_sign = (m[i - 1] > 0) == (m[i] > 0) && (m[i] > 0) == (m[i + 1] > 0) && m[i] != 0.0;
    const bool dip = std::abs(m[i]) < std::abs(m[i - 1]) && std::abs(m[i]) < std::abs(m[i + 1]);
    const bool near_zero = a[i - 1] <= 0.0 && a[i + 1] >= 0.0;
    if (same_sign && dip && !near_zero)
      scan.warnings.push_back("two roots may share a grid cell near alpha = " + fmt(a[i]) + "; refine the grid");
  }

  std::sort(scan.alphas.begin(), scan.alphas.end());
  return scan;
}

double HalfBoundState::operator()(double x) const {
  if (x <= support.lo) return v_minus;
  if (x >= support.hi) return v_plus;
  return v(x).real();
}

HalfBoundState HalfBoundState::scaled(double c) const {
  if (c == 0.0) throw ConfigError("half-bound state: scale factor must be non-zero");
  HalfBoundState s = *this;
  s.v = cplx{c, 0.0} * v;
  s.v_minus = c * v_minus;
  s.v_plus = c * v_plus;
  s.theta = s.v_plus / s.v_minus;
  return s;
}

HalfBoundState half_bound_state(const Profile& V, double alpha, double tol, const IntegratorOptions& options) {
  if (!V.is_real()) throw ConfigError("half_bound_state: potential must be real");
  HalfBoundState h;
  h.alpha = alpha;
  if (V.empty()) return h;

  const Profile q = cplx{alpha, 0.0} * V;
  const Solution sol = propagate(q, 0.0, {1.0, 0.0}, V.support(), options);
  ShootResult r{sol.terminal.du.real(), 1.0, sol.terminal.u.real(), sol.max_abs_u()};
  if (!accepted(r, tol))
    throw HypothesisError(Hypothesis::not_resonant, "alpha = " + fmt(alpha) + " gives v'(hi) = " + fmt(r.miss));
  h.support = V.support();
  h.v = real_part(sol.as_profile(Codomain::complex));
  h.v_minus = 1.0;
  h.v_plus = r.v_hi;
  h.theta = h.v_plus / h.v_minus;
  return h;
}

Lambda Lambda::finite(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) throw ConfigError("lambda must be a finite non-negative number");
  return value == 0.0 ? zero() : Lambda(Kind::finite, value);
}

std::string Lambda::to_string() const {
  if (is_zero()) return "0";
  if (is_infinite()) return "inf";
  return fmt(value_);
}

double gamma_map(const HalfBoundState& hbs, const Profile& U, Lambda lambda) {
  const double vm = hbs.v_minus;
  const double vp = hbs.v_plus;
  if (lambda.is_zero()) {
    const double v0 = hbs(0.0);
    return v0 * v0 / (vm * vp) * integral(U).real();
  }
  if (lambda.is_infinite()) {
    const double theta = vp / vm;
    return theta * integral(U, 0.0, kInf).real() + integral(U, -kInf, 0.0).real() / theta;
  }
  const double lam = lambda.value();
  double total = 0.0;
  if (hbs.v.empty()) {
    total = vm * vm * integral(U, -kInf, 0.0).real() + vp * vp * integral(U, 0.0, kInf).real();
  } else {
    // v(lambda t) lives on [lo / lambda, hi / lambda].
    const Profile w = dilate(hbs.v, 1.0 / lam);
    const Interval ws = w.support();
    total = integral(product(U, product(w, w))).real() + vm * vm * integral(U, -kInf, ws.lo).real() +
            vp * vp * integral(U, ws.hi, kInf).real();
  }
  return total / (vm * vp);
}

LimitModel limit_model_potential(const Profile& V, const Profile& U, const Profile& A, double alpha, Lambda lambda,
                                 double tol, const IntegratorOptions& options) {
  if (!accepted(shoot_neumann(V, alpha, options), tol)) return DirichletDecoupled{};
  const HalfBoundState h = half_bound_state(V, alpha, tol, options);
  const double gamma = gamma_map(h, U, lambda);
  PointInteraction pi;
  pi.phase = A.empty() ? 0.0 : gauge_phase(A).mu;
  pi.c11 = h.theta;
  pi.c12 = 0.0;
  pi.c21 = gamma;
  pi.c22 = 1.0 / h.theta;
  return pi;
}

}  // namespace reslab
