#include "reslab/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <thread>

#include "reslab/errors.hpp"

namespace reslab {
namespace {

std::vector<double> checked_eps(std::vector<double> eps) {
  if (eps.empty()) throw ConfigError("schedule: eps list is empty");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0) || !std::isfinite(eps[i])) throw ConfigError("schedule: eps values must be positive");
    if (i > 0 && !(eps[i] < eps[i - 1])) throw ConfigError("schedule: eps list must be strictly decreasing");
  }
  return eps;
}

void finish(ConvergenceReport& rep) {
  rep.final_err = rep.rows.empty() ? 0.0 : rep.rows.back().err;
  const std::size_t n = rep.rows.size();
  const std::size_t first = n >= 3 ? n - 3 : 0;
  bool mono = n > 0;
  for (std::size_t i = first; i < n; ++i) {
    if (!rep.rows[i].ok()) mono = false;
    if (i > first && rep.rows[i].err > rep.rows[i - 1].err) mono = false;
  }
  rep.monotone_tail = mono;
}

template <class Family>
ConvergenceReport sweep(std::span<const double> eps, const std::function<double(double)>& nu_of, double k,
                        const ScatteringData& limit, unsigned threads, Family family) {
  ConvergenceReport rep;
  rep.k = k;
  rep.limit = limit;
  rep.rows.resize(eps.size());
  parallel_for(eps.size(), threads, [&](std::size_t i) {
    ConvergenceRow& row = rep.rows[i];
    row.eps = eps[i];
    row.nu = nu_of(eps[i]);
    row.k = k;
    try {
      const ScatteringData s = family(eps[i], row.nu);
      row.err = distance(s, limit);
      row.abs_t = std::abs(s.t_left);
      row.abs_r = std::abs(s.r_left);
      row.unitarity_defect = s.unitarity_defect();
    } catch (const SolverError& e) {
      row.err = std::numeric_limits<double>::quiet_NaN();
      row.failure = e.what();
    }
  });
  finish(rep);
  return rep;
}

}  // namespace

Schedule::Schedule(Lambda lambda, std::vector<double> eps_list) : lambda_(lambda), eps_(checked_eps(std::move(eps_list))) {}

double Schedule::nu(double eps) const {
  if (lambda_.is_zero()) return eps * eps;
  if (lambda_.is_infinite()) return std::sqrt(eps);
  return lambda_.value() * eps;
}

unsigned sweep_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RESLAB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

LimitModel theorem1_limit(const Theorem1Setup& s, Lambda lambda, const HarnessOptions& options) {
  return limit_model_potential(s.V, s.U, s.A, s.alpha, lambda, options.resonance_tol, options.family.integrator);
}

Theorem2Limit theorem2_limit(const Theorem2Setup& s, const HarnessOptions& options) {
  Theorem2Limit lim;
  double mu = 0.0;
  if (s.A.empty()) {
    lim.g1 = s.f1;
    lim.g2 = s.f2;
  } else {
    const GaugeData gauge = gauge_phase(s.A);
    mu = gauge.mu;
    lim.g1 = gauge_twist(s.f1, gauge, options.family.twist);
    lim.g2 = gauge_twist(s.f2, gauge, options.family.twist);
  }
  lim.circle = resonance_circle(lim.g1, lim.g2, options.circle);
  lim.data = half_bound_omega(lim.g1, lim.g2, s.beta, options.circle_tol, options.circle);
  lim.data.coeffs = interaction_coefficients(s.U, lim.data.omega);
  lim.model = limit_matrix_rank_two(lim.data.coeffs, lim.data.kappa, mu, options.phase_convention);
  return lim;
}

ConvergenceReport converge_theorem1_against(const Theorem1Setup& s, const Schedule& schedule, double k,
                                            const LimitModel& limit, const HarnessOptions& options) {
  const ScatteringData target = scatter_limit(limit, s.V0, k, options.family.integrator);
  return sweep(schedule.eps_list(), [&](double e) { return schedule.nu(e); }, k, target,
               sweep_threads(options.threads), [&](double eps, double nu) {
                 PotentialFamilySpec spec{s.V0, s.V, s.U, s.A, s.alpha, eps, nu};
                 return scatter_potential_family(spec, k, options.family);
               });
}

ConvergenceReport converge_theorem1(const Theorem1Setup& s, const Schedule& schedule, double k,
                                    const HarnessOptions& options) {
  return converge_theorem1_against(s, schedule, k, theorem1_limit(s, schedule.lambda(), options), options);
}

ConvergenceReport converge_theorem2_against(const Theorem2Setup& s, std::span<const double> eps_list, double k,
                                            const LimitModel& limit, const HarnessOptions& options) {
  const std::vector<double> eps = checked_eps({eps_list.begin(), eps_list.end()});
  const ScatteringData target = scatter_limit(limit, s.V0, k, options.family.integrator);
  return sweep(eps, [](double e) { return e; }, k, target, sweep_threads(options.threads),
               [&](double e, double) {
                 RankTwoFamilySpec spec{s.V0, s.f1, s.f2, s.U, s.A, s.beta, e};
                 return scatter_rank_two_family(spec, k, options.family);
               });
}

ConvergenceReport converge_theorem2(const Theorem2Setup& s, std::span<const double> eps_list, double k,
                                    const HarnessOptions& options) {
  return converge_theorem2_against(s, eps_list, k, theorem2_limit(s, options).model, options);
}

std::string to_csv(const ConvergenceReport& rep) {
  std::string out = "eps,nu,k,err,abs_t,abs_r\n";
  char buf[256];
  for (const auto& r : rep.rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.eps, r.nu, r.k, r.err, r.abs_t,
                  r.abs_r);
    out += buf;
  }
  return out;
}

}  // namespace reslab
