#pragma once

// Convergence sweeps: scattering data of the eps-families against the
// scattering data of their limit models, one row per eps.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "reslab/eps_family.hpp"
#include "reslab/halfbound.hpp"
#include "reslab/rank_two.hpp"

namespace reslab {

// eps values with the rule tying nu to eps: nu = lambda eps for finite
// lambda, eps^2 for lambda = 0 and sqrt(eps) for lambda = inf.
class Schedule {
 public:
  Schedule(Lambda lambda, std::vector<double> eps_list);

  const Lambda& lambda() const { return lambda_; }
  const std::vector<double>& eps_list() const { return eps_; }
  double nu(double eps) const;

 private:
  Lambda lambda_;
  std::vector<double> eps_;
};

struct ConvergenceRow {
  double eps = 0.0;
  double nu = 0.0;
  double k = 0.0;
  double err = 0.0;
  double abs_t = 0.0;
  double abs_r = 0.0;
  double unitarity_defect = 0.0;
  std::string failure;  // non-empty when the family solver failed on this row

  bool ok() const { return failure.empty(); }
};

struct ConvergenceReport {
  double k = 0.0;
  std::vector<ConvergenceRow> rows;  // decreasing eps
  bool monotone_tail = false;        // err non-increasing over the last three rows
  double final_err = 0.0;
  ScatteringData limit;
};

struct HarnessOptions {
  FamilyOptions family;
  double resonance_tol = kResonanceTol;
  CircleOptions circle;
  double circle_tol = 1e-8;
  PhaseConvention phase_convention = PhaseConvention::coupling_conditions;
  // 0 reads RESLAB_THREADS, falling back to the hardware concurrency.
  unsigned threads = 0;
};

struct Theorem1Setup {
  Profile V0;
  Profile V;
  Profile U;
  Profile A;
  double alpha = 0.0;
};

struct Theorem2Setup {
  Profile V0;
  Profile f1;
  Profile f2;
  Profile U;
  Profile A;
  cplx beta{0.0, 0.0};
};

struct Theorem2Limit {
  Profile g1;  // e^{-ia} f1
  Profile g2;
  ResonanceCircle circle;
  ResonanceData data;
  PointInteraction model;
};

LimitModel theorem1_limit(const Theorem1Setup& setup, Lambda lambda, const HarnessOptions& options = {});

// Validates the hypotheses (zero means, independence, circle membership,
// a2 != conj(kappa) a1) before building the limit coupling.
Theorem2Limit theorem2_limit(const Theorem2Setup& setup, const HarnessOptions& options = {});

ConvergenceReport converge_theorem1(const Theorem1Setup& setup, const Schedule& schedule, double k,
                                    const HarnessOptions& options = {});
// Same sweep against a caller-supplied limit model.
ConvergenceReport converge_theorem1_against(const Theorem1Setup& setup, const Schedule& schedule, double k,
                                            const LimitModel& limit, const HarnessOptions& options = {});

ConvergenceReport converge_theorem2(const Theorem2Setup& setup, std::span<const double> eps_list, double k,
                                    const HarnessOptions& options = {});
ConvergenceReport converge_theorem2_against(const Theorem2Setup& setup, std::span<const double> eps_list, double k,
                                            const LimitModel& limit, const HarnessOptions& options = {});

// Header eps,nu,k,err,abs_t,abs_r; values printed with 17 significant digits.
std::string to_csv(const ConvergenceReport& report);

unsigned sweep_threads(unsigned requested = 0);

// Runs fn(0..n-1) on up to `threads` workers; results keep index order.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace reslab
