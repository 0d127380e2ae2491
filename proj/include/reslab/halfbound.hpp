#pragma once

// Zero-energy resonances of -d^2/dx^2 + alpha V and the point-interaction
// limit of potential families built from them.
//
// alpha V is resonant iff the Neumann problem -v'' + alpha V v = 0,
// v'(lo) = v'(hi) = 0 on supp V = [lo, hi] has a nontrivial solution. We
// shoot from (v, v') = (1, 0) at lo and call v'(hi) the miss value.

#include <string>
#include <vector>

#include "reslab/ode.hpp"
#include "reslab/point_interaction.hpp"
#include "reslab/profile.hpp"

namespace reslab {

struct ShootResult {
  double miss = 0.0;   // v'(hi)
  double v_lo = 1.0;   // v(lo)
  double v_hi = 1.0;   // v(hi)
  double v_max = 1.0;  // sup |v| on the support (only when recorded)
};

ShootResult shoot_neumann(const Profile& V, double alpha, const IntegratorOptions& options = {});

// Default acceptance threshold |miss| <= tol * max(1, sup|v|).
inline constexpr double kResonanceTol = 1e-8;

struct ResonanceScan {
  std::vector<double> alphas;  // ascending
  std::vector<std::string> warnings;
};

// All sign changes of the miss value over `grid` uniform samples of
// alpha_range, refined by bisection. alpha = 0 is always reported when it
// lies in the range.
ResonanceScan find_resonances(const Profile& V, Interval alpha_range, int grid, double tol = kResonanceTol,
                              const IntegratorOptions& options = {});

struct HalfBoundState {
  double alpha = 0.0;
  Interval support;  // supp V; v is constant outside
  Profile v;         // samples on the support
  double v_minus = 1.0;
  double v_plus = 1.0;
  double theta = 1.0;

  // v extended by its constant limits outside the support.
  double operator()(double x) const;
  // The same state multiplied by c != 0.
  HalfBoundState scaled(double c) const;
};

// Normalized by v(lo) = 1. Throws HypothesisError(NotResonant) when the
// miss value exceeds tol * max(1, sup|v|).
HalfBoundState half_bound_state(const Profile& V, double alpha, double tol = kResonanceTol,
                                const IntegratorOptions& options = {});

// Point of [0, +inf] with +inf as its own value.
class Lambda {
 public:
  static Lambda zero() { return Lambda(Kind::zero, 0.0); }
  static Lambda infinity() { return Lambda(Kind::infinity, 0.0); }
  // finite(0) is the zero branch; negative values are rejected.
  static Lambda finite(double value);

  bool is_zero() const { return kind_ == Kind::zero; }
  bool is_infinite() const { return kind_ == Kind::infinity; }
  double value() const { return value_; }
  std::string to_string() const;

 private:
  enum class Kind { zero, finite, infinity };
  Lambda(Kind k, double v) : kind_(k), value_(v) {}
  Kind kind_;
  double value_;
};

double gamma_map(const HalfBoundState& hbs, const Profile& U, Lambda lambda);

// e^{i mu} [[theta, 0], [gamma, 1/theta]] at a resonant alpha, Dirichlet
// decoupling otherwise.
LimitModel limit_model_potential(const Profile& V, const Profile& U, const Profile& A, double alpha,
                                 Lambda lambda, double tol = kResonanceTol, const IntegratorOptions& options = {});

}  // namespace reslab
