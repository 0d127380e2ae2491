#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace reslab {

// Base of every error the library reports. The kind decides the CLI exit
// status: config -> 64, hypothesis -> 2, solver -> 1.
class Error : public std::runtime_error {
 public:
  enum class Kind { config, hypothesis, solver };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Malformed configuration or argument outside the documented domain.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(Kind::config, what) {}
};

enum class Hypothesis { not_resonant, dependent_inputs, non_zero_mean, off_circle, degenerate_case };

std::string_view to_string(Hypothesis h);

// A mathematical precondition of the model does not hold.
class HypothesisError : public Error {
 public:
  HypothesisError(Hypothesis which, const std::string& detail)
      : Error(Kind::hypothesis, std::string(to_string(which)) + ": " + detail), which_(which) {}
  Hypothesis which() const noexcept { return which_; }

 private:
  Hypothesis which_;
};

enum class SolverFailure { integrator, singular_system, singular_consistency };

std::string_view to_string(SolverFailure f);

class SolverError : public Error {
 public:
  SolverError(SolverFailure which, const std::string& detail)
      : Error(Kind::solver, std::string(to_string(which)) + ": " + detail), which_(which) {}
  SolverFailure which() const noexcept { return which_; }

 private:
  SolverFailure which_;
};

inline std::string_view to_string(Hypothesis h) {
  switch (h) {
    case Hypothesis::not_resonant: return "NotResonant";
    case Hypothesis::dependent_inputs: return "DependentInputs";
    case Hypothesis::non_zero_mean: return "NonZeroMean";
    case Hypothesis::off_circle: return "OffCircle";
    case Hypothesis::degenerate_case: return "DegenerateCase";
  }
  return "Hypothesis";
}

inline std::string_view to_string(SolverFailure f) {
  switch (f) {
    case SolverFailure::integrator: return "IntegratorFailure";
    case SolverFailure::singular_system: return "SingularSystem";
    case SolverFailure::singular_consistency: return "SingularConsistency";
  }
  return "SolverFailure";
}

}  // namespace reslab
