#pragma once

#include <initializer_list>
#include <vector>

#include "reslab/types.hpp"

namespace reslab {

// Complex polynomial c[0] + c[1] t + ... in a local variable t.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<cplx> coeffs) : c_(coeffs) { trim(); }
  explicit Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial constant(cplx v) { return Polynomial({v}); }

  const std::vector<cplx>& coeffs() const { return c_; }
  // Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_real() const;

  cplx operator()(double t) const;

  Polynomial derivative() const;
  // Antiderivative vanishing at t = 0.
  Polynomial antiderivative() const;
  // Exact integral over [0, len].
  cplx integral(double len) const;
  // q(t) = p(t + d).
  Polynomial shifted(double d) const;
  // q(t) = p(t / s).
  Polynomial dilated(double s) const;
  Polynomial conjugate() const;
  Polynomial real_part() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(cplx s, const Polynomial& p);

 private:
  void trim();
  std::vector<cplx> c_;
};

}  // namespace reslab
