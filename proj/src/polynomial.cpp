#include "reslab/polynomial.hpp"

#include <algorithm>

namespace reslab {

void Polynomial::trim() {
  while (!c_.empty() && c_.back() == cplx{0.0, 0.0}) c_.pop_back();
}

bool Polynomial::is_real() const {
  return std::all_of(c_.begin(), c_.end(), [](cplx v) { return v.imag() == 0.0; });
}

cplx Polynomial::operator()(double t) const {
  cplx acc{0.0, 0.0};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<cplx> d(c_.size() - 1);
  for (std::size_t j = 1; j < c_.size(); ++j) d[j - 1] = c_[j] * static_cast<double>(j);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  if (c_.empty()) return {};
  std::vector<cplx> a(c_.size() + 1);
  for (std::size_t j = 0; j < c_.size(); ++j) a[j + 1] = c_[j] / static_cast<double>(j + 1);
  return Polynomial(std::move(a));
}

cplx Polynomial::integral(double len) const { return antiderivative()(len); }

Polynomial Polynomial::shifted(double d) const {
  if (d == 0.0 || c_.size() <= 1) return *this;
  // Repeated synthetic division (Taylor shift).
  std::vector<cplx> a = c_;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) a[j - 1] += d * a[j];
  return Polynomial(std::move(a));
}

Polynomial Polynomial::dilated(double s) const {
  std::vector<cplx> a = c_;
  double f = 1.0;
  for (auto& v : a) {
    v *= f;
    f /= s;
  }
  return Polynomial(std::move(a));
}

Polynomial Polynomial::conjugate() const {
  std::vector<cplx> a = c_;
  for (auto& v : a) v = std::conj(v);
  return Polynomial(std::move(a));
}

Polynomial Polynomial::real_part() const {
  std::vector<cplx> a = c_;
  for (auto& v : a) v = v.real();
  return Polynomial(std::move(a));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<cplx> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t j = 0; j < a.c_.size(); ++j) r[j] += a.c_[j];
  for (std::size_t j = 0; j < b.c_.size(); ++j) r[j] += b.c_[j];
  return Polynomial(std::move(r));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + cplx{-1.0, 0.0} * b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<cplx> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(r));
}

Polynomial operator*(cplx s, const Polynomial& p) {
  std::vector<cplx> r = p.c_;
  for (auto& v : r) v *= s;
  return Polynomial(std::move(r));
}

}  // namespace reslab
