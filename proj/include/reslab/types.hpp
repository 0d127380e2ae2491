#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <numbers>

namespace reslab {

using cplx = std::complex<double>;

inline constexpr cplx I{0.0, 1.0};

// Closed interval [lo, hi] on the real line.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  double midpoint() const { return 0.5 * (lo + hi); }
};

inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

// Dense 2x2 complex matrix acting on (u, u') pairs.
struct Mat2 {
  std::array<cplx, 4> a{1.0, 0.0, 0.0, 1.0};  // row-major

  cplx& operator()(int i, int j) { return a[2 * i + j]; }
  const cplx& operator()(int i, int j) const { return a[2 * i + j]; }

  static Mat2 identity() { return {}; }
  cplx det() const { return a[0] * a[3] - a[1] * a[2]; }
  std::array<cplx, 2> apply(cplx x, cplx y) const { return {a[0] * x + a[1] * y, a[2] * x + a[3] * y}; }
  Mat2 inverse() const {
    const cplx d = det();
    return Mat2{{a[3] / d, -a[1] / d, -a[2] / d, a[0] / d}};
  }
};

inline Mat2 operator*(const Mat2& l, const Mat2& r) {
  Mat2 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = l(i, 0) * r(0, j) + l(i, 1) * r(1, j);
  return m;
}

inline Mat2 operator*(cplx s, const Mat2& m) {
  Mat2 out = m;
  for (auto& v : out.a) v *= s;
  return out;
}

}  // namespace reslab
