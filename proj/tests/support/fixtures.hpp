#pragma once

#include <cmath>
#include <vector>

#include "reslab/harness.hpp"

namespace fx {

using reslab::cplx;
using reslab::Profile;

inline Profile box(double lo, double hi, double v = 1.0) { return Profile::constant({lo, hi}, v); }

// Piecewise constant profile with values vals on consecutive cells of breaks.
inline Profile steps(std::vector<double> breaks, const std::vector<double>& vals) {
  std::vector<reslab::Polynomial> pieces;
  for (double v : vals) pieces.push_back(reslab::Polynomial::constant(v));
  return Profile::piecewise(std::move(breaks), std::move(pieces));
}

// Zero-mean pair on (-1, 1) whose first antiderivatives are orthonormal.
inline Profile pair_f1() {
  const double a = std::sqrt(1.5);
  return steps({-1, 0, 1}, {a, -a});
}
inline Profile pair_f2() {
  const double b = std::sqrt(6.0);
  return steps({-1, -0.5, 0.5, 1}, {b, -b, b});
}

inline reslab::Theorem1Setup square_well(double alpha) {
  reslab::Theorem1Setup s;
  s.V = box(-1, 1);
  s.U = box(0, 1);
  s.alpha = alpha;
  return s;
}

inline reslab::Theorem2Setup bundled_pair(cplx beta = 1.0) {
  reslab::Theorem2Setup s;
  s.f1 = pair_f1();
  s.f2 = pair_f2();
  s.U = box(0, 1);
  s.beta = beta;
  return s;
}

inline double max_entry_diff(const reslab::ScatteringData& a, const reslab::ScatteringData& b) {
  return std::max({std::abs(a.r_left - b.r_left), std::abs(a.t_left - b.t_left), std::abs(a.r_right - b.r_right),
                   std::abs(a.t_right - b.t_right)});
}

}  // namespace fx
