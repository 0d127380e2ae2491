#pragma once

// Compactly supported profiles (potentials, magnetic potentials, rank-two
// generators, half-bound states) and the quadrature/gauge operations on them.
//
// Every profile is stored as a piecewise polynomial in local coordinates:
// on segment i the value is pieces[i](x - breaks[i]). Grid samples are
// converted to the piecewise-quadratic interpolant whose exact integral is
// composite Simpson, so all operations below act on one representation.

#include <span>
#include <vector>

#include "reslab/polynomial.hpp"
#include "reslab/types.hpp"

namespace reslab {

enum class Codomain { real, complex };
enum class Representation { piecewise, grid };

class Profile {
 public:
  // The zero profile (empty support).
  Profile() = default;

  static Profile piecewise(std::vector<double> breaks, std::vector<Polynomial> pieces,
                           Codomain codomain = Codomain::real);
  static Profile constant(Interval support, cplx value);
  // Uniform samples at lo, lo + h, ..., hi with h = (hi - lo) / (n - 1).
  static Profile grid(Interval support, std::span<const cplx> samples,
                      Codomain codomain = Codomain::real);
  // Piecewise cubic Hermite interpolant of values and derivatives at nodes.
  static Profile hermite(std::span<const double> x, std::span<const cplx> u,
                         std::span<const cplx> du, Codomain codomain = Codomain::real);

  bool empty() const { return pieces_.empty(); }
  Interval support() const;
  Codomain codomain() const { return codomain_; }
  bool is_real() const { return codomain_ == Codomain::real; }
  Representation representation() const { return representation_; }
  // Sample spacing for grid-built profiles, 0 otherwise.
  double grid_step() const { return grid_step_; }

  std::span<const double> breaks() const { return breaks_; }
  std::span<const Polynomial> pieces() const { return pieces_; }
  std::size_t segment_count() const { return pieces_.size(); }
  int max_degree() const;

  // Value at x; zero outside the support.
  cplx operator()(double x) const;
  cplx derivative(double x) const;

  // Polynomial valid on the cell [x0, x1] expressed in t = x - x0. The cell
  // must not straddle a breakpoint; outside the support the result is zero.
  Polynomial local_piece(double x0, double x1) const;

 private:
  std::size_t segment_index(double x) const;

  std::vector<double> breaks_;
  std::vector<Polynomial> pieces_;
  Codomain codomain_ = Codomain::real;
  Representation representation_ = Representation::piecewise;
  double grid_step_ = 0.0;
};

// A profile continued beyond its support: zero to the left and affine,
// tail_value + tail_slope * (x - hi), to the right. Antiderivatives, the
// cumulative gauge phase and the rank-two half-bound state take this shape.
struct TailedProfile {
  Profile body;
  cplx tail_value{0.0, 0.0};
  cplx tail_slope{0.0, 0.0};

  cplx operator()(double x) const;
  // The function restricted to `window` as an ordinary profile.
  Profile over(Interval window) const;
};

// Cumulative magnetic phase a(x) = int_{-inf}^x A and total flux mu.
struct GaugeData {
  TailedProfile a;
  double mu = 0.0;

  double phase(double x) const { return a(x).real(); }
};

// Quadrature over the whole support (exact on the stored representation).
cplx integral(const Profile& p);
// Quadrature over [lo, hi] intersected with the support.
cplx integral(const Profile& p, double lo, double hi);

// order 1: h^(-1)(x) = int_{-inf}^x h.  order 2: h^(-2)(x) = int_{-inf}^x (x - s) h(s) ds.
TailedProfile antiderivative(const Profile& p, int order);

// <f, g> = int conj(f) g.
cplx inner_product(const Profile& f, const Profile& g);
double l2_norm(const Profile& p);
double max_abs(const Profile& p);

Profile operator+(const Profile& f, const Profile& g);
Profile operator-(const Profile& f, const Profile& g);
Profile operator*(cplx s, const Profile& p);
Profile product(const Profile& f, const Profile& g);
Profile conjugate(const Profile& p);
Profile derivative(const Profile& p);
// x -> p(x / s), support scaled by s > 0.
Profile dilate(const Profile& p, double s);
// Affine map of the support onto `target`.
Profile rescale(const Profile& p, Interval target);
// Restriction to `window` (zero-padded where `window` leaves the support).
Profile restrict_to(const Profile& p, Interval window);
// Re-tags a complex profile as real by dropping imaginary parts.
Profile real_part(const Profile& p);

GaugeData gauge_phase(const Profile& A);

struct TwistOptions {
  // Hermite cell width is at most cell_phase / max(1, max|A|).
  double cell_phase = 0.005;
};

// e^{-i a(x)} f(x).
Profile gauge_twist(const Profile& f, const GaugeData& gauge, const TwistOptions& options = {});

bool zero_mean(const Profile& p, double tol);

}  // namespace reslab
