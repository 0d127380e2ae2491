#include "reslab/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reslab/errors.hpp"

namespace reslab {
namespace {

Codomain join(Codomain a, Codomain b) {
  return (a == Codomain::real && b == Codomain::real) ? Codomain::real : Codomain::complex;
}

bool overlaps(const Interval& a, const Interval& b) { return a.lo < b.hi && b.lo < a.hi; }

// Sorted cell boundaries covering `window`, containing every breakpoint of
// the given profiles that falls strictly inside it.
std::vector<double> merged_breaks(std::initializer_list<const Profile*> profiles, Interval window) {
  std::vector<double> xs{window.lo, window.hi};
  for (const Profile* p : profiles)
    for (double b : p->breaks())
      if (b > window.lo && b < window.hi) xs.push_back(b);
  std::sort(xs.begin(), xs.end());
  const double scale = std::max({1.0, std::abs(window.lo), std::abs(window.hi)});
  std::vector<double> out;
  for (double x : xs)
    if (out.empty() || x - out.back() > 1e-14 * scale) out.push_back(x);
  if (out.back() != window.hi) out.back() = window.hi;
  return out;
}

template <class Op>
Profile combine(const Profile& f, const Profile& g, Interval window, Codomain codomain, Op op) {
  if (!(window.hi > window.lo)) return {};
  auto xs = merged_breaks({&f, &g}, window);
  std::vector<Polynomial> pieces;
  pieces.reserve(xs.size() - 1);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    pieces.push_back(op(f.local_piece(xs[i], xs[i + 1]), g.local_piece(xs[i], xs[i + 1])));
  return Profile::piecewise(std::move(xs), std::move(pieces), codomain);
}

double sample_max_abs(const Polynomial& p, double len) {
  const int n = 4 * std::max(p.degree(), 0) + 2;
  double m = 0.0;
  for (int j = 0; j <= n; ++j) m = std::max(m, std::abs(p(len * j / n)));
  return m;
}

}  // namespace

// ---------------------------------------------------------------- Profile

Profile Profile::piecewise(std::vector<double> breaks, std::vector<Polynomial> pieces, Codomain codomain) {
  Profile p;
  if (pieces.empty()) return p;
  if (breaks.size() != pieces.size() + 1)
    throw ConfigError("profile: expected " + std::to_string(pieces.size() + 1) + " breakpoints, got " +
                      std::to_string(breaks.size()));
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (!std::isfinite(breaks[i])) throw ConfigError("profile: non-finite breakpoint");
    if (i > 0 && !(breaks[i] > breaks[i - 1])) throw ConfigError("profile: breakpoints must be strictly increasing");
  }
  for (auto& piece : pieces) {
    for (cplx c : piece.coeffs())
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw ConfigError("profile: non-finite coefficient");
    if (codomain == Codomain::real && !piece.is_real())
      throw ConfigError("profile: real-tagged profile has a non-zero imaginary part");
  }
  p.breaks_ = std::move(breaks);
  p.pieces_ = std::move(pieces);
  p.codomain_ = codomain;
  return p;
}

Profile Profile::constant(Interval support, cplx value) {
  if (!(support.hi > support.lo)) throw ConfigError("profile: empty support");
  return piecewise({support.lo, support.hi}, {Polynomial::constant(value)},
                   value.imag() == 0.0 ? Codomain::real : Codomain::complex);
}

Profile Profile::grid(Interval support, std::span<const cplx> y, Codomain codomain) {
  const std::size_t n = y.size();
  if (n < 2) throw ConfigError("profile: a grid needs at least two samples");
  if (!(support.hi > support.lo)) throw ConfigError("profile: empty support");
  const double h = support.length() / static_cast<double>(n - 1);
  if (!(h > 0.0)) throw ConfigError("profile: grid step must be positive");
  auto node = [&](std::size_t i) { return i + 1 == n ? support.hi : support.lo + h * static_cast<double>(i); };
  // Quadratic through (0, y0), (h, y1), (2h, y2) in t = x - x0.
  auto quadratic = [h](cplx y0, cplx y1, cplx y2) {
    return Polynomial({y0, (-3.0 * y0 + 4.0 * y1 - y2) / (2.0 * h), (y0 - 2.0 * y1 + y2) / (2.0 * h * h)});
  };

  std::vector<double> breaks;
  std::vector<Polynomial> pieces;
  if (n == 2) {
    breaks = {support.lo, support.hi};
    pieces = {Polynomial({y[0], (y[1] - y[0]) / h})};
  } else {
    std::size_t i = 0;
    breaks.push_back(node(0));
    for (; i + 2 < n; i += 2) {
      pieces.push_back(quadratic(y[i], y[i + 1], y[i + 2]));
      breaks.push_back(node(i + 2));
    }
    if (i + 1 < n) {
      // Odd cell count: last cell from the quadratic through the final three samples.
      pieces.push_back(quadratic(y[n - 3], y[n - 2], y[n - 1]).shifted(h));
      breaks.push_back(node(n - 1));
    }
  }
  if (codomain == Codomain::real)
    for (auto& piece : pieces) piece = piece.real_part();
  Profile p = piecewise(std::move(breaks), std::move(pieces), codomain);
  p.representation_ = Representation::grid;
  p.grid_step_ = h;
  return p;
}

Profile Profile::hermite(std::span<const double> x, std::span<const cplx> u, std::span<const cplx> du,
                         Codomain codomain) {
  if (x.size() != u.size() || x.size() != du.size()) throw ConfigError("profile: hermite data size mismatch");
  if (x.size() < 2) return {};
  std::vector<double> breaks(x.begin(), x.end());
  std::vector<Polynomial> pieces;
  pieces.reserve(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double h = x[i + 1] - x[i];
    const cplx s = (u[i + 1] - u[i]) / h;
    const cplx c2 = (3.0 * s - 2.0 * du[i] - du[i + 1]) / h;
    const cplx c3 = (du[i] + du[i + 1] - 2.0 * s) / (h * h);
    Polynomial piece({u[i], du[i], c2, c3});
    pieces.push_back(codomain == Codomain::real ? piece.real_part() : piece);
  }
  return piecewise(std::move(breaks), std::move(pieces), codomain);
}

Interval Profile::support() const {
  if (empty()) return {0.0, 0.0};
  return {breaks_.front(), breaks_.back()};
}

int Profile::max_degree() const {
  int d = -1;
  for (const auto& p : pieces_) d = std::max(d, p.degree());
  return d;
}

std::size_t Profile::segment_index(double x) const {
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  std::size_t idx = it == breaks_.begin() ? 0 : static_cast<std::size_t>(it - breaks_.begin()) - 1;
  return std::min(idx, pieces_.size() - 1);
}

cplx Profile::operator()(double x) const {
  if (empty() || x < breaks_.front() || x > breaks_.back()) return {0.0, 0.0};
  const std::size_t i = segment_index(x);
  return pieces_[i](x - breaks_[i]);
}

cplx Profile::derivative(double x) const {
  if (empty() || x < breaks_.front() || x > breaks_.back()) return {0.0, 0.0};
  const std::size_t i = segment_index(x);
  return pieces_[i].derivative()(x - breaks_[i]);
}

Polynomial Profile::local_piece(double x0, double x1) const {
  if (empty()) return {};
  const double mid = 0.5 * (x0 + x1);
  if (mid < breaks_.front() || mid > breaks_.back()) return {};
  const std::size_t i = segment_index(mid);
  return pieces_[i].shifted(x0 - breaks_[i]);
}

// ---------------------------------------------------------- TailedProfile

cplx TailedProfile::operator()(double x) const {
  if (body.empty()) return {0.0, 0.0};
  const Interval s = body.support();
  if (x < s.lo) return {0.0, 0.0};
  if (x <= s.hi) return body(x);
  return tail_value + tail_slope * (x - s.hi);
}

Profile TailedProfile::over(Interval window) const {
  if (body.empty() || !(window.hi > window.lo)) return {};
  const Interval s = body.support();
  std::vector<double> xs = merged_breaks({&body}, window);
  if (s.lo > window.lo && s.lo < window.hi) xs.push_back(s.lo);
  if (s.hi > window.lo && s.hi < window.hi) xs.push_back(s.hi);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<Polynomial> pieces;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double mid = 0.5 * (xs[i] + xs[i + 1]);
    if (mid < s.lo)
      pieces.emplace_back();
    else if (mid <= s.hi)
      pieces.push_back(body.local_piece(xs[i], xs[i + 1]));
    else
      pieces.push_back(Polynomial({tail_value + tail_slope * (xs[i] - s.hi), tail_slope}));
  }
  const bool real_tail = tail_value.imag() == 0.0 && tail_slope.imag() == 0.0;
  return Profile::piecewise(std::move(xs), std::move(pieces),
                            body.is_real() && real_tail ? Codomain::real : Codomain::complex);
}

// ------------------------------------------------------------- operations

cplx integral(const Profile& p) {
  cplx acc{0.0, 0.0};
  const auto b = p.breaks();
  const auto pieces = p.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) acc += pieces[i].integral(b[i + 1] - b[i]);
  return acc;
}

cplx integral(const Profile& p, double lo, double hi) {
  cplx acc{0.0, 0.0};
  const auto b = p.breaks();
  const auto pieces = p.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const double x0 = std::max(lo, b[i]);
    const double x1 = std::min(hi, b[i + 1]);
    if (!(x1 > x0)) continue;
    const Polynomial anti = pieces[i].antiderivative();
    acc += anti(x1 - b[i]) - anti(x0 - b[i]);
  }
  return acc;
}

TailedProfile antiderivative(const Profile& p, int order) {
  if (order != 1 && order != 2) throw ConfigError("antiderivative: order must be 1 or 2");
  if (p.empty()) return {};
  const auto b = p.breaks();
  const auto pieces = p.pieces();
  std::vector<Polynomial> out;
  out.reserve(pieces.size());
  cplx running{0.0, 0.0};
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    Polynomial a = pieces[i].antiderivative() + Polynomial::constant(running);
    running = a(b[i + 1] - b[i]);
    out.push_back(std::move(a));
  }
  TailedProfile first{Profile::piecewise(std::vector<double>(b.begin(), b.end()), std::move(out), p.codomain()),
                      running, {0.0, 0.0}};
  if (order == 1) return first;
  TailedProfile second = antiderivative(first.body, 1);
  second.tail_slope = first.tail_value;
  return second;
}

cplx inner_product(const Profile& f, const Profile& g) { return integral(product(conjugate(f), g)); }

double l2_norm(const Profile& p) { return std::sqrt(std::max(0.0, inner_product(p, p).real())); }

double max_abs(const Profile& p) {
  double m = 0.0;
  const auto b = p.breaks();
  const auto pieces = p.pieces();
  for (std::size_t i = 0; i < pieces.size(); ++i) m = std::max(m, sample_max_abs(pieces[i], b[i + 1] - b[i]));
  return m;
}

Profile operator+(const Profile& f, const Profile& g) {
  if (f.empty()) return g;
  if (g.empty()) return f;
  return combine(f, g, hull(f.support(), g.support()), join(f.codomain(), g.codomain()),
                 [](const Polynomial& a, const Polynomial& b) { return a + b; });
}

Profile operator-(const Profile& f, const Profile& g) { return f + cplx{-1.0, 0.0} * g; }

Profile operator*(cplx s, const Profile& p) {
  std::vector<Polynomial> pieces;
  for (const auto& piece : p.pieces()) pieces.push_back(s * piece);
  const Codomain c = s.imag() == 0.0 ? p.codomain() : Codomain::complex;
  return Profile::piecewise(std::vector<double>(p.breaks().begin(), p.breaks().end()), std::move(pieces), c);
}

Profile product(const Profile& f, const Profile& g) {
  if (f.empty() || g.empty() || !overlaps(f.support(), g.support())) return {};
  const Interval w{std::max(f.support().lo, g.support().lo), std::min(f.support().hi, g.support().hi)};
  return combine(f, g, w, join(f.codomain(), g.codomain()),
                 [](const Polynomial& a, const Polynomial& b) { return a * b; });
}

Profile conjugate(const Profile& p) {
  if (p.is_real()) return p;
  std::vector<Polynomial> pieces;
  for (const auto& piece : p.pieces()) pieces.push_back(piece.conjugate());
  return Profile::piecewise(std::vector<double>(p.breaks().begin(), p.breaks().end()), std::move(pieces),
                            p.codomain());
}

Profile derivative(const Profile& p) {
  std::vector<Polynomial> pieces;
  for (const auto& piece : p.pieces()) pieces.push_back(piece.derivative());
  return Profile::piecewise(std::vector<double>(p.breaks().begin(), p.breaks().end()), std::move(pieces),
                            p.codomain());
}

Profile dilate(const Profile& p, double s) {
  if (!(s > 0.0)) throw ConfigError("dilate: scale must be positive");
  std::vector<double> breaks;
  std::vector<Polynomial> pieces;
  for (double b : p.breaks()) breaks.push_back(b * s);
  for (const auto& piece : p.pieces()) pieces.push_back(piece.dilated(s));
  return Profile::piecewise(std::move(breaks), std::move(pieces), p.codomain());
}

Profile rescale(const Profile& p, Interval target) {
  if (p.empty()) return p;
  const Interval s = p.support();
  const double k = target.length() / s.length();
  if (!(k > 0.0)) throw ConfigError("rescale: target interval must have positive length");
  std::vector<double> breaks;
  std::vector<Polynomial> pieces;
  for (double b : p.breaks()) breaks.push_back(target.lo + k * (b - s.lo));
  breaks.back() = target.hi;
  for (const auto& piece : p.pieces()) pieces.push_back(piece.dilated(k));
  return Profile::piecewise(std::move(breaks), std::move(pieces), p.codomain());
}

Profile restrict_to(const Profile& p, Interval window) {
  if (!(window.hi > window.lo)) return {};
  return combine(p, Profile{}, window, p.codomain(), [](const Polynomial& a, const Polynomial&) { return a; });
}

Profile real_part(const Profile& p) {
  std::vector<Polynomial> pieces;
  for (const auto& piece : p.pieces()) pieces.push_back(piece.real_part());
  return Profile::piecewise(std::vector<double>(p.breaks().begin(), p.breaks().end()), std::move(pieces),
                            Codomain::real);
}

GaugeData gauge_phase(const Profile& A) {
  if (!A.is_real()) throw ConfigError("gauge_phase: magnetic potential must be real");
  GaugeData g;
  g.a = antiderivative(A, 1);
  g.mu = g.a.tail_value.real();
  return g;
}

Profile gauge_twist(const Profile& f, const GaugeData& gauge, const TwistOptions& options) {
  if (f.empty()) return {};
  const Profile& a = gauge.a.body;
  if (a.empty()) return f;
  const Interval fs = f.support();
  const Interval as = a.support();
  const auto xs = merged_breaks({&f, &a}, fs);

  std::vector<double> breaks{xs.front()};
  std::vector<Polynomial> pieces;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double x0 = xs[i];
    const double x1 = xs[i + 1];
    const double mid = 0.5 * (x0 + x1);
    const Polynomial fp = f.local_piece(x0, x1);
    Polynomial ap;
    if (mid < as.lo)
      ap = {};
    else if (mid > as.hi)
      ap = Polynomial::constant(gauge.mu);
    else
      ap = a.local_piece(x0, x1);

    if (ap.degree() <= 0) {
      const double phase = ap.is_zero() ? 0.0 : ap.coeffs()[0].real();
      pieces.push_back(std::exp(-I * phase) * fp);
      breaks.push_back(x1);
      continue;
    }
    const Polynomial Ap = ap.derivative();
    const Polynomial dfp = fp.derivative();
    const double len = x1 - x0;
    const double amax = std::max(1.0, sample_max_abs(Ap, len));
    const int n = std::max(2, static_cast<int>(std::ceil(len * amax / options.cell_phase)));
    std::vector<double> nx(n + 1);
    std::vector<cplx> nu(n + 1), ndu(n + 1);
    for (int j = 0; j <= n; ++j) {
      const double t = j == n ? len : len * j / n;
      const cplx e = std::exp(-I * ap(t).real());
      nx[j] = x0 + t;
      nu[j] = e * fp(t);
      ndu[j] = e * (dfp(t) - I * Ap(t).real() * fp(t));
    }
    nx[n] = x1;
    const Profile cell = Profile::hermite(nx, nu, ndu, Codomain::complex);
    for (std::size_t j = 0; j < cell.segment_count(); ++j) {
      pieces.push_back(cell.pieces()[j]);
      breaks.push_back(cell.breaks()[j + 1]);
    }
  }
  return Profile::piecewise(std::move(breaks), std::move(pieces), Codomain::complex);
}

bool zero_mean(const Profile& p, double tol) { return std::abs(integral(p)) <= tol; }

}  // namespace reslab
