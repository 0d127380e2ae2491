#include <doctest.h>

#include <cmath>

#include "reslab/errors.hpp"
#include "support/fixtures.hpp"

using namespace reslab;
using fx::box;

TEST_CASE("polynomial arithmetic and calculus") {
  const Polynomial p{1.0, 2.0, 3.0};  // 1 + 2t + 3t^2
  CHECK(p.degree() == 2);
  CHECK(std::abs(p(2.0) - cplx{17.0}) < 1e-14);
  CHECK(std::abs(p.derivative()(1.0) - cplx{8.0}) < 1e-14);
  CHECK(std::abs(p.integral(1.0) - cplx{3.0}) < 1e-14);
  const Polynomial s = p.shifted(1.0);
  CHECK(std::abs(s(0.5) - p(1.5)) < 1e-13);
  const Polynomial d = p.dilated(2.0);
  CHECK(std::abs(d(1.0) - p(0.5)) < 1e-14);
  CHECK((p - p).degree() == -1);
  CHECK(std::abs((p * p)(0.3) - p(0.3) * p(0.3)) < 1e-13);
}

TEST_CASE("profile construction is validated") {
  CHECK_THROWS_AS(Profile::piecewise({0.0, 0.0}, {Polynomial::constant(1.0)}), ConfigError);
  CHECK_THROWS_AS(Profile::piecewise({0.0, 1.0, 0.5}, {Polynomial{}, Polynomial{}}), ConfigError);
  CHECK_THROWS_AS(Profile::piecewise({0.0, 1.0}, {Polynomial::constant(I)}, Codomain::real), ConfigError);
  const std::vector<cplx> one{1.0};
  CHECK_THROWS_AS(Profile::grid({0, 1}, one), ConfigError);
}

TEST_CASE("values vanish outside the support") {
  const Profile u = box(-1, 1, 2.0);
  CHECK(u(-1.5) == cplx{});
  CHECK(u(1.0001) == cplx{});
  CHECK(u(0.3) == cplx{2.0});
  CHECK(u.support().lo == -1.0);
  CHECK(u.support().hi == 1.0);
}

TEST_CASE("integral") {
  CHECK(std::abs(integral(box(-1, 1)) - cplx{2.0}) < 1e-14);
  const Profile odd = fx::steps({-1, 0, 1}, {-3.0, 3.0});
  CHECK(std::abs(integral(odd)) < 1e-14);
  const Profile sq = Profile::piecewise({0.0, 1.0}, {Polynomial{0.0, 0.0, 1.0}});
  CHECK(std::abs(integral(sq) - cplx{1.0 / 3.0}) < 1e-14);
  CHECK(std::abs(integral(sq, 0.0, 0.5) - cplx{1.0 / 24.0}) < 1e-14);

  SUBCASE("grid profiles use composite Simpson") {
    std::vector<cplx> samples;
    const int n = 41;
    for (int i = 0; i < n; ++i) {
      const double x = static_cast<double>(i) / (n - 1);
      samples.push_back(x * x);
    }
    const Profile g = Profile::grid({0, 1}, samples);
    CHECK(std::abs(integral(g) - cplx{1.0 / 3.0}) < 1e-12);
    std::vector<cplx> even(samples.begin(), samples.end() - 1);  // odd cell count
    const Profile g2 = Profile::grid({0, 0.975}, even);
    CHECK(std::abs(integral(g2) - cplx{std::pow(0.975, 3) / 3.0}) < 1e-12);
  }

  SUBCASE("linearity") {
    const Profile f = fx::steps({-1, 0, 2}, {1.0, -0.5});
    const Profile g = Profile::piecewise({-0.5, 0.5}, {Polynomial{0.2, 1.0}});
    const cplx a{2.0, 0.0}, b{-0.7, 0.0};
    CHECK(std::abs(integral(a * f + b * g) - (a * integral(f) + b * integral(g))) < 1e-13);
  }
}

TEST_CASE("antiderivatives") {
  const Profile h = fx::steps({-1, 0, 1}, {1.0, -1.0});
  const TailedProfile h1 = antiderivative(h, 1);
  CHECK(std::abs(h1.tail_value) < 1e-14);
  CHECK(std::abs(h1(0.0) - cplx{1.0}) < 1e-14);
  CHECK(std::abs(h1(5.0)) < 1e-14);

  const TailedProfile u1 = antiderivative(box(0, 1), 1);
  CHECK(std::abs(u1(1.0) - cplx{1.0}) < 1e-14);
  CHECK(std::abs(u1(3.0) - cplx{1.0}) < 1e-14);
  CHECK(std::abs(u1(0.25) - cplx{0.25}) < 1e-14);

  // zero-mean h: h^(-2) is constant -int s h(s) ds beyond the support
  const TailedProfile h2 = antiderivative(h, 2);
  const Profile sh = product(Profile::piecewise({-1.0, 1.0}, {Polynomial{-1.0, 1.0}}), h);  // x on (-1,1)
  const cplx expected = -integral(sh);
  CHECK(std::abs(h2.tail_value - expected) < 1e-14);
  CHECK(std::abs(h2(4.0) - expected) < 1e-14);
  CHECK(std::abs(h2.tail_slope) < 1e-14);
  CHECK(std::abs(expected - cplx{1.0}) < 1e-14);
}

TEST_CASE("inner product") {
  const Profile f = box(0, 1);
  const Profile g = Profile::piecewise({0.0, 1.0}, {Polynomial{0.0, 1.0}});
  CHECK(std::abs(inner_product(f, g) - cplx{0.5}) < 1e-14);
  CHECK(std::abs(inner_product(box(-2, -1), box(1, 2))) == 0.0);
  const Profile c = Profile::piecewise({-1.0, 0.5, 1.0}, {Polynomial{I, 2.0}, Polynomial{1.0, -I}}, Codomain::complex);
  const cplx ff = inner_product(c, c);
  CHECK(ff.real() > 0.0);
  CHECK(std::abs(ff.imag()) < 1e-14);
  CHECK(std::abs(ff.real() - l2_norm(c) * l2_norm(c)) < 1e-12);
  CHECK(std::abs(inner_product(c, g) - std::conj(inner_product(g, c))) < 1e-14);
}

TEST_CASE("gauge phase and twist") {
  GaugeData a = gauge_phase(box(-1, 1));
  CHECK(a.mu == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(a.phase(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a.phase(-2.0) == 0.0);
  CHECK(a.phase(3.0) == doctest::Approx(2.0).epsilon(1e-14));

  CHECK(std::abs(gauge_phase(fx::steps({-1, 0, 1}, {-2.0, 2.0})).mu) < 1e-14);
  CHECK(gauge_phase(box(0, 1, M_PI / 2)).mu == doctest::Approx(M_PI / 2).epsilon(1e-14));

  const Profile f = box(0, 1);
  const Profile g = gauge_twist(f, gauge_phase(box(-1, 0, M_PI)));
  CHECK(std::abs(g(0.5) + 1.0) < 1e-12);

  SUBCASE("identity gauge") {
    const Profile f2 = fx::pair_f2();
    const Profile g2 = gauge_twist(f2, gauge_phase(Profile{}));
    for (double x : {-0.9, -0.2, 0.3, 0.8}) CHECK(std::abs(g2(x) - f2(x)) < 1e-14);
  }

  SUBCASE("modulus and support preserved") {
    const Profile A = Profile::piecewise({-1.0, 1.0}, {Polynomial{1.0, 2.0, -1.0}});
    const Profile f2 = Profile::piecewise({-0.5, 0.7}, {Polynomial{1.0, 0.5}});
    const Profile t = gauge_twist(f2, gauge_phase(A));
    CHECK(t.support().lo == f2.support().lo);
    CHECK(t.support().hi == f2.support().hi);
    for (int i = 0; i <= 50; ++i) {
      const double x = -0.5 + 1.2 * i / 50.0;
      CHECK(std::abs(std::abs(t(x)) - std::abs(f2(x))) < 1e-10);
    }
  }
}

TEST_CASE("zero mean, dilation, rescale") {
  CHECK(zero_mean(fx::pair_f1(), 1e-12));
  CHECK_FALSE(zero_mean(box(0, 1), 1e-12));
  const Profile d = dilate(box(0, 1, 3.0), 0.1);
  CHECK(d.support().hi == doctest::Approx(0.1));
  CHECK(std::abs(integral(d) - cplx{0.3}) < 1e-14);
  const Profile r = rescale(box(0, 4, 1.0), {-1, 1});
  CHECK(r.support().lo == -1.0);
  CHECK(r.support().hi == 1.0);
}

TEST_CASE("real-tagged profiles stay real") {
  const Profile f = fx::pair_f1();
  CHECK(f.is_real());
  for (double x : {-0.7, 0.2, 0.9}) CHECK(f(x).imag() == 0.0);
  CHECK((f + fx::pair_f2()).is_real());
}
