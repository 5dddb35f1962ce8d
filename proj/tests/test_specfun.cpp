#include "diatomic/errors.hpp"
#include "diatomic/specfun.hpp"

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>
#include <boost/math/special_functions/laguerre.hpp>
#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace diatomic;
using namespace diatomic::specfun;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("pochhammer", "[specfun]") {
  CHECK(pochhammer(3.7, 0) == 1.0);
  CHECK(pochhammer(-2.0, 2) == 2.0);
  CHECK(pochhammer(3.0, 3) == 60.0);
  CHECK(pochhammer(-2.0, 3) == 0.0);
  CHECK_THAT(pochhammer(0.5, 4), WithinRel(0.5 * 1.5 * 2.5 * 3.5, 1e-15));
}

TEST_CASE("terminating 2F1", "[specfun]") {
  CHECK(hyp2f1_terminating(0, 2.3, -4.5, 0.7) == 1.0);
  for (double z : {-1.0, 0.3, 0.9, 2.5}) {
    CHECK_THAT(hyp2f1_terminating(1, 2.5, 3.5, z), WithinAbs(1.0 - 2.5 * z / 3.5, 1e-15));
  }
  CHECK_THAT(hyp2f1_terminating(2, 3.0, 2.0, 0.5), WithinAbs(0.0, 1e-15));
  const auto c = hyp2f1_coefficients(3, 1.5, 2.5);
  REQUIRE(c.size() == 4);
  CHECK(c[0] == 1.0);
  CHECK_THAT(c[1], WithinRel(-3.0 * 1.5 / 2.5, 1e-15));

  CHECK_THROWS_AS(hyp2f1_terminating(3, 1.0, 0.0, 0.5), DomainError);
  CHECK_THROWS_AS(hyp2f1_terminating(3, 1.0, -1.0, 0.5), DomainError);
  CHECK_NOTHROW(hyp2f1_terminating(3, 1.0, -2.5, 0.5));
}

TEST_CASE("terminating 2F1 matches Boost pFq", "[specfun][oracle]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.1, 12.0), zz(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const int n = static_cast<int>(rng() % 8);
    const double b = u(rng), c = u(rng), z = zz(rng);
    const double expect = boost::math::hypergeometric_pFq({double(-n), b}, {c}, z);
    CHECK_THAT(hyp2f1_terminating(n, b, c, z), WithinAbs(expect, 1e-12 * std::max(1.0, std::abs(expect))));
  }
}

TEST_CASE("terminating 2F1 is a polynomial of degree n", "[specfun][property]") {
  for (int n = 0; n <= 8; ++n) {
    const double b = 2.3 + n, c = 1.7;
    std::vector<double> f;
    for (int j = 0; j <= n + 1; ++j) f.push_back(hyp2f1_terminating(n, b, c, 0.1 * j));
    double diff = 0.0, scale = 0.0;
    for (int j = 0; j <= n + 1; ++j) {
      const double w = boost::math::binomial_coefficient<double>(n + 1, j) * (((n + 1 - j) % 2) ? -1.0 : 1.0);
      diff += w * f[j];
      scale += std::abs(w * f[j]);
    }
    CHECK(std::abs(diff) <= 1e-9 * std::max(1.0, scale));
  }
}

TEST_CASE("Euler-integral 2F1", "[specfun]") {
  CHECK(hyp2f1_euler(0.0, 1.5, 3.0, 0.4) == 1.0);
  CHECK_THAT(hyp2f1_euler(1.0, 1.0, 2.0, 0.5), WithinRel(-std::log(0.5) / 0.5, 1e-11));
  CHECK_THAT(hyp2f1_euler(1.0, 1.0, 2.0, 0.5), WithinRel(1.3862943611, 1e-10));

  SECTION("agrees with the terminating sum for a = -n") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.2, 6.0), zz(0.01, 0.99);
    for (int i = 0; i < 50; ++i) {
      const int n = static_cast<int>(rng() % 7);
      const double b = u(rng);
      const double c = b + u(rng);
      const double z = zz(rng);
      const double expect = hyp2f1_terminating(n, b, c, z);
      CHECK_THAT(hyp2f1_euler(-n, b, c, z), WithinAbs(expect, 1e-9 * std::max(1.0, std::abs(expect))));
    }
  }
  SECTION("agrees with Boost pFq for non-integer a") {
    for (double a : {-2.7, -0.3, 0.4, 1.9}) {
      for (double z : {-0.8, 0.2, 0.75}) {
        CHECK_THAT(hyp2f1_euler(a, 1.5, 4.25, z), WithinRel(boost::math::hypergeometric_pFq({a, 1.5}, {4.25}, z), 1e-10));
      }
    }
  }
  SECTION("z > 1 only for polynomial a") {
    CHECK_THAT(hyp2f1_euler(-2.0, 1.5, 3.0, 1.6), WithinRel(hyp2f1_terminating(2, 1.5, 3.0, 1.6), 1e-9));
    CHECK_THROWS_AS(hyp2f1_euler(-2.5, 1.5, 3.0, 1.6), DomainError);
  }
  CHECK_THROWS_AS(hyp2f1_euler(0.5, 2.0, 1.5, 0.3), DomainError); // c <= b
  CHECK_THROWS_AS(hyp2f1_euler(0.5, -1.0, 1.5, 0.3), DomainError); // b <= 0
  CHECK_THROWS_AS(hyp2f1_euler(2.0, 1.0, 2.5, 1.0), DomainError); // divergent at z = 1
}

TEST_CASE("associated Laguerre polynomials", "[specfun]") {
  CHECK(laguerre(0, 3.3, 7.1) == 1.0);
  for (double s : {0.0, 2.5, 33.8}) {
    for (double x : {0.0, 1.0, 12.0}) CHECK_THAT(laguerre(1, s, x), WithinAbs(1.0 + s - x, 1e-12));
  }
  CHECK_THAT(laguerre(2, 0.0, 1.0), WithinAbs(-0.5, 1e-15));

  SECTION("integer order against Boost") {
    for (int n = 0; n <= 12; ++n) {
      for (unsigned m : {0u, 3u, 17u}) {
        for (double x : {0.2, 4.0, 19.0}) {
          const double expect = boost::math::laguerre(n, m, x);
          CHECK_THAT(laguerre(n, m, x), WithinAbs(expect, 1e-10 * std::max(1.0, std::abs(expect))));
        }
      }
    }
  }
  SECTION("non-integer order against Boost 1F1") {
    // L_n^s(x) = C(n + s, n) 1F1(-n; s + 1; x)
    for (int n = 0; n <= 8; ++n) {
      for (double s : {0.5, 12.25, 33.8}) {
        const double binom = std::exp(std::lgamma(n + s + 1) - std::lgamma(n + 1.0) - std::lgamma(s + 1));
        for (double x : {0.7, 9.0, 30.0}) {
          const double expect = binom * boost::math::hypergeometric_1F1(double(-n), s + 1.0, x);
          CHECK_THAT(laguerre(n, s, x), WithinAbs(expect, 1e-12 * binom * std::exp(x)));
        }
      }
    }
  }
}

TEST_CASE("Laguerre three-term recurrence", "[specfun][property]") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> sig(0.0, 40.0), xs(0.0, 50.0);
  for (int i = 0; i < 400; ++i) {
    const int n = 1 + static_cast<int>(rng() % 20);
    const double s = sig(rng), x = xs(rng);
    const double lhs = (n + 1) * laguerre(n + 1, s, x);
    const double a = (2 * n + 1 + s - x) * laguerre(n, s, x);
    const double b = (n + s) * laguerre(n - 1, s, x);
    // relative to the magnitude of the terms, since L vanishes at its zeros
    CHECK(std::abs(lhs - (a - b)) <= 1e-10 * (std::abs(lhs) + std::abs(a) + std::abs(b)));
  }
}

TEST_CASE("Laguerre coefficients expand L(scale z)", "[specfun]") {
  const auto d = laguerre_coefficients(4, 33.8, 34.8);
  REQUIRE(d.size() == 5);
  for (double z : {0.1, 0.5, 0.9}) {
    double sum = 0.0, zk = 1.0;
    for (double dk : d) {
      sum += dk * zk;
      zk *= z;
    }
    CHECK_THAT(sum, WithinRel(laguerre(4, 33.8, 34.8 * z), 1e-10));
  }
}

TEST_CASE("confluent hypergeometric 1F1", "[specfun]") {
  for (double z : {-3.0, 0.5, 10.0}) CHECK_THAT(hyp1f1(2.5, 2.5, z), WithinRel(std::exp(z), 1e-14));
  CHECK_THAT(hyp1f1(1.0, 2.0, 1.0), WithinRel(std::exp(1.0) - 1.0, 1e-15));
  CHECK(hyp1f1(1.3, 4.2, 0.0) == 1.0);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.1, 40.0);
  for (int i = 0; i < 60; ++i) {
    const double a = u(rng), b = u(rng), z = u(rng);
    CHECK_THAT(hyp1f1(a, b, z), WithinRel(boost::math::hypergeometric_1F1(a, b, z), 1e-12));
  }
}

TEST_CASE("lower incomplete gamma", "[specfun]") {
  CHECK_THAT(lower_incomplete_gamma(1.0, 1.0), WithinRel(1.0 - std::exp(-1.0), 1e-14));
  CHECK_THAT(lower_incomplete_gamma(1.0, 1.0), WithinAbs(0.6321206, 5e-8));
  CHECK(lower_incomplete_gamma(2.5, 0.0) == 0.0);
  CHECK_THAT(lower_incomplete_gamma(0.5, 30.0), WithinAbs(std::sqrt(M_PI), 1e-10));
  CHECK_THROWS_AS(lower_incomplete_gamma(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(lower_incomplete_gamma(-1.0, 1.0), DomainError);

  for (double a : {0.5, 3.0, 34.8, 45.0}) {
    for (double x : {0.1, 5.0, 34.8, 60.0}) {
      CHECK_THAT(lower_incomplete_gamma(a, x), WithinRel(boost::math::tgamma_lower(a, x), 1e-12));
    }
  }
}

TEST_CASE("d/dx gamma(a, x) = x^(a-1) e^-x", "[specfun][property]") {
  std::mt19937_64 rng(13);
  // below saturation (x <= a + 2 sqrt(a)); past it the difference quotient is pure roundoff
  std::uniform_real_distribution<double> as(0.5, 30.0), unit(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double a = as(rng);
    const double x = 0.2 + (std::min(40.0, a + 2.0 * std::sqrt(a)) - 0.2) * unit(rng);
    const double h = 1e-4 * x / std::sqrt(a);
    const double fd = (lower_incomplete_gamma(a, x + h) - lower_incomplete_gamma(a, x - h)) / (2.0 * h);
    CHECK_THAT(fd, WithinRel(std::pow(x, a - 1.0) * std::exp(-x), 1e-6));
  }
}

TEST_CASE("shifted binomial and compensated sum", "[specfun]") {
  CHECK_THAT(binomial_shifted(5, 0.0, 2), WithinRel(10.0, 1e-13)); // C(5, 3)
  CHECK_THAT(binomial_shifted(3, 2.5, 0), WithinRel(5.5 * 4.5 * 3.5 / 6.0, 1e-13));
  CompensatedSum s;
  s.add(1e16);
  s.add(1.0);
  s.add(-1e16);
  CHECK(s.value() == 1.0);
}
