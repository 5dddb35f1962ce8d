#include "diatomic/specfun.hpp"

#include "diatomic/errors.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <sstream>

namespace diatomic::specfun {
namespace {

constexpr double kSeriesCutoff = 1e-16;
constexpr int kMaxSeriesTerms = 10000;
constexpr double kQuadratureTolerance = 1e-12;

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

} // namespace

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    comp_ += (sum_ - t) + x;
  } else {
    comp_ += (x - t) + sum_;
  }
  sum_ = t;
}

double pochhammer(double x, int k) {
  if (k < 0) throw DomainError("pochhammer: k must be non-negative");
  double p = 1.0;
  for (int j = 0; j < k; ++j) p *= x + j;
  return p;
}

std::vector<double> hyp2f1_coefficients(int n, double b, double c) {
  if (n < 0) throw DomainError("hyp2f1: n must be non-negative");
  for (int j = 0; j < n; ++j) {
    if (c + j == 0.0) {
      std::ostringstream msg;
      msg << "hyp2f1_terminating: c = " << c << " makes (c)_k vanish within the series";
      throw DomainError(msg.str());
    }
  }
  std::vector<double> coeff(static_cast<std::size_t>(n) + 1);
  coeff[0] = 1.0;
  // c_{k+1} / c_k = (k - n)(b + k) / ((c + k)(k + 1))
  for (int k = 0; k < n; ++k) {
    coeff[k + 1] = coeff[k] * (k - n) * (b + k) / ((c + k) * (k + 1));
  }
  return coeff;
}

double hyp2f1_terminating(int n, double b, double c, double z) {
  const auto coeff = hyp2f1_coefficients(n, b, c);
  CompensatedSum sum;
  double zk = 1.0;
  for (double ck : coeff) {
    sum.add(ck * zk);
    zk *= z;
  }
  return sum.value();
}

double hyp2f1_euler(double a, double b, double c, double z) {
  if (!(b > 0.0) || !(c > b)) throw DomainError("hyp2f1_euler: requires c > b > 0");
  if (z > 1.0 && !is_nonpositive_integer(a)) {
    throw DomainError("hyp2f1_euler: z > 1 needs a non-positive integer a for a real integrand");
  }
  if (z == 1.0 && !(c - b - a > 0.0)) {
    throw DomainError("hyp2f1_euler: integrand not integrable at t = 1 (c - a - b <= 0)");
  }
  if (a == 0.0) return 1.0;

  const double log_prefactor = std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b);
  auto integrand = [&](double t, double xc) {
    // tanh-sinh passes the signed distance to the nearest endpoint; near t = 1
    // it is 1 - t without cancellation.
    const double tc = (xc > 0.0) ? xc : 1.0 - t;
    const double one_minus_tz = (z == 1.0) ? tc : 1.0 - t * z;
    return std::exp((b - 1.0) * std::log(t) + (c - b - 1.0) * std::log(tc)) * std::pow(one_minus_tz, -a);
  };

  boost::math::quadrature::tanh_sinh<double> integrator;
  double error = 0.0;
  double l1 = 0.0;
  const double value = integrator.integrate(integrand, 0.0, 1.0, kQuadratureTolerance, &error, &l1);
  if (!std::isfinite(value)) throw NumericError("hyp2f1_euler: quadrature produced a non-finite value");
  return std::exp(log_prefactor) * value;
}

double binomial_shifted(int n, double sigma, int k) {
  // C(n + sigma, n - k) = Gamma(n + sigma + 1) / (Gamma(n - k + 1) Gamma(sigma + k + 1))
  const int m = n - k;
  if (sigma + k + 1.0 > 0.0) {
    return std::exp(std::lgamma(n + sigma + 1.0) - std::lgamma(m + 1.0) - std::lgamma(sigma + k + 1.0));
  }
  // Falling-product form (sigma+k+1)...(sigma+n) / m!, valid for any sigma.
  double value = 1.0;
  for (int j = 1; j <= m; ++j) value *= (sigma + k + j) / j;
  return value;
}

std::vector<double> laguerre_coefficients(int n, double sigma, double scale) {
  if (n < 0) throw DomainError("laguerre: n must be non-negative");
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  double power_over_factorial = 1.0; // scale^k / k!
  for (int k = 0; k <= n; ++k) {
    if (k > 0) power_over_factorial *= scale / k;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    d[k] = sign * binomial_shifted(n, sigma, k) * power_over_factorial;
  }
  return d;
}

double laguerre(int n, double sigma, double x) {
  if (n < 0) throw DomainError("laguerre: n must be non-negative");
  // Forward recurrence; the explicit alternating sum cancels badly once x >> n.
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 1.0 + sigma - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2 * k + 1 + sigma - x) * cur - (k + sigma) * prev) / (k + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

double hyp1f1(double a, double b, double z) {
  if (is_nonpositive_integer(b)) throw DomainError("hyp1f1: b must not be a non-positive integer");
  CompensatedSum sum;
  double term = 1.0;
  sum.add(term);
  for (int k = 0; k < kMaxSeriesTerms; ++k) {
    term *= (a + k) * z / ((b + k) * (k + 1));
    sum.add(term);
    if (term == 0.0) return sum.value();
    // Only stop once every later term is smaller than this one.
    const bool shrinking = std::abs((a + k + 1) * z) < std::abs((b + k + 1) * (k + 2));
    if (shrinking && std::abs(term) <= kSeriesCutoff * std::abs(sum.value())) {
      return sum.value();
    }
  }
  throw NumericError("hyp1f1: series did not converge within the term cap");
}

double lower_incomplete_gamma(double a, double x) {
  if (!(a > 0.0)) throw DomainError("lower_incomplete_gamma: a must be positive");
  if (x < 0.0) throw DomainError("lower_incomplete_gamma: x must be non-negative");
  if (x == 0.0) return 0.0;
  return std::exp(a * std::log(x) - x) * hyp1f1(1.0, 1.0 + a, x) / a;
}

} // namespace diatomic::specfun
