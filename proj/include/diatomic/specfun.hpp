#pragma once

#include <vector>

namespace diatomic::specfun {

/// Rising factorial x(x+1)...(x+k-1); (x)_0 = 1.
double pochhammer(double x, int k);

/// Coefficients c_k = (-n)_k (b)_k / ((c)_k k!) of the terminating 2F1(-n, b; c; z), k = 0..n.
std::vector<double> hyp2f1_coefficients(int n, double b, double c);

/// 2F1(-n, b; c; z) as the exact degree-n polynomial.
/// Throws DomainError when c is 0, -1, ..., -(n-1).
double hyp2f1_terminating(int n, double b, double c, double z);

/// 2F1(a, b; c; z) from Euler's integral representation, requires c > b > 0.
/// For z > 1 the integrand is only real when a is a non-positive integer.
double hyp2f1_euler(double a, double b, double c, double z);

/// Associated Laguerre polynomial L_n^sigma(x) by forward three-term recurrence.
double laguerre(int n, double sigma, double x);

/// Power-series coefficients d_k of L_n^sigma(scale * z) in z.
std::vector<double> laguerre_coefficients(int n, double sigma, double scale);

/// Kummer series 1F1(a; b; z).
double hyp1f1(double a, double b, double z);

/// gamma(a, x) = int_0^x t^{a-1} e^{-t} dt via x^a e^{-x} 1F1(1; 1+a; x) / a.
double lower_incomplete_gamma(double a, double x);

/// Generalized binomial coefficient C(n + sigma, n - k) for 0 <= k <= n.
double binomial_shifted(int n, double sigma, int k);

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
  void add(double x);
  [[nodiscard]] double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

} // namespace diatomic::specfun
