#include "diatomic/wavefunctions.hpp"

#include "diatomic/errors.hpp"
#include "diatomic/specfun.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace diatomic {
namespace {

constexpr double kRelTolerance = 1e-12;
constexpr int kNodeGridPoints = 10000;
constexpr double kSupportFloor = 1e-30;

void require_kind(const BoundState& s, StateKind kind) {
  if (s.kind != kind) throw DomainError("wave function evaluated for the wrong state kind");
}

/// z^A1 (1-z)^A2 2F1(-n, b; c; z) with 1-z supplied separately to keep precision near z = 1.
double two_term_amplitude(const BoundState& s, double z, double one_minus_z) {
  if (z <= 0.0 || one_minus_z <= 0.0) return 0.0;
  const auto& w = s.wave;
  const double envelope = std::exp(w.A1 * std::log(z) + w.A2 * std::log(one_minus_z));
  if (envelope == 0.0) return 0.0;
  return envelope * specfun::hyp2f1_terminating(s.n, w.b, w.c, z);
}

double morse_amplitude(const BoundState& s, double z) {
  if (z <= 0.0 || !std::isfinite(z)) return 0.0;
  const auto& m = s.morse;
  const double envelope = std::exp(-0.5 * m.B1 * z + 0.5 * m.B2 * std::log(z));
  if (envelope == 0.0) return 0.0;
  return envelope * specfun::laguerre(s.n, m.B2, m.B1 * z);
}

double singular_or_zero(const TwoTermPotential& p) { return singular_radius(p).value_or(0.0); }

// int_{r_s}^{inf} R^2 dr with N = 1, as int_0^1 R(z)^2 / (beta z) dz.
double two_term_physical_integral(const BoundState& s) {
  const double beta = s.potential.beta;
  auto integrand = [&](double z, double xc) {
    const double omz = (xc > 0.0) ? xc : 1.0 - z;
    const double a = two_term_amplitude(s, z, omz);
    return a * a / (beta * z);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(integrand, 0.0, 1.0, kRelTolerance);
}

// Full-line Morse integral int R^2 dr = int_0^inf R(z)^2 / (beta z) dz.
double morse_physical_integral(const BoundState& s) {
  const double beta = s.potential.beta;
  auto integrand = [&](double z) {
    const double a = morse_amplitude(s, z);
    return a * a / (beta * z);
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), kRelTolerance);
}

double inverse_sqrt_checked(double integral) {
  if (!std::isfinite(integral) || !(integral > 0.0)) {
    throw NumericError("normalization integral is not finite and positive");
  }
  return 1.0 / std::sqrt(integral);
}

} // namespace

BoundState make_two_term_state(int n, int l, const TwoTermPotential& pot, Kinetic kinetic,
                               NormConvention convention) {
  validate(pot);
  if (pot.q < 1.0) throw DomainError("two-term wave functions need q >= 1 (use the Morse state for q = 0)");
  const auto h = reduce(pot.V0, pot.V1, pot.beta, pot.q, kinetic);
  BoundState s;
  s.kind = StateKind::two_term;
  s.n = n;
  s.l = l;
  s.energy = energy_two_term(n, l, h);
  s.wave = two_term_wave_params(n, l, h);
  s.potential = pot;
  s.kinetic = kinetic;
  return normalized(s, convention);
}

BoundState make_morse_state(int n, double V0, double V1, double beta, Kinetic kinetic,
                            NormConvention convention) {
  BoundState s;
  s.kind = StateKind::morse;
  s.n = n;
  s.l = 0;
  s.energy = energy_morse(n, V0, V1, beta, kinetic);
  if (!(s.energy < 0.0)) throw DomainError("Morse state at threshold is not normalizable");
  s.morse = morse_params(n, V0, V1, beta, kinetic);
  s.potential = TwoTermPotential{V0, V1, beta, 0.0};
  s.kinetic = kinetic;
  return normalized(s, convention);
}

double domain_start(const BoundState& s) {
  if (s.kind == StateKind::morse) return -std::numeric_limits<double>::infinity();
  return singular_or_zero(s.potential);
}

double radial_two_term(const BoundState& s, double r) {
  require_kind(s, StateKind::two_term);
  const auto& p = s.potential;
  const double r_s = singular_or_zero(p);
  if (!(r > r_s)) throw DomainError("r must lie above the singular radius");
  const double z = p.q * std::exp(-p.beta * r);
  // 1 - q e^{-beta r} = -expm1(-beta (r - r_s)) for q >= 1
  const double omz = -std::expm1(-p.beta * (r - r_s));
  return s.norm * two_term_amplitude(s, z, omz);
}

double radial_morse(const BoundState& s, double r) {
  require_kind(s, StateKind::morse);
  if (!std::isfinite(r)) throw DomainError("r must be finite");
  return s.norm * morse_amplitude(s, std::exp(-s.potential.beta * r));
}

double radial(const BoundState& s, double r) {
  return s.kind == StateKind::two_term ? radial_two_term(s, r) : radial_morse(s, r);
}

double normalize_physical(const BoundState& s) {
  const double integral =
      s.kind == StateKind::two_term ? two_term_physical_integral(s) : morse_physical_integral(s);
  return inverse_sqrt_checked(integral);
}

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

/// int_0^q z^{2A1} (1 - z)^{2A2} [2F1(-n, b; c; z)]^2 dz, evaluated as q^{1+2A1} times the
/// same integral over xi = z / q in (0, 1). The squared polynomial has alternating coefficients whose products exceed the
/// result by many orders for larger n, so the sum runs in 50-digit arithmetic. The moments
/// M_j = int_0^1 xi^{s+j} (1 - q xi)^p dxi (s = 2A1, p = 2A2) follow from integration by parts:
/// q (s + j + p + 2) M_{j+1} = (s + j + 1) M_j - (1 - q)^{p+1}.
double two_term_paper_integral(const BoundState& s) {
  const auto& w = s.wave;
  const double q = s.potential.q;
  const Wide sw = 2.0 * w.A1;
  const Wide pw = 2.0 * w.A2;
  const Wide qw = q;
  const int terms = 2 * s.n + 1;

  std::vector<Wide> moment(terms);
  if (q == 1.0) {
    moment[0] = boost::math::beta(sw + 1, pw + 1);
  } else {
    const double b0 = 2.0 * w.A1 + 1.0;
    moment[0] = Wide(specfun::hyp2f1_euler(-2.0 * w.A2, b0, b0 + 1.0, q)) / Wide(b0);
  }
  const Wide boundary = pow(1 - qw, pw + 1);
  for (int j = 0; j + 1 < terms; ++j) {
    moment[j + 1] = ((sw + j + 1) * moment[j] - boundary) / (qw * (sw + j + pw + 2));
  }

  // Coefficients of 2F1(-n, b; c; q xi) in powers of xi.
  std::vector<Wide> coeff(static_cast<std::size_t>(s.n) + 1);
  coeff[0] = 1;
  const Wide bw = w.b, cw = w.c;
  for (int k = 0; k < s.n; ++k) {
    coeff[k + 1] = coeff[k] * Wide(k - s.n) * (bw + k) * qw / ((cw + k) * (k + 1));
  }

  Wide total = 0;
  for (std::size_t k = 0; k < coeff.size(); ++k) {
    for (std::size_t l = 0; l < coeff.size(); ++l) total += coeff[k] * coeff[l] * moment[k + l];
  }
  return static_cast<double>(total * pow(qw, 1 + sw));
}

/// int_0^1 e^{-B1 z} z^{B2} [L_n^{B2}(B1 z)]^2 dz as a double sum of lower incomplete gamma
/// moments B1^{-a} gamma(a, B1); like the two-term sum it cancels heavily, so it runs in 50 digits.
double morse_paper_integral(const BoundState& s) {
  const auto& m = s.morse;
  const Wide B1 = m.B1, B2 = m.B2;
  std::vector<Wide> d(static_cast<std::size_t>(s.n) + 1);
  // d_k = (-1)^k C(n + B2, n - k) B1^k / k!
  Wide binom = 1; // C(n + B2, n)
  for (int j = 1; j <= s.n; ++j) binom *= (B2 + j) / j;
  Wide power_over_factorial = 1;
  for (int k = 0; k <= s.n; ++k) {
    if (k > 0) {
      power_over_factorial *= B1 / k;
      binom *= Wide(s.n - k + 1) / (B2 + k); // C(n + B2, n - k) from C(n + B2, n - k + 1)
    }
    d[k] = ((k % 2 == 0) ? 1 : -1) * binom * power_over_factorial;
  }
  std::vector<Wide> moment(2 * d.size() - 1);
  for (std::size_t j = 0; j < moment.size(); ++j) {
    const Wide a = 1 + B2 + static_cast<int>(j);
    moment[j] = boost::math::tgamma_lower(a, B1) / pow(B1, a);
  }
  Wide total = 0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    for (std::size_t l = 0; l < d.size(); ++l) total += d[k] * d[l] * moment[k + l];
  }
  return static_cast<double>(total);
}

} // namespace

double normalize_paper(const BoundState& s) {
  if (s.kind == StateKind::two_term) {
    const double q = s.potential.q;
    if (q > 1.0) {
      throw UnsupportedConventionError(
          "paper normalization is undefined for q > 1 ((1 - q xi)^{2 A2} turns complex); use normalize_physical");
    }
    return inverse_sqrt_checked(two_term_paper_integral(s));
  }

  return inverse_sqrt_checked(morse_paper_integral(s));
}

BoundState normalized(BoundState s, NormConvention convention) {
  s.norm = 1.0;
  s.norm_convention = convention;
  s.norm = convention == NormConvention::physical ? normalize_physical(s) : normalize_paper(s);
  return s;
}

std::pair<double, double> support(const BoundState& s) {
  double lo = 0.0;
  double hi = 0.0;
  if (s.kind == StateKind::two_term) {
    const double beta = s.potential.beta;
    lo = singular_or_zero(s.potential);
    // z^{2 A1} = e^{-2 A1 beta (r - r_s)} has fallen by e^{-140} here.
    hi = lo + 70.0 / (s.wave.A1 * beta) + 10.0 / beta;
  } else {
    const auto& m = s.morse;
    const double beta = s.potential.beta;
    const double z_max = (m.B2 + 4.0 * s.n + 80.0) / m.B1;
    lo = -std::log(z_max) / beta;
    hi = 70.0 / (m.B2 * beta) + 10.0 / beta;
  }

  // Trim both ends to where |R|^2 exceeds kSupportFloor of the peak.
  constexpr int scan = 20000;
  std::vector<double> r(scan);
  std::vector<double> density(scan);
  double peak = 0.0;
  for (int i = 0; i < scan; ++i) {
    r[i] = lo + (hi - lo) * (i + 1) / (scan + 1.0);
    const double value = radial(s, r[i]);
    density[i] = value * value;
    peak = std::max(peak, density[i]);
  }
  int first = 0;
  while (first < scan - 1 && density[first] < kSupportFloor * peak) ++first;
  int last = scan - 1;
  while (last > 0 && density[last] < kSupportFloor * peak) --last;
  const double step = (hi - lo) / (scan + 1.0);
  const double trimmed_lo = s.kind == StateKind::two_term ? lo : std::max(lo, r[first] - step);
  return {trimmed_lo, std::min(hi, r[last] + step)};
}

int count_nodes(const BoundState& s) {
  std::vector<double> grid(kNodeGridPoints);
  if (s.kind == StateKind::two_term) {
    const double beta = s.potential.beta;
    const double r_s = singular_or_zero(s.potential);
    const double first = 1e-6 / beta;
    const double last = std::max(50.0 / beta, support(s).second) - r_s;
    const double ratio = std::pow(last / first, 1.0 / (kNodeGridPoints - 1));
    double offset = first;
    for (int i = 0; i < kNodeGridPoints; ++i, offset *= ratio) grid[i] = r_s + offset;
  } else {
    const auto [lo, hi] = support(s);
    for (int i = 0; i < kNodeGridPoints; ++i) grid[i] = lo + (hi - lo) * i / (kNodeGridPoints - 1.0);
  }

  int changes = 0;
  int last_sign = 0;
  for (double r : grid) {
    const double value = radial(s, r);
    const int sign = (value > 0.0) - (value < 0.0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

PrintedNormalization printed_normalization_n0(const BoundState& s) {
  require_kind(s, StateKind::two_term);
  if (s.n != 0) throw DomainError("printed normalization forms are only evaluable for n = 0");
  const double A1 = s.wave.A1;
  const double A2 = s.wave.A2;

  PrintedNormalization out;
  // Gauss summation of 2F1(a, b; c; 1), valid while c - a - b > 0.
  const double a = -2.0 * A2;
  const double b = 1.0 + 2.0 * A1;
  const double c = 2.0 + 2.0 * A2;
  const double f_at_one = std::tgamma(c) * std::tgamma(c - a - b) / (std::tgamma(c - a) * std::tgamma(c - b));
  out.hypergeometric_form = (c - a - b > 0.0 && f_at_one > 0.0) ? 1.0 / std::sqrt(f_at_one)
                                                                 : std::numeric_limits<double>::quiet_NaN();
  const double ratio = std::tgamma(2.0 + 4.0 * A2) / ((1.0 + 2.0 * A2) * std::tgamma(1.0 - 2.0 * A1 + 4.0 * A2));
  out.gamma_form = ratio > 0.0 ? std::sqrt(ratio) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

std::vector<WaveSample> sample(const BoundState& s, int points) {
  if (points < 2) throw DomainError("need at least two sample points");
  const auto [lo, hi] = support(s);
  const double h = (hi - lo) / points;
  std::vector<WaveSample> out(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double r = lo + (i + 1) * h;
    out[i] = {r, radial(s, r)};
  }
  return out;
}

WaveSummary summarize(const BoundState& s, const std::vector<WaveSample>& samples) {
  const BoundState physical = s.norm_convention == NormConvention::physical ? s : normalized(s, NormConvention::physical);
  // Trapezoid rule over the emitted samples, rescaled to the physical convention.
  const double scale = physical.norm / s.norm;
  WaveSummary summary;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const auto& a = samples[i - 1];
    const auto& b = samples[i];
    summary.norm_check += 0.5 * (b.r - a.r) * (a.R * a.R + b.R * b.R) * scale * scale;
  }
  summary.nodes = count_nodes(s);
  return summary;
}

void write_wavefunction_csv(std::ostream& out, const BoundState& s, const std::vector<WaveSample>& samples) {
  const auto summary = summarize(s, samples);
  fmt::print(out, "# kind={} n={} l={} energy={:.17g}\n", s.kind == StateKind::two_term ? "two-term" : "morse",
             s.n, s.l, s.energy);
  fmt::print(out, "# nodes={}\n", summary.nodes);
  fmt::print(out, "# norm_convention={} N={:.17g} norm_check={:.17g}\n",
             s.norm_convention == NormConvention::physical ? "physical" : "paper", s.norm, summary.norm_check);
  out << "r,R,probability_density\n";
  for (const auto& p : samples) fmt::print(out, "{:.17g},{:.17g},{:.17g}\n", p.r, p.R, p.R * p.R);
}

} // namespace diatomic
