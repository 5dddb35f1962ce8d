#include "diatomic/spectra.hpp"

#include "diatomic/errors.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace diatomic {
namespace {

void check_quantum_numbers(int n, int l) {
  if (n < 0) throw DomainError("n must be non-negative");
  if (l < 0) throw DomainError("l must be non-negative");
}

double centrifugal(int l) { return static_cast<double>(l) * (l + 1); }

/// radicand = sum of terms whose magnitudes add to `scale`; a result within rounding of
/// zero is an exact zero (the root would otherwise amplify the noise to sqrt(eps)).
double checked_sqrt(double radicand, double scale, const char* what) {
  if (std::abs(radicand) <= 8.0 * std::numeric_limits<double>::epsilon() * scale) return 0.0;
  if (radicand < 0.0) {
    std::ostringstream msg;
    msg << what << " is complex (radicand " << radicand << " < 0)";
    throw DomainError(msg.str());
  }
  return std::sqrt(radicand);
}

void check_two_term(const ReducedHamiltonian& h) {
  if (h.q == 0.0) throw DomainError("q = 0 is the Morse limit; use energy_morse");
  if (!(h.q > 0.0)) throw DomainError("q must be positive");
  if (!(h.e_scale > 0.0)) throw DomainError("e_scale must be positive");
}

// Numerator of the bracket; negative exactly for bound states.
double bracket_numerator(int n, int l, double A2p, const ReducedHamiltonian& h) {
  const double nn = n;
  return nn * nn + (2.0 * nn + 1.0) * (A2p + 0.5) + (centrifugal(l) - h.v0) / h.q;
}

double bracket_energy(int n, int l, double A2p, const ReducedHamiltonian& h) {
  const double numerator = bracket_numerator(n, l, A2p, h);
  if (!(numerator < 0.0)) {
    std::ostringstream msg;
    msg << "no bound state with n = " << n << ", l = " << l;
    throw DomainError(msg.str());
  }
  const double ratio = numerator / (2.0 * n + 1.0 + 2.0 * A2p);
  return -h.e_scale * ratio * ratio;
}

} // namespace

double a2_prime(int l, const ReducedHamiltonian& h) {
  check_two_term(h);
  const double a = centrifugal(l) / h.q, b = h.v1 / (h.q * h.q);
  return checked_sqrt(0.25 + a + b, 0.25 + a + std::abs(b), "A2'");
}

double energy_two_term(int n, int l, const ReducedHamiltonian& h) {
  check_quantum_numbers(n, l);
  return bracket_energy(n, l, a2_prime(l, h), h);
}

double energy_two_term_as_printed(int n, int l, const ReducedHamiltonian& h) {
  check_quantum_numbers(n, l);
  check_two_term(h);
  const double A2p = checked_sqrt(0.25 + centrifugal(l) / h.q + h.v1, 0.25 + centrifugal(l) / h.q + std::abs(h.v1), "A2'");
  return bracket_energy(n, l, A2p, h);
}

int count_bound_states(int l, const ReducedHamiltonian& h) {
  if (l < 0) throw DomainError("l must be non-negative");
  const double A2p = a2_prime(l, h);
  int count = 0;
  // The numerator grows monotonically with n.
  while (bracket_numerator(count, l, A2p, h) < 0.0) ++count;
  return count;
}

WaveParams two_term_wave_params(int n, int l, const ReducedHamiltonian& h) {
  const double energy = energy_two_term(n, l, h);
  WaveParams w;
  w.A2prime = a2_prime(l, h);
  w.A2 = 0.5 + w.A2prime;
  w.A1 = std::sqrt(-energy / h.e_scale);
  w.a = -n;
  w.b = n + 2.0 * w.A1 + 2.0 * w.A2;
  w.c = 1.0 + 2.0 * w.A1;
  return w;
}

double energy_manning_rosen(int n, int l, double A, double b, double alpha) {
  check_quantum_numbers(n, l);
  if (!(b > 0.0)) throw DomainError("Manning-Rosen: b must be positive");
  const double root = checked_sqrt(0.25 + centrifugal(l) + alpha * (alpha - 1.0),
                                   0.25 + centrifugal(l) + std::abs(alpha * (alpha - 1.0)), "Manning-Rosen root");
  const double nn = n;
  const double numerator = nn * nn + (2.0 * nn + 1.0) * (0.5 + root) + centrifugal(l) - A;
  if (!(numerator < 0.0)) throw DomainError("Manning-Rosen: state is not bound");
  const double ratio = numerator / (2.0 * nn + 1.0 + 2.0 * root);
  return -ratio * ratio / (2.0 * b * b);
}

double energy_hulthen(int n, int l, double v0, double e_scale) {
  check_quantum_numbers(n, l);
  const double N = n + l + 1.0;
  if (!(N * N < v0)) {
    std::ostringstream msg;
    msg << "Hulthen: (n + l + 1)^2 = " << N * N << " >= v0 = " << v0 << ", not bound";
    throw DomainError(msg.str());
  }
  const double nl = n + l;
  const double ratio = (nl * (nl + 2.0) + 1.0 - v0) / (2.0 * N);
  return -e_scale * ratio * ratio;
}

double energy_coulomb(int n, int l, double Z) {
  check_quantum_numbers(n, l);
  if (!(Z > 0.0)) throw DomainError("Coulomb: Z must be positive");
  const double N = n + l + 1.0;
  return -Z * Z / (2.0 * N * N);
}

namespace {

// (V0 / beta hbar) sqrt(2m / V1)
double morse_strength(double V0, double V1, double beta, Kinetic kinetic) {
  if (!(V1 > 0.0)) throw DomainError("Morse: V1 must be positive");
  if (!(beta > 0.0)) throw DomainError("Morse: beta must be positive");
  if (!(kinetic.hbar2_over_m > 0.0)) throw DomainError("Morse: mass must be positive");
  return V0 * std::sqrt(2.0 / (V1 * kinetic.hbar2_over_m)) / beta;
}

} // namespace

double energy_morse(int n, double V0, double V1, double beta, Kinetic kinetic) {
  if (n < 0) throw DomainError("n must be non-negative");
  const double strength = morse_strength(V0, V1, beta, kinetic);
  const double gap = 2.0 * n + 1.0 - strength;
  if (gap > 0.0) {
    std::ostringstream msg;
    msg << "Morse: 2n + 1 = " << 2 * n + 1 << " exceeds " << strength << ", not bound";
    throw DomainError(msg.str());
  }
  return -beta * beta * kinetic.hbar2_over_m / 8.0 * gap * gap;
}

int count_morse_bound_states(double V0, double V1, double beta, Kinetic kinetic) {
  const double strength = morse_strength(V0, V1, beta, kinetic);
  int count = 0;
  while (2.0 * count + 1.0 < strength) ++count;
  return count;
}

MorseParams morse_params(int n, double V0, double V1, double beta, Kinetic kinetic) {
  const double energy = energy_morse(n, V0, V1, beta, kinetic);
  MorseParams p;
  p.B1 = std::sqrt(8.0 * V1 / kinetic.hbar2_over_m) / beta;
  p.B2 = std::sqrt(-8.0 * energy / kinetic.hbar2_over_m) / beta;
  p.sigma_bar = p.B2;
  return p;
}

} // namespace diatomic
