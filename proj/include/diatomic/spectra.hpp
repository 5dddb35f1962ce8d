#pragma once

#include "diatomic/units.hpp"

namespace diatomic {

/// Analytic parameters of a two-term bound state,
/// R(z) = z^A1 (1-z)^A2 2F1(a, b; c; z) with a = -n, z = q e^{-beta r}.
struct WaveParams {
  double A1 = 0.0;      // decay exponent, A1^2 = -E / e_scale
  double A2 = 0.0;      // boundary exponent, larger root of A2(A2-1) = l(l+1)/q + v1/q^2
  double A2prime = 0.0; // A2 - 1/2
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// R(z) = e^{-B1 z/2} z^{B2/2} L_n^{B2}(B1 z) with z = e^{-beta r}.
struct MorseParams {
  double B1 = 0.0;
  double B2 = 0.0;
  double sigma_bar = 0.0;
};

/// sqrt(1/4 + l(l+1)/q + v1/q^2). This is the exponent obtained by
/// substituting z = q e^{-beta r}: the V1 term carries e^{-2 beta r} = z^2/q^2.
double a2_prime(int l, const ReducedHamiltonian& h);

/// Eigenvalue of the radial equation with the exponential centrifugal
/// substitution, exact for that Hamiltonian:
///   E = -e_scale [ (n^2 + (2n+1)(A2' + 1/2) + (l(l+1) - v0)/q) / (2n + 1 + 2A2') ]^2.
double energy_two_term(int n, int l, const ReducedHamiltonian& h);

/// Same bracket with the V1 coupling entering as v1 instead of v1/q^2
/// (the commonly quoted form). Identical to energy_two_term at q = 1.
double energy_two_term_as_printed(int n, int l, const ReducedHamiltonian& h);

/// Number of n >= 0 for which the bracket numerator is negative (A1 > 0).
int count_bound_states(int l, const ReducedHamiltonian& h);

WaveParams two_term_wave_params(int n, int l, const ReducedHamiltonian& h);

/// Manning-Rosen closed form in atomic units (hbar = m = 1).
double energy_manning_rosen(int n, int l, double A, double b, double alpha);

double energy_hulthen(int n, int l, double v0, double e_scale);

/// -Z^2 / (2 (n + l + 1)^2), atomic units.
double energy_coulomb(int n, int l, double Z);

/// -(beta^2 hbar^2 / 8m) [2n + 1 - (V0 / beta hbar) sqrt(2m / V1)]^2 for V1 e^{-2br} - V0 e^{-br}.
double energy_morse(int n, double V0, double V1, double beta, Kinetic kinetic);

int count_morse_bound_states(double V0, double V1, double beta, Kinetic kinetic);

MorseParams morse_params(int n, double V0, double V1, double beta, Kinetic kinetic);

} // namespace diatomic
