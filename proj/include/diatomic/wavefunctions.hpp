#pragma once

#include "diatomic/potentials.hpp"
#include "diatomic/spectra.hpp"
#include "diatomic/units.hpp"

#include <ostream>
#include <utility>
#include <vector>

namespace diatomic {

enum class StateKind { two_term, morse };

/// physical: int |R(r)|^2 dr = 1. paper: the substituted-variable measure
/// (dxi on (0,1) for the two-term family, dz on (0,1) for Morse).
enum class NormConvention { physical, paper };

struct BoundState {
  StateKind kind = StateKind::two_term;
  int n = 0;
  int l = 0;
  double energy = 0.0;
  WaveParams wave;       // two_term only
  MorseParams morse;     // morse only
  TwoTermPotential potential; // q = 0 for Morse
  Kinetic kinetic;
  double norm = 1.0;
  NormConvention norm_convention = NormConvention::physical;
};

/// Two-term state for q >= 1, where (r_s, inf) maps onto z = q e^{-beta r} in (0, 1).
BoundState make_two_term_state(int n, int l, const TwoTermPotential& pot, Kinetic kinetic,
                               NormConvention convention = NormConvention::physical);

/// Morse state on the full line r in (-inf, inf), z = e^{-beta r} in (0, inf).
BoundState make_morse_state(int n, double V0, double V1, double beta, Kinetic kinetic,
                            NormConvention convention = NormConvention::physical);

/// N z^A1 (1-z)^A2 2F1(-n, n + 2A1 + 2A2; 1 + 2A1; z).
double radial_two_term(const BoundState& s, double r);

/// N e^{-B1 z/2} z^{B2/2} L_n^{B2}(B1 z).
double radial_morse(const BoundState& s, double r);

double radial(const BoundState& s, double r);

/// N with int |R(r)|^2 dr = 1 over the physical domain (tanh-sinh in z).
double normalize_physical(const BoundState& s);

/// N in the substituted-variable convention, from the series/special-function route.
/// Two-term states need q <= 1.
double normalize_paper(const BoundState& s);

/// Returns s with norm recomputed in the requested convention.
BoundState normalized(BoundState s, NormConvention convention);

/// Sign changes of R on a 10^4-point grid over the physical domain.
int count_nodes(const BoundState& s);

/// Radial interval outside which |R|^2 is below 1e-30 of its peak.
std::pair<double, double> support(const BoundState& s);

/// Inner edge of the physical domain (r_s, or -inf for Morse).
double domain_start(const BoundState& s);

/// Closed-form normalisations printed for the n = 0, q = 1 case (k = l = 0 terms),
/// kept to compare against quadrature.
struct PrintedNormalization {
  double hypergeometric_form = 0.0; // [1 / 2F1(-2A2, 1 + 2A1; 2 + 2A2; 1)]^{1/2}
  double gamma_form = 0.0;          // [Gamma(2 + 4A2) / ((1 + 2A2) Gamma(1 - 2A1 + 4A2))]^{1/2}
};
PrintedNormalization printed_normalization_n0(const BoundState& s);

struct WaveSample {
  double r = 0.0;
  double R = 0.0;
};

/// points uniformly spaced samples over support(s), first point one step inside the domain.
std::vector<WaveSample> sample(const BoundState& s, int points);

struct WaveSummary {
  int nodes = 0;
  double norm_check = 0.0; // trapezoid integral of the physical |R|^2 over the samples
};
WaveSummary summarize(const BoundState& s, const std::vector<WaveSample>& samples);

/// CSV `r,R,probability_density` with 17 significant digits, preceded by `#` comment lines
/// (state, node count, N and norm_check = trapezoid integral of the physical |R|^2 over the samples).
void write_wavefunction_csv(std::ostream& out, const BoundState& s, const std::vector<WaveSample>& samples);

} // namespace diatomic
