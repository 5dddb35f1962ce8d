#pragma once

#include "diatomic/potentials.hpp"
#include "diatomic/units.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace diatomic::oracle {

enum class Centrifugal { exact, greene_aldrich, none };

Centrifugal parse_centrifugal(const std::string& name);
std::string to_string(Centrifugal mode);

/// u'' = [ (V(r) - E) / (hbar^2/2m) + centrifugal(r) ] u on [r_min, r_max] with u = 0 at both ends.
struct RadialProblem {
  std::function<double(double)> potential;
  int l = 0;
  Kinetic kinetic;
  Centrifugal centrifugal_mode = Centrifugal::exact;
  /// beta and q of the exponential centrifugal form (greene_aldrich mode only).
  double screening_beta = 1.0;
  double screening_q = 1.0;
  double r_min = 0.0;
  double r_max = 1.0;
  int grid_points = 4000;
  /// When set, the grid is uniform in x = ln(r - anchor) and Numerov runs on
  /// w = u / sqrt(r - anchor), which resolves a Coulomb-like inner wall cheaply.
  std::optional<double> log_anchor;
};

struct SweepResult {
  int node_count = 0;   // sign changes of the outward solution over the whole box
  double defect = 0.0;  // outward minus inward log-derivative at the matching point
  double match_radius = 0.0;
};

struct EigenResult {
  int n = 0;
  double energy = 0.0;
  bool converged = false;
  double residual = 0.0;
  int grid_points_used = 0;
};

/// Radial samples of a stitched Numerov solution, unit-normalised by the trapezoid rule
/// in r (the nodes are not uniformly spaced on a logarithmic grid).
struct RadialSamples {
  std::vector<double> r;
  std::vector<double> u;
};

void validate(const RadialProblem& p);

SweepResult numerov_sweep(const RadialProblem& p, double energy);

/// Shooting solution with n nodes: node-count bracketing, defect bisection,
/// then grid doubling until the eigenvalue is stable to 1e-8 relative.
EigenResult find_eigenvalue(const RadialProblem& p, int n);

/// find_eigenvalue for n = 0..n_max; states that cannot be bracketed are skipped.
std::vector<EigenResult> spectrum(const RadialProblem& p, int n_max);

RadialSamples numerov_solution(const RadialProblem& p, double energy);

/// Builds a problem for a two-term (or Morse, q = 0) potential. The box is
/// chosen from energy_hint: the tail beyond each turning point is long enough
/// for the WKB decay exponent to reach 36. For q >= 1 the inner edge sits
/// 1e-12/beta above the singular radius. Problems with an inner wall use a
/// logarithmic grid anchored at the singular radius (or at r = 0).
RadialProblem make_problem(const TwoTermPotential& pot, int l, Kinetic kinetic, Centrifugal mode,
                           double energy_hint, int grid_points = 4000);

} // namespace diatomic::oracle
