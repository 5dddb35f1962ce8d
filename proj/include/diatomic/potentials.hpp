#pragma once

#include "diatomic/units.hpp"

#include <optional>
#include <string>
#include <variant>

namespace diatomic {

/// V(r) = -V0 e^{-beta r} / (1 - q e^{-beta r}) + V1 e^{-2 beta r} / (1 - q e^{-beta r})^2
///
/// For q >= 1 the denominator vanishes at r_s = ln(q)/beta and the physical
/// domain is (r_s, inf). q = 0 is the generalized Morse member.
struct TwoTermPotential {
  double V0 = 0.0;
  double V1 = 0.0;
  double beta = 1.0;
  double q = 0.0;
};

struct ManningRosen {
  double A = 0.0;     // dimensionless strength
  double b = 1.0;     // range (length)
  double alpha = 0.0; // dimensionless
};

struct Hulthen {
  double V0 = 0.0;
  double beta = 1.0;
};

/// Represented through its Hulthen screening limit V0 = Z beta, beta -> 0.
struct Coulomb {
  double Z = 1.0;
};

struct GeneralizedMorse {
  double V0 = 0.0;
  double V1 = 0.0;
  double beta = 1.0;
};

using PotentialKind = std::variant<TwoTermPotential, ManningRosen, Hulthen, Coulomb, GeneralizedMorse>;

/// Screening parameter used when a Coulomb potential has to be realised as a Hulthen one.
inline constexpr double kCoulombScreening = 1e-5;

/// TwoTerm image of any special case. ManningRosen needs the kinetic scale
/// because its strengths are given in units of hbar^2/(2 m b^2).
TwoTermPotential to_two_term(const PotentialKind& kind, Kinetic kinetic = Kinetic::atomic());

[[nodiscard]] std::string kind_name(const PotentialKind& kind);

/// ln(q)/beta for q > 1, 0 for q == 1, nullopt for q < 1.
std::optional<double> singular_radius(const TwoTermPotential& p);

double eval(const TwoTermPotential& p, double r);
double eval(const PotentialKind& kind, double r, Kinetic kinetic = Kinetic::atomic());

/// Depth parameterisation V1 = D0 (e^mu - q), V0 = 2 V1, beta = mu / r0.
TwoTermPotential from_molecule(const MoleculeParams& mol, double q);

/// l(l+1) beta^2 e^{beta r} / (e^{beta r} - q)^2, the exponential stand-in for l(l+1)/r^2.
double centrifugal_greene_aldrich(int l, double beta, double q, double r);

/// l(l+1) / r^2
double centrifugal_exact(int l, double r);

void validate(const TwoTermPotential& p);

} // namespace diatomic
