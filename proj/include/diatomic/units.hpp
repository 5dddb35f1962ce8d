#pragma once

#include <string>
#include <utility>
#include <vector>

namespace diatomic {

struct PhysicalConstants {
  double hbar_c = 1973.269804;         // eV * Angstrom
  double amu_to_energy = 9.3149410242e8; // eV per amu (rest energy)
};

inline constexpr PhysicalConstants kCodata{};

/// hbar^2 / m expressed in (energy * length^2) of whichever unit system the
/// caller works in. Atomic units: 1. eV/Angstrom: hbar_c^2 / (m c^2).
struct Kinetic {
  double hbar2_over_m = 1.0;

  static Kinetic atomic() { return {1.0}; }
  static Kinetic from_amu(double m_amu, const PhysicalConstants& consts = kCodata);
};

struct MoleculeParams {
  std::string name;
  double D0 = 0.0; // eV, potential depth
  double r0 = 0.0; // Angstrom, equilibrium separation
  double m = 0.0;  // amu, reduced mass
  double mu = 0.0; // dimensionless shape exponent
  double E0 = 0.0; // eV, hbar^2 / (m r0^2)

  /// hbar^2/m = E0 r0^2, so the molecule's own E0 fixes the kinetic scale.
  [[nodiscard]] Kinetic kinetic() const { return {E0 * r0 * r0}; }
};

/// Dimensionless couplings of the radial equation after dividing by
/// e_scale = beta^2 hbar^2 / (2m).
struct ReducedHamiltonian {
  double v0 = 0.0;
  double v1 = 0.0;
  double q = 0.0;
  double e_scale = 1.0;
};

/// hbar^2 / (m r0^2) in eV for m in amu and r0 in Angstrom.
double derive_E0(double m_amu, double r0_angstrom, const PhysicalConstants& consts = kCodata);

ReducedHamiltonian reduce(double V0, double V1, double beta, double q, Kinetic kinetic);

/// Inverse of reduce: returns {V0, V1}.
std::pair<double, double> unreduce(const ReducedHamiltonian& h);

/// Checks the MoleculeParams invariants, including E0 against derive_E0.
void validate_molecule(const MoleculeParams& mol, const PhysicalConstants& consts = kCodata);

/// H2 and LiH with the empirical constants used for the shipped tables.
const std::vector<MoleculeParams>& builtin_molecules();

class MoleculeRegistry {
public:
  MoleculeRegistry();

  /// Parses a JSON array of {name, D0_eV, r0_angstrom, m_amu, mu, [E0_eV]}.
  /// Entries replace built-ins with the same name.
  void load_json(const std::string& text);
  void load_file(const std::string& path);

  [[nodiscard]] const MoleculeParams& get(const std::string& name) const;
  [[nodiscard]] bool contains(const std::string& name) const;
  [[nodiscard]] const std::vector<MoleculeParams>& all() const { return molecules_; }

private:
  std::vector<MoleculeParams> molecules_;
};

} // namespace diatomic
