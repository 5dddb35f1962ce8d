#include "diatomic/units.hpp"

#include "diatomic/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace diatomic {

Kinetic Kinetic::from_amu(double m_amu, const PhysicalConstants& consts) {
  if (!(m_amu > 0.0)) throw DomainError("mass must be positive");
  return {consts.hbar_c * consts.hbar_c / (m_amu * consts.amu_to_energy)};
}

double derive_E0(double m_amu, double r0_angstrom, const PhysicalConstants& consts) {
  if (!(m_amu > 0.0) || !(r0_angstrom > 0.0)) {
    throw DomainError("derive_E0: mass and r0 must be positive");
  }
  return consts.hbar_c * consts.hbar_c / (m_amu * consts.amu_to_energy * r0_angstrom * r0_angstrom);
}

ReducedHamiltonian reduce(double V0, double V1, double beta, double q, Kinetic kinetic) {
  if (!(beta > 0.0)) throw DomainError("reduce: beta must be positive");
  if (!(kinetic.hbar2_over_m > 0.0)) throw DomainError("reduce: mass must be positive");
  if (q < 0.0) throw DomainError("reduce: q must be non-negative");
  const double e_scale = 0.5 * beta * beta * kinetic.hbar2_over_m;
  return {V0 / e_scale, V1 / e_scale, q, e_scale};
}

std::pair<double, double> unreduce(const ReducedHamiltonian& h) {
  return {h.v0 * h.e_scale, h.v1 * h.e_scale};
}

void validate_molecule(const MoleculeParams& mol, const PhysicalConstants& consts) {
  if (!(mol.D0 > 0.0 && mol.r0 > 0.0 && mol.m > 0.0 && mol.mu > 0.0 && mol.E0 > 0.0)) {
    throw DomainError("molecule '" + mol.name + "': D0, r0, m, mu and E0 must all be positive");
  }
  const double derived = derive_E0(mol.m, mol.r0, consts);
  if (std::abs(mol.E0 - derived) > 1e-4 * derived) {
    std::ostringstream msg;
    msg << "molecule '" << mol.name << "': E0 = " << mol.E0
        << " eV disagrees with hbar^2/(m r0^2) = " << derived << " eV";
    throw DomainError(msg.str());
  }
}

const std::vector<MoleculeParams>& builtin_molecules() {
  // E0 values are the published ones, kept verbatim so table comparisons do
  // not depend on the choice of fundamental constants.
  static const std::vector<MoleculeParams> molecules = {
      {"H2", 4.744600, 0.741600, 0.503910, 1.440558, 1.508343932e-2},
      {"LiH", 2.515287, 1.595600, 0.8801221, 1.7998368, 1.865528199e-3},
  };
  return molecules;
}

MoleculeRegistry::MoleculeRegistry() : molecules_(builtin_molecules()) {}

void MoleculeRegistry::load_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("molecule registry: ") + e.what());
  }
  if (!doc.is_array()) throw DomainError("molecule registry must be a JSON array");

  for (const auto& entry : doc) {
    MoleculeParams mol;
    try {
      mol.name = entry.at("name").get<std::string>();
      mol.D0 = entry.at("D0_eV").get<double>();
      mol.r0 = entry.at("r0_angstrom").get<double>();
      mol.m = entry.at("m_amu").get<double>();
      mol.mu = entry.at("mu").get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("molecule registry entry: ") + e.what());
    }
    mol.E0 = entry.contains("E0_eV") ? entry["E0_eV"].get<double>()
                                     : (mol.m > 0.0 && mol.r0 > 0.0 ? derive_E0(mol.m, mol.r0) : 0.0);
    validate_molecule(mol);

    auto same = std::find_if(molecules_.begin(), molecules_.end(),
                             [&](const MoleculeParams& m) { return m.name == mol.name; });
    if (same != molecules_.end()) {
      *same = mol;
    } else {
      molecules_.push_back(mol);
    }
  }
}

void MoleculeRegistry::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open molecule registry '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  load_json(buf.str());
}

const MoleculeParams& MoleculeRegistry::get(const std::string& name) const {
  auto it = std::find_if(molecules_.begin(), molecules_.end(),
                         [&](const MoleculeParams& m) { return m.name == name; });
  if (it == molecules_.end()) throw DomainError("unknown molecule '" + name + "'");
  return *it;
}

bool MoleculeRegistry::contains(const std::string& name) const {
  return std::any_of(molecules_.begin(), molecules_.end(),
                     [&](const MoleculeParams& m) { return m.name == name; });
}

} // namespace diatomic
