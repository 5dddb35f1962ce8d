#pragma once

#include "diatomic/oracle.hpp"
#include "diatomic/potentials.hpp"
#include "diatomic/units.hpp"

#include <json.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace diatomic::report {

enum class TableId { I, II, III_MR, III_Hulthen, III_Morse };
enum class Verdict { match, mismatch, not_applicable };

std::string to_string(TableId id);
std::string to_string(Verdict v);

/// Raw CSV text of the shipped reference tables (Table III covers all three blocks).
std::string_view embedded_csv(TableId id);

struct ReferenceRow {
  TableId table = TableId::I;
  int n_label = 0;     // as printed
  int n = 0;           // radial quantum number used for the computation
  int l = 0;
  double parameter = 0.0; // q, 1/b or delta; 0 for Morse
  double value = 0.0;     // signed energy (Tables I/II print |E|)
  std::optional<double> reference; // second column of Table III
};

std::vector<ReferenceRow> reference_rows(TableId id);

struct Tolerances {
  double morse = 5e-6;         // eV
  double hulthen = 5e-7;       // hartree
  double manning_rosen = 5e-7; // hartree
};

struct ComparisonRecord {
  TableId table = TableId::I;
  int n_label = 0;
  int n = 0;
  int l = 0;
  double parameter = 0.0;
  double paper_value = 0.0;
  double computed_closed_form = 0.0;
  std::optional<double> computed_oracle;
  std::optional<double> computed_as_printed; // Tables I/II: bracket with v1 instead of v1/q^2
  double abs_residual = 0.0;
  Verdict verdict = Verdict::not_applicable;
};

struct ValidateOptions {
  Tolerances tolerances;
  bool with_oracle = true;
  int grid_points = 4000;
};

/// Manning-Rosen, Hulthen and Morse blocks against their closed forms.
/// The oracle column is the Numerov eigenvalue with the exact centrifugal term.
std::vector<ComparisonRecord> validate_table3(const ValidateOptions& opts);

/// Diagnostic comparison for Table I (H2) or II (LiH); verdicts are not_applicable.
/// The oracle column is the Numerov eigenvalue with the exponential centrifugal term.
std::vector<ComparisonRecord> validate_molecule_table(TableId id, const MoleculeRegistry& registry,
                                                      const ValidateOptions& opts);

bool all_match(const std::vector<ComparisonRecord>& records);

void write_records_csv(std::ostream& out, const std::vector<ComparisonRecord>& records);
nlohmann::json records_json(const std::vector<ComparisonRecord>& records);

/// |E| per (n, l) row and q column; nullopt where the state is not bound.
struct SpectrumTable {
  std::vector<double> q_values;
  struct Row {
    int n = 0;
    int l = 0;
    std::vector<std::optional<double>> magnitudes;
  };
  std::vector<Row> rows;
};

SpectrumTable spectrum_table(const MoleculeParams& mol, const std::vector<double>& q_values, int n_max);
void write_table_csv(std::ostream& out, const SpectrumTable& table);
nlohmann::json table_json(const SpectrumTable& table);

/// A potential read from the tagged JSON form, with its unit system resolved.
struct PotentialSpec {
  PotentialKind kind;
  Kinetic kinetic;
};

PotentialSpec parse_potential(const nlohmann::json& j, const MoleculeRegistry& registry);
PotentialSpec parse_potential_text(const std::string& text, const MoleculeRegistry& registry);

/// Closed-form energy for any special case (Coulomb via its own formula).
double closed_form_energy(const PotentialSpec& spec, int n, int l);

/// Closed-form energy of the Hamiltonian the oracle sees in greene_aldrich mode;
/// used to size the box.
double oracle_energy_hint(const PotentialSpec& spec, int n, int l);

/// Order-preserving parallel map over [0, count).
template <class F>
auto parallel_map(std::size_t count, F&& fn) -> std::vector<decltype(fn(std::size_t{}))>;

} // namespace diatomic::report

#include "diatomic/detail/parallel.hpp"
