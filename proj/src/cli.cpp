#include "diatomic/cli.hpp"

#include "diatomic/errors.hpp"
#include "diatomic/oracle.hpp"
#include "diatomic/report.hpp"
#include "diatomic/wavefunctions.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>

namespace diatomic {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

constexpr const char* kDiagnosticNote =
    "Tables I and II are diagnostic: the printed values cannot be reproduced from the stated "
    "closed form and molecule parameters, so their rows carry verdict not-applicable and the "
    "command always exits 0. Only Table III gates the exit status.";

struct Config {
  std::string molecules_path;
  report::Tolerances tolerances;
  int grid_points = 4000;
};

Config load_config(const std::string& path) {
  Config cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
    if (j.contains("molecules")) {
      std::filesystem::path p = j.at("molecules").get<std::string>();
      if (p.is_relative()) p = std::filesystem::path(path).parent_path() / p;
      cfg.molecules_path = p.string();
    }
    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      cfg.tolerances.morse = t.value("morse", cfg.tolerances.morse);
      cfg.tolerances.hulthen = t.value("hulthen", cfg.tolerances.hulthen);
      cfg.tolerances.manning_rosen = t.value("manning_rosen", cfg.tolerances.manning_rosen);
    }
    cfg.grid_points = j.value("grid_points", cfg.grid_points);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config: " + std::string(e.what()));
  }
  return cfg;
}

MoleculeRegistry load_registry(const Config& cfg) {
  MoleculeRegistry registry;
  if (!cfg.molecules_path.empty()) registry.load_file(cfg.molecules_path);
  return registry;
}

std::string raw(double x) { return fmt::format("{:.17g}", x); }

struct TableArgs {
  std::string molecule;
  std::vector<double> q_values{1.25, 1.5, 1.75};
  int n_max = 5;
  std::string format = "csv";
};

struct ValidateArgs {
  std::string table;
  std::optional<double> tolerance;
  std::optional<double> tol_morse, tol_hulthen, tol_manning_rosen;
  bool no_oracle = false;
  std::string format = "csv";
};

struct StateArgs {
  std::string potential;
  std::optional<int> n;
  std::optional<int> n_max;
  int l = 0;
  int points = 2000;
  std::string convention = "physical";
  std::string centrifugal = "exact";
  std::optional<int> grid_points;
  std::string format = "csv";
};

int cmd_table(const TableArgs& a, const MoleculeRegistry& registry, std::ostream& out) {
  const auto table = report::spectrum_table(registry.get(a.molecule), a.q_values, a.n_max);
  if (a.format == "json") {
    auto j = report::table_json(table);
    j["molecule"] = a.molecule;
    out << j.dump(2) << '\n';
  } else {
    report::write_table_csv(out, table);
  }
  return kExitOk;
}

int cmd_validate(const ValidateArgs& a, const Config& cfg, const MoleculeRegistry& registry,
                 std::ostream& out) {
  report::ValidateOptions opts;
  opts.tolerances = cfg.tolerances;
  opts.grid_points = cfg.grid_points;
  opts.with_oracle = !a.no_oracle;
  if (a.tolerance) opts.tolerances = {*a.tolerance, *a.tolerance, *a.tolerance};
  if (a.tol_morse) opts.tolerances.morse = *a.tol_morse;
  if (a.tol_hulthen) opts.tolerances.hulthen = *a.tol_hulthen;
  if (a.tol_manning_rosen) opts.tolerances.manning_rosen = *a.tol_manning_rosen;

  const bool diagnostic = a.table != "III";
  const auto records = diagnostic
                           ? report::validate_molecule_table(a.table == "I" ? report::TableId::I : report::TableId::II,
                                                             registry, opts)
                           : report::validate_table3(opts);
  const bool ok = report::all_match(records);

  if (a.format == "json") {
    nlohmann::json j = {{"table", a.table},
                        {"diagnostic", diagnostic},
                        {"all_match", ok},
                        {"records", report::records_json(records)}};
    if (diagnostic) j["note"] = kDiagnosticNote;
    out << j.dump(2) << '\n';
  } else {
    if (diagnostic) {
      out << "# diagnostic: Table " << a.table << " does not follow from the stated closed form; "
          << "verdicts are not-applicable and the exit status is always 0\n"
          << "# computed_closed_form uses the bracket with v1/q^2; computed_as_printed uses v1 as printed\n"
          << "# computed_oracle: Numerov with the exponential centrifugal term (same Hamiltonian as the closed form)\n";
    }
    report::write_records_csv(out, records);
  }
  if (diagnostic) return kExitOk;
  return ok ? kExitOk : kExitFailure;
}

int cmd_special(const StateArgs& a, const MoleculeRegistry& registry, std::ostream& out) {
  const auto spec = report::parse_potential_text(a.potential, registry);
  const std::string kind = kind_name(spec.kind);
  std::vector<std::pair<int, int>> states;
  if (a.n) {
    states.emplace_back(*a.n, a.l);
  } else {
    for (int n = 0; n <= a.n_max.value_or(0); ++n) states.emplace_back(n, a.l);
  }
  std::vector<double> energies;
  for (const auto& [n, l] : states) {
    try {
      energies.push_back(report::closed_form_energy(spec, n, l));
    } catch (const DomainError&) {
      if (a.n) throw; // an explicitly requested state must exist
      break;
    }
  }
  if (energies.empty()) throw NoSuchStateError("no bound state for the requested quantum numbers");
  if (a.format == "json") {
    auto arr = nlohmann::json::array();
    for (std::size_t i = 0; i < energies.size(); ++i) {
      arr.push_back({{"kind", kind}, {"n", states[i].first}, {"l", states[i].second}, {"energy", energies[i]}});
    }
    out << arr.dump(2) << '\n';
  } else {
    out << "kind,n,l,energy\n";
    for (std::size_t i = 0; i < energies.size(); ++i) {
      fmt::print(out, "{},{},{},{}\n", kind, states[i].first, states[i].second, raw(energies[i]));
    }
  }
  return kExitOk;
}

int cmd_wavefunction(const StateArgs& a, const MoleculeRegistry& registry, std::ostream& out) {
  const auto spec = report::parse_potential_text(a.potential, registry);
  const auto convention = a.convention == "paper" ? NormConvention::paper : NormConvention::physical;
  const int n = a.n.value_or(0);
  const auto pot = to_two_term(spec.kind, spec.kinetic);
  BoundState state;
  if (pot.q == 0.0) {
    if (a.l != 0) throw DomainError("Morse wave functions are s-wave only");
    state = make_morse_state(n, pot.V0, pot.V1, pot.beta, spec.kinetic, convention);
  } else {
    state = make_two_term_state(n, a.l, pot, spec.kinetic, convention);
  }
  const auto samples = sample(state, a.points);
  if (a.format == "json") {
    const auto summary = summarize(state, samples);
    auto rows = nlohmann::json::array();
    for (const auto& p : samples) rows.push_back({{"r", p.r}, {"R", p.R}, {"probability_density", p.R * p.R}});
    const nlohmann::json doc = {{"kind", state.kind == StateKind::two_term ? "two-term" : "morse"},
                                {"n", state.n},
                                {"l", state.l},
                                {"energy", state.energy},
                                {"nodes", summary.nodes},
                                {"norm_convention", a.convention},
                                {"N", state.norm},
                                {"norm_check", summary.norm_check},
                                {"samples", rows}};
    out << doc.dump(2) << '\n';
    return kExitOk;
  }
  write_wavefunction_csv(out, state, samples);
  return kExitOk;
}

int cmd_oracle(const StateArgs& a, const Config& cfg, const MoleculeRegistry& registry, std::ostream& out) {
  const auto spec = report::parse_potential_text(a.potential, registry);
  const auto mode = oracle::parse_centrifugal(a.centrifugal);
  const auto pot = to_two_term(spec.kind, spec.kinetic);
  const int grid = a.grid_points.value_or(cfg.grid_points);

  struct Row {
    oracle::EigenResult result;
    std::optional<double> closed;
  };
  std::vector<Row> rows;
  const int first = a.n.value_or(0);
  const int last = a.n ? *a.n : a.n_max.value_or(0);
  for (int n = first; n <= last; ++n) {
    double hint = 0.0;
    try {
      hint = report::oracle_energy_hint(spec, n, a.l);
    } catch (const DomainError&) {
      if (a.n || n == first) throw;
      break;
    }
    auto problem = oracle::make_problem(pot, a.l, spec.kinetic, mode, hint, grid);
    if (const auto* c = std::get_if<Coulomb>(&spec.kind)) {
      // The weakly screened image only sizes the box; shoot on the bare -Z/r.
      problem.potential = [Z = c->Z](double r) { return -Z / r; };
    }
    Row row;
    try {
      row.result = oracle::find_eigenvalue(problem, n);
    } catch (const NoSuchStateError&) {
      if (a.n || n == first) throw;
      break;
    }
    try {
      row.closed = report::closed_form_energy(spec, n, a.l);
    } catch (const DomainError&) {
      row.closed.reset();
    }
    rows.push_back(row);
  }

  if (a.format == "json") {
    auto arr = nlohmann::json::array();
    for (const auto& r : rows) {
      arr.push_back({{"n", r.result.n},
                     {"l", a.l},
                     {"centrifugal", oracle::to_string(mode)},
                     {"energy", r.result.energy},
                     {"closed_form", r.closed ? nlohmann::json(*r.closed) : nlohmann::json()},
                     {"converged", r.result.converged},
                     {"grid_points", r.result.grid_points_used}});
    }
    out << arr.dump(2) << '\n';
  } else {
    out << "n,l,centrifugal,energy,closed_form,converged,grid_points\n";
    for (const auto& r : rows) {
      fmt::print(out, "{},{},{},{},{},{},{}\n", r.result.n, a.l, oracle::to_string(mode), raw(r.result.energy),
                 r.closed ? raw(*r.closed) : std::string(), r.result.converged ? "true" : "false",
                 r.result.grid_points_used);
    }
  }
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.result.converged;
  return ok ? kExitOk : kExitFailure;
}

void add_potential_options(CLI::App* cmd, StateArgs& a) {
  cmd->add_option("--potential", a.potential,
                  "Tagged JSON, e.g. '{\"kind\":\"hulthen\",\"delta\":0.05}'; kinds: two-term, "
                  "manning-rosen, hulthen, morse, coulomb")
      ->required();
  cmd->add_option("--l", a.l, "Angular momentum quantum number")->check(CLI::NonNegativeNumber);
  cmd->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bound-state energies and radial wave functions of the two-term diatomic potential "
               "and its Manning-Rosen, Hulthen, Coulomb and Morse special cases."};
  app.require_subcommand(1);
  app.footer(std::string("Exit status: 0 success, 1 validation or numeric failure, 2 usage or domain error.\n") +
             kDiagnosticNote);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config: molecules (registry path), tolerances, grid_points");

  TableArgs table;
  auto* table_cmd = app.add_subcommand("table", "|E| in eV for every bound (n, l <= n) state of a molecule per q");
  table_cmd->add_option("--molecule", table.molecule, "Molecule name from the registry (H2, LiH built in)")->required();
  table_cmd->add_option("--q", table.q_values, "Comma-separated deformation values")->delimiter(',');
  table_cmd->add_option("--n-max", table.n_max, "Largest n")->check(CLI::NonNegativeNumber);
  table_cmd->add_option("--format", table.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  ValidateArgs validate;
  auto* validate_cmd = app.add_subcommand("validate", "Compare the computed energies against a reference table");
  validate_cmd->footer(kDiagnosticNote);
  validate_cmd->add_option("--table", validate.table, "I (H2), II (LiH) or III (Manning-Rosen, Hulthen, Morse)")
      ->required()
      ->check(CLI::IsMember({"I", "II", "III"}));
  validate_cmd->add_option("--tolerance", validate.tolerance, "Absolute tolerance applied to every Table III block");
  validate_cmd->add_option("--tol-morse", validate.tol_morse, "Morse tolerance in eV (default 5e-6)");
  validate_cmd->add_option("--tol-hulthen", validate.tol_hulthen, "Hulthen tolerance in hartree (default 5e-7)");
  validate_cmd->add_option("--tol-manning-rosen", validate.tol_manning_rosen,
                           "Manning-Rosen tolerance in hartree (default 5e-7)");
  validate_cmd->add_flag("--no-oracle", validate.no_oracle, "Skip the Numerov column");
  validate_cmd->add_option("--format", validate.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  StateArgs special;
  auto* special_cmd = app.add_subcommand("special", "Closed-form energies of a special-case potential");
  add_potential_options(special_cmd, special);
  auto* special_n = special_cmd->add_option("--n", special.n, "Radial quantum number")->check(CLI::NonNegativeNumber);
  special_cmd->add_option("--n-max", special.n_max, "List bound states n = 0..n-max")
      ->check(CLI::NonNegativeNumber)
      ->excludes(special_n);

  StateArgs wave;
  auto* wave_cmd = app.add_subcommand("wavefunction", "Normalized radial wave function samples (CSV or JSON)");
  add_potential_options(wave_cmd, wave);
  wave_cmd->add_option("--n", wave.n, "Radial quantum number")->check(CLI::NonNegativeNumber);
  wave_cmd->add_option("--points", wave.points, "Number of samples")->check(CLI::Range(2, 10000000));
  wave_cmd->add_option("--convention", wave.convention, "physical: int R^2 dr = 1; paper: substituted measure")
      ->check(CLI::IsMember({"physical", "paper"}));

  StateArgs orc;
  auto* oracle_cmd = app.add_subcommand("oracle", "Numerov eigenvalues of the radial equation");
  add_potential_options(oracle_cmd, orc);
  auto* oracle_n = oracle_cmd->add_option("--n", orc.n, "Radial quantum number")->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--n-max", orc.n_max, "Solve n = 0..n-max")->check(CLI::NonNegativeNumber)->excludes(oracle_n);
  oracle_cmd->add_option("--centrifugal", orc.centrifugal, "Centrifugal term")
      ->check(CLI::IsMember({"exact", "greene-aldrich", "none"}));
  oracle_cmd->add_option("--grid-points", orc.grid_points, "Initial grid size (>= 2000)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const Config cfg = load_config(config_path);
    const MoleculeRegistry registry = load_registry(cfg);
    if (*table_cmd) return cmd_table(table, registry, out);
    if (*validate_cmd) return cmd_validate(validate, cfg, registry, out);
    if (*special_cmd) return cmd_special(special, registry, out);
    if (*wave_cmd) return cmd_wavefunction(wave, registry, out);
    if (*oracle_cmd) return cmd_oracle(orc, cfg, registry, out);
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace diatomic
