#include "diatomic/potentials.hpp"

#include "diatomic/errors.hpp"

#include <cmath>
#include <sstream>

namespace diatomic {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void throw_inside_wall(double r, double r_s) {
  std::ostringstream msg;
  msg << "r = " << r << " is at or below the singular radius r_s = " << r_s;
  throw DomainError(msg.str());
}

void check_radius(const TwoTermPotential& p, double r) {
  if (auto r_s = singular_radius(p); r_s && r <= *r_s) throw_inside_wall(r, *r_s);
  if (p.q > 0.0 && p.q < 1.0 && r <= 0.0) throw DomainError("r must be positive");
}

} // namespace

void validate(const TwoTermPotential& p) {
  if (!(p.beta > 0.0)) throw DomainError("potential: beta must be positive");
  if (p.q < 0.0) throw DomainError("potential: q must be non-negative");
}

TwoTermPotential to_two_term(const PotentialKind& kind, Kinetic kinetic) {
  return std::visit(
      overloaded{
          [](const TwoTermPotential& p) { return p; },
          [&](const ManningRosen& mr) {
            if (!(mr.b > 0.0)) throw DomainError("Manning-Rosen: b must be positive");
            const double unit = kinetic.hbar2_over_m / (2.0 * mr.b * mr.b);
            return TwoTermPotential{mr.A * unit, mr.alpha * (mr.alpha - 1.0) * unit, 1.0 / mr.b, 1.0};
          },
          [](const Hulthen& h) { return TwoTermPotential{h.V0, 0.0, h.beta, 1.0}; },
          [](const Coulomb& c) {
            return TwoTermPotential{c.Z * kCoulombScreening, 0.0, kCoulombScreening, 1.0};
          },
          [](const GeneralizedMorse& m) { return TwoTermPotential{m.V0, m.V1, m.beta, 0.0}; },
      },
      kind);
}

std::string kind_name(const PotentialKind& kind) {
  return std::visit(overloaded{
                        [](const TwoTermPotential&) { return std::string("two-term"); },
                        [](const ManningRosen&) { return std::string("manning-rosen"); },
                        [](const Hulthen&) { return std::string("hulthen"); },
                        [](const Coulomb&) { return std::string("coulomb"); },
                        [](const GeneralizedMorse&) { return std::string("morse"); },
                    },
                    kind);
}

std::optional<double> singular_radius(const TwoTermPotential& p) {
  if (p.q > 1.0) return std::log(p.q) / p.beta;
  if (p.q == 1.0) return 0.0;
  return std::nullopt;
}

double eval(const TwoTermPotential& p, double r) {
  validate(p);
  check_radius(p, r);
  const double x = std::exp(-p.beta * r);
  const double denom = 1.0 - p.q * x;
  return -p.V0 * x / denom + p.V1 * x * x / (denom * denom);
}

double eval(const PotentialKind& kind, double r, Kinetic kinetic) {
  if (const auto* c = std::get_if<Coulomb>(&kind)) {
    if (!(r > 0.0)) throw DomainError("r must be positive");
    return -c->Z / r;
  }
  return eval(to_two_term(kind, kinetic), r);
}

TwoTermPotential from_molecule(const MoleculeParams& mol, double q) {
  if (q < 0.0) throw DomainError("from_molecule: q must be non-negative");
  const double e_mu = std::exp(mol.mu);
  if (!(e_mu > q)) {
    throw DomainError("from_molecule: e^mu <= q, the depth parameterisation breaks down");
  }
  const double V1 = mol.D0 * (e_mu - q);
  return {2.0 * V1, V1, mol.mu / mol.r0, q};
}

double centrifugal_greene_aldrich(int l, double beta, double q, double r) {
  if (l < 0) throw DomainError("l must be non-negative");
  if (q >= 1.0 && r <= std::log(q) / beta) throw_inside_wall(r, std::log(q) / beta);
  if (l == 0) return 0.0;
  // e^{br}/(e^{br}-q)^2 = x/(1-qx)^2 with x = e^{-br}; avoids overflow at large r.
  const double x = std::exp(-beta * r);
  const double denom = 1.0 - q * x;
  return static_cast<double>(l) * (l + 1) * beta * beta * x / (denom * denom);
}

double centrifugal_exact(int l, double r) {
  if (l < 0) throw DomainError("l must be non-negative");
  if (!(r > 0.0)) throw DomainError("r must be positive");
  return static_cast<double>(l) * (l + 1) / (r * r);
}

} // namespace diatomic
