#include "diatomic/errors.hpp"
#include "diatomic/potentials.hpp"
#include "diatomic/units.hpp"
#include "frozen_values.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace diatomic;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("constants sit in their physical ranges", "[units]") {
  CHECK(kCodata.hbar_c >= 1973.2);
  CHECK(kCodata.hbar_c <= 1973.4);
  CHECK(kCodata.amu_to_energy >= 9.314e8);
  CHECK(kCodata.amu_to_energy <= 9.316e8);
}

TEST_CASE("derive_E0 reproduces the published molecule scales", "[units]") {
  CHECK_THAT(derive_E0(0.503910, 0.741600), WithinRel(1.508343932e-2, 1e-4));
  CHECK_THAT(derive_E0(0.8801221, 1.595600), WithinRel(1.865528199e-3, 1e-4));
  // mpmath evaluation of the same constants
  CHECK_THAT(derive_E0(0.503910, 0.741600), WithinRel(frozen::E0_H2_derived, 1e-13));
  CHECK_THAT(derive_E0(0.8801221, 1.595600), WithinRel(frozen::E0_LiH_derived, 1e-13));
}

TEST_CASE("derive_E0 scales inversely with mass", "[units]") {
  const double e = derive_E0(0.7, 1.3);
  CHECK(derive_E0(1.4, 1.3) == e / 2.0);
  CHECK_THROWS_AS(derive_E0(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(derive_E0(1.0, -1.0), DomainError);
}

TEST_CASE("reduce produces dimensionless couplings", "[units]") {
  SECTION("zero couplings") {
    const auto h = reduce(0.0, 0.0, 1.3, 1.0, Kinetic::atomic());
    CHECK(h.v0 == 0.0);
    CHECK(h.v1 == 0.0);
  }
  SECTION("atomic-unit Hulthen") {
    const double delta = 0.05;
    const auto h = reduce(delta, 0.0, delta, 1.0, Kinetic::atomic());
    CHECK_THAT(h.v0, WithinRel(2.0 / delta, 1e-14));
    CHECK_THAT(h.e_scale, WithinRel(delta * delta / 2.0, 1e-14));
  }
  SECTION("H2 at q = 1.25") {
    const auto& h2 = builtin_molecules().front();
    const auto pot = from_molecule(h2, 1.25);
    const auto h = reduce(pot.V0, pot.V1, pot.beta, pot.q, h2.kinetic());
    CHECK_THAT(h.v0, WithinRel(frozen::H2_q125_v0, 1e-13));
    CHECK_THAT(h.v1, WithinRel(frozen::H2_q125_v1, 1e-13));
    CHECK_THAT(h.e_scale, WithinRel(frozen::H2_q125_e_scale, 1e-13));
    CHECK_THAT(h.e_scale, WithinRel(h2.mu * h2.mu * h2.E0 / 2.0, 1e-14));
    CHECK_THAT(h.v1 * h.e_scale, WithinRel(pot.V1, 1e-14));
  }
  CHECK_THROWS_AS(reduce(1.0, 1.0, 0.0, 1.0, Kinetic::atomic()), DomainError);
  CHECK_THROWS_AS(reduce(1.0, 1.0, 1.0, 1.0, Kinetic{-1.0}), DomainError);
}

TEST_CASE("reduce and unreduce round trip", "[units][property]") {
  std::mt19937_64 rng(20240521);
  std::uniform_real_distribution<double> u(0.01, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double V0 = u(rng), V1 = u(rng) - 10.0, beta = u(rng) / 10.0;
    const auto h = reduce(V0, V1, beta, 1.5, Kinetic{u(rng)});
    const auto [V0b, V1b] = unreduce(h);
    CHECK_THAT(V0b, WithinRel(V0, 1e-14));
    CHECK_THAT(V1b, WithinRel(V1, 1e-14));
    CHECK_THAT(h.e_scale * h.v0, WithinRel(V0, 1e-14));
  }
}

TEST_CASE("built-in registry holds H2 and LiH", "[units][registry]") {
  MoleculeRegistry reg;
  REQUIRE(reg.all().size() == 2);
  const auto& h2 = reg.get("H2");
  CHECK(h2.D0 == 4.744600);
  CHECK(h2.E0 == 1.508343932e-2);
  CHECK(reg.get("LiH").mu == 1.7998368);
  CHECK_FALSE(reg.contains("HCl"));
  CHECK_THROWS_AS(reg.get("HCl"), DomainError);
  for (const auto& m : reg.all()) CHECK_NOTHROW(validate_molecule(m));
}

TEST_CASE("registry loads molecules from JSON", "[units][registry]") {
  MoleculeRegistry reg;
  reg.load_file(TEST_DATA_DIR "/molecules.json");
  REQUIRE(reg.contains("HCl"));
  const auto& hcl = reg.get("HCl");
  CHECK_THAT(hcl.E0, WithinRel(derive_E0(hcl.m, hcl.r0), 1e-15)); // derived when absent
  CHECK(reg.all().size() == 3);

  CHECK_THROWS_AS(reg.load_json(R"([{"name": "X", "D0_eV": -1, "r0_angstrom": 1, "m_amu": 1, "mu": 1}])"),
                  DomainError);
  // an E0 inconsistent with the constants is rejected
  CHECK_THROWS_AS(
      reg.load_json(R"([{"name": "X", "D0_eV": 1, "r0_angstrom": 1, "m_amu": 1, "mu": 1, "E0_eV": 1.0}])"),
      DomainError);
  CHECK_THROWS(reg.load_file("/nonexistent/molecules.json"));
}
