#include "diatomic/errors.hpp"
#include "diatomic/potentials.hpp"
#include "diatomic/spectra.hpp"
#include "diatomic/wavefunctions.hpp"
#include "frozen_values.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>
#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

using namespace diatomic;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const MoleculeParams& h2() { return builtin_molecules()[0]; }

BoundState hulthen_state(double delta, int n, int l, NormConvention c = NormConvention::physical) {
  return make_two_term_state(n, l, to_two_term(Hulthen{delta, delta}), Kinetic::atomic(), c);
}

BoundState morse_state(int n, NormConvention c = NormConvention::physical) {
  return make_morse_state(n, 2 * h2().D0, h2().D0, h2().mu / h2().r0, h2().kinetic(), c);
}

BoundState h2_state(double q, int n, int l) { return make_two_term_state(n, l, from_molecule(h2(), q), h2().kinetic()); }

// Fixed 30-point Gauss-Legendre panels in r over the state's support.
double r_space_norm(const BoundState& s) {
  const auto [lo, hi] = support(s);
  double total = 0.0;
  constexpr int panels = 400;
  for (int i = 0; i < panels; ++i) {
    const double a = lo + (hi - lo) * i / panels;
    const double b = lo + (hi - lo) * (i + 1) / panels;
    total += boost::math::quadrature::gauss<double, 30>::integrate(
        [&](double r) {
          if (!(r > domain_start(s))) return 0.0;
          const double v = radial(s, r);
          return v * v;
        },
        a, b);
  }
  return total;
}

int dense_sign_changes(const BoundState& s, int points) {
  const auto [lo, hi] = support(s);
  int changes = 0, last = 0;
  for (int i = 1; i < points; ++i) {
    const double v = radial(s, lo + (hi - lo) * i / points);
    const int sign = (v > 0) - (v < 0);
    if (sign == 0) continue;
    if (last != 0 && sign != last) ++changes;
    last = sign;
  }
  return changes;
}

} // namespace

TEST_CASE("two-term ground state is the bare envelope", "[wavefunctions]") {
  const auto s = h2_state(1.5, 0, 1);
  const double r = *singular_radius(s.potential) + 0.4;
  const double z = 1.5 * std::exp(-s.potential.beta * r);
  const double expect = s.norm * std::pow(z, s.wave.A1) * std::pow(1.0 - z, s.wave.A2);
  CHECK_THAT(radial(s, r), WithinRel(expect, 1e-11));
}

TEST_CASE("wave functions vanish in the tail", "[wavefunctions]") {
  for (const auto& s : {hulthen_state(0.05, 1, 0), h2_state(1.25, 2, 1)}) {
    const auto [lo, hi] = support(s);
    double peak = 0.0;
    for (int i = 1; i < 4000; ++i) peak = std::max(peak, std::abs(radial(s, lo + (hi - lo) * i / 4000)));
    CHECK(std::abs(radial(s, domain_start(s) + 50.0 / s.potential.beta)) < 1e-12 * peak);
  }
}

TEST_CASE("evaluation outside the domain is rejected", "[wavefunctions]") {
  const auto s = h2_state(1.25, 0, 0);
  CHECK_THROWS_AS(radial(s, *singular_radius(s.potential)), DomainError);
  CHECK_THROWS_AS(radial_morse(s, 0.3), DomainError);
  CHECK_THROWS_AS(make_two_term_state(0, 0, from_molecule(h2(), 0.5), h2().kinetic()), DomainError);
}

TEST_CASE("Morse wave function", "[wavefunctions]") {
  const auto s0 = morse_state(0);
  CHECK(count_nodes(s0) == 0);
  const auto [lo, hi] = support(s0);
  for (int i = 1; i < 200; ++i) CHECK(radial(s0, lo + (hi - lo) * i / 200) >= 0.0);

  const auto s2 = morse_state(2);
  CHECK(count_nodes(s2) == 2);
  CHECK(dense_sign_changes(s2, 40000) == 2);
  CHECK(count_nodes(morse_state(5)) == 5);

  // r = 0 maps to z = 1
  const auto& m = s2.morse;
  const double expect =
      s2.norm * std::exp(-m.B1 / 2) * std::exp(std::lgamma(2 + m.B2 + 1) - std::lgamma(3.0) - std::lgamma(m.B2 + 1)) *
      boost::math::hypergeometric_1F1(-2.0, m.B2 + 1.0, m.B1);
  CHECK_THAT(radial(s2, 0.0), WithinRel(expect, 1e-10));
}

TEST_CASE("node counts", "[wavefunctions]") {
  CHECK(count_nodes(hulthen_state(0.05, 0, 0)) == 0);
  CHECK(count_nodes(hulthen_state(0.05, 1, 0)) == 1);
  CHECK(dense_sign_changes(hulthen_state(0.05, 1, 0), 40000) == 1);
  CHECK(count_nodes(hulthen_state(0.05, 3, 0)) == 3);
  for (int n = 0; n <= 3; ++n) {
    for (int l = 0; l <= n; ++l) CHECK(count_nodes(h2_state(1.75, n, l)) == n);
  }
}

TEST_CASE("physical normalization", "[wavefunctions]") {
  SECTION("independent Beta-function values") {
    CHECK_THAT(hulthen_state(0.05, 0, 0).norm, WithinRel(frozen::Hulthen005_N_physical, 1e-10));
    CHECK_THAT(morse_state(0).norm, WithinRel(frozen::Morse_H2_N0_physical, 1e-10));
  }
  SECTION("r-space quadrature of the normalized state is 1") {
    for (const auto& s : {hulthen_state(0.05, 1, 0), hulthen_state(0.15, 0, 1), morse_state(3), h2_state(1.25, 3, 2)}) {
      CHECK_THAT(r_space_norm(s), WithinAbs(1.0, 1e-8));
    }
  }
  SECTION("doubling the amplitude halves N") {
    auto s = hulthen_state(0.05, 2, 0);
    const double N = s.norm;
    s.norm = 2.0;
    CHECK_THAT(1.0 / std::sqrt(r_space_norm(s)), WithinRel(N / 2.0, 1e-8));
  }
}

TEST_CASE("paper normalization", "[wavefunctions]") {
  SECTION("n = 0, q = 1 collapses to a Beta integral") {
    CHECK_THAT(hulthen_state(0.05, 0, 0, NormConvention::paper).norm, WithinRel(frozen::Hulthen005_N_paper, 1e-9));
    const auto s = hulthen_state(0.1, 0, 2, NormConvention::paper);
    const double beta = std::exp(std::lgamma(2 * s.wave.A1 + 1) + std::lgamma(2 * s.wave.A2 + 1) -
                                 std::lgamma(2 * s.wave.A1 + 2 * s.wave.A2 + 2));
    CHECK_THAT(s.norm, WithinRel(1.0 / std::sqrt(beta), 1e-9));
  }
  SECTION("Morse n = 0 is a single incomplete gamma") {
    CHECK_THAT(morse_state(0, NormConvention::paper).norm, WithinRel(frozen::Morse_H2_N0_paper, 1e-10));
  }
  SECTION("agrees with dxi quadrature for q = 1") {
    const auto mr = to_two_term(ManningRosen{40.0, 20.0, 0.75});
    for (const auto& s : {hulthen_state(0.05, 2, 1, NormConvention::paper),
                          make_two_term_state(0, 1, mr, Kinetic::atomic(), NormConvention::paper)}) {
      const auto& w = s.wave;
      const double I = boost::math::quadrature::tanh_sinh<double>().integrate(
          [&](double xi) {
            const double f = std::pow(xi, w.A1) * std::pow(1.0 - xi, w.A2) *
                             boost::math::hypergeometric_pFq({double(-s.n), w.b}, {w.c}, xi);
            return f * f;
          },
          0.0, 1.0, 1e-13);
      CHECK_THAT(s.norm * s.norm * I, WithinRel(1.0, 1e-8));
    }
  }
  SECTION("q > 1 is refused") {
    CHECK_THROWS_AS(normalize_paper(h2_state(1.25, 0, 0)), UnsupportedConventionError);
  }
}

TEST_CASE("printed closed-form normalizations are reported, not trusted", "[wavefunctions]") {
  const auto s = hulthen_state(0.05, 0, 0, NormConvention::paper);
  const auto printed = printed_normalization_n0(s);
  // Neither printed n = 0 form reproduces the quadrature value 185.58.
  CHECK_FALSE(std::abs(printed.gamma_form / s.norm - 1.0) < 1e-6);
  CHECK_FALSE(std::abs(printed.hypergeometric_form / s.norm - 1.0) < 1e-6);
  CHECK_THROWS_AS(printed_normalization_n0(hulthen_state(0.05, 1, 0)), DomainError);
}

TEST_CASE("analytic wave function solves the substituted radial equation", "[wavefunctions]") {
  // R'' = [(2m/hbar^2)(V - E) + l(l+1) beta^2 e^{beta r}/(e^{beta r} - q)^2] R
  auto residual = [](const BoundState& s, double h) {
    const auto [lo, hi] = support(s);
    const double k = 2.0 / s.kinetic.hbar2_over_m;
    double res2 = 0.0, ref2 = 0.0;
    const int points = 3000;
    for (int i = 1; i < points; ++i) {
      const double r = lo + (hi - lo) * i / points;
      if (r - 2 * h <= lo) continue;
      const double f0 = radial(s, r);
      const double d2 = (-radial(s, r + 2 * h) + 16 * radial(s, r + h) - 30 * f0 + 16 * radial(s, r - h) -
                         radial(s, r - 2 * h)) /
                        (12 * h * h);
      const auto& p = s.potential;
      const double rhs =
          (k * (eval(p, r) - s.energy) + centrifugal_greene_aldrich(s.l, p.beta, p.q, r)) * f0;
      res2 += (d2 - rhs) * (d2 - rhs);
      ref2 += (k * s.energy * f0) * (k * s.energy * f0);
    }
    return std::sqrt(res2 / ref2);
  };
  for (const auto& s : {h2_state(1.25, 2, 1), h2_state(1.75, 3, 3), hulthen_state(0.05, 2, 1)}) {
    // convergence study over the finite-difference step
    double best = 1.0;
    for (double h : {4e-3, 2e-3, 1e-3, 5e-4}) best = std::min(best, residual(s, h / s.potential.beta));
    CHECK(best <= 1e-6);
  }
}

TEST_CASE("CSV export", "[wavefunctions]") {
  const auto s = hulthen_state(0.05, 1, 0);
  std::ostringstream out;
  write_wavefunction_csv(out, s, sample(s, 3000));
  std::istringstream in(out.str());
  std::string line;
  std::vector<std::string> comments;
  std::vector<double> r, R;
  bool header = false;
  while (std::getline(in, line)) {
    if (line[0] == '#') {
      comments.push_back(line);
      continue;
    }
    if (!header) {
      CHECK(line == "r,R,probability_density");
      header = true;
      continue;
    }
    double a, b, c;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &a, &b, &c) == 3);
    CHECK_THAT(c, WithinRel(b * b, 1e-15));
    r.push_back(a);
    R.push_back(b);
  }
  REQUIRE(comments.size() == 3);
  CHECK(comments[1] == "# nodes=1");
  CHECK(comments[2].find("norm_check=0.9999") != std::string::npos);
  double integral = 0.0;
  int changes = 0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    integral += 0.5 * (r[i] - r[i - 1]) * (R[i] * R[i] + R[i - 1] * R[i - 1]);
    if ((R[i] > 0) != (R[i - 1] > 0) && R[i] != 0 && R[i - 1] != 0) ++changes;
  }
  CHECK_THAT(integral, WithinAbs(1.0, 1e-4));
  CHECK(changes == 1);
  CHECK_THROWS_AS(sample(s, 1), DomainError);
}
