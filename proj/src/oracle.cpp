#include "diatomic/oracle.hpp"

#include "diatomic/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace diatomic::oracle {
namespace {

constexpr double kRescaleThreshold = 1e100;
constexpr double kRescaleFactor = 1e-100;
constexpr double kWallStart = 0.5;      // first usable point needs h^2 f / 12 < this
constexpr int kScanEnergies = 64;
constexpr double kBracketSwitch = 1e-6; // relative width where defect bisection takes over
constexpr double kBisectionTolerance = 1e-13;
constexpr double kGridStability = 1e-8;
constexpr int kMaxGridPoints = 1 << 22;
constexpr double kTailExponent = 36.0;
constexpr double kCoarseCell = 0.25;    // Numerov needs c = 1 - h^2 f / 12 well above 0

/// Numerov coefficient sampled once per grid: f(x) = a(x) - E * b(x). On the uniform
/// grid x = r, a = w(r), b = 2/k. On the log-linear grid x = ln s + s/L with
/// s = r - anchor and u = sqrt(dr/dx) w: a = r'^2 w(r) - {r, x}/2, b = r'^2 2/k.
struct Grid {
  double h = 0.0;
  double two_over_k = 0.0;
  bool mapped = false;
  double anchor = 0.0;
  std::vector<double> r;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> v_eff;     // (V + centrifugal) in energy units
  std::vector<double> amplitude; // u = amplitude * w

  [[nodiscard]] int size() const { return static_cast<int>(r.size()); }
  [[nodiscard]] double f(int i, double energy) const { return a[i] - energy * b[i]; }
};

/// Solves ln s + s/L = x for s; Newton in t = ln s from an upper bound converges monotonically.
double log_linear_inverse(double x, double L) {
  double t = (x > 0.0) ? std::min(x, std::log(L * x)) : x;
  for (int k = 0; k < 100; ++k) {
    const double e = std::exp(t) / L;
    const double step = (t + e - x) / (1.0 + e);
    t -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(t))) break;
  }
  return std::exp(t);
}

double centrifugal_term(const RadialProblem& p, double r) {
  if (p.l == 0) return 0.0;
  switch (p.centrifugal_mode) {
  case Centrifugal::exact:
    return centrifugal_exact(p.l, r);
  case Centrifugal::greene_aldrich:
    return centrifugal_greene_aldrich(p.l, p.screening_beta, p.screening_q, r);
  case Centrifugal::none:
    return 0.0;
  }
  return 0.0;
}

Grid build_grid(const RadialProblem& p, int points) {
  Grid g;
  g.two_over_k = 2.0 / p.kinetic.hbar2_over_m;
  g.mapped = p.log_anchor.has_value();
  g.anchor = p.log_anchor.value_or(0.0);
  // Log spacing near the wall, roughly uniform spacing (L h) beyond s ~ L.
  const double L = (p.r_max - g.anchor) / 16.0;
  auto to_x = [&](double r) { return g.mapped ? std::log(r - g.anchor) + (r - g.anchor) / L : r; };
  const double x_min = to_x(p.r_min);
  const double x_max = to_x(p.r_max);
  g.h = (x_max - x_min) / (points - 1);
  g.r.resize(points);
  g.a.resize(points);
  g.b.resize(points);
  g.v_eff.resize(points);
  g.amplitude.assign(points, 1.0);
  for (int i = 0; i < points; ++i) {
    // The end points are boundary nodes; only interior values enter the recurrence,
    // but the inner edge still has to be evaluable.
    double r = 0.0;
    if (i == 0) {
      r = p.r_min;
    } else if (i == points - 1) {
      r = p.r_max;
    } else {
      const double x = x_min + i * g.h;
      r = g.mapped ? g.anchor + log_linear_inverse(x, L) : x;
    }
    g.r[i] = r;
    const double w = p.potential(r) * g.two_over_k + centrifugal_term(p, r);
    if (!std::isfinite(w)) {
      std::ostringstream msg;
      msg << "effective potential is not finite at r = " << r;
      throw NumericError(msg.str());
    }
    g.v_eff[i] = w / g.two_over_k;
    if (g.mapped) {
      const double sv = r - g.anchor;
      const double d1 = sv * L / (sv + L); // dr/dx
      const double sl4 = std::pow(sv + L, 4);
      const double schwarzian_term = L * L * L * (0.25 * L + sv) / sl4;
      g.a[i] = d1 * d1 * w + schwarzian_term;
      g.b[i] = d1 * d1 * g.two_over_k;
      g.amplitude[i] = std::sqrt(d1);
    } else {
      g.a[i] = w;
      g.b[i] = g.two_over_k;
    }
  }
  return g;
}

struct Shot {
  std::vector<double> u;
  int nodes = 0;
};

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

int first_usable(const Grid& g, double energy) {
  const double h2 = g.h * g.h;
  int start = 0;
  while (start < g.size() - 3 && h2 * g.f(start, energy) / 12.0 >= kWallStart) ++start;
  return start;
}

/// A cell with h^2 f / 12 above 3/4 is deeply forbidden (f > 0); Numerov is meaningless
/// there, so the solution takes a node-free WKB growth step instead.
double wkb_step(const Grid& g, double energy, int to, double from_value) {
  return from_value * std::exp(std::min(g.h * std::sqrt(std::max(g.f(to, energy), 0.0)), 50.0));
}

/// Outward Numerov from u[start] = 0 up to index `last`, counting sign changes.
Shot integrate_outward(const Grid& g, double energy, int start, int last) {
  const double h2_12 = g.h * g.h / 12.0;
  Shot s;
  s.u.assign(g.size(), 0.0);
  s.u[start + 1] = 1e-30;
  int last_sign = 1;
  double c_prev = 1.0 - h2_12 * g.f(start, energy);
  double c_cur = 1.0 - h2_12 * g.f(start + 1, energy);
  for (int i = start + 1; i < last; ++i) {
    const double c_next = 1.0 - h2_12 * g.f(i + 1, energy);
    s.u[i + 1] = (c_next > kCoarseCell) ? ((12.0 - 10.0 * c_cur) * s.u[i] - c_prev * s.u[i - 1]) / c_next
                                        : wkb_step(g, energy, i + 1, s.u[i]);
    if (std::abs(s.u[i + 1]) > kRescaleThreshold) {
      for (int j = start; j <= i + 1; ++j) s.u[j] *= kRescaleFactor;
    }
    if (const int sg = sign_of(s.u[i + 1]); sg != 0) {
      if (sg != last_sign) ++s.nodes;
      last_sign = sg;
    }
    c_prev = c_cur;
    c_cur = c_next;
  }
  if (!std::isfinite(s.u[last])) throw NumericError("Numerov: outward integration overflowed");
  return s;
}

/// Inward Numerov from u[N-1] = 0 down to index `first`.
Shot integrate_inward(const Grid& g, double energy, int first) {
  const double h2_12 = g.h * g.h / 12.0;
  const int n = g.size();
  Shot s;
  s.u.assign(n, 0.0);
  s.u[n - 2] = 1e-30;
  int last_sign = 1;
  double c_prev = 1.0 - h2_12 * g.f(n - 1, energy);
  double c_cur = 1.0 - h2_12 * g.f(n - 2, energy);
  for (int i = n - 2; i > first; --i) {
    const double c_next = 1.0 - h2_12 * g.f(i - 1, energy);
    s.u[i - 1] = (c_next > kCoarseCell) ? ((12.0 - 10.0 * c_cur) * s.u[i] - c_prev * s.u[i + 1]) / c_next
                                        : wkb_step(g, energy, i - 1, s.u[i]);
    if (std::abs(s.u[i - 1]) > kRescaleThreshold) {
      for (int j = i - 1; j < n; ++j) s.u[j] *= kRescaleFactor;
    }
    if (const int sg = sign_of(s.u[i - 1]); sg != 0) {
      if (sg != last_sign) ++s.nodes;
      last_sign = sg;
    }
    c_prev = c_cur;
    c_cur = c_next;
  }
  if (!std::isfinite(s.u[first])) throw NumericError("Numerov: inward integration overflowed");
  return s;
}

/// Outermost classically allowed point, clamped so that m and m+1 are interior.
int matching_index(const Grid& g, double energy, int start) {
  const int n = g.size();
  int m = -1;
  for (int i = n - 3; i > start; --i) {
    if (g.f(i, energy) < 0.0) {
      m = i;
      break;
    }
  }
  if (m < 0) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = start + 1; i < n - 2; ++i) {
      if (g.f(i, energy) < best) {
        best = g.f(i, energy);
        m = i;
      }
    }
  }
  return std::clamp(m, start + 1, n - 3);
}

int sturm_count(const Grid& g, double energy) {
  // The outward shot over the whole box is a Sturm sequence: its sign changes
  // count the discrete Dirichlet eigenvalues below `energy`.
  const int start = first_usable(g, energy);
  return integrate_outward(g, energy, start, g.size() - 1).nodes;
}

double matching_defect(const Grid& g, double energy, double* match_radius = nullptr) {
  const int start = first_usable(g, energy);
  const int m = matching_index(g, energy, start);
  if (match_radius) *match_radius = g.r[m];
  const Shot left = integrate_outward(g, energy, start, m + 1);
  const Shot right = integrate_inward(g, energy, m);
  const double ratio_out = left.u[m + 1] / left.u[m];
  const double ratio_in = right.u[m + 1] / right.u[m];
  return (ratio_out - ratio_in) / g.h;
}

SweepResult sweep(const Grid& g, double energy) {
  SweepResult result;
  result.node_count = sturm_count(g, energy);
  result.defect = matching_defect(g, energy, &result.match_radius);
  return result;
}

double minimum_effective(const Grid& g) {
  double lowest = std::numeric_limits<double>::infinity();
  // A Coulomb-like core sampled at r - anchor ~ 1e-12 would set an absurd scan floor;
  // no bound state reaches that deep, so the innermost sliver is skipped.
  const double sliver = g.mapped ? 1e-6 * (g.r.back() - g.anchor) : 0.0;
  for (int i = 1; i < g.size() - 1; ++i) {
    if (g.r[i] - g.anchor >= sliver) lowest = std::min(lowest, g.v_eff[i]);
  }
  return lowest;
}

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  int count_lo = 0; // <= n
  int count_hi = 0; // > n
};

std::optional<Bracket> scan_bracket(const Grid& g, int n) {
  const double v_min = minimum_effective(g);
  if (!(v_min < 0.0)) return std::nullopt;
  double deepest = 0.999 * v_min;
  const double shallowest = -1e-8 * std::abs(v_min);
  const double ratio = std::pow(shallowest / deepest, 1.0 / (kScanEnergies - 1));

  int prev_count = sturm_count(g, deepest);
  // A grid-level state can sit below the sampled minimum next to a singular core.
  for (int k = 0; k < 60 && prev_count > 0; ++k) {
    deepest *= 4.0;
    prev_count = sturm_count(g, deepest);
  }
  if (prev_count > n) return std::nullopt;
  double prev_energy = deepest;

  for (int k = 1; k < kScanEnergies; ++k) {
    const double e = 0.999 * v_min * std::pow(ratio, k);
    if (e <= prev_energy) continue;
    const int count = sturm_count(g, e);
    if (count > n) return Bracket{prev_energy, e, prev_count, count};
    prev_energy = e;
    prev_count = count;
  }
  return std::nullopt;
}

/// Bisects on the Sturm count until count_lo == n, count_hi == n + 1 and the
/// bracket is narrower than rel_width.
Bracket count_bisect(const Grid& g, int n, Bracket b, double rel_width) {
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (b.lo + b.hi);
    const bool isolated = b.count_lo == n && b.count_hi == n + 1;
    if (isolated && std::abs(b.hi - b.lo) <= rel_width * std::abs(mid)) break;
    if (mid == b.lo || mid == b.hi) break;
    const int c = sturm_count(g, mid);
    if (c > n) {
      b.hi = mid;
      b.count_hi = c;
    } else {
      b.lo = mid;
      b.count_lo = c;
    }
  }
  return b;
}

double refine(const Grid& g, int n, Bracket b) {
  b = count_bisect(g, n, b, kBracketSwitch);
  double d_lo = matching_defect(g, b.lo);
  const double d_hi = matching_defect(g, b.hi);
  if (sign_of(d_lo) == sign_of(d_hi)) {
    // Defect pole inside the bracket; the Sturm count alone still converges.
    b = count_bisect(g, n, b, kBisectionTolerance);
    return 0.5 * (b.lo + b.hi);
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (b.lo + b.hi);
    if (std::abs(b.hi - b.lo) <= kBisectionTolerance * std::abs(mid) || mid == b.lo || mid == b.hi) break;
    const double d_mid = matching_defect(g, mid);
    if (sign_of(d_mid) == sign_of(d_lo)) {
      b.lo = mid;
      d_lo = d_mid;
    } else {
      b.hi = mid;
    }
  }
  return 0.5 * (b.lo + b.hi);
}

std::optional<Bracket> bracket_near(const Grid& g, int n, double guess) {
  for (double width = 1e-5; width < 0.5; width *= 8.0) {
    const double lo = guess - width * std::abs(guess);
    const double hi = std::min(guess + width * std::abs(guess), 0.0);
    const int c_lo = sturm_count(g, lo);
    const int c_hi = sturm_count(g, hi);
    if (c_lo <= n && c_hi > n) return Bracket{lo, hi, c_lo, c_hi};
  }
  return std::nullopt;
}

RadialSamples stitched(const Grid& g, double energy) {
  const int start = first_usable(g, energy);
  const int m = matching_index(g, energy, start);
  const Shot left = integrate_outward(g, energy, start, m + 1);
  const Shot right = integrate_inward(g, energy, m);
  const double scale = left.u[m] / right.u[m];

  RadialSamples s;
  s.r = g.r;
  s.u.assign(g.size(), 0.0);
  for (int i = 0; i <= m; ++i) s.u[i] = left.u[i] * g.amplitude[i];
  for (int i = m + 1; i < g.size(); ++i) s.u[i] = right.u[i] * scale * g.amplitude[i];

  double norm = 0.0;
  for (int i = 0; i + 1 < g.size(); ++i) {
    norm += 0.5 * (s.r[i + 1] - s.r[i]) * (s.u[i] * s.u[i] + s.u[i + 1] * s.u[i + 1]);
  }
  const double inv = 1.0 / std::sqrt(norm);
  for (double& x : s.u) x *= inv;
  return s;
}

int count_sign_changes(const std::vector<double>& values) {
  // Values below this fraction of the peak are treated as zero (tail noise).
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  const double floor = peak * 1e-12;
  int changes = 0;
  int last = 0;
  for (double v : values) {
    if (std::abs(v) <= floor) continue;
    const int sg = sign_of(v);
    if (last != 0 && sg != last) ++changes;
    last = sg;
  }
  return changes;
}

} // namespace

Centrifugal parse_centrifugal(const std::string& name) {
  if (name == "exact") return Centrifugal::exact;
  if (name == "greene-aldrich") return Centrifugal::greene_aldrich;
  if (name == "none") return Centrifugal::none;
  throw DomainError("unknown centrifugal mode '" + name + "' (exact|greene-aldrich|none)");
}

std::string to_string(Centrifugal mode) {
  switch (mode) {
  case Centrifugal::exact:
    return "exact";
  case Centrifugal::greene_aldrich:
    return "greene-aldrich";
  case Centrifugal::none:
    return "none";
  }
  return "exact";
}

void validate(const RadialProblem& p) {
  if (!p.potential) throw DomainError("radial problem has no potential");
  if (p.l < 0) throw DomainError("l must be non-negative");
  if (!(p.kinetic.hbar2_over_m > 0.0)) throw DomainError("mass must be positive");
  if (!(p.r_max > p.r_min)) throw DomainError("r_max must exceed r_min");
  if (p.log_anchor && !(p.r_min > *p.log_anchor)) throw DomainError("log-grid anchor must lie below r_min");
  if (p.grid_points < 2000) throw DomainError("grid_points must be at least 2000");
  if (p.centrifugal_mode == Centrifugal::exact && p.l > 0 && !(p.r_min > 0.0)) {
    throw DomainError("exact centrifugal term needs r_min > 0");
  }
  if (p.centrifugal_mode == Centrifugal::greene_aldrich && p.screening_q >= 1.0 &&
      !(p.r_min > std::log(p.screening_q) / p.screening_beta)) {
    throw DomainError("r_min must lie above the singular radius");
  }
}

SweepResult numerov_sweep(const RadialProblem& p, double energy) {
  validate(p);
  return sweep(build_grid(p, p.grid_points), energy);
}

RadialSamples numerov_solution(const RadialProblem& p, double energy) {
  validate(p);
  return stitched(build_grid(p, p.grid_points), energy);
}

EigenResult find_eigenvalue(const RadialProblem& p, int n) {
  validate(p);
  if (n < 0) throw DomainError("n must be non-negative");

  int points = p.grid_points;
  Grid g = build_grid(p, points);
  const auto first = scan_bracket(g, n);
  if (!first) {
    std::ostringstream msg;
    msg << "no bound state with " << n << " nodes in the box";
    throw NoSuchStateError(msg.str());
  }
  double energy = refine(g, n, *first);

  EigenResult result;
  result.converged = false;
  while (2 * points - 1 <= kMaxGridPoints) {
    points = 2 * points - 1;
    g = build_grid(p, points);
    auto b = bracket_near(g, n, energy);
    if (!b) b = scan_bracket(g, n);
    if (!b) throw NoSuchStateError("state disappeared under grid refinement");
    const double refined = refine(g, n, *b);
    const bool stable = std::abs(refined - energy) <= kGridStability * std::abs(refined);
    energy = refined;
    if (stable) {
      result.converged = true;
      break;
    }
  }

  const double defect = matching_defect(g, energy);
  const RadialSamples wave = stitched(g, energy);
  result.n = count_sign_changes(wave.u);
  result.energy = energy;
  result.residual = std::abs(defect) * g.h;
  result.grid_points_used = points;
  result.converged = result.converged && result.n == n;
  return result;
}

std::vector<EigenResult> spectrum(const RadialProblem& p, int n_max) {
  std::vector<EigenResult> states;
  for (int n = 0; n <= n_max; ++n) {
    try {
      states.push_back(find_eigenvalue(p, n));
    } catch (const NoSuchStateError&) {
      // Higher states cannot exist once one is missing.
      break;
    }
  }
  return states;
}

namespace {

// Integrates the WKB decay exponent from `from` in direction `dir` until it reaches target.
double tail_edge(const std::function<double(double)>& excess, double from, double dir, double scale) {
  double r = from;
  double exponent = 0.0;
  for (int k = 0; k < 200000 && exponent < kTailExponent; ++k) {
    const double kappa = std::sqrt(std::max(excess(r), 0.0));
    const double step = (kappa > 0.0) ? std::min(0.02 / kappa, 0.05 * scale) : 0.05 * scale;
    r += dir * step;
    exponent += std::sqrt(std::max(excess(r), 0.0)) * step;
  }
  return r;
}

} // namespace

RadialProblem make_problem(const TwoTermPotential& pot, int l, Kinetic kinetic, Centrifugal mode,
                           double energy_hint, int grid_points) {
  diatomic::validate(pot);
  if (!(energy_hint < 0.0)) throw DomainError("energy hint must be negative");

  RadialProblem p;
  p.potential = [pot](double r) { return eval(pot, r); };
  p.l = l;
  p.kinetic = kinetic;
  p.centrifugal_mode = mode;
  p.screening_beta = pot.beta;
  p.screening_q = pot.q;
  p.grid_points = grid_points;

  const double length = 1.0 / pot.beta;
  const double two_over_k = 2.0 / kinetic.hbar2_over_m;
  const bool full_line = pot.q == 0.0 && !(mode == Centrifugal::exact && l > 0);

  double inner = 0.0;
  if (auto r_s = singular_radius(pot)) {
    inner = *r_s + 1e-12 * length;
  } else if (!full_line) {
    inner = 1e-6 * length;
  }

  // Scaled excess V_eff - E in 1/length^2; positive where classically forbidden.
  RadialProblem probe = p;
  auto excess = [&](double r) {
    return (eval(pot, r) - energy_hint) * two_over_k + centrifugal_term(probe, r);
  };

  // Locate the well bottom on a scan anchored at the inner edge (or at r = 0 on the full line).
  const double anchor = full_line ? -20.0 * length : inner;
  const double span = 120.0 * length;
  double best_r = anchor;
  double best_v = std::numeric_limits<double>::infinity();
  constexpr int scan = 40000;
  for (int i = 1; i <= scan; ++i) {
    const double t = static_cast<double>(i) / scan;
    const double r = anchor + span * t * t;
    const double v = excess(r);
    if (v < best_v) {
      best_v = v;
      best_r = r;
    }
  }
  if (!(best_v < 0.0)) throw DomainError("energy hint lies below the potential minimum");

  // Outer turning point: walk outwards until the state is classically forbidden.
  double r_turn = best_r;
  const double walk = 1e-3 * length;
  while (excess(r_turn) < 0.0 && r_turn < anchor + 1e4 * length) r_turn += walk;
  p.r_max = tail_edge(excess, r_turn, +1.0, length);

  if (full_line) {
    double r_left = best_r;
    while (excess(r_left) < 0.0) r_left -= walk;
    p.r_min = tail_edge(excess, r_left, -1.0, length);
  } else {
    p.r_min = inner;
    p.log_anchor = singular_radius(pot).value_or(0.0);
  }
  return p;
}

} // namespace diatomic::oracle
