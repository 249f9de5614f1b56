// Acceptance run: one PASS/FAIL line per criterion. Optional arguments select
// a subset of criteria by number.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "../unit/test_support.hpp"
#include "broadwell/bounds.hpp"
#include "broadwell/characteristics.hpp"
#include "broadwell/oracle.hpp"
#include "broadwell/picard.hpp"
#include "broadwell/transport.hpp"

using namespace broadwell;
using namespace test_support;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

char buf[512];

template <class... A>
std::string fmt(const char* f, A... a) {
  std::snprintf(buf, sizeof(buf), f, a...);
  return buf;
}

double rel(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::array<Profile, 4> perturbation_profiles() {
  return {wave_profile(0.0025, 0.0005, 0.0), wave_profile(0.0025, 0.0005, 1.0),
          wave_profile(0.0025, 0.0005, 2.0), wave_profile(0.0025, 0.0005, 3.0)};
}

BoundaryData perturbation(const ModelParams& p) {
  return transport_family(kUnitBox, p, perturbation_profiles());
}

SolveConfig tight(double tol = 1e-12) {
  SolveConfig c;
  c.tol = tol;
  return c;
}

// Sum of sin(kt t + kx x + ky y + phase) modes per species, plus an offset.
struct Wave {
  double amp, kt, kx, ky, phase;
};

struct SmoothField {
  std::array<double, 4> offset{};
  std::array<std::vector<Wave>, 4> modes;

  double value(int s, double t, double x, double y) const {
    double v = offset[s - 1];
    for (const Wave& w : modes[s - 1]) v += w.amp * std::sin(w.kt * t + w.kx * x + w.ky * y + w.phase);
    return v;
  }
  std::array<double, 3> grad(int s, double t, double x, double y) const {
    std::array<double, 3> g{};
    for (const Wave& w : modes[s - 1]) {
      const double c = w.amp * std::cos(w.kt * t + w.kx * x + w.ky * y + w.phase);
      g[0] += c * w.kt;
      g[1] += c * w.kx;
      g[2] += c * w.ky;
    }
    return g;
  }
};

SmoothField random_field(std::mt19937_64& rng, double offset, double amp, double kmax, int n_modes) {
  std::uniform_real_distribution<double> a(-1.0, 1.0), k(-kmax, kmax), ph(0.0, 2 * std::numbers::pi);
  SmoothField f;
  for (int s = 0; s < 4; ++s) {
    f.offset[s] = offset;
    for (int m = 0; m < n_modes; ++m) f.modes[s].push_back({amp * a(rng), k(rng), k(rng), k(rng), ph(rng)});
  }
  return f;
}

Field4 tabulate_field(const GridSpec& g, const SmoothField& f) {
  return tabulate(g, [&](int s, double t, double x, double y) { return f.value(s, t, x, y); });
}

FieldPartials tabulate_partials(const GridSpec& g, const SmoothField& f) {
  FieldPartials parts(g, PartialsSource::Analytic);
  for (int s = 1; s <= 4; ++s)
    for (int k = 0; k < g.nt(); ++k)
      for (int i = 0; i < g.nx(); ++i)
        for (int j = 0; j < g.ny(); ++j) {
          const auto d = f.grad(s, g.t(k), g.x(i), g.y(j));
          parts.dt.at(s, k, i, j) = d[0];
          parts.dx.at(s, k, i, j) = d[1];
          parts.dy.at(s, k, i, j) = d[2];
        }
  return parts;
}

// Non-negative profile A (1/2 + 1/4 sin(.) + 1/4 cos(.)) with values in [0, A].
Profile random_profile(std::mt19937_64& rng, double A) {
  std::uniform_real_distribution<double> k(-1.0, 1.0), ph(0.0, 2 * std::numbers::pi);
  const double a1 = k(rng), b1 = k(rng), p1 = ph(rng), a2 = k(rng), b2 = k(rng), p2 = ph(rng);
  return {[=](double xi, double eta) {
            return A * (0.5 + 0.25 * std::sin(a1 * xi + b1 * eta + p1) +
                        0.25 * std::cos(a2 * xi + b2 * eta + p2));
          },
          [=](double xi, double eta) {
            const double c = 0.25 * A * std::cos(a1 * xi + b1 * eta + p1);
            const double s = -0.25 * A * std::sin(a2 * xi + b2 * eta + p2);
            return std::array<double, 2>{c * a1 + s * a2, c * b1 + s * b2};
          }};
}

// ---------------------------------------------------------------------------

Outcome equilibrium() {
  const ModelParams p = unit_params();
  const GridSpec g(kUnitBox, 33, 33, 33);
  const std::array<double, 4> lv{0.2, 0.1, 0.4, 0.2};
  SolveConfig cfg = tight();
  cfg.force = true;
  const SolveResult r = solve(constant_family(kUnitBox, lv), p, g, cfg);
  const double dev =
      sup_norm(r.field - tabulate(g, [&](int s, double, double, double) { return lv[s - 1]; }));
  const double res = r.report.records.back().residual;
  return {r.report.converged && r.report.iterations == 1 && res <= 1e-12 && dev <= 1e-12,
          fmt("iterations=%d residual=%.3e deviation=%.3e", r.report.iterations, res, dev)};
}

Outcome free_streaming_exactness() {
  const ModelParams p = unit_params(0.0);
  const GridSpec g(kUnitBox, 33, 33, 33);
  auto shifted_affine = Profile{[](double xi, double eta) { return 2.0 + xi + eta; },
                                [](double, double) { return std::array<double, 2>{1.0, 1.0}; }};
  const BoundaryData d =
      transport_family(kUnitBox, p,
                       {shifted_affine, gaussian_profile(1.0, 0.3, 0.6, 0.2),
                        gaussian_profile(0.5, 0.7, 0.4, 0.3, 0.1), affine_profile()});
  SolveConfig cfg = tight();
  cfg.force = true;
  const SolveResult r = solve(d, p, g, cfg);
  const double err = compare(r.field, free_streaming_exact(d, p, g)).sup;
  return {r.report.converged && err <= 1e-10,
          fmt("iterations=%d sup error=%.3e", r.report.iterations, err)};
}

Outcome certificate_reproduction() {
  const ModelParams p = unit_params();
  const BoundCertificate lo = certify(p, constant_family(kUnitBox, {0.003, 0.003, 0.003, 0.003}));
  const BoundCertificate hi = certify(p, constant_family(kUnitBox, {0.1, 0.1, 0.1, 0.1}));
  // Values from an independent high-precision recomputation.
  struct Check {
    const char* name;
    double got, want;
  };
  const Check checks[] = {
      {"p", lo.p, 32.970562748477140586},
      {"p'", lo.p_prime, 5.6568542494923801952},
      {"p'/p", lo.p_prime / lo.p, 0.1715728752538099024},
      {"q(0.003)", lo.q, 0.0072426406871192851464},
      {"pq(0.003)", lo.pq, 0.2387939392393399841},
      {"r_min", lo.r_min, 0.011954339998208329589},
      {"r_max", lo.r_max, 0.018375745891702313712},
      {"pq(0.1)", hi.pq, 7.9597979746446661366},
  };
  double worst = 0.0;
  std::string detail;
  for (const Check& c : checks) {
    worst = std::max(worst, rel(c.got, c.want));
    detail += fmt("%s=%.8g ", c.name, c.got);
  }
  detail += fmt("worst rel=%.2e admissible(0.003)=%d admissible(0.1)=%d", worst, lo.admissible,
                hi.admissible);
  return {worst <= 1e-4 && lo.admissible && !hi.admissible, detail};
}

Outcome ratio_bound() {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> c(0.1, 10.0), th(0.05, std::numbers::pi / 2 - 0.05),
      T(0.1, 10.0), edge(0.1, 10.0), origin(-5.0, 5.0);
  int violations = 0;
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const ModelParams p(c(rng), 1.0, th(rng));
    const double a1 = origin(rng), a2 = origin(rng);
    const SpaceTimeBox box(a1, a1 + edge(rng), a2, a2 + edge(rng), T(rng));
    const double r = compute_p_prime(p, box) / compute_p(p, box);
    worst = std::max(worst, r);
    if (!(r <= 0.5)) ++violations;
  }
  return {violations == 0, fmt("draws=1000 violations=%d max ratio=%.6f", violations, worst)};
}

Outcome positivity() {
  const ModelParams p = unit_params();
  const GridSpec g(kUnitBox, 17, 17, 17);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> amp(0.0, 0.003);
  std::bernoulli_distribution vacuum(0.25);
  auto draw = [&] { return random_profile(rng, vacuum(rng) ? 0.0 : amp(rng)); };
  double worst = INFINITY;
  int bad = 0, inadmissible = 0, unconverged = 0;
  for (int n = 0; n < 100; ++n) {
    const BoundaryData d = transport_family(kUnitBox, p, {draw(), draw(), draw(), draw()});
    SolveConfig cfg = tight();
    cfg.mode = SolveMode::Sigma;
    cfg.c1_samples = 64;
    double m = INFINITY;
    try {
      const SolveResult r = solve(d, p, g, cfg, std::nullopt,
                                  [&](const IterationRecord& rec) { m = std::min(m, rec.min_value); });
      m = std::min({m, r.report.initial_min, r.field.min_value()});
      if (r.report.sigma != 2.0) ++bad;
    } catch (const GateError&) {
      ++inadmissible;
      continue;
    } catch (const ConvergenceError&) {
      ++unconverged;
      continue;
    }
    worst = std::min(worst, m);
    if (m < -1e-12) ++bad;
  }
  return {bad == 0 && inadmissible == 0 && unconverged == 0,
          fmt("sets=100 below -1e-12: %d inadmissible=%d unconverged=%d min=%.3e", bad, inadmissible,
              unconverged, worst)};
}

Outcome growth_bound() {
  const ModelParams p = unit_params();
  const GridSpec g(kUnitBox, 33, 33, 33);
  const BoundaryData d = perturbation(p);
  const BoundCertificate cert = certify(p, d);
  const QuadratureSpec q = default_quadrature(g, p);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> frac(0.05, 1.0);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    Field4 M = tabulate_field(g, random_field(rng, 0.0, 1.0, 3.0, 3));
    M *= frac(rng) * cert.r_max / v_of(M);
    const double vm = v_of(M);
    const double lhs = v_of(apply_T(M, d, p, q).field);
    worst = std::max(worst, lhs / (cert.p * vm * vm + cert.q));
  }
  return {cert.admissible && worst <= 1.05,
          fmt("fields=100 max V(T M)/(p V(M)^2 + q)=%.4f r_max=%.5f", worst, cert.r_max)};
}

Outcome lipschitz_bound() {
  const ModelParams p = unit_params();
  const GridSpec g(kUnitBox, 33, 33, 33);
  const BoundaryData d = perturbation(p);
  const double pp = compute_p_prime(p, kUnitBox);
  const QuadratureSpec q = default_quadrature(g, p);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> scale(0.001, 0.05), off(0.0, 0.02);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    const Field4 M = tabulate_field(g, random_field(rng, off(rng), scale(rng), 3.0, 3));
    const Field4 N = tabulate_field(g, random_field(rng, off(rng), scale(rng), 3.0, 3));
    const double lhs = sup_norm(apply_T(M, d, p, q).field - apply_T(N, d, p, q).field);
    const double rhs = pp * (sup_norm(M) + sup_norm(N)) * sup_norm(M - N);
    worst = std::max(worst, lhs / rhs);
  }
  return {worst <= 1.05, fmt("pairs=100 max lhs/rhs=%.4f", worst)};
}

Outcome oracle_convergence() {
  const ModelParams p = unit_params();
  const BoundaryData d = perturbation(p);
  std::vector<double> diffs;
  std::string detail;
  for (int n : {17, 33, 65}) {
    const GridSpec g(kUnitBox, n, n, n);
    const SolveResult r = solve(d, p, g, tight());
    diffs.push_back(compare(r.field, upwind_solve(d, p, {g})).sup);
    detail += fmt("%d^3: sup=%.4e it=%d ", n, diffs.back(), r.report.iterations);
  }
  bool ok = true;
  for (std::size_t k = 1; k < diffs.size(); ++k) {
    const double ratio = diffs[k - 1] / diffs[k];
    ok = ok && diffs[k] < diffs[k - 1] && ratio >= 1.5 && ratio <= 2.5;
    detail += fmt("ratio=%.3f ", ratio);
  }
  return {ok, detail};
}

Outcome derivative_conformance() {
  const ModelParams p(1.0, 1.0, 0.6);
  const GridSpec g(kUnitBox, 65, 65, 65);
  const BoundaryData d = perturbation(p);
  const QuadratureSpec q = default_quadrature(g, p);
  std::mt19937_64 rng(9);
  const SmoothField f = random_field(rng, 0.5, 0.1, 2.0, 3);
  const Field4 M = tabulate_field(g, f);
  const Field4 TM = apply_T(M, d, p, q).field;
  const FieldPartials dT = apply_T_derivatives(M, tabulate_partials(g, f), d, p, q, false);

  std::uniform_int_distribution<int> node(1, 63);
  std::uniform_int_distribution<int> sp(1, 4);
  double num[4][3] = {}, den[4][3] = {};
  int accepted = 0;
  while (accepted < 1000) {
    const int s = sp(rng), k = node(rng), i = node(rng), j = node(rng);
    const Region r = classify(s, g.t(k), g.x(i), g.y(j), p, kUnitBox);
    bool single = true;
    for (int a = -1; a <= 1 && single; ++a)
      for (int b = -1; b <= 1 && single; ++b)
        for (int c = -1; c <= 1 && single; ++c)
          single = classify(s, g.t(k + a), g.x(i + b), g.y(j + c), p, kUnitBox) == r;
    if (!single) continue;
    ++accepted;
    const double fd[3] = {(TM.at(s, k + 1, i, j) - TM.at(s, k - 1, i, j)) / (2 * g.dt()),
                          (TM.at(s, k, i + 1, j) - TM.at(s, k, i - 1, j)) / (2 * g.dx()),
                          (TM.at(s, k, i, j + 1) - TM.at(s, k, i, j - 1)) / (2 * g.dy())};
    const double an[3] = {dT.dt.at(s, k, i, j), dT.dx.at(s, k, i, j), dT.dy.at(s, k, i, j)};
    for (int a = 0; a < 3; ++a) {
      num[s - 1][a] = std::max(num[s - 1][a], std::abs(an[a] - fd[a]));
      den[s - 1][a] = std::max(den[s - 1][a], std::abs(fd[a]));
    }
  }
  double worst = 0.0;
  for (int s = 0; s < 4; ++s)
    for (int a = 0; a < 3; ++a)
      if (den[s][a] > 0.0) worst = std::max(worst, num[s][a] / den[s][a]);
  return {worst <= 0.01, fmt("nodes=1000 max relative difference=%.3e", worst)};
}

Outcome uniqueness() {
  const ModelParams p = unit_params();
  const GridSpec g(kUnitBox, 33, 33, 33);
  const BoundaryData d = perturbation(p);
  const double tol = 1e-12;
  SolveConfig a = tight(tol), b = tight(tol);
  b.guess = InitialGuess::BoundaryOnly;
  const SolveResult ra = solve(d, p, g, a);
  const SolveResult rb = solve(d, p, g, b);
  const double gap = sup_norm(ra.field - rb.field);
  return {ra.report.converged && rb.report.converged && gap <= 10 * tol,
          fmt("iterations=%d/%d sup gap=%.3e", ra.report.iterations, rb.report.iterations, gap)};
}

struct PdeResidual {
  double sup = 0.0;
  double l1 = 0.0;
};

PdeResidual pde_residual(const Field4& N, const ModelParams& p) {
  const GridSpec& g = N.grid();
  PdeResidual r;
  double volume = 0.0;
  for (int k = 1; k + 1 < g.nt(); ++k)
    for (int i = 1; i + 1 < g.nx(); ++i)
      for (int j = 1; j + 1 < g.ny(); ++j) {
        const State n = N.node(g.index(k, i, j));
        const double Q = collision(n, p);
        for (int s = 1; s <= 4; ++s) {
          const Vec2 w = velocity_of(s, p);
          const double res = (N.at(s, k + 1, i, j) - N.at(s, k - 1, i, j)) / (2 * g.dt()) +
                             w.x * (N.at(s, k, i + 1, j) - N.at(s, k, i - 1, j)) / (2 * g.dx()) +
                             w.y * (N.at(s, k, i, j + 1) - N.at(s, k, i, j - 1)) / (2 * g.dy()) -
                             collision_sign(s) * Q;
          r.sup = std::max(r.sup, std::abs(res));
          r.l1 += std::abs(res) * g.dt() * g.dx() * g.dy();
        }
        volume += g.dt() * g.dx() * g.dy();
      }
  r.l1 /= volume;
  return r;
}

Outcome pde_residual_decrease() {
  const ModelParams p = unit_params();
  const BoundaryData d = perturbation(p);
  std::vector<PdeResidual> res;
  for (int n : {33, 65}) {
    const GridSpec g(kUnitBox, n, n, n);
    res.push_back(pde_residual(solve(d, p, g, tight()).field, p));
  }
  const double sup_factor = res[0].sup / res[1].sup;
  const double l1_factor = res[0].l1 / res[1].l1;
  return {sup_factor >= 1.5,
          fmt("sup %.3e -> %.3e (factor %.3f); mean abs %.3e -> %.3e (factor %.3f)", res[0].sup,
              res[1].sup, sup_factor, res[0].l1, res[1].l1, l1_factor)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "equilibrium fixed point", 5, equilibrium},
      {2, "free-streaming exactness", 10, free_streaming_exactness},
      {3, "certificate reproduction", 60, certificate_reproduction},
      {4, "p'/p <= 1/2", 1, ratio_bound},
      {5, "positivity (sigma mode)", 120, positivity},
      {6, "a-priori growth bound", 120, growth_bound},
      {7, "Lipschitz bound", 120, lipschitz_bound},
      {8, "oracle convergence", 600, oracle_convergence},
      {9, "derivative conformance", 300, derivative_conformance},
      {10, "uniqueness echo", 120, uniqueness},
      {11, "PDE residual", 600, pde_residual_decrease},
  };
  std::set<int> only;
  for (int a = 1; a < argc; ++a) only.insert(std::atoi(argv[a]));

  int failures = 0;
  for (const Criterion& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("criterion %2d %s: %s | %s | %.2f s (budget %.0f s)%s\n", c.id, c.name,
                pass ? "PASS" : "FAIL", o.detail.c_str(), secs, c.budget_s,
                in_time ? "" : " over budget");
    std::fflush(stdout);
  }
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
