#include "broadwell/picard.hpp"

#include <cmath>
#include <ostream>

#include "broadwell/characteristics.hpp"

namespace broadwell {

std::vector<double> IterationReport::contraction_factors() const {
  std::vector<double> out;
  for (std::size_t k = 1; k < records.size(); ++k) {
    if (records[k - 1].residual > 0.0) out.push_back(records[k].residual / records[k - 1].residual);
  }
  return out;
}

Field4 initial_guess(const BoundaryData& data, const ModelParams& params, const GridSpec& grid,
                     InitialGuess kind) {
  if (kind == InitialGuess::FreeStreaming) return free_streaming(data, params, grid);
  Field4 out(grid);
  for (int k = 0; k < grid.nt(); ++k) {
    for (int i = 0; i < grid.nx(); ++i) {
      for (int j = 0; j < grid.ny(); ++j) {
        for (int s = 1; s <= 4; ++s) {
          const CharFoot f = foot(s, grid.t(k), grid.x(i), grid.y(j), params, data);
          if (f.s_max == 0.0) out.at(s, k, i, j) = f.trace_value;
        }
      }
    }
  }
  return out;
}

double v_of(const Field4& M) {
  const GridSpec& g = M.grid();
  if (g.nt() < 3 || g.nx() < 3 || g.ny() < 3) return sup_norm(M);
  return v_functional(M, fd_partials(M));
}

double residual(const Field4& M, const BoundaryData& data, const ModelParams& params,
                const QuadratureSpec& quad) {
  return sup_norm(apply_T(M, data, params, quad).field - M);
}

SolveResult solve(const BoundaryData& data, const ModelParams& params, const GridSpec& grid,
                  const SolveConfig& cfg, std::optional<BoundCertificate> certificate,
                  const std::function<void(const IterationRecord&)>& on_iteration) {
  if (!(cfg.tol > 0.0)) throw UsageError("solve: tol must be positive");
  if (cfg.max_iter < 1) throw UsageError("solve: max_iter must be at least 1");
  if (!(grid.box() == data.box())) throw UsageError("solve: grid and data boxes differ");

  IterationReport rep;
  rep.certificate = certificate ? *certificate : certify(params, data, cfg.c1_samples);
  if (!rep.certificate.admissible && !cfg.force) {
    throw GateError("certificate inadmissible: pq = " + format_double(rep.certificate.pq) +
                        " > 1/4 (force to run anyway)",
                    rep.certificate);
  }
  rep.mode = cfg.mode;
  rep.sigma = cfg.mode == SolveMode::Sigma ? cfg.sigma.value_or(params.collision_rate()) : 0.0;
  const QuadratureSpec quad = cfg.quad.value_or(default_quadrature(grid, params));

  Field4 M = initial_guess(data, params, grid, cfg.guess);
  rep.initial_v = v_of(M);
  rep.initial_min = M.min_value();

  for (int k = 1; k <= cfg.max_iter; ++k) {
    Field4 next = cfg.mode == SolveMode::Sigma
                      ? apply_T_sigma(M, rep.sigma, data, params, quad, cfg.unsafe_sigma).field
                      : apply_T(M, data, params, quad).field;
    if (!next.all_finite()) {
      throw NumericalError("solve: iterate " + std::to_string(k) + " is not finite");
    }
    IterationRecord rec;
    rec.iteration = k;
    rec.residual = sup_norm(next - M);
    rec.v = v_of(next);
    rec.min_value = next.min_value();
    if (!std::isfinite(rec.residual)) {
      throw NumericalError("solve: residual overflow at iteration " + std::to_string(k));
    }
    if (cfg.mode == SolveMode::Sigma && rec.min_value < -cfg.positivity_tol) {
      rep.positivity_ok = false;
    }
    rep.records.push_back(rec);
    rep.iterations = k;
    if (on_iteration) on_iteration(rec);
    M = std::move(next);
    if (rec.residual <= cfg.tol) {
      rep.converged = true;
      return {std::move(M), std::move(rep)};
    }
  }
  throw ConvergenceError("solve: no convergence after " + std::to_string(cfg.max_iter) +
                             " iterations (last residual " +
                             format_double(rep.records.back().residual) + ")",
                         rep, M);
}

void write_iteration_log(std::ostream& out, const IterationReport& report) {
  for (const auto& r : report.records) {
    out << r.iteration << ' ' << format_double(r.residual) << ' ' << format_double(r.v) << ' '
        << format_double(r.min_value) << '\n';
  }
}

}  // namespace broadwell
