#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "broadwell/boundary_data.hpp"
#include "broadwell/bounds.hpp"
#include "broadwell/errors.hpp"
#include "broadwell/fields.hpp"
#include "broadwell/transport.hpp"

namespace broadwell {

enum class SolveMode { Plain, Sigma };

enum class InitialGuess {
  /// Data traces everywhere (T with the collision term off).
  FreeStreaming,
  /// Data on the initial slice and the inflow faces, zero elsewhere.
  BoundaryOnly,
};

struct SolveConfig {
  double tol = 1e-10;
  int max_iter = 200;
  SolveMode mode = SolveMode::Plain;
  /// Unset means 2cS.
  std::optional<double> sigma;
  bool unsafe_sigma = false;
  bool force = false;
  double positivity_tol = 1e-12;
  InitialGuess guess = InitialGuess::FreeStreaming;
  /// Unset means default_quadrature(grid, params).
  std::optional<QuadratureSpec> quad;
  int c1_samples = 256;
};

struct IterationRecord {
  int iteration = 0;
  /// ||M_k - M_{k-1}||.
  double residual = 0.0;
  double v = 0.0;
  double min_value = 0.0;
};

struct IterationReport {
  std::vector<IterationRecord> records;
  double initial_v = 0.0;
  double initial_min = 0.0;
  bool converged = false;
  int iterations = 0;
  bool positivity_ok = true;
  double sigma = 0.0;
  SolveMode mode = SolveMode::Plain;
  BoundCertificate certificate;

  /// Ratios residual_k / residual_{k-1} of consecutive iterations.
  std::vector<double> contraction_factors() const;
};

struct SolveResult {
  Field4 field;
  IterationReport report;
};

/// The certificate is inadmissible and the caller did not force the run.
class GateError : public Error {
 public:
  GateError(const std::string& what, BoundCertificate cert)
      : Error(what), certificate(std::move(cert)) {}
  BoundCertificate certificate;
};

/// max_iter reached without meeting the tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, IterationReport rep, Field4 last)
      : Error(what), report(std::move(rep)), field(std::move(last)) {}
  IterationReport report;
  Field4 field;
};

Field4 initial_guess(const BoundaryData& data, const ModelParams& params, const GridSpec& grid,
                     InitialGuess kind = InitialGuess::FreeStreaming);

/// max{ ||M||, ||dM|| } with finite-difference partials, or ||M|| alone on
/// grids too small to difference.
double v_of(const Field4& M);

/// Picard iteration M_{k+1} = T(M_k) (or T^sigma). `certificate` is computed
/// when not supplied. `on_iteration` sees every record as it is produced.
SolveResult solve(const BoundaryData& data, const ModelParams& params, const GridSpec& grid,
                  const SolveConfig& cfg, std::optional<BoundCertificate> certificate = {},
                  const std::function<void(const IterationRecord&)>& on_iteration = {});

/// sup_norm(T(M) - M).
double residual(const Field4& M, const BoundaryData& data, const ModelParams& params,
                const QuadratureSpec& quad);

/// One line per record: "iteration residual V min".
void write_iteration_log(std::ostream& out, const IterationReport& report);

}  // namespace broadwell
