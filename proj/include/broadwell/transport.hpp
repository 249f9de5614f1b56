#pragma once

#include <optional>

#include "broadwell/boundary_data.hpp"
#include "broadwell/fields.hpp"
#include "broadwell/model.hpp"

namespace broadwell {

/// Composite trapezoid along characteristics. The step actually used on a
/// segment of length s is s / ceil(s / max_step), so both ends are nodes.
struct QuadratureSpec {
  double max_step = 0.0;
};

/// min(dt, dx/c, dy/c).
QuadratureSpec default_quadrature(const GridSpec& grid, const ModelParams& params);

enum class Provenance { Plain, SigmaRegularized, DerivativeBearing };

struct OperatorOutput {
  Field4 field;
  std::optional<FieldPartials> partials;
  Provenance provenance = Provenance::Plain;
};

/// T(M): data trace at the characteristic foot plus sign_i times the
/// integral of Q(M) along the backward segment. M is sampled trilinearly and
/// Q is formed from the interpolated state.
OperatorOutput apply_T(const Field4& M, const BoundaryData& data, const ModelParams& params,
                       const QuadratureSpec& quad);

/// T^sigma(M): solution of dN_i/ds + sigma rho(|M|) N_i = Q_i^sigma(|M|) along
/// each characteristic. The exponent is a cumulative trapezoid of rho(|M|);
/// on each step the weight exp(sigma P) is integrated exactly for P linear,
/// so constant states are reproduced exactly and the output is non-negative
/// whenever the data are. Requires sigma >= 2cS unless `unsafe` is set.
OperatorOutput apply_T_sigma(const Field4& M, double sigma, const BoundaryData& data,
                             const ModelParams& params, const QuadratureSpec& quad,
                             bool unsafe = false);

/// Partial derivatives of T(M) in t, x and y, from the region-wise chain
/// rule. dQ along the path uses M and M_parts sampled trilinearly. Data
/// gradients fall back to finite differences unless `allow_fd_fallback` is
/// false.
FieldPartials apply_T_derivatives(const Field4& M, const FieldPartials& M_parts,
                                  const BoundaryData& data, const ModelParams& params,
                                  const QuadratureSpec& quad, bool allow_fd_fallback = true);

/// T with the collision term switched off: the data trace at every node.
Field4 free_streaming(const BoundaryData& data, const ModelParams& params, const GridSpec& grid);

}  // namespace broadwell
