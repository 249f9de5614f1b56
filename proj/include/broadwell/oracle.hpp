#pragma once

#include <array>
#include <string>

#include "broadwell/boundary_data.hpp"
#include "broadwell/fields.hpp"
#include "broadwell/model.hpp"

namespace broadwell {

struct UpwindConfig {
  GridSpec grid;
  /// Bound on dt (|u|/dx + |v|/dy); each grid step is subdivided to meet it.
  double cfl = 0.9;
  int max_substeps = 100000;
};

/// First-order explicit upwind solution of the full nonlinear system. Nodes on
/// a species' inflow faces take the data; every other node uses the upwind
/// stencil, which never reaches past the outflow faces. Q is explicit.
Field4 upwind_solve(const BoundaryData& data, const ModelParams& params, const UpwindConfig& cfg);

/// Data trace at every node, the exact solution when S = 0.
Field4 free_streaming_exact(const BoundaryData& data, const ModelParams& params,
                            const GridSpec& grid);

struct ComparisonReport {
  double sup = 0.0;
  double rms = 0.0;
  std::array<double, 4> species_sup{};
  std::array<double, 4> species_rms{};
  std::string grid_a;
  std::string grid_b;
};

/// Differences a - b at the nodes of a; b is resampled trilinearly when its
/// grid differs. Both must cover the same box.
ComparisonReport compare(const Field4& a, const Field4& b);

}  // namespace broadwell
