#pragma once

#include <array>
#include <string>

#include "broadwell/boundary_data.hpp"
#include "broadwell/model.hpp"

namespace broadwell {

/// Existence/uniqueness constants for one configuration.
struct BoundCertificate {
  double p = 0.0;
  double q = 0.0;
  double p_prime = 0.0;
  double alpha = 0.0;
  double beta_T = 0.0;
  double beta = 0.0;
  double pq = 0.0;
  bool admissible = false;
  /// Invariant-ball radii; NaN when not admissible, r_max = +inf when p = 0.
  double r_min = 0.0;
  double r_max = 0.0;
  /// max{T, alpha} / max{beta_T, beta}, which equals p'/p when S > 0.
  double ratio = 0.0;
  int c1_samples = 0;
  /// Weighted C1 norm of each data function, indexed like sampler_name.
  std::array<std::pair<std::string, double>, 12> q_terms;
};

/// max{1 + 2T(c cos + c sin), 2T}.
double compute_beta_T(const ModelParams& params, const SpaceTimeBox& box);

/// max{1/(c cos), 1/(c sin)} + 2 max{1/(c cos), 1/(c sin),
/// (1/(c cos))(1/(c cos) + tan), (1/(c sin))(1/(c sin) + cot)} max{L1, L2}.
double compute_beta(const ModelParams& params, const SpaceTimeBox& box);

/// max{L1/(c cos), L2/(c sin), L1/(c sin), L2/(c cos)}.
double compute_alpha(const ModelParams& params, const SpaceTimeBox& box);

/// 4cS max{beta_T, beta}.
double compute_p(const ModelParams& params, const SpaceTimeBox& box);

/// 4cS max{T, alpha}.
double compute_p_prime(const ModelParams& params, const SpaceTimeBox& box);

/// Weighted maximum of the C1 norms of the twelve data functions, each
/// sampled on a samples x samples lattice of its rectangle.
double compute_q(const BoundaryData& data, const ModelParams& params, int samples = 256);

BoundCertificate certify(const ModelParams& params, const BoundaryData& data, int samples = 256);

}  // namespace broadwell
