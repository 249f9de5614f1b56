#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "broadwell/fields.hpp"
#include "broadwell/model.hpp"

namespace broadwell {

/// Where a data function lives. Initial data is a function of (x,y), an
/// x-face function of (t,y) and a y-face function of (t,x).
enum class DataFace { Initial, XInflow, YInflow };

using Gradient2Fn = std::function<std::array<double, 2>(double, double)>;

/// A bivariate data function with an optional analytic gradient.
struct Sampler {
  std::string name;
  ScalarFn2 value;
  Gradient2Fn gradient;  // may be empty
};

/// The twelve data functions: N_i^0 on t = 0 and, per species, one function
/// on its x-inflow face (x = a1 for species 1,3; x = b1 for 2,4) and one on
/// its y-inflow face (y = a2 for species 1,2; y = b2 for 3,4).
class BoundaryData {
 public:
  BoundaryData(const SpaceTimeBox& box, std::array<Sampler, 4> initial,
               std::array<Sampler, 4> x_inflow, std::array<Sampler, 4> y_inflow);

  const SpaceTimeBox& box() const { return box_; }

  const Sampler& sampler(DataFace face, int species) const;

  /// Coordinate of the species' inflow face.
  double x_face(int species) const;
  double y_face(int species) const;

  /// Domain of a sampler in its own coordinates.
  Rect rect(DataFace face) const;

  /// Evaluates the sampler; a throwing or non-finite sampler raises DataError
  /// naming the function.
  double value(DataFace face, int species, double a, double b) const;

  /// Analytic gradient when present, otherwise finite differences with step
  /// 1e-6 times the edge length (one-sided at the rectangle edges). With
  /// `allow_fallback` false a missing gradient raises DataError.
  std::array<double, 2> gradient(DataFace face, int species, double a, double b,
                                 bool allow_fallback = true) const;

  bool has_analytic_gradients() const;

 private:
  SpaceTimeBox box_;
  std::array<Sampler, 4> initial_;
  std::array<Sampler, 4> x_inflow_;
  std::array<Sampler, 4> y_inflow_;
};

/// Canonical sampler names: N1_0 .. N4_0, N1_m, N1_mm, N2_p, N2_mm, N3_m,
/// N3_pp, N4_p, N4_pp.
std::string sampler_name(DataFace face, int species);

struct CompatibilityResidual {
  std::string identity;
  double residual = 0.0;
};

struct CompatibilityReport {
  std::array<CompatibilityResidual, 12> residuals;
  double max_residual = 0.0;
  /// Smallest sampled value over all twelve functions.
  double min_value = 0.0;
  std::string min_function;
  double tol = 1e-9;
  int samples = 0;

  bool compatible() const { return max_residual <= tol; }
  bool nonnegative() const { return min_value >= 0.0; }
  bool passed() const { return compatible() && nonnegative(); }
};

/// Samples the twelve corner-edge identities at `samples` points per edge and
/// the minimum of every function on a samples x samples lattice.
CompatibilityReport check_compatibility(const BoundaryData& data, int samples = 257,
                                        double tol = 1e-9);

BoundaryData constant_family(const SpaceTimeBox& box, const std::array<double, 4>& levels);

struct SpaceTimeFunction {
  std::function<double(double, double, double)> value;
  std::function<std::array<double, 3>(double, double, double)> gradient;  // may be empty
};

/// Restrictions of g_i(t,x,y) to the initial slice and the species-i inflow
/// faces. Compatible by construction.
BoundaryData global_family(const SpaceTimeBox& box, std::array<SpaceTimeFunction, 4> fields);

struct Profile {
  std::function<double(double, double)> value;
  Gradient2Fn gradient;  // may be empty
};

/// g_i(t,x,y) = phi_i(x - u_i t, y - v_i t), restricted as in global_family.
/// With S = 0 the exact solution is g itself.
BoundaryData transport_family(const SpaceTimeBox& box, const ModelParams& params,
                              std::array<Profile, 4> profiles);

}  // namespace broadwell
