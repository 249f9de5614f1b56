#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "broadwell/model.hpp"

namespace broadwell {

/// Uniform node lattice covering a SpaceTimeBox exactly: node (0,i,j) sits at
/// t = 0 and node (nt-1,i,j) at t = T.
class GridSpec {
 public:
  GridSpec(const SpaceTimeBox& box, int nt, int nx, int ny);

  const SpaceTimeBox& box() const { return box_; }
  int nt() const { return nt_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return static_cast<std::size_t>(nt_) * nx_ * ny_; }

  double dt() const { return box_.t_end() / (nt_ - 1); }
  double dx() const { return box_.width() / (nx_ - 1); }
  double dy() const { return box_.height() / (ny_ - 1); }

  double t(int k) const;
  double x(int i) const;
  double y(int j) const;

  std::size_t index(int k, int i, int j) const {
    return (static_cast<std::size_t>(k) * nx_ + i) * ny_ + j;
  }

  /// "ntxnxxny", used to label grids in reports.
  std::string label() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  SpaceTimeBox box_;
  int nt_;
  int nx_;
  int ny_;
};

/// Four scalar lattices over one grid: a state N = (N1..N4) or an iterate M.
class Field4 {
 public:
  explicit Field4(const GridSpec& grid, double fill = 0.0);

  const GridSpec& grid() const { return grid_; }

  /// Species are numbered 1..4.
  std::span<double> lattice(int species);
  std::span<const double> lattice(int species) const;

  double& at(int species, int k, int i, int j) {
    return values_[species - 1][grid_.index(k, i, j)];
  }
  double at(int species, int k, int i, int j) const {
    return values_[species - 1][grid_.index(k, i, j)];
  }
  State node(std::size_t flat) const {
    return {values_[0][flat], values_[1][flat], values_[2][flat], values_[3][flat]};
  }

  /// Trilinear interpolation of one species; exact at nodes. Points within
  /// 1e-12 (times the edge length when it exceeds 1) of the box are clamped,
  /// anything further out raises DomainError.
  double sample(int species, double t, double x, double y) const;

  /// All four species at once (shares the cell lookup).
  State sample4(double t, double x, double y) const;

  double min_value() const;
  bool all_finite() const;

  Field4& operator+=(const Field4& other);
  Field4& operator-=(const Field4& other);
  Field4& operator*=(double factor);

 private:
  GridSpec grid_;
  std::array<std::vector<double>, 4> values_;
};

Field4 operator-(Field4 lhs, const Field4& rhs);
Field4 operator+(Field4 lhs, const Field4& rhs);
Field4 operator*(double factor, Field4 field);

enum class Axis { T = 0, X = 1, Y = 2 };

enum class PartialsSource { FiniteDifference, DerivativeFormulas, Analytic };

/// d/dt, d/dx, d/dy lattices for every species, over the grid of the field.
struct FieldPartials {
  Field4 dt;
  Field4 dx;
  Field4 dy;
  PartialsSource source = PartialsSource::FiniteDifference;

  explicit FieldPartials(const GridSpec& grid, PartialsSource src = PartialsSource::FiniteDifference)
      : dt(grid), dx(grid), dy(grid), source(src) {}

  const Field4& along(Axis a) const;
  Field4& along(Axis a);
  const GridSpec& grid() const { return dt.grid(); }
};

/// max over species and nodes of |f|.
double sup_norm(const Field4& f);

/// Central differences at interior nodes, second-order one-sided at faces.
/// Requires at least 3 nodes per axis.
FieldPartials fd_partials(const Field4& f);

/// max{ ||f||, ||df/dt||, ||df/dx||, ||df/dy|| }.
double v_functional(const Field4& f, const FieldPartials& parts);

/// Axis-aligned rectangle [lo0,hi0] x [lo1,hi1] in a sampler's own
/// coordinates (e.g. (x,y) for initial data, (t,y) for an x-face).
struct Rect {
  double lo0 = 0.0;
  double hi0 = 1.0;
  double lo1 = 0.0;
  double hi1 = 1.0;
};

using ScalarFn2 = std::function<double(double, double)>;

/// C1 norm max{ ||g||, ||dg/da||, ||dg/db|| } approximated on a uniform
/// samples x samples lattice of the rectangle.
double c1_norm(const ScalarFn2& g, const ScalarFn2& g_a, const ScalarFn2& g_b, const Rect& rect,
               int samples);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// CSV snapshot of time slice k: header t,x,y,N1,N2,N3,N4 then one row per
/// (x,y) node, x outer, y inner.
void write_csv_slice(std::ostream& out, const Field4& f, int k);

}  // namespace broadwell
