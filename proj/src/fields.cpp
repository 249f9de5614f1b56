#include "broadwell/fields.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <utility>

#include "broadwell/errors.hpp"

namespace broadwell {

namespace {

double node_coordinate(double lo, double hi, int k, int n) {
  if (k == n - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
}

double clamp_tolerance(double lo, double hi) { return 1e-12 * std::max(1.0, hi - lo); }

struct AxisWeight {
  int cell;
  double frac;
};

// Maps a coordinate to (cell, weight). Coordinates within 1e-9 of a node in
// index units snap onto it, so node values are reproduced bit-exactly.
AxisWeight locate(double v, double lo, double hi, int n, char axis) {
  const double tol = clamp_tolerance(lo, hi);
  if (!(v >= lo - tol && v <= hi + tol)) {
    throw DomainError(std::string("field sample: ") + axis + " = " + format_double(v) +
                      " outside [" + format_double(lo) + ", " + format_double(hi) + "]");
  }
  double r = (std::clamp(v, lo, hi) - lo) / (hi - lo) * (n - 1);
  const double nearest = std::round(r);
  if (std::abs(r - nearest) <= 1e-9) r = nearest;
  int cell = static_cast<int>(std::floor(r));
  cell = std::clamp(cell, 0, n - 2);
  return {cell, r - cell};
}

}  // namespace

GridSpec::GridSpec(const SpaceTimeBox& box, int nt, int nx, int ny)
    : box_(box), nt_(nt), nx_(nx), ny_(ny) {
  if (nt < 2 || nx < 2 || ny < 2) {
    throw UsageError("grid: every axis needs at least 2 nodes");
  }
}

double GridSpec::t(int k) const { return node_coordinate(0.0, box_.t_end(), k, nt_); }
double GridSpec::x(int i) const { return node_coordinate(box_.a1(), box_.b1(), i, nx_); }
double GridSpec::y(int j) const { return node_coordinate(box_.a2(), box_.b2(), j, ny_); }

std::string GridSpec::label() const {
  return std::to_string(nt_) + "x" + std::to_string(nx_) + "x" + std::to_string(ny_);
}

Field4::Field4(const GridSpec& grid, double fill) : grid_(grid) {
  for (auto& v : values_) v.assign(grid_.size(), fill);
}

std::span<double> Field4::lattice(int species) {
  check_species(species);
  return values_[species - 1];
}

std::span<const double> Field4::lattice(int species) const {
  check_species(species);
  return values_[species - 1];
}

double Field4::sample(int species, double t, double x, double y) const {
  check_species(species);
  return sample4(t, x, y)[species - 1];
}

State Field4::sample4(double t, double x, double y) const {
  const auto& b = grid_.box();
  const AxisWeight wt = locate(t, 0.0, b.t_end(), grid_.nt(), 't');
  const AxisWeight wx = locate(x, b.a1(), b.b1(), grid_.nx(), 'x');
  const AxisWeight wy = locate(y, b.a2(), b.b2(), grid_.ny(), 'y');

  const std::size_t ny = grid_.ny();
  const std::size_t sx = ny;
  const std::size_t st = static_cast<std::size_t>(grid_.nx()) * ny;
  const std::size_t base = grid_.index(wt.cell, wx.cell, wy.cell);

  State out{};
  for (std::size_t s = 0; s < 4; ++s) {
    const double* v = values_[s].data() + base;
    auto lerp = [](double a, double c, double w) {
      if (w == 0.0) return a;
      if (w == 1.0) return c;
      return a + w * (c - a);
    };
    const double c00 = lerp(v[0], v[1], wy.frac);
    const double c01 = lerp(v[sx], v[sx + 1], wy.frac);
    const double c10 = lerp(v[st], v[st + 1], wy.frac);
    const double c11 = lerp(v[st + sx], v[st + sx + 1], wy.frac);
    const double c0 = lerp(c00, c01, wx.frac);
    const double c1 = lerp(c10, c11, wx.frac);
    out[s] = lerp(c0, c1, wt.frac);
  }
  return out;
}

double Field4::min_value() const {
  double m = values_[0].empty() ? 0.0 : values_[0][0];
  for (const auto& v : values_) {
    for (double x : v) m = std::min(m, x);
  }
  return m;
}

bool Field4::all_finite() const {
  for (const auto& v : values_) {
    for (double x : v) {
      if (!std::isfinite(x)) return false;
    }
  }
  return true;
}

Field4& Field4::operator+=(const Field4& other) {
  if (!(grid_ == other.grid_)) throw UsageError("field arithmetic: grid mismatch");
  for (std::size_t s = 0; s < 4; ++s) {
    for (std::size_t n = 0; n < values_[s].size(); ++n) values_[s][n] += other.values_[s][n];
  }
  return *this;
}

Field4& Field4::operator-=(const Field4& other) {
  if (!(grid_ == other.grid_)) throw UsageError("field arithmetic: grid mismatch");
  for (std::size_t s = 0; s < 4; ++s) {
    for (std::size_t n = 0; n < values_[s].size(); ++n) values_[s][n] -= other.values_[s][n];
  }
  return *this;
}

Field4& Field4::operator*=(double factor) {
  for (auto& v : values_) {
    for (double& x : v) x *= factor;
  }
  return *this;
}

Field4 operator-(Field4 lhs, const Field4& rhs) { return lhs -= rhs; }
Field4 operator+(Field4 lhs, const Field4& rhs) { return lhs += rhs; }
Field4 operator*(double factor, Field4 field) { return field *= factor; }

const Field4& FieldPartials::along(Axis a) const {
  switch (a) {
    case Axis::T:
      return dt;
    case Axis::X:
      return dx;
    default:
      return dy;
  }
}

Field4& FieldPartials::along(Axis a) {
  return const_cast<Field4&>(std::as_const(*this).along(a));
}

double sup_norm(const Field4& f) {
  double m = 0.0;
  for (int s = 1; s <= 4; ++s) {
    for (double v : f.lattice(s)) m = std::max(m, std::abs(v));
  }
  return m;
}

FieldPartials fd_partials(const Field4& f) {
  const GridSpec& g = f.grid();
  if (g.nt() < 3 || g.nx() < 3 || g.ny() < 3) {
    throw UsageError("fd_partials: need at least 3 nodes per axis, grid is " + g.label());
  }
  FieldPartials parts(g, PartialsSource::FiniteDifference);

  // derivative along one axis of a strided 1-D line
  auto diff = [](const double* v, std::size_t stride, int n, int m, double h) {
    if (m == 0) return (4.0 * (v[stride] - v[0]) - (v[2 * stride] - v[0])) / (2.0 * h);
    if (m == n - 1) {
      const double* e = v + static_cast<std::size_t>(n - 1) * stride;
      const auto back = static_cast<std::ptrdiff_t>(stride);
      return (4.0 * (e[0] - e[-back]) - (e[0] - e[-2 * back])) / (2.0 * h);
    }
    const double* c = v + static_cast<std::size_t>(m) * stride;
    return (c[stride] - c[-static_cast<std::ptrdiff_t>(stride)]) / (2.0 * h);
  };

  const std::size_t st = static_cast<std::size_t>(g.nx()) * g.ny();
  const std::size_t sx = g.ny();
  for (int s = 1; s <= 4; ++s) {
    const double* v = f.lattice(s).data();
    for (int k = 0; k < g.nt(); ++k) {
      for (int i = 0; i < g.nx(); ++i) {
        for (int j = 0; j < g.ny(); ++j) {
          parts.dt.at(s, k, i, j) = diff(v + g.index(0, i, j), st, g.nt(), k, g.dt());
          parts.dx.at(s, k, i, j) = diff(v + g.index(k, 0, j), sx, g.nx(), i, g.dx());
          parts.dy.at(s, k, i, j) = diff(v + g.index(k, i, 0), 1, g.ny(), j, g.dy());
        }
      }
    }
  }
  return parts;
}

double v_functional(const Field4& f, const FieldPartials& parts) {
  if (!(f.grid() == parts.grid())) {
    throw UsageError("v_functional: partials were computed on a different grid");
  }
  return std::max({sup_norm(f), sup_norm(parts.dt), sup_norm(parts.dx), sup_norm(parts.dy)});
}

double c1_norm(const ScalarFn2& g, const ScalarFn2& g_a, const ScalarFn2& g_b, const Rect& rect,
               int samples) {
  if (samples < 2) throw UsageError("c1_norm: need at least 2 samples per axis");
  double m = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double a = node_coordinate(rect.lo0, rect.hi0, i, samples);
    for (int j = 0; j < samples; ++j) {
      const double b = node_coordinate(rect.lo1, rect.hi1, j, samples);
      m = std::max({m, std::abs(g(a, b)), std::abs(g_a(a, b)), std::abs(g_b(a, b))});
    }
  }
  return m;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_csv_slice(std::ostream& out, const Field4& f, int k) {
  const GridSpec& g = f.grid();
  if (k < 0 || k >= g.nt()) {
    throw UsageError("snapshot: time index " + std::to_string(k) + " out of range");
  }
  out << "t,x,y,N1,N2,N3,N4\n";
  const std::string t = format_double(g.t(k));
  for (int i = 0; i < g.nx(); ++i) {
    const std::string x = format_double(g.x(i));
    for (int j = 0; j < g.ny(); ++j) {
      out << t << ',' << x << ',' << format_double(g.y(j));
      for (int s = 1; s <= 4; ++s) out << ',' << format_double(f.at(s, k, i, j));
      out << '\n';
    }
  }
}

}  // namespace broadwell
