#include "broadwell/boundary_data.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <utility>

#include "broadwell/errors.hpp"

namespace broadwell {

namespace {

double lattice_point(double lo, double hi, int k, int n) {
  if (k == n - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
}

double fd_derivative(const ScalarFn2& f, double a, double b, int axis, double lo, double hi) {
  const double h = 1e-6 * (hi - lo);
  const double v = axis == 0 ? a : b;
  auto at = [&](double w) { return axis == 0 ? f(w, b) : f(a, w); };
  if (v - h < lo) return (at(v + h) - at(v)) / h;
  if (v + h > hi) return (at(v) - at(v - h)) / h;
  return (at(v + h) - at(v - h)) / (2.0 * h);
}

}  // namespace

std::string sampler_name(DataFace face, int species) {
  check_species(species);
  const std::string n = "N" + std::to_string(species);
  switch (face) {
    case DataFace::Initial:
      return n + "_0";
    case DataFace::XInflow:
      return n + (species == 1 || species == 3 ? "_m" : "_p");
    default:
      return n + (species <= 2 ? "_mm" : "_pp");
  }
}

BoundaryData::BoundaryData(const SpaceTimeBox& box, std::array<Sampler, 4> initial,
                           std::array<Sampler, 4> x_inflow, std::array<Sampler, 4> y_inflow)
    : box_(box),
      initial_(std::move(initial)),
      x_inflow_(std::move(x_inflow)),
      y_inflow_(std::move(y_inflow)) {
  auto fill = [](std::array<Sampler, 4>& group, DataFace f) {
    for (int s = 1; s <= 4; ++s) {
      Sampler& smp = group[s - 1];
      if (!smp.value) throw UsageError("boundary data: missing sampler " + sampler_name(f, s));
      if (smp.name.empty()) smp.name = sampler_name(f, s);
    }
  };
  fill(initial_, DataFace::Initial);
  fill(x_inflow_, DataFace::XInflow);
  fill(y_inflow_, DataFace::YInflow);
}

const Sampler& BoundaryData::sampler(DataFace face, int species) const {
  check_species(species);
  switch (face) {
    case DataFace::Initial:
      return initial_[species - 1];
    case DataFace::XInflow:
      return x_inflow_[species - 1];
    default:
      return y_inflow_[species - 1];
  }
}

double BoundaryData::x_face(int species) const {
  check_species(species);
  return (species == 1 || species == 3) ? box_.a1() : box_.b1();
}

double BoundaryData::y_face(int species) const {
  check_species(species);
  return species <= 2 ? box_.a2() : box_.b2();
}

Rect BoundaryData::rect(DataFace face) const {
  switch (face) {
    case DataFace::Initial:
      return {box_.a1(), box_.b1(), box_.a2(), box_.b2()};
    case DataFace::XInflow:
      return {0.0, box_.t_end(), box_.a2(), box_.b2()};
    default:
      return {0.0, box_.t_end(), box_.a1(), box_.b1()};
  }
}

double BoundaryData::value(DataFace face, int species, double a, double b) const {
  const Sampler& s = sampler(face, species);
  double v;
  try {
    v = s.value(a, b);
  } catch (const std::exception& e) {
    throw DataError("data function " + s.name + " failed: " + e.what());
  }
  if (!std::isfinite(v)) {
    throw DataError("data function " + s.name + " returned a non-finite value at (" +
                    format_double(a) + ", " + format_double(b) + ")");
  }
  return v;
}

std::array<double, 2> BoundaryData::gradient(DataFace face, int species, double a, double b,
                                             bool allow_fallback) const {
  const Sampler& s = sampler(face, species);
  std::array<double, 2> g;
  try {
    if (s.gradient) {
      g = s.gradient(a, b);
    } else {
      if (!allow_fallback) {
        throw DataError("data function " + s.name + " has no derivative sampler");
      }
      const Rect r = rect(face);
      g = {fd_derivative(s.value, a, b, 0, r.lo0, r.hi0),
           fd_derivative(s.value, a, b, 1, r.lo1, r.hi1)};
    }
  } catch (const DataError&) {
    throw;
  } catch (const std::exception& e) {
    throw DataError("derivative of data function " + s.name + " failed: " + e.what());
  }
  if (!std::isfinite(g[0]) || !std::isfinite(g[1])) {
    throw DataError("derivative of data function " + s.name + " is non-finite");
  }
  return g;
}

bool BoundaryData::has_analytic_gradients() const {
  for (int s = 1; s <= 4; ++s) {
    for (DataFace f : {DataFace::Initial, DataFace::XInflow, DataFace::YInflow}) {
      if (!sampler(f, s).gradient) return false;
    }
  }
  return true;
}

CompatibilityReport check_compatibility(const BoundaryData& data, int samples, double tol) {
  if (samples < 2) throw UsageError("compatibility: need at least 2 samples per edge");
  if (!(tol > 0.0)) throw UsageError("compatibility: tolerance must be positive");

  const SpaceTimeBox& box = data.box();
  CompatibilityReport rep;
  rep.tol = tol;
  rep.samples = samples;

  auto edge_sup = [&](auto lhs, auto rhs, double lo, double hi) {
    double m = 0.0;
    for (int k = 0; k < samples; ++k) {
      const double s = lattice_point(lo, hi, k, samples);
      m = std::max(m, std::abs(lhs(s) - rhs(s)));
    }
    return m;
  };

  std::size_t slot = 0;
  for (int s = 1; s <= 4; ++s) {
    const double xf = data.x_face(s);
    const double yf = data.y_face(s);
    const std::string n0 = sampler_name(DataFace::Initial, s);
    const std::string nx = sampler_name(DataFace::XInflow, s);
    const std::string ny = sampler_name(DataFace::YInflow, s);

    rep.residuals[slot++] = {
        n0 + "(x=" + format_double(xf) + ",y) = " + nx + "(0,y)",
        edge_sup([&](double y) { return data.value(DataFace::Initial, s, xf, y); },
                 [&](double y) { return data.value(DataFace::XInflow, s, 0.0, y); }, box.a2(),
                 box.b2())};
    rep.residuals[slot++] = {
        n0 + "(x,y=" + format_double(yf) + ") = " + ny + "(0,x)",
        edge_sup([&](double x) { return data.value(DataFace::Initial, s, x, yf); },
                 [&](double x) { return data.value(DataFace::YInflow, s, 0.0, x); }, box.a1(),
                 box.b1())};
    rep.residuals[slot++] = {
        nx + "(t,y=" + format_double(yf) + ") = " + ny + "(t,x=" + format_double(xf) + ")",
        edge_sup([&](double t) { return data.value(DataFace::XInflow, s, t, yf); },
                 [&](double t) { return data.value(DataFace::YInflow, s, t, xf); }, 0.0,
                 box.t_end())};
  }
  for (const auto& r : rep.residuals) rep.max_residual = std::max(rep.max_residual, r.residual);

  rep.min_value = std::numeric_limits<double>::infinity();
  for (int s = 1; s <= 4; ++s) {
    for (DataFace f : {DataFace::Initial, DataFace::XInflow, DataFace::YInflow}) {
      const Rect r = data.rect(f);
      for (int i = 0; i < samples; ++i) {
        const double a = lattice_point(r.lo0, r.hi0, i, samples);
        for (int j = 0; j < samples; ++j) {
          const double v = data.value(f, s, a, lattice_point(r.lo1, r.hi1, j, samples));
          if (v < rep.min_value) {
            rep.min_value = v;
            rep.min_function = data.sampler(f, s).name;
          }
        }
      }
    }
  }
  return rep;
}

BoundaryData constant_family(const SpaceTimeBox& box, const std::array<double, 4>& levels) {
  std::array<Sampler, 4> init, xin, yin;
  for (int s = 1; s <= 4; ++s) {
    const double level = levels[s - 1];
    if (!(std::isfinite(level) && level >= 0.0)) {
      throw UsageError("constant_family: level for species " + std::to_string(s) +
                       " must be non-negative");
    }
    auto value = [level](double, double) { return level; };
    auto grad = [](double, double) { return std::array<double, 2>{0.0, 0.0}; };
    init[s - 1] = {sampler_name(DataFace::Initial, s), value, grad};
    xin[s - 1] = {sampler_name(DataFace::XInflow, s), value, grad};
    yin[s - 1] = {sampler_name(DataFace::YInflow, s), value, grad};
  }
  return BoundaryData(box, std::move(init), std::move(xin), std::move(yin));
}

BoundaryData global_family(const SpaceTimeBox& box, std::array<SpaceTimeFunction, 4> fields) {
  std::array<Sampler, 4> init, xin, yin;
  for (int s = 1; s <= 4; ++s) {
    const SpaceTimeFunction g = fields[s - 1];
    if (!g.value) throw UsageError("global_family: missing field for species " + std::to_string(s));
    const double xf = (s == 1 || s == 3) ? box.a1() : box.b1();
    const double yf = s <= 2 ? box.a2() : box.b2();
    init[s - 1].name = sampler_name(DataFace::Initial, s);
    init[s - 1].value = [g](double x, double y) { return g.value(0.0, x, y); };
    xin[s - 1].name = sampler_name(DataFace::XInflow, s);
    xin[s - 1].value = [g, xf](double t, double y) { return g.value(t, xf, y); };
    yin[s - 1].name = sampler_name(DataFace::YInflow, s);
    yin[s - 1].value = [g, yf](double t, double x) { return g.value(t, x, yf); };
    if (g.gradient) {
      init[s - 1].gradient = [g](double x, double y) {
        const auto d = g.gradient(0.0, x, y);
        return std::array<double, 2>{d[1], d[2]};
      };
      xin[s - 1].gradient = [g, xf](double t, double y) {
        const auto d = g.gradient(t, xf, y);
        return std::array<double, 2>{d[0], d[2]};
      };
      yin[s - 1].gradient = [g, yf](double t, double x) {
        const auto d = g.gradient(t, x, yf);
        return std::array<double, 2>{d[0], d[1]};
      };
    }
  }
  return BoundaryData(box, std::move(init), std::move(xin), std::move(yin));
}

BoundaryData transport_family(const SpaceTimeBox& box, const ModelParams& params,
                              std::array<Profile, 4> profiles) {
  std::array<SpaceTimeFunction, 4> fields;
  for (int s = 1; s <= 4; ++s) {
    const Profile phi = profiles[s - 1];
    if (!phi.value) {
      throw UsageError("transport_family: missing profile for species " + std::to_string(s));
    }
    const Vec2 w = velocity_of(s, params);
    fields[s - 1].value = [phi, w](double t, double x, double y) {
      return phi.value(x - w.x * t, y - w.y * t);
    };
    if (phi.gradient) {
      fields[s - 1].gradient = [phi, w](double t, double x, double y) {
        const auto d = phi.gradient(x - w.x * t, y - w.y * t);
        return std::array<double, 3>{-w.x * d[0] - w.y * d[1], d[0], d[1]};
      };
    }
  }
  return global_family(box, std::move(fields));
}

}  // namespace broadwell
