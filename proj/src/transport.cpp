#include "broadwell/transport.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "broadwell/characteristics.hpp"
#include "broadwell/errors.hpp"
#include "broadwell/parallel.hpp"

namespace broadwell {

namespace {

void check_inputs(const Field4& M, const BoundaryData& data, const QuadratureSpec& quad) {
  if (!(std::isfinite(quad.max_step) && quad.max_step > 0.0)) {
    throw UsageError("quadrature: max_step must be positive, got " +
                     format_double(quad.max_step));
  }
  if (!(M.grid().box() == data.box())) {
    throw UsageError("operator: field grid and data live on different boxes");
  }
  if (!M.all_finite()) throw DataError("operator: input field contains non-finite values");
}

int steps_for(double s_max, double max_step) {
  if (s_max <= 0.0) return 0;
  return std::max(1, static_cast<int>(std::ceil(s_max / max_step * (1.0 - 1e-12))));
}

// Visits every node, parallel over (k, i) rows.
template <class Body>
void for_each_node(const GridSpec& g, Body&& body) {
  const std::size_t rows = static_cast<std::size_t>(g.nt()) * g.nx();
  parallel_for(rows, [&](std::size_t r) {
    const int k = static_cast<int>(r / g.nx());
    const int i = static_cast<int>(r % g.nx());
    for (int j = 0; j < g.ny(); ++j) body(k, i, j);
  });
}

// exp(a) - 1 over a, stable near 0.
double phi1(double a) { return std::abs(a) < 1e-8 ? 1.0 + 0.5 * a : std::expm1(a) / a; }

State abs_state(State m) {
  for (double& v : m) v = std::abs(v);
  return m;
}

}  // namespace

QuadratureSpec default_quadrature(const GridSpec& grid, const ModelParams& params) {
  return {std::min({grid.dt(), grid.dx() / params.c(), grid.dy() / params.c()})};
}

OperatorOutput apply_T(const Field4& M, const BoundaryData& data, const ModelParams& params,
                       const QuadratureSpec& quad) {
  check_inputs(M, data, quad);
  const GridSpec& g = M.grid();
  const SpaceTimeBox& box = g.box();
  const double rate = params.collision_rate();
  OperatorOutput out{Field4(g), std::nullopt, Provenance::Plain};

  for_each_node(g, [&](int k, int i, int j) {
    const double t = g.t(k), x = g.x(i), y = g.y(j);
    for (int s = 1; s <= 4; ++s) {
      const CharFoot f = trace_geometry(s, t, x, y, params, box);
      double v = data.value(face_of(f.region), s, f.foot[0], f.foot[1]);
      if (rate > 0.0 && f.s_max > 0.0) {
        const Vec2 w = velocity_of(s, params);
        const int n = steps_for(f.s_max, quad.max_step);
        const double h = f.s_max / n;
        double acc = 0.0;
        for (int q = 0; q <= n; ++q) {
          const double back = q == n ? 0.0 : f.s_max - q * h;
          const double qv = collision(M.sample4(t - back, x - w.x * back, y - w.y * back), params);
          acc += (q == 0 || q == n) ? 0.5 * qv : qv;
        }
        v += collision_sign(s) * h * acc;
      }
      out.field.at(s, k, i, j) = v;
    }
  });
  return out;
}

OperatorOutput apply_T_sigma(const Field4& M, double sigma, const BoundaryData& data,
                             const ModelParams& params, const QuadratureSpec& quad, bool unsafe) {
  check_inputs(M, data, quad);
  if (!(std::isfinite(sigma) && sigma >= 0.0)) {
    throw UsageError("sigma must be finite and non-negative, got " + format_double(sigma));
  }
  if (!unsafe && sigma < params.collision_rate()) {
    throw UsageError("sigma = " + format_double(sigma) + " is below 2cS = " +
                     format_double(params.collision_rate()) +
                     "; positivity is not guaranteed (use the unsafe override)");
  }
  const GridSpec& g = M.grid();
  const SpaceTimeBox& box = g.box();
  OperatorOutput out{Field4(g), std::nullopt, Provenance::SigmaRegularized};

  const std::size_t rows = static_cast<std::size_t>(g.nt()) * g.nx();
  parallel_for(rows, [&](std::size_t r) {
    const int k = static_cast<int>(r / g.nx());
    const int i = static_cast<int>(r % g.nx());
    std::vector<double> rho, src, P;
    for (int j = 0; j < g.ny(); ++j) {
      const double t = g.t(k), x = g.x(i), y = g.y(j);
      for (int s = 1; s <= 4; ++s) {
        const CharFoot f = trace_geometry(s, t, x, y, params, box);
        double v = data.value(face_of(f.region), s, f.foot[0], f.foot[1]);
        if (f.s_max > 0.0) {
          const Vec2 w = velocity_of(s, params);
          const int n = steps_for(f.s_max, quad.max_step);
          const double h = f.s_max / n;
          rho.resize(n + 1);
          src.resize(n + 1);
          P.resize(n + 1);
          for (int q = 0; q <= n; ++q) {
            const double back = q == n ? 0.0 : f.s_max - q * h;
            const State m = abs_state(M.sample4(t - back, x - w.x * back, y - w.y * back));
            rho[q] = density(m);
            src[q] = regularized_collision(s, m, sigma, params);
          }
          P[0] = 0.0;
          for (int q = 0; q < n; ++q) P[q + 1] = P[q] + 0.5 * h * (rho[q] + rho[q + 1]);
          double acc = 0.0;
          for (int q = 0; q < n; ++q) {
            const double a = sigma * (P[q + 1] - P[q]);
            acc += h * std::exp(sigma * (P[q] - P[n])) * phi1(a) * 0.5 * (src[q] + src[q + 1]);
          }
          v = v * std::exp(-sigma * P[n]) + acc;
        }
        out.field.at(s, k, i, j) = v;
      }
    }
  });
  return out;
}

FieldPartials apply_T_derivatives(const Field4& M, const FieldPartials& M_parts,
                                  const BoundaryData& data, const ModelParams& params,
                                  const QuadratureSpec& quad, bool allow_fd_fallback) {
  check_inputs(M, data, quad);
  if (!(M_parts.grid() == M.grid())) {
    throw UsageError("apply_T_derivatives: partials live on a different grid");
  }
  const GridSpec& g = M.grid();
  const SpaceTimeBox& box = g.box();
  const double rate = params.collision_rate();
  FieldPartials out(g, PartialsSource::DerivativeFormulas);

  // gradient of Q at a space-time point, from interpolated M and partials
  auto grad_q = [&](double t, double x, double y) {
    const State m = M.sample4(t, x, y);
    std::array<double, 3> gq{};
    const Field4* parts[3] = {&M_parts.dt, &M_parts.dx, &M_parts.dy};
    for (int a = 0; a < 3; ++a) {
      const State d = parts[a]->sample4(t, x, y);
      gq[a] = rate * (d[1] * m[2] + m[1] * d[2] - d[0] * m[3] - m[0] * d[3]);
    }
    return gq;
  };

  for_each_node(g, [&](int k, int i, int j) {
    const double t = g.t(k), x = g.x(i), y = g.y(j);
    const State mz = M.sample4(t, x, y);
    const double qz = collision(mz, params);
    for (int s = 1; s <= 4; ++s) {
      const CharFoot f = trace_geometry(s, t, x, y, params, box);
      const Vec2 w = velocity_of(s, params);
      const std::array<double, 3> wv{1.0, w.x, w.y};
      const auto gd = data.gradient(face_of(f.region), s, f.foot[0], f.foot[1], allow_fd_fallback);

      std::array<double, 3> ds{};
      std::array<double, 3> d{};
      switch (f.region) {
        case Region::A:
          ds = {1.0, 0.0, 0.0};
          d = {-w.x * gd[0] - w.y * gd[1], gd[0], gd[1]};
          break;
        case Region::B:
          ds = {0.0, 1.0 / w.x, 0.0};
          d = {gd[0], -gd[0] / w.x - (w.y / w.x) * gd[1], gd[1]};
          break;
        case Region::C:
          ds = {0.0, 0.0, 1.0 / w.y};
          d = {gd[0], gd[1], -gd[0] / w.y - (w.x / w.y) * gd[1]};
          break;
      }

      if (rate > 0.0) {
        std::array<double, 3> integral{};
        double along = 0.0;
        if (f.s_max > 0.0) {
          const int n = steps_for(f.s_max, quad.max_step);
          const double h = f.s_max / n;
          for (int q = 0; q <= n; ++q) {
            const double back = q == n ? 0.0 : f.s_max - q * h;
            const auto gq = grad_q(t - back, x - w.x * back, y - w.y * back);
            const double wt = (q == 0 || q == n) ? 0.5 * h : h;
            for (int a = 0; a < 3; ++a) integral[a] += wt * gq[a];
            along += wt * (gq[0] * wv[0] + gq[1] * wv[1] + gq[2] * wv[2]);
          }
        }
        const int sign = collision_sign(s);
        for (int a = 0; a < 3; ++a) d[a] += sign * (qz * ds[a] + integral[a] - ds[a] * along);
      }
      out.dt.at(s, k, i, j) = d[0];
      out.dx.at(s, k, i, j) = d[1];
      out.dy.at(s, k, i, j) = d[2];
    }
  });
  return out;
}

Field4 free_streaming(const BoundaryData& data, const ModelParams& params, const GridSpec& grid) {
  if (!(grid.box() == data.box())) {
    throw UsageError("free_streaming: grid and data live on different boxes");
  }
  Field4 out(grid);
  for_each_node(grid, [&](int k, int i, int j) {
    for (int s = 1; s <= 4; ++s) {
      const CharFoot f = foot(s, grid.t(k), grid.x(i), grid.y(j), params, data);
      out.at(s, k, i, j) = f.trace_value;
    }
  });
  return out;
}

}  // namespace broadwell
