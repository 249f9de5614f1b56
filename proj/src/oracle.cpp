#include "broadwell/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "broadwell/errors.hpp"
#include "broadwell/transport.hpp"

namespace broadwell {

Field4 upwind_solve(const BoundaryData& data, const ModelParams& params, const UpwindConfig& cfg) {
  const GridSpec& g = cfg.grid;
  if (!(g.box() == data.box())) throw UsageError("upwind: grid and data boxes differ");
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw ConfigError("upwind: cfl must lie in (0, 1]");

  const int nx = g.nx(), ny = g.ny();
  const double dx = g.dx(), dy = g.dy();
  std::array<Vec2, 4> w;
  double speed = 0.0;
  for (int s = 1; s <= 4; ++s) {
    w[s - 1] = velocity_of(s, params);
    speed = std::max(speed, std::abs(w[s - 1].x) / dx + std::abs(w[s - 1].y) / dy);
  }
  const double need = std::ceil(g.dt() * speed / cfg.cfl * (1.0 - 1e-12));
  if (need > cfg.max_substeps) {
    throw ConfigError("upwind: " + format_double(need) + " substeps per step exceed the cap of " +
                      std::to_string(cfg.max_substeps));
  }
  const int m = std::max(1, static_cast<int>(need));
  const double h = g.dt() / m;

  const std::size_t plane = static_cast<std::size_t>(nx) * ny;
  auto id = [ny](int i, int j) { return static_cast<std::size_t>(i) * ny + j; };
  std::array<std::vector<double>, 4> cur, nxt;
  for (int s = 1; s <= 4; ++s) {
    cur[s - 1].resize(plane);
    nxt[s - 1].resize(plane);
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) {
        cur[s - 1][id(i, j)] = data.value(DataFace::Initial, s, g.x(i), g.y(j));
      }
    }
  }

  Field4 out(g);
  auto store = [&](int k) {
    for (int s = 1; s <= 4; ++s) {
      for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) out.at(s, k, i, j) = cur[s - 1][id(i, j)];
      }
    }
  };
  store(0);

  for (int k = 0; k + 1 < g.nt(); ++k) {
    for (int sub = 0; sub < m; ++sub) {
      const double t_new = sub + 1 == m ? g.t(k + 1) : g.t(k) + (sub + 1) * h;
      for (int s = 1; s <= 4; ++s) {
        const Vec2 v = w[s - 1];
        const int sign = collision_sign(s);
        const int i_in = v.x > 0.0 ? 0 : nx - 1;
        const int j_in = v.y > 0.0 ? 0 : ny - 1;
        const std::vector<double>& c = cur[s - 1];
        std::vector<double>& n = nxt[s - 1];
        for (int i = 0; i < nx; ++i) {
          for (int j = 0; j < ny; ++j) {
            if (i == i_in) {
              n[id(i, j)] = data.value(DataFace::XInflow, s, t_new, g.y(j));
              continue;
            }
            if (j == j_in) {
              n[id(i, j)] = data.value(DataFace::YInflow, s, t_new, g.x(i));
              continue;
            }
            const double here = c[id(i, j)];
            const double ddx = v.x > 0.0 ? (here - c[id(i - 1, j)]) / dx
                                         : (c[id(i + 1, j)] - here) / dx;
            const double ddy = v.y > 0.0 ? (here - c[id(i, j - 1)]) / dy
                                         : (c[id(i, j + 1)] - here) / dy;
            const State st{cur[0][id(i, j)], cur[1][id(i, j)], cur[2][id(i, j)],
                           cur[3][id(i, j)]};
            n[id(i, j)] = here - h * (v.x * ddx + v.y * ddy) + h * sign * collision(st, params);
          }
        }
      }
      std::swap(cur, nxt);
    }
    store(k + 1);
  }
  return out;
}

Field4 free_streaming_exact(const BoundaryData& data, const ModelParams& params,
                            const GridSpec& grid) {
  return free_streaming(data, params, grid);
}

ComparisonReport compare(const Field4& a, const Field4& b) {
  const GridSpec& ga = a.grid();
  const GridSpec& gb = b.grid();
  if (!(ga.box() == gb.box())) throw UsageError("compare: fields cover different boxes");
  const bool same = ga == gb;

  ComparisonReport rep;
  rep.grid_a = ga.label();
  rep.grid_b = gb.label();
  double total_sq = 0.0;
  for (int s = 1; s <= 4; ++s) {
    double sup = 0.0, sq = 0.0;
    for (int k = 0; k < ga.nt(); ++k) {
      for (int i = 0; i < ga.nx(); ++i) {
        for (int j = 0; j < ga.ny(); ++j) {
          const double bv = same ? b.at(s, k, i, j) : b.sample(s, ga.t(k), ga.x(i), ga.y(j));
          const double d = std::abs(a.at(s, k, i, j) - bv);
          sup = std::max(sup, d);
          sq += d * d;
        }
      }
    }
    rep.species_sup[s - 1] = sup;
    rep.species_rms[s - 1] = std::sqrt(sq / static_cast<double>(ga.size()));
    rep.sup = std::max(rep.sup, sup);
    total_sq += sq;
  }
  rep.rms = std::sqrt(total_sq / (4.0 * static_cast<double>(ga.size())));
  return rep;
}

}  // namespace broadwell
