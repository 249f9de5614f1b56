#include "broadwell/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "broadwell/errors.hpp"

namespace broadwell {

ModelParams::ModelParams(double c, double S, double theta)
    : c_(c), S_(S), theta_(theta), cos_(std::cos(theta)), sin_(std::sin(theta)) {
  if (!(std::isfinite(c) && c > 0.0)) {
    throw UsageError("model: wave speed c must be positive, got " + std::to_string(c));
  }
  if (!(std::isfinite(S) && S >= 0.0)) {
    throw UsageError("model: cross-section S must be non-negative, got " + std::to_string(S));
  }
  if (!(std::isfinite(theta) && theta > 0.0 && theta < std::numbers::pi / 2.0)) {
    throw UsageError("model: theta must lie strictly inside (0, pi/2), got " +
                     std::to_string(theta));
  }
}

SpaceTimeBox::SpaceTimeBox(double a1, double b1, double a2, double b2, double t_end)
    : a1_(a1), b1_(b1), a2_(a2), b2_(b2), t_end_(t_end) {
  if (!(std::isfinite(a1) && std::isfinite(b1) && a1 < b1)) {
    throw UsageError("box: require a1 < b1");
  }
  if (!(std::isfinite(a2) && std::isfinite(b2) && a2 < b2)) {
    throw UsageError("box: require a2 < b2");
  }
  if (!(std::isfinite(t_end) && t_end > 0.0)) {
    throw UsageError("box: require T > 0");
  }
}

bool SpaceTimeBox::contains(double t, double x, double y, double tol) const {
  return t >= -tol && t <= t_end_ + tol && x >= a1_ - tol && x <= b1_ + tol && y >= a2_ - tol &&
         y <= b2_ + tol;
}

void check_species(int i) {
  if (i < 1 || i > 4) {
    throw UsageError("species index must be in 1..4, got " + std::to_string(i));
  }
}

int collision_sign(int i) {
  check_species(i);
  return (i == 1 || i == 4) ? 1 : -1;
}

Vec2 velocity_of(int i, const ModelParams& params) {
  check_species(i);
  const double cc = params.c() * params.cos_theta();
  const double cs = params.c() * params.sin_theta();
  switch (i) {
    case 1:
      return {cc, cs};
    case 2:
      return {-cs, cc};
    case 3:
      return {cs, -cc};
    default:
      return {-cc, -cs};
  }
}

Species species(int i, const ModelParams& params) {
  return Species{i, velocity_of(i, params), collision_sign(i)};
}

double collision(const State& n, const ModelParams& params) {
  return params.collision_rate() * (n[1] * n[2] - n[0] * n[3]);
}

double density(const State& n) { return n[0] + n[1] + n[2] + n[3]; }

double regularized_collision(int i, const State& n, double sigma, const ModelParams& params) {
  return sigma * density(n) * n[i - 1] + collision_sign(i) * collision(n, params);
}

}  // namespace broadwell
