#pragma once

#include <array>

namespace broadwell {

/// Densities of the four species at one space-time point.
using State = std::array<double, 4>;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Physical constants of the planar four-velocity model.
///
/// The velocity angle must lie strictly inside (0, pi/2): every region
/// formula divides by both cos(theta) and sin(theta). S = 0 is accepted and
/// means collisionless free streaming.
class ModelParams {
 public:
  ModelParams(double c, double S, double theta);

  double c() const { return c_; }
  double S() const { return S_; }
  double theta() const { return theta_; }
  double cos_theta() const { return cos_; }
  double sin_theta() const { return sin_; }

  /// 2cS, the prefactor of the collision term.
  double collision_rate() const { return 2.0 * c_ * S_; }

 private:
  double c_;
  double S_;
  double theta_;
  double cos_;
  double sin_;
};

/// The space-time domain [0,T] x [a1,b1] x [a2,b2].
class SpaceTimeBox {
 public:
  SpaceTimeBox(double a1, double b1, double a2, double b2, double t_end);

  double a1() const { return a1_; }
  double b1() const { return b1_; }
  double a2() const { return a2_; }
  double b2() const { return b2_; }
  double t_end() const { return t_end_; }
  double width() const { return b1_ - a1_; }
  double height() const { return b2_ - a2_; }

  /// Membership with absolute slack `tol` on every face.
  bool contains(double t, double x, double y, double tol = 0.0) const;

  friend bool operator==(const SpaceTimeBox&, const SpaceTimeBox&) = default;

 private:
  double a1_;
  double b1_;
  double a2_;
  double b2_;
  double t_end_;
};

/// One of the four species, numbered 1..4.
struct Species {
  int index = 1;
  Vec2 velocity;
  /// +1 for species 1 and 4, -1 for species 2 and 3.
  int collision_sign = 1;
};

/// Throws UsageError unless 1 <= i <= 4.
void check_species(int i);

Species species(int i, const ModelParams& params);
Vec2 velocity_of(int i, const ModelParams& params);
int collision_sign(int i);

/// Q = 2cS (n2 n3 - n1 n4).
double collision(const State& n, const ModelParams& params);

/// rho = n1 + n2 + n3 + n4.
double density(const State& n);

/// sigma * rho(n) * n_i + sign_i * Q(n). Non-negative for n >= 0 when
/// sigma >= 2cS.
double regularized_collision(int i, const State& n, double sigma, const ModelParams& params);

}  // namespace broadwell
