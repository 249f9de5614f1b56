#include "broadwell/characteristics.hpp"

#include <algorithm>
#include <limits>

#include "broadwell/errors.hpp"
#include "broadwell/fields.hpp"

namespace broadwell {

namespace {

double slack(double lo, double hi) { return 1e-12 * std::max(1.0, hi - lo); }

double x_face_of(int species, const SpaceTimeBox& box) {
  return (species == 1 || species == 3) ? box.a1() : box.b1();
}

double y_face_of(int species, const SpaceTimeBox& box) {
  return species <= 2 ? box.a2() : box.b2();
}

}  // namespace

char region_letter(Region r) {
  switch (r) {
    case Region::A:
      return 'A';
    case Region::B:
      return 'B';
    default:
      return 'C';
  }
}

DataFace face_of(Region r) {
  switch (r) {
    case Region::A:
      return DataFace::Initial;
    case Region::B:
      return DataFace::XInflow;
    default:
      return DataFace::YInflow;
  }
}

CharFoot trace_geometry(int species, double t, double x, double y, const ModelParams& params,
                        const SpaceTimeBox& box) {
  check_species(species);
  const double tol = std::max({slack(0.0, box.t_end()), slack(box.a1(), box.b1()),
                               slack(box.a2(), box.b2())});
  if (!box.contains(t, x, y, tol)) {
    throw DomainError("characteristic: point (" + format_double(t) + ", " + format_double(x) +
                      ", " + format_double(y) + ") lies outside the box");
  }
  t = std::clamp(t, 0.0, box.t_end());
  x = std::clamp(x, box.a1(), box.b1());
  y = std::clamp(y, box.a2(), box.b2());

  const Vec2 w = velocity_of(species, params);
  const double t_b = std::max(0.0, (x - x_face_of(species, box)) / w.x);
  const double t_c = std::max(0.0, (y - y_face_of(species, box)) / w.y);

  CharFoot f;
  if (t <= t_b && t <= t_c) {
    f.region = Region::A;
    f.s_max = t;
    f.foot = {std::clamp(x - w.x * t, box.a1(), box.b1()),
              std::clamp(y - w.y * t, box.a2(), box.b2())};
  } else if (t_b <= t_c) {
    f.region = Region::B;
    f.s_max = t_b;
    f.foot = {std::clamp(t - t_b, 0.0, box.t_end()),
              std::clamp(y - w.y * t_b, box.a2(), box.b2())};
  } else {
    f.region = Region::C;
    f.s_max = t_c;
    f.foot = {std::clamp(t - t_c, 0.0, box.t_end()),
              std::clamp(x - w.x * t_c, box.a1(), box.b1())};
  }
  if (f.s_max > t + 1e-12) {
    throw InternalError("characteristic: travel time exceeds elapsed time");
  }
  return f;
}

Region classify(int species, double t, double x, double y, const ModelParams& params,
                const SpaceTimeBox& box) {
  return trace_geometry(species, t, x, y, params, box).region;
}

CharFoot foot(int species, double t, double x, double y, const ModelParams& params,
              const BoundaryData& data) {
  CharFoot f = trace_geometry(species, t, x, y, params, data.box());
  f.trace_value = data.value(face_of(f.region), species, f.foot[0], f.foot[1]);
  return f;
}

std::array<double, 3> path_point(int species, double t, double x, double y, const CharFoot& f,
                                 double s, const ModelParams& params) {
  const double tol = 1e-12 * std::max(1.0, f.s_max);
  if (!(s >= -tol && s <= f.s_max + tol)) {
    throw UsageError("path_point: offset " + format_double(s) + " outside [0, " +
                     format_double(f.s_max) + "]");
  }
  const double back = f.s_max - std::clamp(s, 0.0, f.s_max);
  const Vec2 w = velocity_of(species, params);
  return {t - back, x - w.x * back, y - w.y * back};
}

}  // namespace broadwell
