#pragma once

#include <array>

#include "broadwell/boundary_data.hpp"
#include "broadwell/model.hpp"

namespace broadwell {

/// Where the backward characteristic leaves the box: A through t = 0, B
/// through the species' x-inflow face, C through its y-inflow face.
enum class Region { A, B, C };

char region_letter(Region r);

/// Backward exit record. `foot` holds (x0, y0) for region A and the face
/// coordinates (t0, tangential) for B and C.
struct CharFoot {
  Region region = Region::A;
  double s_max = 0.0;
  std::array<double, 2> foot{};
  double trace_value = 0.0;
};

/// Region of the backward characteristic through (t,x,y). Ties on the region
/// planes go to A, then B. Throws DomainError outside the box.
Region classify(int species, double t, double x, double y, const ModelParams& params,
                const SpaceTimeBox& box);

/// Same as foot() without the data trace.
CharFoot trace_geometry(int species, double t, double x, double y, const ModelParams& params,
                        const SpaceTimeBox& box);

CharFoot foot(int species, double t, double x, double y, const ModelParams& params,
              const BoundaryData& data);

/// The data face a region reads from.
DataFace face_of(Region r);

/// Point of the backward segment at offset s from the foot (s = 0 is the
/// foot, s = s_max the evaluation point), as (t, x, y).
std::array<double, 3> path_point(int species, double t, double x, double y, const CharFoot& f,
                                 double s, const ModelParams& params);

}  // namespace broadwell
