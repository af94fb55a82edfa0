// Copyright 2026 The ce-surf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include "cesurf/geometry.hpp"
#include "cesurf/raster.hpp"
#include "cesurf/surface.hpp"

namespace cesurf {

/// Line-of-sight angles in degrees. Azimuth is measured from the -y axis,
/// counterclockwise about +z, and normalized into [0, 360). Elevation is the
/// angle above the x-y plane and must lie in [-90, 90].
class ViewPose {
 public:
  ViewPose(double azimuth_deg, double elevation_deg);

  double azimuth_deg() const noexcept { return az_; }
  double elevation_deg() const noexcept { return el_; }

  friend bool operator==(const ViewPose&, const ViewPose&) = default;

 private:
  double az_;
  double el_;
};

/// Unit vector from the plot center toward the camera:
/// (cos el sin az, -cos el cos az, sin el).
Vec3 line_of_sight(const ViewPose& pose);

/// Orthonormal screen frame for a pose. `toward_camera` is the line of sight,
/// `right` stays horizontal and `up` completes a right-handed frame.
struct ViewBasis {
  Vec3 right;
  Vec3 up;
  Vec3 toward_camera;
};

ViewBasis view_basis(const ViewPose& pose);

struct RenderSettings {
  int out_width = 512;
  int out_height = 512;
  Rgb background{0, 0, 0};
  double z_exaggeration = 1.0;
};

/// Orthographic, z-buffered, flat-shaded render of the surface's quad mesh.
/// The projection is centered and scaled to fill 95% of the frame. Triangles
/// that cover less than one pixel of area are also traced along their edges,
/// so edge-on sheets and single-row surfaces still show as lines.
RasterImage render_surface(const SurfaceGrid& surf, const ViewPose& pose,
                           const RenderSettings& settings = {});

/// Fraction of pixels whose color differs from `background`.
double coverage_fraction(const RasterImage& render, Rgb background);

}  // namespace cesurf
