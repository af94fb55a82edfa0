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

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cesurf/geometry.hpp"
#include "cesurf/surface.hpp"

namespace cesurf {

struct TriangleMesh {
  std::vector<Vec3> vertices;
  /// Counterclockwise when seen from outside the solid.
  std::vector<std::array<std::uint32_t, 3>> triangles;
};

struct PrintParams {
  double z_scale = 1.0;
  double base_offset = 1.0;
};

/// z_scale makes the Z range 20% of the footprint's longer side; base_offset
/// is 5% of that side. A flat surface keeps z_scale = 1.
PrintParams default_print_params(const SurfaceGrid& surf);

/// Closes the height field into a solid: the top sheet (two triangles per
/// cell), a single-quad floor at min(Z) * z_scale - base_offset, and four
/// walls joining the boundary ring to the floor corners. Produces
/// H * W + 4 vertices and 2(H-1)(W-1) + 2(H+W) + 2 triangles.
TriangleMesh surface_to_mesh(const SurfaceGrid& surf, double base_offset, double z_scale);

struct MeshReport {
  std::size_t vertex_count = 0;
  std::size_t edge_count = 0;
  std::size_t face_count = 0;
  long long euler_characteristic = 0;
  std::size_t invalid_indices = 0;
  std::size_t degenerate_triangles = 0;
  std::size_t boundary_edges = 0;      ///< edges used by one triangle
  std::size_t nonmanifold_edges = 0;   ///< edges used by three or more
  std::size_t orientation_errors = 0;  ///< edges traversed twice in one direction
  double signed_volume = 0.0;

  bool passed() const;
  /// Human-readable list of violated invariants; empty when passed().
  std::vector<std::string> failures() const;
};

MeshReport validate_mesh(const TriangleMesh& mesh);

/// Divergence-theorem volume; positive for outward-oriented closed meshes.
double signed_volume(const TriangleMesh& mesh);

inline constexpr std::string_view kStlHeader = "ce-surf heightfield v1";

/// Binary little-endian STL; file size is exactly 84 + 50 * triangle count.
void export_stl(const TriangleMesh& mesh, const std::filesystem::path& path);

}  // namespace cesurf
