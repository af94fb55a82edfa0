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


#include "cesurf/printmesh.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "cesurf/error.hpp"

namespace cesurf {

namespace {

using Tri = std::array<std::uint32_t, 3>;

struct WallPoint {
  std::uint32_t vertex;
  double u;  // position along the wall
  double w;  // height
};

double orient(const WallPoint& a, const WallPoint& b, const WallPoint& c) {
  return (b.u - a.u) * (c.w - a.w) - (b.w - a.w) * (c.u - a.u);
}

// Triangulates one side wall: the top chain `top` (left to right along the
// wall, heights above the floor) plus the two floor corners. The polygon is
// monotone along u and lies below the top chain, so a chain vertex is an ear
// when the chain turns strictly right there. Collinear runs are never cut,
// which keeps zero-area triangles out.
// Triangles come out counterclockwise in (u, w).
void triangulate_wall(const std::vector<WallPoint>& top, const WallPoint& floor_start,
                      const WallPoint& floor_end, std::vector<Tri>& out) {
  auto emit = [&out](const WallPoint& a, const WallPoint& b, const WallPoint& c) {
    if (!(orient(a, b, c) > 0.0)) {
      throw std::logic_error("wall triangulation produced a non-CCW triangle");
    }
    out.push_back({a.vertex, b.vertex, c.vertex});
  };

  std::vector<WallPoint> stack{floor_start, top.front()};
  for (std::size_t k = 1; k < top.size(); ++k) {
    const WallPoint& cur = top[k];
    WallPoint last = stack.back();
    stack.pop_back();
    while (!stack.empty() && orient(stack.back(), last, cur) < 0.0) {
      emit(stack.back(), cur, last);
      last = stack.back();
      stack.pop_back();
    }
    stack.push_back(last);
    stack.push_back(cur);
  }
  // What remains turns left throughout, so the far floor corner sees all of it.
  for (std::size_t k = 0; k + 1 < stack.size(); ++k) {
    emit(stack[k + 1], stack[k], floor_end);
  }
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f32(std::vector<std::uint8_t>& out, double v) {
  put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
}

}  // namespace

PrintParams default_print_params(const SurfaceGrid& surf) {
  if (surf.empty()) throw_invalid_argument("default_print_params: empty surface");
  const auto [lo, hi] = std::minmax_element(surf.zgrid.begin(), surf.zgrid.end());
  const double side = std::max(1, std::max(surf.width, surf.height) - 1);
  PrintParams p;
  const double range = *hi - *lo;
  p.z_scale = range > 0.0 ? 0.2 * side / range : 1.0;
  p.base_offset = 0.05 * side;
  return p;
}

TriangleMesh surface_to_mesh(const SurfaceGrid& surf, double base_offset, double z_scale) {
  if (surf.width < 2 || surf.height < 2) {
    throw_invalid_argument("surface_to_mesh needs at least a 2x2 surface");
  }
  if (!(base_offset > 0.0) || !std::isfinite(base_offset)) {
    throw_invalid_argument("base_offset must be positive");
  }
  if (!(z_scale > 0.0) || !std::isfinite(z_scale)) {
    throw_invalid_argument("z_scale must be positive");
  }

  const int rows = surf.height;
  const int cols = surf.width;
  TriangleMesh mesh;
  mesh.vertices.reserve(surf.zgrid.size() + 4);
  double zmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double z = surf.z(i, j) * z_scale;
      mesh.vertices.push_back({surf.x(i, j), surf.y(i, j), z});
      zmin = std::min(zmin, z);
    }
  }
  const double floor_z = zmin - base_offset;

  auto top = [&](int i, int j) { return static_cast<std::uint32_t>(surf.index(i, j)); };
  const auto base = static_cast<std::uint32_t>(mesh.vertices.size());
  const std::uint32_t f00 = base, f01 = base + 1, f10 = base + 2, f11 = base + 3;
  mesh.vertices.push_back({surf.x(0, 0), surf.y(0, 0), floor_z});
  mesh.vertices.push_back({surf.x(0, cols - 1), surf.y(0, cols - 1), floor_z});
  mesh.vertices.push_back({surf.x(rows - 1, 0), surf.y(rows - 1, 0), floor_z});
  mesh.vertices.push_back({surf.x(rows - 1, cols - 1), surf.y(rows - 1, cols - 1), floor_z});

  auto& tris = mesh.triangles;
  tris.reserve(2 * static_cast<std::size_t>(rows - 1) * (cols - 1) + 2 * (rows + cols) + 2);

  // Top sheet, same split as the renderer: lower-left triangle first.
  for (int i = 0; i + 1 < rows; ++i) {
    for (int j = 0; j + 1 < cols; ++j) {
      tris.push_back({top(i, j), top(i, j + 1), top(i + 1, j)});
      tris.push_back({top(i, j + 1), top(i + 1, j + 1), top(i + 1, j)});
    }
  }
  // Floor faces -z.
  tris.push_back({f00, f10, f01});
  tris.push_back({f01, f10, f11});

  // Walls follow the boundary ring counterclockwise seen from +z, so a
  // counterclockwise (u, w) triangle has an outward normal.
  auto wall = [&](std::vector<std::uint32_t> ring, std::uint32_t start, std::uint32_t end) {
    std::vector<WallPoint> chain;
    chain.reserve(ring.size());
    for (std::size_t k = 0; k < ring.size(); ++k) {
      chain.push_back({ring[k], static_cast<double>(k), mesh.vertices[ring[k]].z});
    }
    const WallPoint s{start, 0.0, floor_z};
    const WallPoint e{end, static_cast<double>(ring.size() - 1), floor_z};
    triangulate_wall(chain, s, e, tris);
  };
  std::vector<std::uint32_t> ring;
  for (int j = 0; j < cols; ++j) ring.push_back(top(0, j));
  wall(ring, f00, f01);
  ring.clear();
  for (int i = 0; i < rows; ++i) ring.push_back(top(i, cols - 1));
  wall(ring, f01, f11);
  ring.clear();
  for (int j = cols - 1; j >= 0; --j) ring.push_back(top(rows - 1, j));
  wall(ring, f11, f10);
  ring.clear();
  for (int i = rows - 1; i >= 0; --i) ring.push_back(top(i, 0));
  wall(ring, f10, f00);

  return mesh;
}

double signed_volume(const TriangleMesh& mesh) {
  double six_v = 0.0;
  for (const Tri& t : mesh.triangles) {
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    six_v += dot(a, cross(b, c));
  }
  return six_v / 6.0;
}

bool MeshReport::passed() const { return failures().empty(); }

std::vector<std::string> MeshReport::failures() const {
  std::vector<std::string> out;
  if (invalid_indices) out.push_back(std::to_string(invalid_indices) + " invalid vertex indices");
  if (degenerate_triangles) {
    out.push_back(std::to_string(degenerate_triangles) + " degenerate triangles");
  }
  if (boundary_edges) out.push_back(std::to_string(boundary_edges) + " boundary edges");
  if (nonmanifold_edges) out.push_back(std::to_string(nonmanifold_edges) + " non-manifold edges");
  if (orientation_errors) {
    out.push_back(std::to_string(orientation_errors) + " inconsistently oriented edges");
  }
  if (euler_characteristic != 2) {
    out.push_back("Euler characteristic " + std::to_string(euler_characteristic) + " != 2");
  }
  if (!(signed_volume > 0.0)) out.push_back("signed volume is not positive");
  return out;
}

MeshReport validate_mesh(const TriangleMesh& mesh) {
  MeshReport r;
  r.vertex_count = mesh.vertices.size();
  r.face_count = mesh.triangles.size();

  // Half-edges keyed by (min, max); `forward` records a < b traversal.
  struct HalfEdge {
    std::uint32_t lo;
    std::uint32_t hi;
    bool forward;
  };
  std::vector<HalfEdge> half;
  half.reserve(mesh.triangles.size() * 3);
  bool indices_ok = true;
  for (const Tri& t : mesh.triangles) {
    bool tri_ok = true;
    for (std::uint32_t v : t) {
      if (v >= mesh.vertices.size()) {
        ++r.invalid_indices;
        tri_ok = false;
      }
    }
    if (!tri_ok) {
      indices_ok = false;
      continue;
    }
    const Vec3& a = mesh.vertices[t[0]];
    const Vec3& b = mesh.vertices[t[1]];
    const Vec3& c = mesh.vertices[t[2]];
    const double longest =
        std::max({dot(b - a, b - a), dot(c - b, c - b), dot(a - c, a - c)});
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2] ||
        norm(cross(b - a, c - a)) <= 1e-12 * longest) {
      ++r.degenerate_triangles;
    }
    for (int k = 0; k < 3; ++k) {
      const std::uint32_t p = t[k];
      const std::uint32_t q = t[(k + 1) % 3];
      half.push_back({std::min(p, q), std::max(p, q), p < q});
    }
  }
  std::sort(half.begin(), half.end(), [](const HalfEdge& x, const HalfEdge& y) {
    return x.lo != y.lo ? x.lo < y.lo : x.hi < y.hi;
  });
  for (std::size_t k = 0; k < half.size();) {
    std::size_t end = k;
    std::size_t forward = 0;
    while (end < half.size() && half[end].lo == half[k].lo && half[end].hi == half[k].hi) {
      forward += half[end].forward ? 1 : 0;
      ++end;
    }
    const std::size_t uses = end - k;
    ++r.edge_count;
    if (uses == 1) {
      ++r.boundary_edges;
    } else if (uses > 2) {
      ++r.nonmanifold_edges;
    } else if (forward != 1) {
      ++r.orientation_errors;
    }
    k = end;
  }
  r.euler_characteristic = static_cast<long long>(r.vertex_count) -
                           static_cast<long long>(r.edge_count) +
                           static_cast<long long>(r.face_count);
  r.signed_volume = indices_ok ? signed_volume(mesh) : 0.0;
  return r;
}

void export_stl(const TriangleMesh& mesh, const std::filesystem::path& path) {
  std::vector<std::uint8_t> bytes(80, 0);
  std::copy(kStlHeader.begin(), kStlHeader.end(), bytes.begin());
  bytes.reserve(84 + 50 * mesh.triangles.size());
  put_u32(bytes, static_cast<std::uint32_t>(mesh.triangles.size()));
  for (const Tri& t : mesh.triangles) {
    const Vec3& a = mesh.vertices.at(t[0]);
    const Vec3& b = mesh.vertices.at(t[1]);
    const Vec3& c = mesh.vertices.at(t[2]);
    Vec3 n = cross(b - a, c - a);
    const double len = norm(n);
    if (len > 0.0) n = (1.0 / len) * n;
    for (const Vec3& v : {n, a, b, c}) {
      put_f32(bytes, v.x);
      put_f32(bytes, v.y);
      put_f32(bytes, v.z);
    }
    put_u16(bytes, 0);
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo,
                "cannot open '" + path.string() + "' for writing: " + std::strerror(errno),
                path.string());
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path.string() + "'", path.string());
}

}  // namespace cesurf
