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


#include "cesurf/viewer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "cesurf/error.hpp"

namespace cesurf {

namespace {

constexpr double kFitFraction = 0.95;

double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

struct ScreenVertex {
  double x;
  double y;
  double depth;  // larger is closer to the camera
};

class ZBufferTarget {
 public:
  ZBufferTarget(int width, int height, Rgb background)
      : width_(width),
        height_(height),
        image_(width, height, background),
        depth_(static_cast<std::size_t>(width) * height,
               -std::numeric_limits<double>::infinity()) {}

  void plot(int px, int py, double depth, Rgb color) {
    if (px < 0 || py < 0 || px >= width_ || py >= height_) return;
    double& z = depth_[static_cast<std::size_t>(py) * width_ + px];
    if (depth > z) {
      z = depth;
      image_.set_pixel(px, py, color);
    }
  }

  // Samples the segment at least twice per pixel of length.
  void line(const ScreenVertex& a, const ScreenVertex& b, Rgb color) {
    const double len = std::max(std::abs(b.x - a.x), std::abs(b.y - a.y));
    const int steps = std::max(1, static_cast<int>(std::ceil(2.0 * len)));
    for (int k = 0; k <= steps; ++k) {
      const double t = static_cast<double>(k) / steps;
      plot(static_cast<int>(std::floor(a.x + t * (b.x - a.x))),
           static_cast<int>(std::floor(a.y + t * (b.y - a.y))),
           a.depth + t * (b.depth - a.depth), color);
    }
  }

  // Pixel-center coverage test with inclusive edges.
  void triangle(const ScreenVertex& a, const ScreenVertex& b, const ScreenVertex& c,
                Rgb color) {
    const double area2 = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
    if (std::abs(area2) < 2.0) {
      line(a, b, color);
      line(b, c, color);
      line(c, a, color);
    }
    if (area2 == 0.0) return;

    const int x0 = std::max(0, static_cast<int>(std::floor(std::min({a.x, b.x, c.x}))));
    const int x1 = std::min(width_ - 1, static_cast<int>(std::ceil(std::max({a.x, b.x, c.x}))));
    const int y0 = std::max(0, static_cast<int>(std::floor(std::min({a.y, b.y, c.y}))));
    const int y1 = std::min(height_ - 1, static_cast<int>(std::ceil(std::max({a.y, b.y, c.y}))));
    const double inv = 1.0 / area2;
    for (int py = y0; py <= y1; ++py) {
      const double sy = py + 0.5;
      for (int px = x0; px <= x1; ++px) {
        const double sx = px + 0.5;
        // Barycentric weights, sign-normalized by the triangle's orientation.
        const double wa = ((b.x - sx) * (c.y - sy) - (b.y - sy) * (c.x - sx)) * inv;
        const double wb = ((c.x - sx) * (a.y - sy) - (c.y - sy) * (a.x - sx)) * inv;
        const double wc = 1.0 - wa - wb;
        if (wa < 0.0 || wb < 0.0 || wc < 0.0) continue;
        plot(px, py, wa * a.depth + wb * b.depth + wc * c.depth, color);
      }
    }
  }

  RasterImage take() && { return std::move(image_); }

 private:
  int width_;
  int height_;
  RasterImage image_;
  std::vector<double> depth_;
};

Rgb mean_color(std::initializer_list<Rgb> colors) {
  int r = 0, g = 0, b = 0;
  for (const Rgb& c : colors) {
    r += c.r;
    g += c.g;
    b += c.b;
  }
  const double n = static_cast<double>(colors.size());
  return {quantize(r / n), quantize(g / n), quantize(b / n)};
}

void check_settings(const RenderSettings& s) {
  if (s.out_width < 16 || s.out_height < 16) {
    throw_invalid_argument("render dimensions must be at least 16x16");
  }
  if (!(s.z_exaggeration > 0.0) || !std::isfinite(s.z_exaggeration)) {
    throw_invalid_argument("z_exaggeration must be positive");
  }
}

}  // namespace

ViewPose::ViewPose(double azimuth_deg, double elevation_deg) {
  if (!std::isfinite(azimuth_deg) || !std::isfinite(elevation_deg)) {
    throw_invalid_argument("view angles must be finite");
  }
  if (elevation_deg < -90.0 || elevation_deg > 90.0) {
    throw_invalid_argument("elevation must lie in [-90, 90], got " +
                           std::to_string(elevation_deg));
  }
  az_ = std::fmod(azimuth_deg, 360.0);
  if (az_ < 0.0) az_ += 360.0;
  if (az_ >= 360.0) az_ = 0.0;
  el_ = elevation_deg;
}

Vec3 line_of_sight(const ViewPose& pose) {
  const double az = deg2rad(pose.azimuth_deg());
  const double el = deg2rad(pose.elevation_deg());
  return {std::cos(el) * std::sin(az), -std::cos(el) * std::cos(az), std::sin(el)};
}

ViewBasis view_basis(const ViewPose& pose) {
  const double az = deg2rad(pose.azimuth_deg());
  ViewBasis basis;
  basis.toward_camera = line_of_sight(pose);
  basis.right = {std::cos(az), std::sin(az), 0.0};
  basis.up = cross(basis.toward_camera, basis.right);
  return basis;
}

RasterImage render_surface(const SurfaceGrid& surf, const ViewPose& pose,
                           const RenderSettings& settings) {
  check_settings(settings);
  if (surf.empty()) throw_invalid_argument("render_surface: empty surface");

  const ViewBasis basis = view_basis(pose);
  const std::size_t n = surf.zgrid.size();
  std::vector<ScreenVertex> sv(n);
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3 p{surf.xgrid[k], surf.ygrid[k], surf.zgrid[k] * settings.z_exaggeration};
    sv[k] = {dot(p, basis.right), dot(p, basis.up), dot(p, basis.toward_camera)};
    xmin = std::min(xmin, sv[k].x);
    xmax = std::max(xmax, sv[k].x);
    ymin = std::min(ymin, sv[k].y);
    ymax = std::max(ymax, sv[k].y);
  }

  const double w = settings.out_width;
  const double h = settings.out_height;
  const double xr = xmax - xmin;
  const double yr = ymax - ymin;
  double scale = 1.0;
  if (xr > 0.0 && yr > 0.0) {
    scale = kFitFraction * std::min(w / xr, h / yr);
  } else if (xr > 0.0) {
    scale = kFitFraction * w / xr;
  } else if (yr > 0.0) {
    scale = kFitFraction * h / yr;
  }
  const double cx = 0.5 * (xmin + xmax);
  const double cy = 0.5 * (ymin + ymax);
  for (ScreenVertex& v : sv) {
    v.x = 0.5 * w + (v.x - cx) * scale;
    v.y = 0.5 * h - (v.y - cy) * scale;
    v.depth *= scale;
  }

  ZBufferTarget target(settings.out_width, settings.out_height, settings.background);
  const int rows = surf.height;
  const int cols = surf.width;
  if (rows == 1 || cols == 1) {
    // Degenerate grid: a polyline through the samples.
    if (n == 1) target.line(sv[0], sv[0], surf.color(0, 0));
    for (std::size_t k = 0; k + 1 < n; ++k) {
      const int i0 = rows == 1 ? 0 : static_cast<int>(k);
      const int j0 = rows == 1 ? static_cast<int>(k) : 0;
      const int i1 = rows == 1 ? 0 : i0 + 1;
      const int j1 = rows == 1 ? j0 + 1 : 0;
      target.line(sv[k], sv[k + 1], mean_color({surf.color(i0, j0), surf.color(i1, j1)}));
    }
    return std::move(target).take();
  }

  for (int i = 0; i + 1 < rows; ++i) {
    for (int j = 0; j + 1 < cols; ++j) {
      const std::size_t v00 = surf.index(i, j);
      const std::size_t v01 = surf.index(i, j + 1);
      const std::size_t v10 = surf.index(i + 1, j);
      const std::size_t v11 = surf.index(i + 1, j + 1);
      const Rgb c00 = surf.color(i, j);
      const Rgb c01 = surf.color(i, j + 1);
      const Rgb c10 = surf.color(i + 1, j);
      const Rgb c11 = surf.color(i + 1, j + 1);
      target.triangle(sv[v00], sv[v01], sv[v10], mean_color({c00, c01, c10}));
      target.triangle(sv[v01], sv[v11], sv[v10], mean_color({c01, c11, c10}));
    }
  }
  return std::move(target).take();
}

double coverage_fraction(const RasterImage& render, Rgb background) {
  if (render.empty()) return 0.0;
  std::size_t covered = 0;
  for (int y = 0; y < render.height(); ++y) {
    for (int x = 0; x < render.width(); ++x) {
      if (render.pixel(x, y) != background) ++covered;
    }
  }
  return static_cast<double>(covered) / static_cast<double>(render.pixel_count());
}

}  // namespace cesurf
