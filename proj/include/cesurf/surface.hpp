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

#include <cstdint>
#include <filesystem>
#include <vector>

#include "cesurf/raster.hpp"

namespace cesurf {

inline constexpr int kDefaultMaskThreshold = 10;

/// Per-pixel background flags; true marks the black border of a frame.
class BackgroundMask {
 public:
  BackgroundMask() = default;
  BackgroundMask(int width, int height, std::vector<std::uint8_t> flags);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool is_background(int x, int y) const {
    return flags_[static_cast<std::size_t>(y) * width_ + x] != 0;
  }
  std::size_t background_count() const;
  std::size_t foreground_count() const { return flags_.size() - background_count(); }
  BackgroundMask complement() const;

  friend bool operator==(const BackgroundMask&, const BackgroundMask&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> flags_;
};

/// A pixel is background iff max(R, G, B) <= threshold.
BackgroundMask extract_background_mask(const RasterImage& img,
                                       int threshold = kDefaultMaskThreshold);

/// Adds the full-scale complement image to every channel with saturation:
/// background pixels turn white, foreground pixels pass through.
RasterImage build_color_grid(const RasterImage& img, const BackgroundMask& mask);

/// X, Y, Z and C matrices of a colored height field, all height x width,
/// row-major. X(i,j) = j and Y(i,j) = i.
struct SurfaceGrid {
  int width = 0;
  int height = 0;
  std::vector<double> xgrid;
  std::vector<double> ygrid;
  std::vector<double> zgrid;
  RasterImage colorgrid;

  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(j);
  }
  double x(int i, int j) const { return xgrid[index(i, j)]; }
  double y(int i, int j) const { return ygrid[index(i, j)]; }
  double z(int i, int j) const { return zgrid[index(i, j)]; }
  Rgb color(int i, int j) const { return colorgrid.pixel(j, i); }
  bool empty() const noexcept { return zgrid.empty(); }
};

SurfaceGrid build_surface(const GrayImage& gray, const RasterImage& color);

/// Binary cache format: "CESG", u32 version, u32 width, u32 height, then
/// float32 Z (row-major) and RGB8 color, all little-endian.
inline constexpr std::uint32_t kSurfaceDumpVersion = 1;

void write_surface(const SurfaceGrid& surf, const std::filesystem::path& path);
SurfaceGrid read_surface(const std::filesystem::path& path);

}  // namespace cesurf
