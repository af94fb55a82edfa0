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
#include <string>
#include <string_view>

#include "cesurf/raster.hpp"

namespace cesurf {

/// Support radius of the three-lobed Lanczos window.
inline constexpr int kLanczosLobes = 3;

/// sinc(x) * sinc(x / 3) on |x| < 3, zero elsewhere (normalized sinc).
double lanczos_kernel(double x);

/// Upscales by an integer ratio with a separable Lanczos-3 filter. Each output
/// sample reads a 6x6 source neighbourhood (edge-replicated) and the weights
/// are renormalized to unit sum. Output pixel o maps to source coordinate
/// (o + 0.5) / ratio - 0.5.
GrayImage lanczos_upscale(const GrayImage& src, int ratio);
/// Color variant: channels are filtered independently at double precision and
/// quantized once at the end.
RasterImage lanczos_upscale(const RasterImage& src, int ratio);

struct StatsSummary {
  double mean = 0.0;
  double std = 0.0;  ///< population form (divisor N)
  std::size_t count = 0;
};

StatsSummary compute_stats(const GrayImage& img);

struct RescaleBounds {
  double lower = 0.0;
  double upper = 0.0;
  double k = 0.0;
};

RescaleBounds rescale_bounds(const StatsSummary& stats, double k);

/// Clamps into [mean - k*std, mean + k*std] and maps that interval affinely
/// onto [0, 255]. A zero-variance image is returned unchanged.
GrayImage rescale_outliers(const GrayImage& img, double k);

class Kernel3x3 {
 public:
  /// Row-major; weights[r * 3 + c] is h(r - 1, c - 1).
  using Weights = std::array<double, 9>;

  constexpr Kernel3x3() : w_{0, 0, 0, 0, 1, 0, 0, 0, 0} {}
  explicit Kernel3x3(const Weights& weights);

  static Kernel3x3 identity() { return Kernel3x3(); }
  static Kernel3x3 box() {
    constexpr double k = 1.0 / 9.0;
    return Kernel3x3(Weights{k, k, k, k, k, k, k, k, k});
  }
  /// Parses nine comma-separated reals, row-major.
  static Kernel3x3 parse(std::string_view text);

  /// h(m, n) for m, n in {-1, 0, 1}; m is the row offset.
  double at(int m, int n) const { return w_[static_cast<std::size_t>((m + 1) * 3 + n + 1)]; }
  const Weights& weights() const noexcept { return w_; }
  std::string to_string() const;

  friend bool operator==(const Kernel3x3&, const Kernel3x3&) = default;

 private:
  Weights w_;
};

/// True 2D convolution y(i,j) = sum h(m,n) x(i-m, j-n) with edge replication;
/// i indexes rows.
GrayImage convolve2d(const GrayImage& img, const Kernel3x3& kernel);
RasterImage convolve2d(const RasterImage& img, const Kernel3x3& kernel);

}  // namespace cesurf
