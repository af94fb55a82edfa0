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


#include "cesurf/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "cesurf/error.hpp"
#include "cesurf/parallel.hpp"

namespace cesurf {

namespace {

constexpr int kTaps = 2 * kLanczosLobes;

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

// Precomputed 6-tap filter for one output coordinate along one axis.
struct AxisTaps {
  int first = 0;  // source index of tap 0, before edge clamping
  std::array<double, kTaps> weights{};
};

std::vector<AxisTaps> make_axis_taps(int src_len, int ratio) {
  std::vector<AxisTaps> taps(static_cast<std::size_t>(src_len) * ratio);
  for (std::size_t o = 0; o < taps.size(); ++o) {
    const double s = (static_cast<double>(o) + 0.5) / ratio - 0.5;
    const int base = static_cast<int>(std::floor(s));
    AxisTaps& t = taps[o];
    t.first = base - (kLanczosLobes - 1);
    double sum = 0.0;
    for (int k = 0; k < kTaps; ++k) {
      t.weights[k] = lanczos_kernel(s - (t.first + k));
      sum += t.weights[k];
    }
    for (double& w : t.weights) w /= sum;
  }
  return taps;
}

// Separable upscale of one plane: horizontal pass, then vertical.
std::vector<double> upscale_plane(std::span<const double> src, int width, int height,
                                  int ratio) {
  const int out_w = width * ratio;
  const int out_h = height * ratio;
  const std::vector<AxisTaps> xtaps = make_axis_taps(width, ratio);
  const std::vector<AxisTaps> ytaps = make_axis_taps(height, ratio);

  std::vector<double> tmp(static_cast<std::size_t>(height) * out_w);
  parallel_for_rows(static_cast<std::size_t>(height), [&](std::size_t y) {
    const double* row = src.data() + y * width;
    double* dst = tmp.data() + y * out_w;
    for (int ox = 0; ox < out_w; ++ox) {
      const AxisTaps& t = xtaps[ox];
      double acc = 0.0;
      for (int k = 0; k < kTaps; ++k) {
        acc += t.weights[k] * row[std::clamp(t.first + k, 0, width - 1)];
      }
      dst[ox] = acc;
    }
  });

  std::vector<double> out(static_cast<std::size_t>(out_h) * out_w);
  parallel_for_rows(static_cast<std::size_t>(out_h), [&](std::size_t oy) {
    const AxisTaps& t = ytaps[oy];
    double* dst = out.data() + oy * out_w;
    std::fill(dst, dst + out_w, 0.0);
    for (int k = 0; k < kTaps; ++k) {
      const double w = t.weights[k];
      const double* row =
          tmp.data() + static_cast<std::size_t>(std::clamp(t.first + k, 0, height - 1)) * out_w;
      for (int ox = 0; ox < out_w; ++ox) dst[ox] += w * row[ox];
    }
  });
  return out;
}

void check_ratio(int ratio) {
  if (ratio < 1) {
    throw_invalid_argument("upscale ratio must be >= 1, got " + std::to_string(ratio));
  }
}

std::vector<double> extract_channel(const RasterImage& img, int c) {
  std::vector<double> plane(img.pixel_count());
  const auto rgb = img.data();
  for (std::size_t i = 0; i < plane.size(); ++i) plane[i] = rgb[3 * i + c];
  return plane;
}

void store_channel(RasterImage& img, int c, std::span<const double> plane) {
  auto rgb = img.data();
  for (std::size_t i = 0; i < plane.size(); ++i) rgb[3 * i + c] = quantize(plane[i]);
}

std::vector<double> convolve_plane(std::span<const double> src, int width, int height,
                                   const Kernel3x3& kernel) {
  std::vector<double> out(src.size());
  parallel_for_rows(static_cast<std::size_t>(height), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    for (int j = 0; j < width; ++j) {
      double acc = 0.0;
      for (int m = -1; m <= 1; ++m) {
        const int si = std::clamp(i - m, 0, height - 1);
        for (int n = -1; n <= 1; ++n) {
          const int sj = std::clamp(j - n, 0, width - 1);
          acc += kernel.at(m, n) * src[static_cast<std::size_t>(si) * width + sj];
        }
      }
      out[static_cast<std::size_t>(i) * width + j] = acc;
    }
  });
  return out;
}

}  // namespace

double lanczos_kernel(double x) {
  const double ax = std::abs(x);
  if (ax >= kLanczosLobes) return 0.0;
  if (ax != 0.0 && ax == std::floor(ax)) return 0.0;
  return sinc(x) * sinc(x / kLanczosLobes);
}

GrayImage lanczos_upscale(const GrayImage& src, int ratio) {
  check_ratio(ratio);
  if (src.empty()) throw_invalid_argument("lanczos_upscale: empty image");
  if (ratio == 1) return src;
  return GrayImage(src.width() * ratio, src.height() * ratio,
                   upscale_plane(src.values(), src.width(), src.height(), ratio));
}

RasterImage lanczos_upscale(const RasterImage& src, int ratio) {
  check_ratio(ratio);
  if (src.empty()) throw_invalid_argument("lanczos_upscale: empty image");
  if (ratio == 1) return src;
  RasterImage out(src.width() * ratio, src.height() * ratio);
  for (int c = 0; c < 3; ++c) {
    const std::vector<double> plane = extract_channel(src, c);
    store_channel(out, c, upscale_plane(plane, src.width(), src.height(), ratio));
  }
  return out;
}

StatsSummary compute_stats(const GrayImage& img) {
  if (img.empty()) throw_invalid_argument("compute_stats: empty image");
  const auto v = img.values();
  const double n = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / n), v.size()};
}

RescaleBounds rescale_bounds(const StatsSummary& stats, double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw_invalid_argument("rescale multiplier k must be a positive finite number");
  }
  return {stats.mean - k * stats.std, stats.mean + k * stats.std, k};
}

GrayImage rescale_outliers(const GrayImage& img, double k) {
  const RescaleBounds b = rescale_bounds(compute_stats(img), k);
  if (b.upper == b.lower) return img;
  GrayImage out = img;
  const double span = b.upper - b.lower;
  for (double& v : out.values()) {
    v = (std::clamp(v, b.lower, b.upper) - b.lower) / span * 255.0;
  }
  return out;
}

Kernel3x3::Kernel3x3(const Weights& weights) : w_(weights) {
  if (!std::all_of(w_.begin(), w_.end(), [](double w) { return std::isfinite(w); })) {
    throw_invalid_argument("kernel weights must be finite");
  }
}

Kernel3x3 Kernel3x3::parse(std::string_view text) {
  Weights w{};
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view field =
        text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
    if (n == w.size()) throw_invalid_argument("kernel needs exactly 9 weights");
    std::string token(field);
    std::size_t used = 0;
    try {
      w[n] = std::stod(token, &used);
    } catch (const std::exception&) {
      throw_invalid_argument("bad kernel weight '" + token + "'");
    }
    if (token.find_first_not_of(" \t", used) != std::string::npos) {
      throw_invalid_argument("bad kernel weight '" + token + "'");
    }
    ++n;
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (n != w.size()) throw_invalid_argument("kernel needs exactly 9 weights");
  return Kernel3x3(w);
}

std::string Kernel3x3::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < w_.size(); ++i) os << (i ? "," : "") << w_[i];
  return os.str();
}

GrayImage convolve2d(const GrayImage& img, const Kernel3x3& kernel) {
  if (img.empty()) throw_invalid_argument("convolve2d: empty image");
  return GrayImage(img.width(), img.height(),
                   convolve_plane(img.values(), img.width(), img.height(), kernel));
}

RasterImage convolve2d(const RasterImage& img, const Kernel3x3& kernel) {
  if (img.empty()) throw_invalid_argument("convolve2d: empty image");
  RasterImage out(img.width(), img.height());
  for (int c = 0; c < 3; ++c) {
    const std::vector<double> plane = extract_channel(img, c);
    store_channel(out, c, convolve_plane(plane, img.width(), img.height(), kernel));
  }
  return out;
}

}  // namespace cesurf
