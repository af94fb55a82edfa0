#pragma once

// Fixtures and independent oracles shared by the unit and acceptance suites.
// Oracles here deliberately avoid calling the library routines they check.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "cesurf/geometry.hpp"
#include "cesurf/raster.hpp"

namespace cesurf::testing {

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("cesurf_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::vector<std::uint8_t> read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline GrayImage random_gray(std::mt19937& rng, int w, int h, double lo = 0.0,
                             double hi = 255.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(static_cast<std::size_t>(w) * h);
  for (double& x : v) x = d(rng);
  return GrayImage(w, h, std::move(v));
}

inline RasterImage random_raster(std::mt19937& rng, int w, int h) {
  std::uniform_int_distribution<int> d(0, 255);
  std::vector<std::uint8_t> v(static_cast<std::size_t>(w) * h * 3);
  for (auto& x : v) x = static_cast<std::uint8_t>(d(rng));
  return RasterImage(w, h, std::move(v));
}

/// Colored disc of the given diameter centered in a black field. A pixel is
/// inside when its center lies strictly within the radius.
struct DiscFixture {
  int width = 200;
  int height = 200;
  double diameter = 100.0;
  Rgb color{200, 30, 40};

  bool inside(int x, int y) const {
    const double dx = x + 0.5 - width / 2.0;
    const double dy = y + 0.5 - height / 2.0;
    return dx * dx + dy * dy < (diameter / 2.0) * (diameter / 2.0);
  }
  RasterImage image() const {
    RasterImage img(width, height);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        if (inside(x, y)) img.set_pixel(x, y, color);
      }
    }
    return img;
  }
};

/// Gray dome: intensity peak * sqrt(1 - r^2 / R^2) inside radius R about the
/// image center, black outside. Symmetric under 90 degree rotations.
struct HemisphereFixture {
  int size = 128;
  double radius = 56.0;
  double peak = 255.0;

  double intensity(int x, int y) const {
    const double c = (size - 1) / 2.0;
    const double r2 = (x - c) * (x - c) + (y - c) * (y - c);
    const double q = 1.0 - r2 / (radius * radius);
    return q > 0.0 ? peak * std::sqrt(q) : 0.0;
  }
  RasterImage image() const {
    RasterImage img(size, size);
    for (int y = 0; y < size; ++y) {
      for (int x = 0; x < size; ++x) {
        const auto v = static_cast<std::uint8_t>(std::lround(intensity(x, y)));
        img.set_pixel(x, y, {v, v, v});
      }
    }
    return img;
  }
};

/// Stand-in for a capsule endoscopy frame: textured, reddish disc on black.
inline RasterImage synthetic_ce_frame(int size, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> noise(-12, 12);
  RasterImage img(size, size);
  const double c = size / 2.0;
  const double radius = 0.46 * size;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double dx = x + 0.5 - c;
      const double dy = y + 0.5 - c;
      const double r = std::sqrt(dx * dx + dy * dy);
      if (r >= radius) continue;
      const double fold = 0.5 + 0.5 * std::sin(x * 0.09) * std::cos(y * 0.07);
      const double shade = 1.0 - 0.6 * (r / radius);
      auto ch = [&](double base) {
        return static_cast<std::uint8_t>(std::clamp(
            static_cast<int>(std::lround(base * shade * (0.6 + 0.4 * fold))) + noise(rng), 11,
            255));
      };
      img.set_pixel(x, y, {ch(230.0), ch(120.0), ch(90.0)});
    }
  }
  return img;
}

// ---- oracles -------------------------------------------------------------

inline double oracle_lanczos3(double x) {
  if (x == 0.0) return 1.0;
  if (std::abs(x) >= 3.0) return 0.0;
  const double a = std::numbers::pi * x;
  return 3.0 * std::sin(a) * std::sin(a / 3.0) / (a * a);
}

/// Direct 2D evaluation: every source pixel within 3 of the sample point in
/// both axes contributes w(dx) * w(dy); weights normalized by their total.
inline double oracle_lanczos_sample(const GrayImage& src, int ratio, int ox, int oy) {
  const double sx = (ox + 0.5) / ratio - 0.5;
  const double sy = (oy + 0.5) / ratio - 0.5;
  double acc = 0.0;
  double total = 0.0;
  for (int ty = static_cast<int>(std::ceil(sy - 3.0)); ty <= static_cast<int>(std::floor(sy + 3.0));
       ++ty) {
    for (int tx = static_cast<int>(std::ceil(sx - 3.0));
         tx <= static_cast<int>(std::floor(sx + 3.0)); ++tx) {
      const double w = oracle_lanczos3(sx - tx) * oracle_lanczos3(sy - ty);
      if (w == 0.0) continue;
      const int cx = std::clamp(tx, 0, src.width() - 1);
      const int cy = std::clamp(ty, 0, src.height() - 1);
      acc += w * src.at(cx, cy);
      total += w;
    }
  }
  return acc / total;
}

/// y(i,j) = sum_m sum_n h(m,n) x(i-m, j-n) with replicated borders.
inline double oracle_convolve(const GrayImage& x, const std::array<double, 9>& h, int i, int j) {
  double y = 0.0;
  for (int m = -1; m <= 1; ++m) {
    for (int n = -1; n <= 1; ++n) {
      const int r = std::clamp(i - m, 0, x.height() - 1);
      const int c = std::clamp(j - n, 0, x.width() - 1);
      y += h[(m + 1) * 3 + (n + 1)] * x.at(c, r);
    }
  }
  return y;
}

/// Element-wise clamp to [mu - k rho, mu + k rho] then affine map to [0, 255].
inline std::vector<double> oracle_rescale(const std::vector<double>& v, double k) {
  long double sum = 0.0L;
  for (double x : v) sum += x;
  const double mu = static_cast<double>(sum / v.size());
  long double ss = 0.0L;
  for (double x : v) ss += (x - mu) * (x - mu);
  const double rho = std::sqrt(static_cast<double>(ss / v.size()));
  if (rho == 0.0) return v;
  const double lo = mu - k * rho;
  const double hi = mu + k * rho;
  std::vector<double> out;
  for (double x : v) {
    const double c = x < lo ? lo : (x > hi ? hi : x);
    out.push_back(255.0 * (c - lo) / (hi - lo));
  }
  return out;
}

struct StlTriangle {
  std::array<float, 3> normal;
  std::array<std::array<float, 3>, 3> v;
};

/// Minimal binary STL reader; returns false on any size inconsistency.
inline bool read_stl(const std::filesystem::path& p, std::string& header,
                     std::vector<StlTriangle>& tris) {
  const std::vector<std::uint8_t> b = read_bytes(p);
  if (b.size() < 84) return false;
  header.assign(b.begin(), b.begin() + 80);
  auto u32 = [&](std::size_t o) {
    return std::uint32_t(b[o]) | std::uint32_t(b[o + 1]) << 8 | std::uint32_t(b[o + 2]) << 16 |
           std::uint32_t(b[o + 3]) << 24;
  };
  const std::uint32_t n = u32(80);
  if (b.size() != 84 + 50ull * n) return false;
  tris.clear();
  for (std::uint32_t t = 0; t < n; ++t) {
    const std::size_t o = 84 + 50ull * t;
    float f[12];
    for (int k = 0; k < 12; ++k) f[k] = std::bit_cast<float>(u32(o + 4 * k));
    StlTriangle tri{};
    tri.normal = {f[0], f[1], f[2]};
    for (int k = 0; k < 3; ++k) tri.v[k] = {f[3 + 3 * k], f[4 + 3 * k], f[5 + 3 * k]};
    if (b[o + 48] != 0 || b[o + 49] != 0) return false;
    tris.push_back(tri);
  }
  return true;
}

/// Bounding box of pixels differing from the background.
struct PixelBox {
  int x0 = 0, y0 = 0, x1 = -1, y1 = -1;
  int width() const { return x1 - x0 + 1; }
  int height() const { return y1 - y0 + 1; }
  bool empty() const { return x1 < x0; }
};

inline PixelBox covered_box(const RasterImage& img, Rgb background) {
  PixelBox b{img.width(), img.height(), -1, -1};
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      if (img.pixel(x, y) == background) continue;
      b.x0 = std::min(b.x0, x);
      b.y0 = std::min(b.y0, y);
      b.x1 = std::max(b.x1, x);
      b.y1 = std::max(b.y1, y);
    }
  }
  return b;
}

}  // namespace cesurf::testing
