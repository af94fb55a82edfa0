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


#include "cesurf/surface.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "cesurf/error.hpp"

namespace cesurf {

namespace {

constexpr std::array<char, 4> kMagic = {'C', 'E', 'S', 'G'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

BackgroundMask::BackgroundMask(int width, int height, std::vector<std::uint8_t> flags)
    : width_(width), height_(height), flags_(std::move(flags)) {
  if (width < 1 || height < 1 ||
      flags_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw_invalid_argument("mask size does not match its dimensions");
  }
}

std::size_t BackgroundMask::background_count() const {
  return static_cast<std::size_t>(
      std::count_if(flags_.begin(), flags_.end(), [](std::uint8_t f) { return f != 0; }));
}

BackgroundMask BackgroundMask::complement() const {
  std::vector<std::uint8_t> inv(flags_.size());
  std::transform(flags_.begin(), flags_.end(), inv.begin(),
                 [](std::uint8_t f) -> std::uint8_t { return f ? 0 : 1; });
  return BackgroundMask(width_, height_, std::move(inv));
}

BackgroundMask extract_background_mask(const RasterImage& img, int threshold) {
  if (img.empty()) throw_invalid_argument("extract_background_mask: empty image");
  if (threshold < 0 || threshold > 255) {
    throw_invalid_argument("mask threshold must lie in [0, 255]");
  }
  std::vector<std::uint8_t> flags(img.pixel_count());
  const auto rgb = img.data();
  for (std::size_t i = 0; i < flags.size(); ++i) {
    const int peak = std::max({rgb[3 * i], rgb[3 * i + 1], rgb[3 * i + 2]});
    flags[i] = peak <= threshold ? 1 : 0;
  }
  return BackgroundMask(img.width(), img.height(), std::move(flags));
}

RasterImage build_color_grid(const RasterImage& img, const BackgroundMask& mask) {
  if (img.empty() || img.width() != mask.width() || img.height() != mask.height()) {
    throw_invalid_argument("build_color_grid: image and mask dimensions differ");
  }
  // The complement image is 255 on the background and 0 on the foreground.
  RasterImage out = img;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const int add = mask.is_background(x, y) ? 255 : 0;
      for (int c = 0; c < 3; ++c) {
        out.channel(x, y, c) =
            static_cast<std::uint8_t>(std::min(255, img.channel(x, y, c) + add));
      }
    }
  }
  return out;
}

SurfaceGrid build_surface(const GrayImage& gray, const RasterImage& color) {
  if (gray.empty() || gray.width() != color.width() || gray.height() != color.height()) {
    throw_invalid_argument("build_surface: gray and color dimensions differ");
  }
  SurfaceGrid s;
  s.width = gray.width();
  s.height = gray.height();
  const std::size_t n = gray.pixel_count();
  s.xgrid.resize(n);
  s.ygrid.resize(n);
  for (int i = 0; i < s.height; ++i) {
    for (int j = 0; j < s.width; ++j) {
      s.xgrid[s.index(i, j)] = j;
      s.ygrid[s.index(i, j)] = i;
    }
  }
  s.zgrid.assign(gray.values().begin(), gray.values().end());
  s.colorgrid = color;
  return s;
}

void write_surface(const SurfaceGrid& surf, const std::filesystem::path& path) {
  if (surf.empty()) throw_invalid_argument("write_surface: empty surface");
  std::vector<std::uint8_t> bytes(kMagic.begin(), kMagic.end());
  put_u32(bytes, kSurfaceDumpVersion);
  put_u32(bytes, static_cast<std::uint32_t>(surf.width));
  put_u32(bytes, static_cast<std::uint32_t>(surf.height));
  for (double z : surf.zgrid) {
    put_u32(bytes, std::bit_cast<std::uint32_t>(static_cast<float>(z)));
  }
  const auto rgb = surf.colorgrid.data();
  bytes.insert(bytes.end(), rgb.begin(), rgb.end());

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

SurfaceGrid read_surface(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for reading",
                path.string());
  }
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  auto fail = [&](const std::string& why) {
    return Error(ErrorCode::kDecode, "bad surface dump '" + path.string() + "': " + why,
                 path.string());
  };
  if (bytes.size() < 16 || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw fail("missing CESG header");
  }
  if (get_u32(&bytes[4]) != kSurfaceDumpVersion) {
    throw Error(ErrorCode::kUnsupportedFormat,
                "unsupported surface dump version in '" + path.string() + "'", path.string());
  }
  const std::uint32_t w = get_u32(&bytes[8]);
  const std::uint32_t h = get_u32(&bytes[12]);
  if (w == 0 || h == 0 || w > (1u << 16) || h > (1u << 16)) throw fail("bad dimensions");
  const std::size_t n = static_cast<std::size_t>(w) * h;
  if (bytes.size() != 16 + n * 4 + n * 3) throw fail("size does not match dimensions");

  std::vector<double> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    z[k] = std::bit_cast<float>(get_u32(&bytes[16 + 4 * k]));
  }
  std::vector<std::uint8_t> rgb(bytes.begin() + static_cast<std::ptrdiff_t>(16 + 4 * n),
                                bytes.end());
  return build_surface(GrayImage(static_cast<int>(w), static_cast<int>(h), std::move(z)),
                       RasterImage(static_cast<int>(w), static_cast<int>(h), std::move(rgb)));
}

}  // namespace cesurf
