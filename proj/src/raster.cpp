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


#include "cesurf/raster.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "cesurf/error.hpp"

namespace cesurf {

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw_invalid_argument("image dimensions must be positive, got " +
                           std::to_string(width) + "x" + std::to_string(height));
  }
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for reading",
                path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw Error(ErrorCode::kIo, "read failed for '" + path.string() + "'",
                path.string());
  }
  return bytes;
}

RasterImage decode_png(const std::vector<std::uint8_t>& bytes,
                       const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;

  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw Error(ErrorCode::kDecode,
                "corrupt PNG '" + path.string() + "': " + image.message,
                path.string());
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw Error(ErrorCode::kUnsupportedFormat,
                "'" + path.string() + "' is not an 8-bit PNG", path.string());
  }
  image.format = PNG_FORMAT_RGB;
  const int width = static_cast<int>(image.width);
  const int height = static_cast<int>(image.height);
  std::vector<std::uint8_t> rgb(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, rgb.data(), 0, nullptr)) {
    const std::string why = image.message;
    png_image_free(&image);
    throw Error(ErrorCode::kDecode, "corrupt PNG '" + path.string() + "': " + why,
                path.string());
  }
  return RasterImage(width, height, std::move(rgb));
}

// Minimal P6 reader: whitespace/comment separated header, maxval 255.
RasterImage decode_ppm(const std::vector<std::uint8_t>& bytes,
                       const std::filesystem::path& path) {
  std::size_t pos = 2;
  auto fail = [&](ErrorCode code, const std::string& why) -> Error {
    return Error(code, "bad PPM '" + path.string() + "': " + why, path.string());
  };
  auto next_int = [&]() -> long {
    for (;;) {
      while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
      if (pos < bytes.size() && bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
        continue;
      }
      break;
    }
    if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
      throw fail(ErrorCode::kDecode, "malformed header");
    }
    long v = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      v = v * 10 + (bytes[pos++] - '0');
      if (v > (1L << 24)) throw fail(ErrorCode::kDecode, "header value too large");
    }
    return v;
  };
  const long width = next_int();
  const long height = next_int();
  const long maxval = next_int();
  if (width < 1 || height < 1) throw fail(ErrorCode::kDecode, "zero dimension");
  if (maxval != 255) throw fail(ErrorCode::kUnsupportedFormat, "maxval must be 255");
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
    throw fail(ErrorCode::kDecode, "malformed header");
  }
  ++pos;
  const std::size_t need = static_cast<std::size_t>(width) * height * 3;
  if (bytes.size() - pos < need) throw fail(ErrorCode::kDecode, "truncated pixel data");
  std::vector<std::uint8_t> rgb(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                                bytes.begin() + static_cast<std::ptrdiff_t>(pos + need));
  return RasterImage(static_cast<int>(width), static_cast<int>(height), std::move(rgb));
}

}  // namespace

RasterImage::RasterImage(int width, int height, Rgb fill) : width_(width), height_(height) {
  check_dims(width, height);
  data_.resize(pixel_count() * 3);
  for (std::size_t i = 0; i < data_.size(); i += 3) {
    data_[i] = fill.r;
    data_[i + 1] = fill.g;
    data_[i + 2] = fill.b;
  }
}

RasterImage::RasterImage(int width, int height, std::vector<std::uint8_t> rgb)
    : width_(width), height_(height), data_(std::move(rgb)) {
  check_dims(width, height);
  if (data_.size() != pixel_count() * 3) {
    throw_invalid_argument("RGB buffer size does not match image dimensions");
  }
}

GrayImage::GrayImage(int width, int height, double fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  if (!std::isfinite(fill)) throw_invalid_argument("gray fill value must be finite");
  values_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  check_dims(width, height);
  if (values_.size() != static_cast<std::size_t>(width) * height) {
    throw_invalid_argument("gray buffer size does not match image dimensions");
  }
  if (!std::all_of(values_.begin(), values_.end(),
                   [](double v) { return std::isfinite(v); })) {
    throw_invalid_argument("gray image contains non-finite values");
  }
}

RasterImage load_image(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  if (bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0) {
    return decode_png(bytes, path);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') {
    return decode_ppm(bytes, path);
  }
  throw Error(ErrorCode::kUnsupportedFormat,
              "'" + path.string() + "' is neither PNG nor binary PPM", path.string());
}

void save_image(const RasterImage& img, const std::filesystem::path& path) {
  if (img.empty()) throw_invalid_argument("cannot save an empty image");

  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_RGB;

  png_alloc_size_t size = 0;
  if (!png_image_write_get_memory_size(image, size, 0, img.data().data(), 0, nullptr)) {
    throw Error(ErrorCode::kIo, "PNG encode failed for '" + path.string() +
                                    "': " + image.message,
                path.string());
  }
  std::vector<std::uint8_t> encoded(size);
  if (!png_image_write_to_memory(&image, encoded.data(), &size, 0, img.data().data(), 0,
                                 nullptr)) {
    throw Error(ErrorCode::kIo, "PNG encode failed for '" + path.string() +
                                    "': " + image.message,
                path.string());
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIo,
                "cannot open '" + path.string() + "' for writing: " + std::strerror(errno),
                path.string());
  }
  out.write(reinterpret_cast<const char*>(encoded.data()),
            static_cast<std::streamsize>(size));
  out.close();
  if (!out) {
    throw Error(ErrorCode::kIo, "write failed for '" + path.string() + "'", path.string());
  }
}

GrayImage rgb_to_gray(const RasterImage& img) {
  if (img.empty()) throw_invalid_argument("rgb_to_gray: empty image");
  std::vector<double> luma(img.pixel_count());
  const auto rgb = img.data();
  for (std::size_t i = 0; i < luma.size(); ++i) {
    luma[i] = 0.299 * rgb[3 * i] + 0.587 * rgb[3 * i + 1] + 0.114 * rgb[3 * i + 2];
  }
  return GrayImage(img.width(), img.height(), std::move(luma));
}

std::uint8_t quantize(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

RasterImage gray_to_raster(const GrayImage& img) {
  if (img.empty()) throw_invalid_argument("gray_to_raster: empty image");
  RasterImage out(img.width(), img.height());
  auto rgb = out.data();
  const auto values = img.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::uint8_t q = quantize(values[i]);
    rgb[3 * i] = rgb[3 * i + 1] = rgb[3 * i + 2] = q;
  }
  return out;
}

}  // namespace cesurf
