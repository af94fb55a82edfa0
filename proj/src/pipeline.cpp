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


#include "cesurf/pipeline.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>
#include <system_error>
#include <type_traits>

#include "cesurf/error.hpp"
#include "cesurf/printmesh.hpp"
#include "cesurf/raster.hpp"

namespace cesurf {

namespace {

std::string fmt_real(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string fmt_angle(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

class StageRunner {
 public:
  template <typename Fn>
  auto run(const std::string& stage, Fn&& fn) -> decltype(fn()) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      if constexpr (std::is_void_v<decltype(fn())>) {
        fn();
        record(stage, t0);
      } else {
        auto result = fn();
        record(stage, t0);
        return result;
      }
    } catch (const PipelineError&) {
      throw;
    } catch (const std::exception& e) {
      throw PipelineError(stage, e.what());
    }
  }

  std::vector<std::pair<std::string, std::string>> timings;

 private:
  void record(const std::string& stage, std::chrono::steady_clock::time_point t0) {
    const std::chrono::duration<double, std::milli> dt = std::chrono::steady_clock::now() - t0;
    timings.emplace_back("timing." + stage + "_ms", fmt_real(std::round(dt.count() * 1000) / 1000));
  }
};

}  // namespace

PipelineError::PipelineError(std::string stage, const std::string& message)
    : std::runtime_error("[" + stage + "] " + message), stage_(std::move(stage)) {}

std::string RunManifest::to_text() const {
  std::string text;
  for (const auto& [k, v] : records) text += k + "=" + v + "\n";
  return text;
}

void validate(const PipelineConfig& cfg) {
  if (cfg.input_path.empty()) throw_invalid_argument("input path is empty");
  if (cfg.output_dir.empty()) throw_invalid_argument("output directory is empty");
  if (cfg.scale_ratio < 1) throw_invalid_argument("scale ratio must be >= 1");
  if (!(cfg.k_sigma > 0.0) || !std::isfinite(cfg.k_sigma)) {
    throw_invalid_argument("k_sigma must be positive");
  }
  if (cfg.mask_threshold < 0 || cfg.mask_threshold > 255) {
    throw_invalid_argument("mask threshold must lie in [0, 255]");
  }
  if (cfg.poses.empty()) throw_invalid_argument("at least one view pose is required");
  if (cfg.z_scale && !(*cfg.z_scale > 0.0)) throw_invalid_argument("z_scale must be positive");
  if (cfg.base_offset && !(*cfg.base_offset > 0.0)) {
    throw_invalid_argument("base_offset must be positive");
  }
}

std::string render_file_name(const ViewPose& pose) {
  return "render_az" + fmt_angle(pose.azimuth_deg()) + "_el" + fmt_angle(pose.elevation_deg()) +
         ".png";
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for reading",
                path.string());
  }
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                             &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIo, "SHA-256 initialisation failed");
  }
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

RunManifest run_pipeline(const PipelineConfig& cfg) {
  RunManifest manifest;
  StageRunner stages;
  std::vector<std::filesystem::path> written;

  auto cleanup = [&written] {
    for (const auto& p : written) {
      std::error_code ec;
      std::filesystem::remove(p, ec);
    }
  };

  try {
    stages.run("config", [&] { validate(cfg); });

    stages.run("output", [&] {
      std::error_code ec;
      std::filesystem::create_directories(cfg.output_dir, ec);
      if (ec || !std::filesystem::is_directory(cfg.output_dir)) {
        throw Error(ErrorCode::kIo,
                    "cannot create output directory '" + cfg.output_dir.string() + "'" +
                        (ec ? ": " + ec.message() : std::string()),
                    cfg.output_dir.string());
      }
    });

    auto emit = [&](const std::string& name, auto&& writer) {
      const std::filesystem::path path = cfg.output_dir / name;
      written.push_back(path);
      writer(path);
      manifest.outputs.push_back(name);
    };

    const RasterImage input = stages.run("load", [&] { return load_image(cfg.input_path); });
    const std::string input_hash = stages.run("hash", [&] { return sha256_file(cfg.input_path); });

    manifest.add("tool", "ce-surf");
    manifest.add("input", cfg.input_path.filename().string());
    manifest.add("input_sha256", input_hash);
    manifest.add("input_size", std::to_string(input.width()) + "x" + std::to_string(input.height()));
    manifest.add("config.preprocess", cfg.preprocess_enabled ? "true" : "false");
    manifest.add("config.scale_ratio", std::to_string(cfg.scale_ratio));
    manifest.add("config.k_sigma", fmt_real(cfg.k_sigma));
    manifest.add("config.kernel", cfg.kernel.to_string());
    manifest.add("config.mask_threshold", std::to_string(cfg.mask_threshold));
    for (const ViewPose& p : cfg.poses) {
      manifest.add("config.pose", fmt_angle(p.azimuth_deg()) + "," + fmt_angle(p.elevation_deg()));
    }
    manifest.add("config.render_size", std::to_string(cfg.render.out_width) + "x" +
                                           std::to_string(cfg.render.out_height));
    manifest.add("config.z_exaggeration", fmt_real(cfg.render.z_exaggeration));
    manifest.add("config.stl", cfg.stl_enabled ? "true" : "false");
    manifest.add("z_path", cfg.preprocess_enabled ? "upscale,gray,rescale,convolve" : "gray");
    manifest.add("color_path", cfg.preprocess_enabled ? "upscale,convolve,mask-complement"
                                                      : "mask-complement");
    manifest.add("mask_source", cfg.preprocess_enabled ? "upscaled-color" : "input-color");

    RasterImage color = input;
    if (cfg.preprocess_enabled) {
      color = stages.run("upscale", [&] { return lanczos_upscale(input, cfg.scale_ratio); });
    }
    GrayImage gray = stages.run("gray", [&] { return rgb_to_gray(color); });
    if (cfg.preprocess_enabled) {
      gray = stages.run("rescale", [&] { return rescale_outliers(gray, cfg.k_sigma); });
      gray = stages.run("convolve", [&] { return convolve2d(gray, cfg.kernel); });
    }
    const BackgroundMask mask =
        stages.run("mask", [&] { return extract_background_mask(color, cfg.mask_threshold); });
    if (cfg.preprocess_enabled) {
      color = stages.run("convolve_color", [&] { return convolve2d(color, cfg.kernel); });
    }
    const RasterImage color_grid = stages.run("color", [&] { return build_color_grid(color, mask); });
    const SurfaceGrid surf = stages.run("surface", [&] { return build_surface(gray, color_grid); });
    manifest.add("surface_size", std::to_string(surf.width) + "x" + std::to_string(surf.height));

    stages.run("write", [&] {
      emit("gray.png", [&](const auto& p) { save_image(gray_to_raster(gray), p); });
      emit("color.png", [&](const auto& p) { save_image(color, p); });
      emit("color_grid.png", [&](const auto& p) { save_image(color_grid, p); });
    });

    for (const ViewPose& pose : cfg.poses) {
      const std::string name = render_file_name(pose);
      stages.run("render", [&] {
        const RasterImage img = render_surface(surf, pose, cfg.render);
        emit(name, [&](const auto& p) { save_image(img, p); });
      });
    }

    if (cfg.stl_enabled) {
      stages.run("mesh", [&] {
        const PrintParams defaults = default_print_params(surf);
        const double z_scale = cfg.z_scale.value_or(defaults.z_scale);
        const double base_offset = cfg.base_offset.value_or(defaults.base_offset);
        manifest.add("mesh.z_scale", fmt_real(z_scale));
        manifest.add("mesh.base_offset", fmt_real(base_offset));
        const TriangleMesh mesh = surface_to_mesh(surf, base_offset, z_scale);
        const MeshReport report = validate_mesh(mesh);
        if (!report.passed()) {
          throw Error(ErrorCode::kInvalidArgument,
                      "mesh failed validation: " + report.failures().front());
        }
        manifest.add("mesh.triangles", std::to_string(mesh.triangles.size()));
        manifest.add("mesh.volume", fmt_real(report.signed_volume));
        emit("surface.stl", [&](const auto& p) { export_stl(mesh, p); });
      });
    }

    stages.run("manifest", [&] {
      manifest.outputs.push_back(kManifestName);
      for (const auto& out : manifest.outputs) manifest.add("output", out.string());
      for (const auto& t : stages.timings) manifest.add(t.first, t.second);
      const std::filesystem::path path = cfg.output_dir / kManifestName;
      written.push_back(path);
      std::ofstream out(path, std::ios::trunc);
      out << manifest.to_text();
      out.close();
      if (!out) {
        throw Error(ErrorCode::kIo, "write failed for '" + path.string() + "'", path.string());
      }
    });
  } catch (...) {
    cleanup();
    throw;
  }
  return manifest;
}

}  // namespace cesurf
