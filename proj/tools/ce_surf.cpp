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


// ce-surf: reconstruct, render and export a height-field surface from a
// single endoscopy frame.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cesurf/error.hpp"
#include "cesurf/parallel.hpp"
#include "cesurf/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Reconstruct a colored height-field surface from a capsule endoscopy image"};
  app.set_version_flag("--version", "ce-surf 1.0");

  cesurf::PipelineConfig cfg;
  std::string input;
  std::string output_dir;
  std::string kernel_text;
  std::vector<double> azimuths;
  std::vector<double> elevations;
  bool no_preprocess = false;
  double z_scale = 0.0;
  double base_offset = 0.0;

  app.add_option("input", input, "Input PNG or PPM image")->required();
  app.add_option("-o,--output", output_dir, "Output directory")->required();
  app.add_option("--scale", cfg.scale_ratio, "Lanczos upscale ratio")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--k-sigma", cfg.k_sigma, "Rescale bounds at mean +/- k * std")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--kernel", kernel_text, "3x3 smoothing kernel, nine comma-separated reals");
  app.add_option("--mask-threshold", cfg.mask_threshold,
                 "Pixels with max(R,G,B) <= T are background")
      ->check(CLI::Range(0, 255))
      ->capture_default_str();
  app.add_option("--az", azimuths, "View azimuth in degrees (pairs with --el)")
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_option("--el", elevations, "View elevation in degrees, [-90, 90]")
      ->allow_extra_args(false)
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  app.add_flag("--no-preprocess", no_preprocess, "Skip upscaling, rescaling and smoothing");
  app.add_flag("--stl", cfg.stl_enabled, "Export a watertight binary STL");
  auto* zs = app.add_option("--z-scale", z_scale, "Height scale for the STL solid")
                 ->check(CLI::PositiveNumber);
  auto* bo = app.add_option("--base-offset", base_offset, "Floor depth below min(Z)")
                 ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  cesurf::configure_threads_from_env();

  try {
    cfg.input_path = input;
    cfg.output_dir = output_dir;
    cfg.preprocess_enabled = !no_preprocess;
    if (!kernel_text.empty()) cfg.kernel = cesurf::Kernel3x3::parse(kernel_text);
    if (azimuths.size() != elevations.size()) {
      throw cesurf::Error(cesurf::ErrorCode::kInvalidArgument,
                          "--az and --el must be given the same number of times");
    }
    if (!azimuths.empty()) {
      cfg.poses.clear();
      for (std::size_t i = 0; i < azimuths.size(); ++i) {
        cfg.poses.emplace_back(azimuths[i], elevations[i]);
      }
    }
    if (zs->count() > 0) cfg.z_scale = z_scale;
    if (bo->count() > 0) cfg.base_offset = base_offset;
  } catch (const std::exception& e) {
    std::cerr << "ce-surf: [config] " << e.what() << "\n";
    return 2;
  }

  try {
    const cesurf::RunManifest manifest = cesurf::run_pipeline(cfg);
    for (const auto& out : manifest.outputs) {
      std::cout << (cfg.output_dir / out).string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "ce-surf: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
