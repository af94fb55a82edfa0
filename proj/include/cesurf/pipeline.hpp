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

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cesurf/preprocess.hpp"
#include "cesurf/surface.hpp"
#include "cesurf/viewer.hpp"

namespace cesurf {

struct PipelineConfig {
  std::filesystem::path input_path;
  std::filesystem::path output_dir;
  int scale_ratio = 2;
  double k_sigma = 2.0;
  Kernel3x3 kernel = Kernel3x3::box();
  int mask_threshold = kDefaultMaskThreshold;
  std::vector<ViewPose> poses{ViewPose(0.0, -80.0), ViewPose(0.0, 0.0)};
  bool preprocess_enabled = true;
  bool stl_enabled = false;
  /// Unset means default_print_params().
  std::optional<double> z_scale;
  std::optional<double> base_offset;
  RenderSettings render;
};

/// Throws kInvalidArgument describing the first bad field.
void validate(const PipelineConfig& cfg);

/// Failure inside a pipeline stage; what() is prefixed with "[stage] ".
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& message);
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// Ordered key/value records, written one "key=value" per line.
struct RunManifest {
  std::vector<std::pair<std::string, std::string>> records;
  std::vector<std::filesystem::path> outputs;

  void add(std::string key, std::string value) {
    records.emplace_back(std::move(key), std::move(value));
  }
  std::string to_text() const;
};

inline constexpr const char* kManifestName = "manifest.txt";

/// Runs load -> [upscale] -> gray -> [rescale -> convolve] -> mask/color grid
/// -> surface -> renders -> [mesh + STL], writing every artifact and the
/// manifest into cfg.output_dir. On failure, files written by this run are
/// removed and a PipelineError is thrown.
RunManifest run_pipeline(const PipelineConfig& cfg);

std::string render_file_name(const ViewPose& pose);

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace cesurf
