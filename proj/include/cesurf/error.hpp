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

#include <stdexcept>
#include <string>

namespace cesurf {

enum class ErrorCode {
  kInvalidArgument,
  kIo,
  kDecode,
  kUnsupportedFormat,
};

const char* to_string(ErrorCode code);

/// Library-wide exception. Carries a machine-checkable code and, for file
/// operations, the offending path.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string path = {});

  ErrorCode code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  ErrorCode code_;
  std::string path_;
};

[[noreturn]] void throw_invalid_argument(const std::string& message);

}  // namespace cesurf
