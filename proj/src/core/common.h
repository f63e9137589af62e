// src/core/common.h

// Copyright 2026 The sepremix authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SEPREMIX_CORE_COMMON_H_
#define SEPREMIX_CORE_COMMON_H_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sepremix {

// Error categories. Values double as CLI exit codes and C API status codes,
// so they must stay stable.
enum class StatusCode : int {
  kOk = 0,
  kInvalidArgument = 1,
  kIoError = 2,
  kFormatError = 3,
  kCheckpointMismatch = 4,
  kEmptyDataset = 5,
  kJoinFailure = 6,
};

class Error : public std::runtime_error {
 public:
  Error(StatusCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  StatusCode code() const { return code_; }

 private:
  StatusCode code_;
};

[[noreturn]] inline void Throw(StatusCode code, const std::string& message) {
  throw Error(code, message);
}

inline void Require(bool ok, StatusCode code, const std::string& message) {
  if (!ok) Throw(code, message);
}

}  // namespace sepremix

#endif  // SEPREMIX_CORE_COMMON_H_
