// src/core/nn/checkpoint.h

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

#ifndef SEPREMIX_CORE_NN_CHECKPOINT_H_
#define SEPREMIX_CORE_NN_CHECKPOINT_H_

#include <memory>
#include <optional>
#include <string>

#include "core/nn/adadelta.h"
#include "core/nn/network.h"

namespace sepremix::nn {

// Versioned binary container: header (magic, version, config hash, seed,
// config text), parameter blobs in declared layer order, running statistics,
// optional optimizer state, CRC-32 over the payload.
void SaveCheckpoint(Network<float>& network, const Adadelta<float>* optimizer,
                    const std::string& path);

struct LoadedCheckpoint {
  std::unique_ptr<Network<float>> network;
  std::unique_ptr<Adadelta<float>> optimizer;  // null when not stored
  uint32_t config_hash = 0;
  uint64_t seed = 0;
  uint32_t file_crc = 0;  // fingerprint for report headers
};

LoadedCheckpoint LoadCheckpoint(const std::string& path);

}  // namespace sepremix::nn

#endif  // SEPREMIX_CORE_NN_CHECKPOINT_H_
