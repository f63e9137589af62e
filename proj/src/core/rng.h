// src/core/rng.h

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

#ifndef SEPREMIX_CORE_RNG_H_
#define SEPREMIX_CORE_RNG_H_

#include <cstdint>
#include <random>
#include <string>

namespace sepremix {

// splitmix64 finalizer; good avalanche, cheap.
inline uint64_t Mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Per-item seed, independent of processing order: derived from the global
// seed and a stable item key.
inline uint64_t DeriveSeed(uint64_t global_seed, const std::string& key) {
  uint64_t h = Mix64(global_seed ^ 0x5851F42D4C957F2Dull);
  for (unsigned char c : key) h = Mix64(h ^ c);
  return h;
}

inline uint64_t DeriveSeed(uint64_t global_seed, uint64_t index) {
  return Mix64(Mix64(global_seed) ^ Mix64(index + 0x9E3779B97F4A7C15ull));
}

using Rng = std::mt19937_64;

}  // namespace sepremix

#endif  // SEPREMIX_CORE_RNG_H_
