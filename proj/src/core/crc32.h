// src/core/crc32.h

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

#ifndef SEPREMIX_CORE_CRC32_H_
#define SEPREMIX_CORE_CRC32_H_

#include <cstddef>
#include <cstdint>
#include <string>

namespace sepremix {

// IEEE 802.3 CRC-32 (the zlib polynomial). Used for checkpoint integrity
// and for the short config hashes embedded in reports.
class Crc32 {
 public:
  void Update(const void* data, size_t size);
  uint32_t Value() const { return state_ ^ 0xFFFFFFFFu; }

  static uint32_t Of(const void* data, size_t size) {
    Crc32 c;
    c.Update(data, size);
    return c.Value();
  }
  static uint32_t Of(const std::string& s) { return Of(s.data(), s.size()); }

 private:
  uint32_t state_ = 0xFFFFFFFFu;
};

// Eight hex digits, lower case.
std::string HexU32(uint32_t v);

}  // namespace sepremix

#endif  // SEPREMIX_CORE_CRC32_H_
