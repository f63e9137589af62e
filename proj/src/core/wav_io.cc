// src/core/wav_io.cc

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

#include "core/wav_io.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "core/common.h"

namespace sepremix {

namespace {

constexpr uint16_t kFormatPcm = 0x0001;
constexpr uint16_t kFormatFloat = 0x0003;
constexpr uint16_t kFormatExtensible = 0xFFFE;

void PutU16(std::string* out, uint16_t v) {
  out->push_back(static_cast<char>(v & 0xFF));
  out->push_back(static_cast<char>((v >> 8) & 0xFF));
}

void PutU32(std::string* out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

uint16_t GetU16(const unsigned char* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t GetU32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

int32_t SignExtend24(uint32_t v) {
  return (v & 0x800000) ? static_cast<int32_t>(v | 0xFF000000u)
                        : static_cast<int32_t>(v);
}

float ClampUnit(float v) { return std::min(1.0f, std::max(-1.0f, v)); }

}  // namespace

WavFormat WavFormatFromBitDepth(int bit_depth, bool floating_point) {
  if (floating_point) {
    Require(bit_depth == 32, StatusCode::kInvalidArgument,
            "float WAV supports 32-bit only");
    return WavFormat::kFloat32;
  }
  switch (bit_depth) {
    case 16: return WavFormat::kPcm16;
    case 24: return WavFormat::kPcm24;
    case 32: return WavFormat::kPcm32;
    default:
      Throw(StatusCode::kInvalidArgument,
            "unsupported bit depth: " + std::to_string(bit_depth));
  }
}

AudioBuffer LoadWav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), StatusCode::kIoError, "cannot open WAV file: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  Require(bytes.size() >= 12, StatusCode::kFormatError,
          "not a RIFF/WAVE file (too short): " + path);
  Require(std::memcmp(bytes.data(), "RIFF", 4) == 0 &&
              std::memcmp(bytes.data() + 8, "WAVE", 4) == 0,
          StatusCode::kFormatError, "not a RIFF/WAVE file: " + path);

  uint16_t format_tag = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t bits = 0;
  bool have_fmt = false;
  size_t data_pos = 0;
  uint32_t data_size = 0;
  bool have_data = false;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* hdr = bytes.data() + pos;
    uint32_t chunk_size = GetU32(hdr + 4);
    const size_t body = pos + 8;
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      Require(body + 16 <= bytes.size() && chunk_size >= 16,
              StatusCode::kFormatError, "malformed fmt chunk: " + path);
      const unsigned char* f = bytes.data() + body;
      format_tag = GetU16(f);
      channels = GetU16(f + 2);
      sample_rate = GetU32(f + 4);
      bits = GetU16(f + 14);
      if (format_tag == kFormatExtensible) {
        Require(chunk_size >= 40 && body + 40 <= bytes.size(),
                StatusCode::kFormatError,
                "malformed extensible fmt chunk: " + path);
        // First two bytes of the subformat GUID hold the actual tag.
        format_tag = GetU16(f + 24);
      }
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data_pos = body;
      data_size = chunk_size;
      have_data = true;
    }
    // Chunks are word-aligned.
    pos = body + chunk_size + (chunk_size & 1);
  }

  Require(have_fmt, StatusCode::kFormatError, "missing fmt chunk: " + path);
  Require(have_data, StatusCode::kFormatError, "missing data chunk: " + path);
  Require(channels > 0, StatusCode::kFormatError, "zero channels: " + path);
  Require(sample_rate > 0, StatusCode::kFormatError, "zero sample rate: " + path);

  const bool is_float = format_tag == kFormatFloat;
  Require(format_tag == kFormatPcm || is_float, StatusCode::kFormatError,
          "unsupported codec (format tag " + std::to_string(format_tag) +
              "): " + path);
  Require((is_float && bits == 32) ||
              (!is_float && (bits == 16 || bits == 24 || bits == 32)),
          StatusCode::kFormatError,
          "unsupported sample width " + std::to_string(bits) + ": " + path);

  Require(data_pos + data_size <= bytes.size(), StatusCode::kFormatError,
          "truncated data chunk: " + path);
  const size_t bytes_per_sample = bits / 8;
  const size_t frame_bytes = bytes_per_sample * channels;
  Require(frame_bytes > 0 && data_size % frame_bytes == 0,
          StatusCode::kFormatError, "data chunk not frame-aligned: " + path);
  const size_t frames = data_size / frame_bytes;

  std::vector<std::vector<float>> out(channels, std::vector<float>(frames));
  const unsigned char* d = bytes.data() + data_pos;
  for (size_t i = 0; i < frames; ++i) {
    for (uint16_t c = 0; c < channels; ++c) {
      const unsigned char* s = d + (i * channels + c) * bytes_per_sample;
      float v = 0.0f;
      if (is_float) {
        uint32_t raw = GetU32(s);
        std::memcpy(&v, &raw, 4);
      } else if (bits == 16) {
        v = static_cast<float>(static_cast<int16_t>(GetU16(s))) / 32768.0f;
      } else if (bits == 24) {
        uint32_t raw = static_cast<uint32_t>(s[0]) |
                       (static_cast<uint32_t>(s[1]) << 8) |
                       (static_cast<uint32_t>(s[2]) << 16);
        v = static_cast<float>(SignExtend24(raw)) / 8388608.0f;
      } else {  // 32-bit PCM
        v = static_cast<float>(static_cast<int32_t>(GetU32(s))) / 2147483648.0f;
      }
      out[c][i] = v;
    }
  }
  return AudioBuffer(std::move(out), static_cast<int>(sample_rate));
}

void SaveWav(const AudioBuffer& buffer, const std::string& path,
             WavFormat format) {
  buffer.Validate();
  const int channels = buffer.channel_count();
  const int64_t frames = buffer.length();

  uint16_t tag = kFormatPcm;
  uint16_t bits = 16;
  switch (format) {
    case WavFormat::kPcm16: bits = 16; break;
    case WavFormat::kPcm24: bits = 24; break;
    case WavFormat::kPcm32: bits = 32; break;
    case WavFormat::kFloat32:
      bits = 32;
      tag = kFormatFloat;
      break;
  }
  const uint32_t bytes_per_sample = bits / 8;
  const uint32_t block_align = bytes_per_sample * channels;
  const uint32_t data_size = static_cast<uint32_t>(frames * block_align);

  std::string out;
  out.reserve(44 + data_size);
  out.append("RIFF");
  PutU32(&out, 36 + data_size);
  out.append("WAVE");
  out.append("fmt ");
  PutU32(&out, 16);
  PutU16(&out, tag);
  PutU16(&out, static_cast<uint16_t>(channels));
  PutU32(&out, static_cast<uint32_t>(buffer.sample_rate()));
  PutU32(&out, static_cast<uint32_t>(buffer.sample_rate()) * block_align);
  PutU16(&out, static_cast<uint16_t>(block_align));
  PutU16(&out, bits);
  out.append("data");
  PutU32(&out, data_size);

  for (int64_t i = 0; i < frames; ++i) {
    for (int c = 0; c < channels; ++c) {
      const float v = buffer.channel(c)[i];
      switch (format) {
        case WavFormat::kFloat32: {
          uint32_t raw;
          std::memcpy(&raw, &v, 4);
          PutU32(&out, raw);
          break;
        }
        case WavFormat::kPcm16: {
          const float s = ClampUnit(v) * 32768.0f;
          const int32_t q = std::min<int32_t>(
              32767, std::max<int32_t>(-32768, static_cast<int32_t>(std::lrint(s))));
          PutU16(&out, static_cast<uint16_t>(static_cast<int16_t>(q)));
          break;
        }
        case WavFormat::kPcm24: {
          const float s = ClampUnit(v) * 8388608.0f;
          const int32_t q = std::min<int32_t>(
              8388607, std::max<int32_t>(-8388608, static_cast<int32_t>(std::lrint(s))));
          const uint32_t raw = static_cast<uint32_t>(q);
          out.push_back(static_cast<char>(raw & 0xFF));
          out.push_back(static_cast<char>((raw >> 8) & 0xFF));
          out.push_back(static_cast<char>((raw >> 16) & 0xFF));
          break;
        }
        case WavFormat::kPcm32: {
          const double s = static_cast<double>(ClampUnit(v)) * 2147483648.0;
          const int64_t q = std::min<int64_t>(
              2147483647ll,
              std::max<int64_t>(-2147483648ll, static_cast<int64_t>(std::llrint(s))));
          PutU32(&out, static_cast<uint32_t>(static_cast<int32_t>(q)));
          break;
        }
      }
    }
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  Require(f.good(), StatusCode::kIoError, "cannot write WAV file: " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  Require(f.good(), StatusCode::kIoError, "short write to WAV file: " + path);
}

}  // namespace sepremix
