// src/core/nn/checkpoint.cc

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

#include "core/nn/checkpoint.h"

#include <cstring>
#include <fstream>

#include "core/common.h"
#include "core/crc32.h"
#include "core/kv_config.h"

namespace sepremix::nn {

namespace {

constexpr char kMagic[4] = {'S', 'P', 'R', 'X'};
constexpr uint32_t kVersion = 1;

void PutU32(std::string* out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void PutU64(std::string* out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out->push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void PutBlob(std::string* out, const std::vector<float>& v) {
  PutU64(out, v.size());
  const size_t bytes = v.size() * sizeof(float);
  const size_t at = out->size();
  out->resize(at + bytes);
  if (bytes) std::memcpy(out->data() + at, v.data(), bytes);
}

class Reader {
 public:
  Reader(const std::string& buf, const std::string& path)
      : buf_(buf), path_(path) {}

  uint32_t U32() {
    Need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<uint32_t>(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }
  uint64_t U64() {
    Need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<uint64_t>(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
    pos_ += 8;
    return v;
  }
  std::string Bytes(size_t n) {
    Need(n);
    std::string s = buf_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  void Blob(std::vector<float>* v) {
    const uint64_t n = U64();
    Need(n * sizeof(float));
    v->resize(n);
    if (n) std::memcpy(v->data(), buf_.data() + pos_, n * sizeof(float));
    pos_ += n * sizeof(float);
  }
  size_t pos() const { return pos_; }

 private:
  void Need(size_t n) {
    Require(pos_ + n <= buf_.size(), StatusCode::kFormatError,
            "truncated checkpoint: " + path_);
  }
  const std::string& buf_;
  std::string path_;
  size_t pos_ = 0;
};

}  // namespace

void SaveCheckpoint(Network<float>& network, const Adadelta<float>* optimizer,
                    const std::string& path) {
  std::string payload;
  PutU32(&payload, kVersion);
  PutU32(&payload, network.config().Hash());
  PutU64(&payload, network.seed());
  const std::string config_text = network.config().Serialize();
  PutU64(&payload, config_text.size());
  payload += config_text;

  auto params = network.Params();
  PutU64(&payload, params.size());
  for (auto& p : params) PutBlob(&payload, *p.value);
  auto states = network.States();
  PutU64(&payload, states.size());
  for (auto& s : states) PutBlob(&payload, *s.value);

  payload.push_back(optimizer ? 1 : 0);
  if (optimizer) {
    auto* opt = const_cast<Adadelta<float>*>(optimizer);
    {
      char buf[64];
      snprintf(buf, sizeof(buf), "%.17g", opt->lr_scale());
      std::string s(buf);
      PutU64(&payload, s.size());
      payload += s;
    }
    PutU64(&payload, opt->acc_grad().size());
    for (auto& v : opt->acc_grad()) PutBlob(&payload, v);
    for (auto& v : opt->acc_update()) PutBlob(&payload, v);
  }

  std::string out;
  out.append(kMagic, 4);
  PutU32(&out, Crc32::Of(payload));
  out += payload;

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  Require(f.good(), StatusCode::kIoError, "cannot write checkpoint: " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  Require(f.good(), StatusCode::kIoError, "short write to checkpoint: " + path);
}

LoadedCheckpoint LoadCheckpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  Require(in.good(), StatusCode::kIoError, "cannot open checkpoint: " + path);
  std::string buf((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  Require(buf.size() >= 8 && std::memcmp(buf.data(), kMagic, 4) == 0,
          StatusCode::kFormatError, "not a checkpoint file: " + path);

  uint32_t stored_crc = 0;
  for (int i = 0; i < 4; ++i)
    stored_crc |= static_cast<uint32_t>(static_cast<unsigned char>(buf[4 + i])) << (8 * i);
  const uint32_t actual_crc = Crc32::Of(buf.data() + 8, buf.size() - 8);
  Require(stored_crc == actual_crc, StatusCode::kFormatError,
          "checkpoint checksum mismatch (corrupted file): " + path);

  const std::string payload = buf.substr(8);
  Reader r(payload, path);
  const uint32_t version = r.U32();
  Require(version == kVersion, StatusCode::kCheckpointMismatch,
          "unsupported checkpoint version " + std::to_string(version) + ": " + path);
  LoadedCheckpoint out;
  out.config_hash = r.U32();
  out.seed = r.U64();
  out.file_crc = stored_crc;
  const uint64_t config_len = r.U64();
  const std::string config_text = r.Bytes(config_len);
  const NetworkConfig config = NetworkConfig::Deserialize(config_text);
  Require(config.Hash() == out.config_hash, StatusCode::kCheckpointMismatch,
          "checkpoint config hash mismatch: " + path);

  out.network = std::make_unique<Network<float>>(config);
  // Parameters overwrite the seed-derived initialization entirely; Init is
  // only needed to size the tensors consistently.
  out.network->Init(out.seed);

  auto params = out.network->Params();
  const uint64_t param_count = r.U64();
  Require(param_count == params.size(), StatusCode::kCheckpointMismatch,
          "checkpoint parameter tensor count mismatch: " + path);
  for (auto& p : params) {
    std::vector<float> v;
    r.Blob(&v);
    Require(v.size() == p.value->size(), StatusCode::kCheckpointMismatch,
            "parameter size mismatch for " + p.name + ": " + path);
    *p.value = std::move(v);
  }
  auto states = out.network->States();
  const uint64_t state_count = r.U64();
  Require(state_count == states.size(), StatusCode::kCheckpointMismatch,
          "checkpoint state tensor count mismatch: " + path);
  for (auto& s : states) {
    std::vector<float> v;
    r.Blob(&v);
    Require(v.size() == s.value->size(), StatusCode::kCheckpointMismatch,
            "state size mismatch for " + s.name + ": " + path);
    *s.value = std::move(v);
  }

  const std::string has_opt = r.Bytes(1);
  if (has_opt[0]) {
    auto opt = std::make_unique<Adadelta<float>>();
    opt->Attach(params);
    const uint64_t lr_len = r.U64();
    opt->set_lr_scale(ParseDoubleAllowInf(r.Bytes(lr_len)));
    const uint64_t n = r.U64();
    Require(n == params.size(), StatusCode::kCheckpointMismatch,
            "optimizer tensor count mismatch: " + path);
    for (auto& v : opt->acc_grad()) r.Blob(&v);
    for (auto& v : opt->acc_update()) r.Blob(&v);
    out.optimizer = std::move(opt);
  }
  return out;
}

}  // namespace sepremix::nn
