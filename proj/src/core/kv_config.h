// src/core/kv_config.h

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

#ifndef SEPREMIX_CORE_KV_CONFIG_H_
#define SEPREMIX_CORE_KV_CONFIG_H_

#include <map>
#include <string>
#include <vector>

namespace sepremix {

// Human-readable "key = value" files. Lines starting with '#' and blank
// lines are ignored. Keys are unique; later occurrences overwrite.
class KvConfig {
 public:
  KvConfig() = default;

  static KvConfig Load(const std::string& path);
  static KvConfig Parse(const std::string& text);

  bool Has(const std::string& key) const;

  std::string GetString(const std::string& key) const;
  std::string GetString(const std::string& key, const std::string& dflt) const;
  double GetDouble(const std::string& key) const;
  double GetDouble(const std::string& key, double dflt) const;
  // Accepts "-inf" / "inf" for unbounded attenuation entries.
  long long GetInt(const std::string& key) const;
  long long GetInt(const std::string& key, long long dflt) const;
  bool GetBool(const std::string& key, bool dflt) const;
  // Comma-separated list of doubles ("-inf" allowed).
  std::vector<double> GetDoubleList(const std::string& key,
                                    const std::string& dflt) const;
  std::vector<std::string> GetStringList(const std::string& key,
                                         const std::string& dflt) const;

  void Set(const std::string& key, const std::string& value);

  // Canonical serialization: keys sorted, "key = value" per line.
  std::string ToString() const;

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
};

double ParseDoubleAllowInf(const std::string& text);

}  // namespace sepremix

#endif  // SEPREMIX_CORE_KV_CONFIG_H_
