// src/core/kv_config.cc

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

#include "core/kv_config.h"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "core/common.h"

namespace sepremix {

namespace {

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitCommas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

double ParseDoubleAllowInf(const std::string& text) {
  std::string t = Trim(text);
  if (t == "-inf" || t == "-Inf" || t == "-INF")
    return -std::numeric_limits<double>::infinity();
  if (t == "inf" || t == "Inf" || t == "INF")
    return std::numeric_limits<double>::infinity();
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &pos);
  } catch (const std::exception&) {
    Throw(StatusCode::kFormatError, "not a number: '" + text + "'");
  }
  Require(pos == t.size(), StatusCode::kFormatError,
          "trailing characters in number: '" + text + "'");
  return v;
}

KvConfig KvConfig::Load(const std::string& path) {
  std::ifstream in(path);
  Require(in.good(), StatusCode::kIoError, "cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

KvConfig KvConfig::Parse(const std::string& text) {
  KvConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    std::string t = Trim(line);
    if (t.empty() || t[0] == '#') continue;
    size_t eq = t.find('=');
    Require(eq != std::string::npos, StatusCode::kFormatError,
            "config line " + std::to_string(lineno) + " has no '='");
    std::string key = Trim(t.substr(0, eq));
    std::string value = Trim(t.substr(eq + 1));
    Require(!key.empty(), StatusCode::kFormatError,
            "config line " + std::to_string(lineno) + " has empty key");
    cfg.entries_[key] = value;
  }
  return cfg;
}

bool KvConfig::Has(const std::string& key) const {
  return entries_.count(key) > 0;
}

std::string KvConfig::GetString(const std::string& key) const {
  auto it = entries_.find(key);
  Require(it != entries_.end(), StatusCode::kFormatError,
          "missing config key: " + key);
  return it->second;
}

std::string KvConfig::GetString(const std::string& key,
                                const std::string& dflt) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? dflt : it->second;
}

double KvConfig::GetDouble(const std::string& key) const {
  return ParseDoubleAllowInf(GetString(key));
}

double KvConfig::GetDouble(const std::string& key, double dflt) const {
  return Has(key) ? GetDouble(key) : dflt;
}

long long KvConfig::GetInt(const std::string& key) const {
  const std::string s = GetString(key);
  try {
    size_t pos = 0;
    long long v = std::stoll(s, &pos);
    Require(pos == s.size(), StatusCode::kFormatError,
            "trailing characters in integer '" + s + "' for key " + key);
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    Throw(StatusCode::kFormatError, "not an integer: '" + s + "' for key " + key);
  }
}

long long KvConfig::GetInt(const std::string& key, long long dflt) const {
  return Has(key) ? GetInt(key) : dflt;
}

bool KvConfig::GetBool(const std::string& key, bool dflt) const {
  if (!Has(key)) return dflt;
  std::string v = GetString(key);
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  Throw(StatusCode::kFormatError, "not a boolean: '" + v + "' for key " + key);
}

std::vector<double> KvConfig::GetDoubleList(const std::string& key,
                                            const std::string& dflt) const {
  std::vector<double> out;
  for (const auto& item : SplitCommas(GetString(key, dflt)))
    out.push_back(ParseDoubleAllowInf(item));
  return out;
}

std::vector<std::string> KvConfig::GetStringList(const std::string& key,
                                                 const std::string& dflt) const {
  return SplitCommas(GetString(key, dflt));
}

void KvConfig::Set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}

std::string KvConfig::ToString() const {
  std::stringstream ss;
  for (const auto& [k, v] : entries_) ss << k << " = " << v << "\n";
  return ss.str();
}

}  // namespace sepremix
