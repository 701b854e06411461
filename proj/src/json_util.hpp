// Copyright 2026 The ugsopt Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UGSOPT_SRC_JSON_UTIL_HPP_
#define UGSOPT_SRC_JSON_UTIL_HPP_

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

#include "json.hpp"
#include "ugsopt/error.hpp"

namespace ugsopt::json_util {

using nlohmann::json;

inline std::string child(const std::string& path, std::string_view key) {
  return path + "/" + std::string(key);
}
inline std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

[[noreturn]] inline void fail(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::kInvalidInput, message, path.empty() ? "/" : path);
}

inline json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kInvalidInput, std::string("malformed JSON: ") + e.what(), "/");
  }
}

// Rejects anything that is not an object or carries keys outside `allowed`.
inline const json& expect_object(const json& j, const std::string& path,
                                  std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (std::string_view a : allowed) known = known || key == a;
    if (!known) fail(child(path, key), "unknown key");
  }
  return j;
}

inline const json& expect_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

inline const json& member(const json& obj, std::string_view key, const std::string& path) {
  auto it = obj.find(std::string(key));
  if (it == obj.end()) fail(child(path, key), "missing required key");
  return *it;
}

inline double number(const json& obj, std::string_view key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_number()) fail(child(path, key), "expected a number");
  return v.get<double>();
}

inline double number_or(const json& obj, std::string_view key, const std::string& path,
                        double fallback) {
  if (!obj.contains(std::string(key))) return fallback;
  return number(obj, key, path);
}

inline std::int64_t integer(const json& obj, std::string_view key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_number_integer()) fail(child(path, key), "expected an integer");
  return v.get<std::int64_t>();
}

inline std::string string(const json& obj, std::string_view key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_string()) fail(child(path, key), "expected a string");
  return v.get<std::string>();
}

inline bool boolean(const json& obj, std::string_view key, const std::string& path) {
  const json& v = member(obj, key, path);
  if (!v.is_boolean()) fail(child(path, key), "expected a boolean");
  return v.get<bool>();
}

}  // namespace ugsopt::json_util

#endif  // UGSOPT_SRC_JSON_UTIL_HPP_
