#pragma once

// Strict field access for the JSON dialect used by instance and config files.

#include <initializer_list>
#include <string>
#include <string_view>

#include <json.hpp>

#include "mnpp/errors.hpp"

namespace mnpp::detail {

using Json = nlohmann::ordered_json;

inline std::string join_path(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

inline void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) throw InputError("'" + path + "' must be an object");
}

inline void reject_unknown(const Json& j, const std::string& path,
                           std::initializer_list<std::string_view> allowed) {
  require_object(j, path);
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || a == key;
    if (!known) throw InputError("unknown field '" + join_path(path, key) + "'");
  }
}

inline const Json& field(const Json& j, const std::string& path, std::string_view key) {
  auto it = j.find(std::string(key));
  if (it == j.end()) throw InputError("missing field '" + join_path(path, key) + "'");
  return *it;
}

inline double number(const Json& j, const std::string& path, std::string_view key) {
  const Json& v = field(j, path, key);
  if (!v.is_number()) throw InputError("field '" + join_path(path, key) + "' must be a number");
  return v.get<double>();
}

inline std::int64_t integer(const Json& j, const std::string& path, std::string_view key) {
  const Json& v = field(j, path, key);
  if (!v.is_number_integer()) {
    throw InputError("field '" + join_path(path, key) + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

inline std::string text(const Json& j, const std::string& path, std::string_view key) {
  const Json& v = field(j, path, key);
  if (!v.is_string()) throw InputError("field '" + join_path(path, key) + "' must be a string");
  return v.get<std::string>();
}

inline Json parse_json(std::string_view body, const std::string& what) {
  try {
    return Json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(what + ": " + e.what());
  }
}

}  // namespace mnpp::detail
