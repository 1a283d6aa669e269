#pragma once

// Strict typed access to a JSON object: every failure names the JSON
// pointer of the offending value, and unknown keys are rejected.

#include <initializer_list>
#include <set>
#include <string>
#include <vector>

#include "dcbam/canonical_json.hpp"
#include "dcbam/errors.hpp"

namespace dcbam::detail {

inline std::string child_path(const std::string& path, const std::string& key) {
  std::string escaped;
  for (char c : key) {
    if (c == '~') escaped += "~0";
    else if (c == '/') escaped += "~1";
    else escaped += c;
  }
  return path + "/" + escaped;
}

inline std::string child_path(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

inline std::string where(const std::string& path) { return path.empty() ? "/" : path; }

inline double as_number(const Json& node, const std::string& path) {
  if (!node.is_number()) throw ParseError(where(path), "expected a number");
  return node.get<double>();
}

inline int as_int(const Json& node, const std::string& path) {
  if (!node.is_number_integer()) throw ParseError(where(path), "expected an integer");
  return node.get<int>();
}

inline std::string as_string(const Json& node, const std::string& path) {
  if (!node.is_string()) throw ParseError(where(path), "expected a string");
  return node.get<std::string>();
}

inline bool as_bool(const Json& node, const std::string& path) {
  if (!node.is_boolean()) throw ParseError(where(path), "expected true or false");
  return node.get<bool>();
}

inline const Json& as_array(const Json& node, const std::string& path) {
  if (!node.is_array()) throw ParseError(where(path), "expected an array");
  return node;
}

inline std::vector<std::string> as_string_list(const Json& node, const std::string& path) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < as_array(node, path).size(); ++i) {
    out.push_back(as_string(node[i], child_path(path, i)));
  }
  return out;
}

class ObjectReader {
 public:
  ObjectReader(const Json& node, std::string path,
               std::initializer_list<const char*> allowed)
      : node_(node), path_(std::move(path)) {
    if (!node.is_object()) throw ParseError(where(path_), "expected an object");
    std::set<std::string> keys(allowed.begin(), allowed.end());
    for (auto it = node.begin(); it != node.end(); ++it) {
      if (!keys.contains(it.key())) {
        throw ParseError(where(child_path(path_, it.key())), "unknown field");
      }
    }
  }

  bool has(const char* key) const { return node_.contains(key); }

  const Json& get(const char* key) const {
    if (!node_.contains(key)) throw ParseError(where(path(key)), "missing required field");
    return node_.at(key);
  }

  std::string path(const char* key) const { return child_path(path_, key); }

  double number(const char* key) const { return as_number(get(key), path(key)); }
  int integer(const char* key) const { return as_int(get(key), path(key)); }
  std::string string(const char* key) const { return as_string(get(key), path(key)); }
  bool boolean(const char* key) const { return as_bool(get(key), path(key)); }
  std::vector<std::string> strings(const char* key) const {
    return as_string_list(get(key), path(key));
  }

  double number_or(const char* key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }
  std::string string_or(const char* key, std::string fallback) const {
    return has(key) ? string(key) : std::move(fallback);
  }

 private:
  const Json& node_;
  std::string path_;
};

}  // namespace dcbam::detail
