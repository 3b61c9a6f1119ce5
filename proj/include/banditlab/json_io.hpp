#pragma once

// Small helpers shared by the JSON-backed file formats (configs, reward
// models, embedding tables, caches, summaries).

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "banditlab/core.hpp"

namespace banditlab {

using json = nlohmann::json;

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw BanditError("cannot write file: " + path);
  out << content;
  if (!out) throw BanditError("write failed: " + path);
}

inline json parse_json(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

inline json load_json_file(const std::string& path) {
  return parse_json(read_text_file(path), path);
}

// Strict key checking so config typos fail loudly. Keys starting with an
// underscore are ignored, which is how the shipped example configs carry
// inline commentary.
inline void check_keys(const json& j, std::initializer_list<const char*> allowed,
                       const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!key.empty() && key[0] == '_') continue;
    bool known = false;
    for (const char* a : allowed) {
      if (key == a) {
        known = true;
        break;
      }
    }
    if (!known) throw ParseError(where + ": unknown key \"" + key + "\"");
  }
}

template <typename T>
T require_field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(where + ": missing required key \"" + key + "\"");
  }
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + ": bad value for \"" + key + "\": " + e.what());
  }
}

template <typename T>
T field_or(const json& j, const char* key, T fallback, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + ": bad value for \"" + key + "\": " + e.what());
  }
}

}  // namespace banditlab
