#pragma once

#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bicayley/error.hpp"

namespace bicayley {

using Json = nlohmann::ordered_json;

enum class Format { Json, Csv, Text };

inline Format format_from_string(std::string_view s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw Error(ErrorCode::BadParameter, "unknown format '" + std::string(s) + "'");
}

namespace detail {

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

inline std::string csv_cell(const Json& v) {
  std::string s = scalar_text(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

inline void flatten(const Json& v, const std::string& prefix, std::ostream& os, std::string_view sep,
                    std::string_view lead) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os, sep, lead);
    return;
  }
  os << lead << prefix << sep << scalar_text(v) << '\n';
}

}  // namespace detail

/// A report is {"config": {...}, "result": {...}} with an optional "rows"
/// array of flat objects. JSON is written as is; CSV puts the config and
/// result into "# key=value" comment lines and the rows into a table; text
/// is "key: value" lines followed by the rows.
inline void emit(const Json& doc, Format f, std::ostream& os) {
  if (f == Format::Json) {
    os << doc.dump(2) << '\n';
    return;
  }
  const std::string_view sep = f == Format::Csv ? "=" : ": ";
  const std::string_view lead = f == Format::Csv ? "# " : "";
  if (doc.contains("config")) detail::flatten(doc["config"], "config", os, sep, lead);
  if (doc.contains("result")) detail::flatten(doc["result"], "", os, sep, lead);
  if (!doc.contains("rows") || doc["rows"].empty()) return;
  const auto& rows = doc["rows"];
  std::vector<std::string> keys;
  for (auto it = rows.front().begin(); it != rows.front().end(); ++it) keys.push_back(it.key());
  const char delim = f == Format::Csv ? ',' : '\t';
  for (std::size_t i = 0; i < keys.size(); ++i) os << (i ? std::string(1, delim) : "") << keys[i];
  os << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i) os << delim;
      const Json v = r.contains(keys[i]) ? r[keys[i]] : Json();
      os << (f == Format::Csv ? detail::csv_cell(v) : detail::scalar_text(v));
    }
    os << '\n';
  }
}

inline std::string emit_to_string(const Json& doc, Format f) {
  std::ostringstream os;
  emit(doc, f, os);
  return os.str();
}

}  // namespace bicayley
