#include "lipmr/json_util.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lipmr {

namespace {

void append_number(std::string& out, const json& j) {
  if (j.is_number_float()) {
    double v = j.get<double>();
    LIPMR_ASSERT(std::isfinite(v), "non-finite double reached the serializer");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    std::string text(buf);
    // Keep float-typed values float-shaped so parsing preserves the type
    // (and the sign of -0.0).
    if (text.find_first_of(".eE") == std::string::npos) text += ".0";
    out += text;
  } else if (j.is_number_unsigned()) {
    out += std::to_string(j.get<std::uint64_t>());
  } else {
    out += std::to_string(j.get<std::int64_t>());
  }
}

void append_value(std::string& out, const json& j, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth), ' ');
  const std::string pad_in(2 * static_cast<std::size_t>(depth + 1), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        out += json(key).dump();
        out += ": ";
        append_value(out, value, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      bool first = true;
      for (const auto& value : j) {
        if (!first) out += ", ";
        first = false;
        append_value(out, value, depth + 1);
      }
      out += "]";
      return;
    }
    case json::value_t::string:
      out += j.dump();
      return;
    case json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case json::value_t::null:
      out += "null";
      return;
    default:
      append_number(out, j);
      return;
  }
}

}  // namespace

std::string dump17(const json& doc) {
  std::string out;
  append_value(out, doc, 0);
  out += "\n";
  return out;
}

json encode_real_or_inf(double x) {
  LIPMR_ASSERT(!std::isnan(x), "NaN cannot be encoded");
  if (std::isinf(x)) return json(x > 0 ? "inf" : "-inf");
  return json(x);
}

double decode_real_or_inf(const json& j, const std::string& key) {
  const json& v = require(j, key);
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw BadDocument("field '" + key + "' holds unrecognized string '" + s + "'");
  }
  if (!v.is_number()) throw BadDocument("field '" + key + "' is not a number");
  return v.get<double>();
}

const json& require(const json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw BadDocument("missing field '" + key + "'");
  return *it;
}

double get_double(const json& j, const std::string& key) {
  const json& v = require(j, key);
  if (!v.is_number()) throw BadDocument("field '" + key + "' is not a number");
  return v.get<double>();
}

int get_int(const json& j, const std::string& key) {
  const json& v = require(j, key);
  if (!v.is_number_integer()) throw BadDocument("field '" + key + "' is not an integer");
  return v.get<int>();
}

bool get_bool(const json& j, const std::string& key) {
  const json& v = require(j, key);
  if (!v.is_boolean()) throw BadDocument("field '" + key + "' is not a boolean");
  return v.get<bool>();
}

std::string get_string(const json& j, const std::string& key) {
  const json& v = require(j, key);
  if (!v.is_string()) throw BadDocument("field '" + key + "' is not a string");
  return v.get<std::string>();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << content;
  if (!out) throw InputError("failed while writing file: " + path);
}

json parse_json_file(const std::string& path) {
  std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw BadDocument(path + ": " + e.what());
  }
}

}  // namespace lipmr
