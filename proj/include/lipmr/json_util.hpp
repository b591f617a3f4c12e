#pragma once

#include <string>

#include <json.hpp>

#include "lipmr/errors.hpp"

namespace lipmr {

// All documents use insertion-ordered objects so emitted key order is fixed.
using json = nlohmann::ordered_json;

// Serializes with 2-space indentation and doubles printed as %.17g so that
// every finite value round-trips to the identical bits. Output bytes depend
// only on the document contents. Non-finite numbers are a bug upstream;
// fields that may be infinite store the string "inf" instead.
std::string dump17(const json& doc);

// Encodes a nonnegative quantity that may be +infinity.
json encode_real_or_inf(double x);
double decode_real_or_inf(const json& j, const std::string& key);

const json& require(const json& j, const std::string& key);
double get_double(const json& j, const std::string& key);
int get_int(const json& j, const std::string& key);
bool get_bool(const json& j, const std::string& key);
std::string get_string(const json& j, const std::string& key);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
json parse_json_file(const std::string& path);

}  // namespace lipmr
