#pragma once

#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace kinfit::codec {

// Base64 of little-endian float64 values.
std::string encode_f64(std::span<const double> values);
std::vector<double> decode_f64(const std::string& text, const std::string& field);

// Checked accessors; errors name the missing or mistyped field.
const nlohmann::json& require(const nlohmann::json& object, const std::string& field);
std::vector<double> read_array(const nlohmann::json& doc, const std::string& field,
                               std::size_t expected_count);
std::vector<long long> read_shape(const nlohmann::json& doc, const std::string& field);

nlohmann::json parse_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace kinfit::codec
