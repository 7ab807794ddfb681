#include "kinfit/codec.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "kinfit/error.hpp"

namespace kinfit::codec {

static_assert(std::endian::native == std::endian::little,
              "model files store little-endian float64; add byte swapping for this platform");

std::string encode_f64(std::span<const double> values) {
  const std::size_t bytes = values.size_bytes();
  std::string out(4 * ((bytes + 2) / 3), '\0');
  const int written = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                      reinterpret_cast<const unsigned char*>(values.data()),
                                      static_cast<int>(bytes));
  out.resize(static_cast<std::size_t>(written));
  return out;
}

std::vector<double> decode_f64(const std::string& text, const std::string& field) {
  if (text.size() % 4 != 0) {
    throw ParseError("field '" + field + "': base64 length is not a multiple of 4");
  }
  std::string raw(3 * text.size() / 4, '\0');
  const int decoded = text.empty() ? 0
                                   : EVP_DecodeBlock(reinterpret_cast<unsigned char*>(raw.data()),
                                                     reinterpret_cast<const unsigned char*>(text.data()),
                                                     static_cast<int>(text.size()));
  if (decoded < 0) throw ParseError("field '" + field + "': invalid base64 payload");
  std::size_t size = static_cast<std::size_t>(decoded);
  if (!text.empty() && text.back() == '=') --size;
  if (text.size() >= 2 && text[text.size() - 2] == '=') --size;
  if (size % sizeof(double) != 0) {
    throw ParseError("field '" + field + "': payload is not a whole number of float64 values");
  }
  std::vector<double> values(size / sizeof(double));
  std::memcpy(values.data(), raw.data(), size);
  return values;
}

const nlohmann::json& require(const nlohmann::json& object, const std::string& field) {
  if (!object.is_object() || !object.contains(field)) {
    throw ParseError("missing field '" + field + "'");
  }
  return object.at(field);
}

std::vector<long long> read_shape(const nlohmann::json& doc, const std::string& field) {
  const nlohmann::json& shapes = require(doc, "shapes");
  try {
    return require(shapes, field).get<std::vector<long long>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("field 'shapes." + field + "': " + e.what());
  }
}

std::vector<double> read_array(const nlohmann::json& doc, const std::string& field,
                               std::size_t expected_count) {
  const nlohmann::json& node = require(doc, field);
  if (!node.is_string()) throw ParseError("field '" + field + "': expected a base64 string");
  std::vector<double> values = decode_f64(node.get<std::string>(), field);
  if (values.size() != expected_count) {
    throw ParseError("field '" + field + "': expected " + std::to_string(expected_count) +
                     " values, found " + std::to_string(values.size()));
  }
  return values;
}

nlohmann::json parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace kinfit::codec
