#pragma once

#include <string>

#include "json.hpp"

#include "kinfit/body_model.hpp"

namespace kinfit {

inline constexpr int kModelFileVersion = 1;

// JSON header with base64 little-endian float64 payloads (row-major; shapes
// declared under "shapes"). Loading validates the model.
nlohmann::json model_to_json(const TemplateModel& model);
TemplateModel model_from_json(const nlohmann::json& doc);

void save_model(const TemplateModel& model, const std::string& path);
TemplateModel load_model(const std::string& path);

// ASCII Wavefront OBJ: "v x y z" lines, then 1-indexed "f a b c" lines.
std::string obj_string(const Points3d& vertices, const Faces& faces);
void write_obj(const std::string& path, const Points3d& vertices, const Faces& faces);

}  // namespace kinfit
