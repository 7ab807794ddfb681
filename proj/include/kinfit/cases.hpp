#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

#include "kinfit/body_model.hpp"
#include "kinfit/camera.hpp"
#include "kinfit/observations.hpp"
#include "kinfit/solver.hpp"

namespace kinfit {

inline constexpr int kCaseFileVersion = 1;
inline constexpr int kStateFileVersion = 1;
inline constexpr double kCanvasSize = 256.0;  // px, square image fixture

struct GroundTruth {
  PoseParams pose;
  ShapeParams shape;
  WeakPerspectiveCamera camera;
};

struct CaseFile {
  std::string model;  // path or description of the body model used
  std::uint64_t seed = 0;
  double noise2d = 0.0;  // px, std of isotropic Gaussian 2D noise
  std::optional<GroundTruth> truth;
  Observations obs;
  std::string notes;
};

// Plausible pose with a random global orientation, shape uniform in [-2, 2],
// and a camera that places the pelvis near the canvas center. All joints are
// observed in 3D and 2D; 2D observations carry the optional pixel noise.
CaseFile synth_case(const JointModel& model, std::uint64_t seed, double noise2d = 0.0,
                    const std::string& model_ref = "");

nlohmann::json camera_to_json(const WeakPerspectiveCamera& camera);
WeakPerspectiveCamera camera_from_json(const nlohmann::json& doc);

nlohmann::json case_to_json(const CaseFile& file);
CaseFile case_from_json(const nlohmann::json& doc);
void save_case(const CaseFile& file, const std::string& path);
CaseFile load_case(const std::string& path);

nlohmann::json solver_config_to_json(const SolverConfig& config);

nlohmann::json trace_to_json(const TraceRecord& record);
TraceRecord trace_from_json(const nlohmann::json& doc);
nlohmann::json state_to_json(const SolverState& state);
SolverState state_from_json(const nlohmann::json& doc);

// Header block stated in every output file.
nlohmann::json units_json();

}  // namespace kinfit
