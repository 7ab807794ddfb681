#include "kinfit/cases.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "kinfit/codec.hpp"
#include "kinfit/error.hpp"
#include "kinfit/kinematics.hpp"
#include "kinfit/objectives.hpp"

namespace kinfit {

namespace {

nlohmann::json vector_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd vector_from(const nlohmann::json& doc, const std::string& field, Eigen::Index expected = -1) {
  const nlohmann::json& node = codec::require(doc, field);
  if (!node.is_array()) throw ParseError("field '" + field + "' must be an array");
  if (expected >= 0 && static_cast<Eigen::Index>(node.size()) != expected) {
    throw ParseError("field '" + field + "' has " + std::to_string(node.size()) + " entries, expected " +
                     std::to_string(expected));
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) throw ParseError("field '" + field + "' must hold numbers");
    out[static_cast<Eigen::Index>(i)] = node[i].get<double>();
  }
  return out;
}

template <int Cols>
nlohmann::json rows_json(const Eigen::Matrix<double, Eigen::Dynamic, Cols, Eigen::RowMajor>& m) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out.push_back(std::vector<double>(m.row(r).data(), m.row(r).data() + Cols));
  }
  return out;
}

template <int Cols>
Eigen::Matrix<double, Eigen::Dynamic, Cols, Eigen::RowMajor> rows_from(const nlohmann::json& doc,
                                                                      const std::string& field) {
  const nlohmann::json& node = codec::require(doc, field);
  if (!node.is_array()) throw ParseError("field '" + field + "' must be an array of rows");
  Eigen::Matrix<double, Eigen::Dynamic, Cols, Eigen::RowMajor> out(static_cast<Eigen::Index>(node.size()), Cols);
  for (std::size_t r = 0; r < node.size(); ++r) {
    const nlohmann::json& row = node[r];
    if (!row.is_array() || row.size() != Cols) {
      throw ParseError("field '" + field + "' row " + std::to_string(r) + " must have " + std::to_string(Cols) +
                       " numbers");
    }
    for (int c = 0; c < Cols; ++c) {
      if (!row[static_cast<std::size_t>(c)].is_number()) throw ParseError("field '" + field + "' must hold numbers");
      out(static_cast<Eigen::Index>(r), c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }
  return out;
}

nlohmann::json mask_json(const Mask& m) {
  std::vector<bool> out(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.size(); ++i) out[static_cast<std::size_t>(i)] = m[i];
  return out;
}

Mask mask_from(const nlohmann::json& doc, const std::string& field) {
  const nlohmann::json& node = codec::require(doc, field);
  if (!node.is_array()) throw ParseError("field '" + field + "' must be an array of booleans");
  Mask out(static_cast<Eigen::Index>(node.size()));
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_boolean()) throw ParseError("field '" + field + "' must hold booleans");
    out[static_cast<Eigen::Index>(i)] = node[i].get<bool>();
  }
  return out;
}

LossBreakdown loss_from_json(const nlohmann::json& doc) {
  LossBreakdown loss;
  loss.l_3d = codec::require(doc, "l_3d").get<double>();
  loss.l_2d = codec::require(doc, "l_2d").get<double>();
  loss.l_smpl = codec::require(doc, "l_smpl").get<double>();
  loss.l_kl = codec::require(doc, "l_kl").get<double>();
  loss.total = codec::require(doc, "total").get<double>();
  if (doc.contains("weights")) {
    const nlohmann::json& w = doc["weights"];
    loss.weights.smpl = codec::require(w, "smpl").get<double>();
    loss.weights.joints3d = codec::require(w, "joints3d").get<double>();
    loss.weights.joints2d = codec::require(w, "joints2d").get<double>();
    loss.weights.prior = codec::require(w, "prior").get<double>();
  }
  return loss;
}

}  // namespace

nlohmann::json solver_config_to_json(const SolverConfig& config) {
  return {{"outer_iters", config.outer_iters},
          {"inner_iters", config.inner_iters},
          {"step_scale", config.step_scale},
          {"damping", config.damping},
          {"max_halvings", config.max_halvings},
          {"min_step", config.min_step},
          {"l1_smoothing_3d", config.l1_smoothing_3d},
          {"l1_smoothing_2d", config.l1_smoothing_2d},
          {"mode", to_string(config.mode)},
          {"weights",
           {{"smpl", config.weights.smpl},
            {"joints3d", config.weights.joints3d},
            {"joints2d", config.weights.joints2d},
            {"prior", config.weights.prior}}}};
}

nlohmann::json units_json() {
  return {{"angles", "radians"}, {"lengths", "meters"}, {"image", "pixels"}};
}

CaseFile synth_case(const JointModel& model, std::uint64_t seed, double noise2d, const std::string& model_ref) {
  if (!(noise2d >= 0.0) || !std::isfinite(noise2d)) throw InvalidArgument("synth_case: noise2d must be >= 0");
  const int joints = model.tree.joint_count();
  if (joints != kSmplJointCount) {
    throw UnsupportedSkeleton("synth_case: the pose sampler needs the 24-joint skeleton");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  GroundTruth truth;
  truth.pose = sample_plausible_poses(1, rng()).row(0).transpose();
  truth.pose[0] = 0.1 * gauss(rng);
  truth.pose[1] = std::numbers::pi * (unit(rng) - 0.5);
  truth.pose[2] = 0.1 * gauss(rng);
  truth.shape.resize(model.shape_dim());
  for (Eigen::Index k = 0; k < truth.shape.size(); ++k) truth.shape[k] = -2.0 + 4.0 * unit(rng);

  const Points3d posed = forward_kinematics(model.tree, truth.pose, model.rest_joints(truth.shape)).posed_joints;
  truth.camera.s = 100.0 + 40.0 * unit(rng);
  const Eigen::Vector2d center(0.5 * kCanvasSize + 20.0 * (unit(rng) - 0.5),
                               0.5 * kCanvasSize + 20.0 * (unit(rng) - 0.5));
  truth.camera.rho = center - truth.camera.s * posed.row(0).head<2>().transpose();

  CaseFile file;
  file.model = model_ref;
  file.seed = seed;
  file.noise2d = noise2d;
  file.obs.joints3d = posed;
  file.obs.joints2d = project(posed, truth.camera);
  if (noise2d > 0.0) {
    for (Eigen::Index i = 0; i < file.obs.joints2d.size(); ++i) file.obs.joints2d.data()[i] += noise2d * gauss(rng);
  }
  file.obs.vis3d = Mask::Constant(joints, true);
  file.obs.vis2d = Mask::Constant(joints, true);
  file.truth = std::move(truth);
  file.notes = "synthetic case; regenerate with synth-case --seed " + std::to_string(seed);
  return file;
}

nlohmann::json camera_to_json(const WeakPerspectiveCamera& camera) {
  return {{"s", camera.s}, {"rho", {camera.rho.x(), camera.rho.y()}}};
}

WeakPerspectiveCamera camera_from_json(const nlohmann::json& doc) {
  WeakPerspectiveCamera camera;
  const nlohmann::json& s = codec::require(doc, "s");
  if (!s.is_number()) throw ParseError("camera field 's' must be a number");
  camera.s = s.get<double>();
  camera.rho = vector_from(doc, "rho", 2);
  return camera;
}

nlohmann::json case_to_json(const CaseFile& file) {
  nlohmann::json doc;
  doc["format"] = "kinfit-case";
  doc["version"] = kCaseFileVersion;
  doc["units"] = units_json();
  doc["model"] = file.model;
  doc["seed"] = file.seed;
  doc["noise2d"] = file.noise2d;
  doc["notes"] = file.notes;
  if (file.truth) {
    doc["ground_truth"] = {{"pose", vector_json(file.truth->pose)},
                           {"shape", vector_json(file.truth->shape)},
                           {"camera", camera_to_json(file.truth->camera)}};
  }
  nlohmann::json obs;
  obs["joints3d"] = rows_json<3>(file.obs.joints3d);
  obs["joints2d"] = rows_json<2>(file.obs.joints2d);
  obs["vis3d"] = mask_json(file.obs.vis3d);
  obs["vis2d"] = mask_json(file.obs.vis2d);
  if (file.obs.param_targets) {
    obs["param_targets"] = {{"pose", vector_json(file.obs.param_targets->pose)},
                            {"shape", vector_json(file.obs.param_targets->shape)}};
  }
  doc["observations"] = std::move(obs);
  return doc;
}

CaseFile case_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("case file must be a JSON object");
  const int version = codec::require(doc, "version").get<int>();
  if (version != kCaseFileVersion) throw ParseError("unsupported case file version " + std::to_string(version));
  CaseFile file;
  file.model = doc.value("model", "");
  file.seed = codec::require(doc, "seed").get<std::uint64_t>();
  file.noise2d = doc.value("noise2d", 0.0);
  file.notes = doc.value("notes", "");
  if (doc.contains("ground_truth")) {
    const nlohmann::json& gt = doc["ground_truth"];
    GroundTruth truth;
    truth.pose = vector_from(gt, "pose");
    truth.shape = vector_from(gt, "shape");
    truth.camera = camera_from_json(codec::require(gt, "camera"));
    file.truth = std::move(truth);
  }
  const nlohmann::json& obs = codec::require(doc, "observations");
  file.obs.joints3d = rows_from<3>(obs, "joints3d");
  file.obs.joints2d = rows_from<2>(obs, "joints2d");
  file.obs.vis3d = mask_from(obs, "vis3d");
  file.obs.vis2d = mask_from(obs, "vis2d");
  if (obs.contains("param_targets")) {
    file.obs.param_targets = ParamTargets{vector_from(obs["param_targets"], "pose"),
                                          vector_from(obs["param_targets"], "shape")};
  }
  validate(file.obs, file.obs.joint_count());
  return file;
}

void save_case(const CaseFile& file, const std::string& path) {
  codec::write_file(path, case_to_json(file).dump(1) + "\n");
}

CaseFile load_case(const std::string& path) {
  const nlohmann::json doc = codec::parse_file(path);
  try {
    return case_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

nlohmann::json trace_to_json(const TraceRecord& r) {
  return {{"sequence", r.sequence}, {"outer", r.outer},       {"chain", r.chain},
          {"pass", r.pass},         {"joint", r.joint},       {"objective_before", r.objective_before},
          {"objective", r.objective}, {"alpha", r.alpha},     {"accepted", r.accepted}};
}

TraceRecord trace_from_json(const nlohmann::json& doc) {
  TraceRecord r;
  r.sequence = codec::require(doc, "sequence").get<int>();
  r.outer = codec::require(doc, "outer").get<int>();
  r.chain = codec::require(doc, "chain").get<std::string>();
  r.pass = codec::require(doc, "pass").get<std::string>();
  r.joint = codec::require(doc, "joint").get<int>();
  r.objective_before = codec::require(doc, "objective_before").get<double>();
  r.objective = codec::require(doc, "objective").get<double>();
  r.alpha = codec::require(doc, "alpha").get<double>();
  r.accepted = codec::require(doc, "accepted").get<bool>();
  return r;
}

nlohmann::json state_to_json(const SolverState& state) {
  nlohmann::json doc;
  doc["format"] = "kinfit-state";
  doc["version"] = kStateFileVersion;
  doc["units"] = units_json();
  doc["pose"] = vector_json(state.pose);
  doc["shape"] = vector_json(state.shape);
  doc["camera"] = camera_to_json(state.camera);
  nlohmann::json losses = nlohmann::json::array();
  for (const LossBreakdown& loss : state.outer_losses) losses.push_back(to_json(loss));
  doc["outer_losses"] = std::move(losses);
  doc["aggregate_loss"] = state.aggregate_loss;
  doc["warnings"] = state.warnings;
  doc["next_sequence"] = state.next_sequence;
  nlohmann::json trace = nlohmann::json::array();
  for (const TraceRecord& r : state.trace) trace.push_back(trace_to_json(r));
  doc["trace"] = std::move(trace);
  return doc;
}

SolverState state_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("state file must be a JSON object");
  const int version = codec::require(doc, "version").get<int>();
  if (version != kStateFileVersion) throw ParseError("unsupported state file version " + std::to_string(version));
  SolverState state;
  state.pose = vector_from(doc, "pose");
  state.shape = vector_from(doc, "shape");
  state.camera = camera_from_json(codec::require(doc, "camera"));
  for (const nlohmann::json& loss : codec::require(doc, "outer_losses")) {
    state.outer_losses.push_back(loss_from_json(loss));
  }
  state.aggregate_loss = codec::require(doc, "aggregate_loss").get<double>();
  state.warnings = doc.value("warnings", std::vector<std::string>{});
  state.next_sequence = doc.value("next_sequence", 0);
  for (const nlohmann::json& r : codec::require(doc, "trace")) state.trace.push_back(trace_from_json(r));
  return state;
}

}  // namespace kinfit
