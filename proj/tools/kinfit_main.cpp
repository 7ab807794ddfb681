#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "kinfit/body_model.hpp"
#include "kinfit/cases.hpp"
#include "kinfit/chains.hpp"
#include "kinfit/codec.hpp"
#include "kinfit/config.hpp"
#include "kinfit/error.hpp"
#include "kinfit/eval.hpp"
#include "kinfit/model_io.hpp"
#include "kinfit/solver.hpp"

namespace fs = std::filesystem;
using namespace kinfit;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitNumerical = 4;

struct ConfigFlags {
  std::string config_path;
  std::optional<int> outer;
  std::optional<int> inner;
  std::optional<std::string> mode;

  void add(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "INI config with [solver] [weights] [prior] [sweep]");
    cmd->add_option("--outer", outer, "outer iterations T");
    cmd->add_option("--inner", inner, "inner passes P per chain");
  }

  RunConfig load() const {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    // Flags override the file; bad flag values are usage errors.
    try {
      if (outer) cfg.solver.outer_iters = *outer;
      if (inner) cfg.solver.inner_iters = *inner;
      if (mode) cfg.solver.mode = parse_solver_mode(*mode);
      cfg.sweep.solver = cfg.solver;
      cfg.validate();
    } catch (const InvalidArgument& e) {
      throw CLI::ValidationError(e.what());
    }
    return cfg;
  }
};

void write_json(const std::string& path, const nlohmann::json& doc) { codec::write_file(path, doc.dump(1) + "\n"); }

int cmd_synth_model(std::uint64_t seed, int vertices, const std::string& out) {
  const TemplateModel model = synth_model(seed, vertices);
  nlohmann::json doc = model_to_json(model);
  doc["provenance"] = {{"generator", "synth_model"}, {"seed", seed}, {"vertices", vertices}};
  codec::write_file(out, doc.dump(2) + "\n");
  std::cout << "wrote " << out << " (" << model.vertex_count() << " vertices, " << model.joint_count()
            << " joints)\n";
  return 0;
}

int cmd_synth_case(const std::string& model_path, std::uint64_t seed, double noise2d, const std::string& out) {
  const JointModel model = make_joint_model(load_model(model_path));
  CaseFile file = synth_case(model, seed, noise2d, model_path);
  file.notes = "synth-case --seed " + std::to_string(seed) + " --noise2d " + nlohmann::json(noise2d).dump();
  save_case(file, out);
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_fit(const std::string& model_path, const std::string& case_path, const ConfigFlags& flags,
            const std::string& out, const std::string& obj_path) {
  const TemplateModel mesh_model = load_model(model_path);
  const JointModel model = make_joint_model(mesh_model);
  const CaseFile file = load_case(case_path);
  const RunConfig cfg = flags.load();
  const std::optional<PosePrior> prior = make_prior(cfg.prior);
  const PosePrior* prior_ptr = prior ? &*prior : nullptr;

  const ChainSet chains = default_chain_set(model.tree);
  const SolverState state = outer_solve(model, chains, file.obs, cfg.solver, prior_ptr);
  const LossBreakdown loss =
      total_loss(model, state.pose, state.shape, state.camera, file.obs, prior_ptr, cfg.solver.weights);

  nlohmann::json doc = state_to_json(state);
  doc["config"] = config_to_json(cfg);
  doc["inputs"] = {{"model", model_path}, {"case", case_path}, {"case_seed", file.seed}};
  doc["loss"] = to_json(loss);
  std::optional<double> error;
  if (file.truth) {
    SolverState gt;
    gt.pose = file.truth->pose;
    gt.shape = file.truth->shape;
    gt.camera = file.truth->camera;
    error = mpjpe(predicted_joints(model, state), predicted_joints(model, gt));
    doc["mpjpe"] = *error;
  }
  write_json(out, doc);
  if (!obj_path.empty()) {
    const PosedMesh mesh = mesh_function(mesh_model, state.pose, state.shape);
    write_obj(obj_path, mesh.vertices, mesh_model.faces);
  }
  std::cout << "mode " << to_string(cfg.solver.mode) << "  loss " << loss.total << "  accepted steps "
            << state.accepted_steps();
  if (error) std::cout << "  mpjpe " << *error << " m";
  std::cout << "\nwrote " << out << "\n";
  return 0;
}

std::vector<CaseFile> load_cases_dir(const std::string& dir) {
  if (!fs::is_directory(dir)) throw IoError("cases directory '" + dir + "' does not exist");
  std::vector<fs::path> paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw IoError("no case files (*.json) in '" + dir + "'");
  std::vector<CaseFile> cases;
  for (const fs::path& p : paths) cases.push_back(load_case(p.string()));
  return cases;
}

int cmd_sweep(const std::string& model_path, const std::string& cases_dir, const ConfigFlags& flags,
              const std::string& patterns, const std::string& docs, const std::string& modes,
              const std::string& anchors, std::optional<int> workers, const std::string& out) {
  const JointModel model = make_joint_model(load_model(model_path));
  RunConfig cfg = flags.load();
  try {
    if (!patterns.empty()) {
      cfg.sweep.patterns.clear();
      for (const std::string& p : split_list(patterns)) cfg.sweep.patterns.push_back(parse_occlusion_pattern(p));
    }
    if (!docs.empty()) cfg.sweep.docs = parse_int_list(docs);
    if (!modes.empty()) {
      cfg.sweep.modes.clear();
      for (const std::string& m : split_list(modes)) cfg.sweep.modes.push_back(parse_solver_mode(m));
    }
    if (!anchors.empty()) cfg.sweep.anchors = parse_int_list(anchors);
  } catch (const InvalidArgument& e) {
    throw CLI::ValidationError(e.what());
  }
  if (workers) cfg.sweep.workers = *workers;
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw CLI::ValidationError(e.what());
  }

  std::vector<CaseFile> cases;
  if (!cases_dir.empty()) {
    cases = load_cases_dir(cases_dir);
  } else {
    for (int c = 0; c < cfg.suite.cases; ++c) {
      cases.push_back(synth_case(model, cfg.suite.first_seed + static_cast<std::uint64_t>(c), cfg.suite.noise2d,
                                 model_path));
    }
  }
  const std::optional<PosePrior> prior = make_prior(cfg.prior);
  const EvalReport report =
      run_occlusion_sweep(model, default_chain_set(model.tree), cases, cfg.sweep, prior ? &*prior : nullptr);

  nlohmann::json summary = report_json(report);
  summary["config"] = config_to_json(cfg);
  summary["inputs"] = {{"model", model_path}, {"cases_dir", cases_dir}};
  codec::write_file(out + ".csv", report_csv(report));
  write_json(out + ".json", summary);
  for (const ModeSummary& m : report.modes) {
    std::cout << m.mode << ": standard median " << m.standard_median_mm << " mm, occluded median "
              << m.occluded_median_mm << " mm, failed " << m.failed_count << "\n";
  }
  std::cout << "wrote " << out << ".csv and " << out << ".json (" << report.rows.size() << " rows, "
            << report.solves << " fits)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kinfit: hierarchical kinematic body-model fitting"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  int vertices = 512;
  std::string out, model_path, case_path, cases_dir, obj_path;
  double noise2d = 0.0;
  std::string patterns, docs, modes, anchors;
  std::optional<int> workers;
  ConfigFlags fit_flags, sweep_flags;

  auto* synth_model_cmd = app.add_subcommand("synth-model", "write a procedural body model");
  synth_model_cmd->add_option("--seed", seed, "generator seed");
  synth_model_cmd->add_option("--vertices", vertices, "vertex count (>= 24)");
  synth_model_cmd->add_option("--out", out, "model JSON path")->required();

  auto* synth_case_cmd = app.add_subcommand("synth-case", "sample a synthetic case with ground truth");
  synth_case_cmd->add_option("--model", model_path, "model JSON")->required();
  synth_case_cmd->add_option("--seed", seed, "case seed");
  synth_case_cmd->add_option("--noise2d", noise2d, "2D noise std (px)");
  synth_case_cmd->add_option("--out", out, "case JSON path")->required();

  auto* fit_cmd = app.add_subcommand("fit", "fit the model to a case");
  fit_cmd->add_option("--model", model_path, "model JSON")->required();
  fit_cmd->add_option("--case", case_path, "case JSON")->required();
  fit_flags.add(fit_cmd);
  fit_cmd->add_option("--mode", fit_flags.mode, "hierarchical | no-hierarchy | forward-only | flat");
  fit_cmd->add_option("--out", out, "state JSON path")->required();
  fit_cmd->add_option("--dump-obj", obj_path, "also write the fitted mesh as OBJ");

  auto* sweep_cmd = app.add_subcommand("sweep", "occlusion sweep over a case suite");
  sweep_cmd->add_option("--model", model_path, "model JSON")->required();
  sweep_cmd->add_option("--cases-dir", cases_dir, "directory of case JSON files (default: synthesize)");
  sweep_flags.add(sweep_cmd);
  sweep_cmd->add_option("--patterns", patterns, "comma list of bar, circle, rectangle");
  sweep_cmd->add_option("--docs", docs, "degrees of occlusion, e.g. 1..5");
  sweep_cmd->add_option("--modes", modes, "comma list of solver modes");
  sweep_cmd->add_option("--anchors", anchors, "anchor joints (default: all)");
  sweep_cmd->add_option("--workers", workers, "worker threads (default: available cores)");
  sweep_cmd->add_option("--out", out, "output prefix for .csv and .json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*synth_model_cmd) return cmd_synth_model(seed, vertices, out);
    if (*synth_case_cmd) return cmd_synth_case(model_path, seed, noise2d, out);
    if (*fit_cmd) return cmd_fit(model_path, case_path, fit_flags, out, obj_path);
    if (*sweep_cmd) {
      return cmd_sweep(model_path, cases_dir, sweep_flags, patterns, docs, modes, anchors, workers, out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitUsage;
}
