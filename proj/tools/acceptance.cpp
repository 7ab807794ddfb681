// Acceptance run: one PASS/FAIL line per criterion. Tolerances are fixed
// here. Exit status is 0 when every check ran to completion (a FAIL line
// is a result, not a crash) and 1 when a check could not run.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "oracles.hpp"

#include "kinfit/body_model.hpp"
#include "kinfit/camera.hpp"
#include "kinfit/cases.hpp"
#include "kinfit/chains.hpp"
#include "kinfit/config.hpp"
#include "kinfit/error.hpp"
#include "kinfit/eval.hpp"
#include "kinfit/kinematics.hpp"
#include "kinfit/model_io.hpp"
#include "kinfit/objectives.hpp"
#include "kinfit/solver.hpp"

using namespace kinfit;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

constexpr double kJacobianTol = 1e-5;
constexpr double kJacobianSeconds = 30.0;
constexpr double kOracleTol = 1e-10;
constexpr double kZeroPoseTol = 1e-12;
constexpr double kTwoLinkTol = 1e-6;
constexpr int kTwoLinkPasses = 20;
constexpr double kCleanStrictTol = 1e-3;  // m, T=6: every case
constexpr double kCleanMedianTol = 1e-2;  // m, T=3: median
constexpr double kCameraTol = 1e-9;
constexpr double kPriorGradTol = 1e-6;
constexpr double kPriorVarianceRel = 0.10;
constexpr double kSweepSeconds = 600.0;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// Lines are echoed to stderr as they finish and printed in criterion order
// at the end.
struct Report {
  int passed = 0;
  int failed = 0;
  std::map<int, std::string> lines;

  void line(int id, const std::string& name, bool ok, const std::string& detail) {
    (ok ? passed : failed)++;
    lines[id] = "criterion " + std::to_string(id) + " [" + name + "]: " + (ok ? "PASS" : "FAIL") + "  " + detail;
    std::cerr << lines[id] << std::endl;
  }
  void skip(int id, const std::string& name, const std::string& why) {
    lines[id] = "criterion " + std::to_string(id) + " [" + name + "]: SKIPPED (" + why + ")";
  }
  void print(std::ostream& out) const {
    for (const auto& [id, text] : lines) out << text << "\n";
    out << "summary: " << passed << " passed, " << failed << " failed" << std::endl;
  }
};

// Monotone traces seen by every solve in this run.
struct TraceTally {
  long solves = 0;
  long records = 0;
  long violations = 0;

  void add(const SolverState& s) {
    ++solves;
    records += static_cast<long>(s.trace.size());
    if (!trace_monotone(s.trace)) ++violations;
  }
};

SolverState from_truth(const GroundTruth& t) {
  SolverState s;
  s.pose = t.pose;
  s.shape = t.shape;
  s.camera = t.camera;
  return s;
}

ShapeParams random_shape(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  ShapeParams b(kShapeDim);
  for (Eigen::Index k = 0; k < b.size(); ++k) b[k] = u(rng);
  return b;
}

void jacobian_check(Report& report) {
  const auto start = Clock::now();
  double worst = 0.0;
  std::vector<int> targets(kSmplJointCount);
  for (int j = 0; j < kSmplJointCount; ++j) targets[static_cast<std::size_t>(j)] = j;
  for (int seed = 0; seed < 100; ++seed) {
    const JointModel model = make_joint_model(synth_model(static_cast<std::uint64_t>(seed)));
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed) + 1000);
    const Points3d rest = model.rest_joints(random_shape(rng));
    const PoseParams pose = oracle::random_pose(rng, kSmplJointCount, 1.0);
    const Eigen::MatrixXd analytic = joint_jacobian(model.tree, pose, rest, targets);
    const double h = 1e-6;
    for (Eigen::Index c = 0; c < pose.size(); ++c) {
      PoseParams a = pose, b = pose;
      a[c] += h;
      b[c] -= h;
      const Points3d pa = forward_kinematics(model.tree, a, rest).posed_joints;
      const Points3d pb = forward_kinematics(model.tree, b, rest).posed_joints;
      for (int t = 0; t < kSmplJointCount; ++t) {
        const Eigen::Vector3d fd = (pa.row(t) - pb.row(t)).transpose() / (2 * h);
        worst = std::max(worst, (analytic.block(3 * t, c, 3, 1) - fd).cwiseAbs().maxCoeff());
      }
    }
  }
  const double elapsed = seconds_since(start);
  report.line(1, "jacobian vs finite differences", worst < kJacobianTol && elapsed < kJacobianSeconds,
              "100 seeds, max |J - J_fd| = " + fmt(worst) + " (tol " + fmt(kJacobianTol) + "), " + fmt(elapsed) +
                  " s (limit " + fmt(kJacobianSeconds) + " s)");
}

void oracle_check(Report& report) {
  double fk_err = 0.0, lbs_err = 0.0, zero_err = 0.0;
  for (int seed = 0; seed < 50; ++seed) {
    const TemplateModel model = synth_model(static_cast<std::uint64_t>(seed));
    const KinematicTree tree = model_tree(model);
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed) + 2000);
    const ShapeParams beta = random_shape(rng);
    const PoseParams pose = oracle::random_pose(rng, kSmplJointCount, 1.0);
    const Points3d shaped = shape_deform(model, beta);
    const Points3d rest = regress_rest_joints(model, shaped);

    const Points3d fk = forward_kinematics(tree, pose, rest).posed_joints;
    fk_err = std::max(fk_err, (fk - oracle::chained_joints(model.parents, pose, rest)).cwiseAbs().maxCoeff());
    const PosedMesh mesh = mesh_function(model, pose, beta);
    lbs_err = std::max(lbs_err, (mesh.vertices - oracle::naive_lbs(model, shaped, pose)).cwiseAbs().maxCoeff());

    const PoseParams zero = PoseParams::Zero(kSmplPoseDim);
    const PosedMesh rest_mesh = mesh_function(model, zero, beta);
    zero_err = std::max(zero_err, (forward_kinematics(tree, zero, rest).posed_joints - rest).cwiseAbs().maxCoeff());
    zero_err = std::max(zero_err, (rest_mesh.vertices - shaped).cwiseAbs().maxCoeff());
  }
  const bool ok = fk_err < kOracleTol && lbs_err < kOracleTol && zero_err <= kZeroPoseTol;
  report.line(2, "fk and skinning oracles", ok,
              "50 seeds, fk " + fmt(fk_err) + ", lbs " + fmt(lbs_err) + " (tol " + fmt(kOracleTol) +
                  "), zero pose " + fmt(zero_err) + " (tol " + fmt(kZeroPoseTol) + ")");
}

void two_link_check(Report& report, TraceTally& tally) {
  const oracle::TwoLink arm;
  const JointModel model = arm.model();
  const Mask active = arm.active();
  const Chain chain{ChainId::Custom, "arm", {0, 1}};
  SolverConfig cfg;
  cfg.inner_iters = kTwoLinkPasses;

  int converged = 0;
  int worst_passes = 0;
  double worst_err = 0.0, worst_angle = 0.0;
  std::vector<int> alternating, forward;
  for (int seed = 0; seed < 25; ++seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
    const Eigen::Vector2d target = arm.random_target(rng);
    const Eigen::Vector2d start = arm.random_start(rng);

    const Observations obs = arm.tip_target(target);
    const FitContext ctx{model, obs, cfg, nullptr, nullptr, &active};
    SolverState state;
    state.pose = PoseParams::Zero(9);
    state.pose[2] = start[0];
    state.pose[5] = start[1];
    state.shape = ShapeParams::Zero(0);
    inner_solve_chain(ctx, chain, state);
    tally.add(state);
    const double q1 = state.pose[2], q2 = state.pose[5];
    const double err = (arm.tip(q1, q2) - target).norm();
    const Eigen::Vector2d branch = arm.solve(target, oracle::wrap_angle(q2) >= 0 ? 1.0 : -1.0);
    worst_err = std::max(worst_err, err);
    worst_angle = std::max({worst_angle, std::abs(oracle::wrap_angle(q1 - branch[0])),
                            std::abs(oracle::wrap_angle(q2 - branch[1]))});

    SolverState probe;
    const int passes = arm.passes_to_converge(target, start, false, 100, probe, kTwoLinkTol);
    const int fo_passes = arm.passes_to_converge(target, start, true, 100, probe, kTwoLinkTol);
    alternating.push_back(passes > 0 ? passes : 1000);
    forward.push_back(fo_passes > 0 ? fo_passes : 1000);
    worst_passes = std::max(worst_passes, passes > 0 ? passes : 1000);
    if (err < kTwoLinkTol && passes > 0 && passes <= kTwoLinkPasses) ++converged;
  }
  std::sort(alternating.begin(), alternating.end());
  std::sort(forward.begin(), forward.end());
  report.line(3, "two-link oracle", converged == 25,
              std::to_string(converged) + "/25 seeds within " + std::to_string(kTwoLinkPasses) +
                  " passes, worst tip error " + fmt(worst_err) + " (tol " + fmt(kTwoLinkTol) + "), worst pass count " +
                  std::to_string(worst_passes) + ", worst angle gap to closed form " + fmt(worst_angle) +
                  " rad; median passes forward-backward " + std::to_string(alternating[12]) + ", forward-only " +
                  std::to_string(forward[12]));
}

void clean_recovery_check(Report& report, TraceTally& tally, const JointModel& model) {
  const ChainSet chains = default_chain_set(model.tree);
  SolverConfig cfg;
  cfg.weights.prior = 0.0;  // no prior: it biases noise-free recovery by construction
  std::vector<double> strict, paper;
  for (int c = 0; c < 50; ++c) {
    const CaseFile file = synth_case(model, 1000 + static_cast<std::uint64_t>(c));
    const Points3d truth = predicted_joints(model, from_truth(*file.truth));
    cfg.outer_iters = 6;
    const SolverState s6 = outer_solve(model, chains, file.obs, cfg);
    cfg.outer_iters = 3;
    const SolverState s3 = outer_solve(model, chains, file.obs, cfg);
    tally.add(s6);
    tally.add(s3);
    strict.push_back(mpjpe(predicted_joints(model, s6), truth));
    paper.push_back(mpjpe(predicted_joints(model, s3), truth));
  }
  const double strict_max = *std::max_element(strict.begin(), strict.end());
  const long strict_ok = std::count_if(strict.begin(), strict.end(), [](double e) { return e < kCleanStrictTol; });
  const double paper_median = median(paper);
  report.line(4, "clean recovery", strict_ok == 50 && paper_median < kCleanMedianTol,
              "T=6,P=4: " + std::to_string(strict_ok) + "/50 below " + fmt(kCleanStrictTol) + " m (median " +
                  fmt(median(strict)) + ", max " + fmt(strict_max) + "); T=3,P=4: median " + fmt(paper_median) +
                  " m (tol " + fmt(kCleanMedianTol) + ")");
}

void camera_check(Report& report) {
  const KinematicTree tree = smpl_tree();
  double worst_s = 0.0, worst_rho = 0.0;
  int partial = 0;
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed) + 3000);
    const Points3d joints = forward_kinematics(tree, oracle::random_pose(rng, 24, 0.6), tree.rest_joints()).posed_joints;
    WeakPerspectiveCamera truth;
    truth.s = std::uniform_real_distribution<double>(20.0, 400.0)(rng);
    truth.rho = {std::uniform_real_distribution<double>(-100.0, 400.0)(rng),
                 std::uniform_real_distribution<double>(-100.0, 400.0)(rng)};
    Mask vis = Mask::Constant(24, true);
    if (seed % 2 == 1) {
      // Partial visibility, down to two joints.
      const int keep = 2 + static_cast<int>(rng() % 22);
      std::vector<int> order(24);
      for (int j = 0; j < 24; ++j) order[static_cast<std::size_t>(j)] = j;
      std::shuffle(order.begin(), order.end(), rng);
      vis.setConstant(false);
      for (int k = 0; k < keep; ++k) vis[order[static_cast<std::size_t>(k)]] = true;
      ++partial;
    }
    Points2d x2 = project(joints, truth);
    for (Eigen::Index j = 0; j < 24; ++j) {
      if (!vis[j]) x2.row(j) << -1e7, 1e7;
    }
    const CameraFit fit = estimate_camera(joints, x2, vis);
    worst_s = std::max(worst_s, std::abs(fit.camera.s - truth.s));
    worst_rho = std::max(worst_rho, (fit.camera.rho - truth.rho).cwiseAbs().maxCoeff());
  }
  report.line(6, "camera recovery", worst_s < kCameraTol && worst_rho < kCameraTol,
              "100 seeds (" + std::to_string(partial) + " with partial masks), max |ds| " + fmt(worst_s) +
                  ", max |drho| " + fmt(worst_rho) + " (tol " + fmt(kCameraTol) + ")");
}

void prior_check(Report& report) {
  const PosePrior prior = default_prior();
  PoseParams at_mean = PoseParams::Zero(kSmplPoseDim);
  at_mean.tail(prior.dim()) = prior.mean;
  const double at_mean_value = prior_penalty(prior, at_mean);

  double grad_err = 0.0;
  for (int seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(seed) + 4000);
    const PoseParams pose = oracle::random_pose(rng, 24, 0.5);
    const Eigen::VectorXd grad = prior_gradient(prior, pose);
    const double h = 1e-6;
    for (Eigen::Index c = 0; c < pose.size(); ++c) {
      PoseParams a = pose, b = pose;
      a[c] += h;
      b[c] -= h;
      const double fd = (prior_penalty(prior, a) - prior_penalty(prior, b)) / (2 * h);
      grad_err = std::max(grad_err, std::abs(fd - grad[c]) / std::max(1.0, std::abs(grad[c])));
    }
  }

  // Known covariance: geometric variances along a random rotation of the
  // 69-dimensional non-global pose space.
  const int d = kSmplPoseDim - 3;
  std::mt19937_64 rng(4999);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd raw(d, d);
  for (Eigen::Index i = 0; i < raw.size(); ++i) raw.data()[i] = gauss(rng);
  const Eigen::MatrixXd rotation = Eigen::HouseholderQR<Eigen::MatrixXd>(raw).householderQ();
  Eigen::VectorXd variances(d);
  for (int k = 0; k < d; ++k) variances[k] = 0.5 * std::pow(0.93, k);
  const int count = 10000;
  RowMatrixXd samples(count, d);
  Eigen::VectorXd z(d);
  for (int s = 0; s < count; ++s) {
    for (int k = 0; k < d; ++k) z[k] = std::sqrt(variances[k]) * gauss(rng);
    samples.row(s) = (rotation * z).transpose();
  }
  const PosePrior fitted = fit_prior(samples, d);
  const double var_err = (fitted.variances.array() / variances.array() - 1.0).abs().maxCoeff();

  report.line(7, "prior contract", at_mean_value == 0.0 && grad_err < kPriorGradTol && var_err < kPriorVarianceRel,
              "penalty at mean " + fmt(at_mean_value) + ", gradient vs fd " + fmt(grad_err) + " (tol " +
                  fmt(kPriorGradTol) + "), variance rel. error " + fmt(var_err) + " over " + std::to_string(d) +
                  " dims at 10k samples (tol " + fmt(kPriorVarianceRel) + ")");
}

void sweep_check(Report& report, TraceTally& tally, const JointModel& model) {
  RunConfig cfg;
  cfg.sweep.modes = {SolverMode::Hierarchical, SolverMode::FlatSingleChain, SolverMode::ForwardOnly};
  cfg.sweep.solver = cfg.solver;
  std::vector<CaseFile> cases;
  for (int c = 0; c < cfg.suite.cases; ++c) {
    cases.push_back(synth_case(model, cfg.suite.first_seed + static_cast<std::uint64_t>(c), cfg.suite.noise2d));
  }
  const std::optional<PosePrior> prior = make_prior(cfg.prior);
  const auto start = Clock::now();
  const EvalReport sweep = run_occlusion_sweep(model, default_chain_set(model.tree), cases, cfg.sweep,
                                               prior ? &*prior : nullptr);
  const double elapsed = seconds_since(start);

  int failed_rows = 0;
  for (const SweepRow& row : sweep.rows) {
    if (row.failed) ++failed_rows;
    if (!row.monotone) ++tally.violations;
  }
  tally.solves += sweep.solves;

  const std::string h = to_string(SolverMode::Hierarchical);
  std::ostringstream curves;
  bool monotone_doc = true;
  for (OcclusionPattern p : cfg.sweep.patterns) {
    curves << to_string(p) << " [";
    double previous = -1.0;
    for (int doc : cfg.sweep.docs) {
      const CurvePoint* point = find_curve(sweep, h, to_string(p), doc);
      if (!point) throw Error("sweep report lacks a curve point");
      curves << (doc > cfg.sweep.docs.front() ? " " : "") << fmt(point->median_mm);
      if (point->median_mm < previous) monotone_doc = false;
      previous = point->median_mm;
    }
    curves << "] ";
  }
  const ModeSummary* hm = find_mode(sweep, h);
  const ModeSummary* fm = find_mode(sweep, to_string(SolverMode::FlatSingleChain));
  const ModeSummary* om = find_mode(sweep, to_string(SolverMode::ForwardOnly));
  if (!hm || !fm || !om) throw Error("sweep report lacks a mode summary");
  const bool hier_vs_flat = hm->occluded_median_mm <= fm->occluded_median_mm;
  const bool forward_worse = om->occluded_median_mm > hm->occluded_median_mm;
  const bool in_time = elapsed < kSweepSeconds;

  report.line(8, "occlusion trends", monotone_doc && hier_vs_flat && forward_worse && in_time && failed_rows == 0,
              std::string("(a) doc curves ") + (monotone_doc ? "non-decreasing" : "NOT monotone") +
                  ", hierarchical median mm " + curves.str() + "; (b) occluded median mm: hierarchical " +
                  fmt(hm->occluded_median_mm) + (hier_vs_flat ? " <= " : " > ") + "flat " +
                  fmt(fm->occluded_median_mm) + ", forward-only " + fmt(om->occluded_median_mm) +
                  (forward_worse ? " (worse)" : " (NOT worse)") + "; " + std::to_string(sweep.rows.size()) +
                  " rows, " + std::to_string(sweep.solves) + " fits, " + std::to_string(failed_rows) +
                  " failed, " + fmt(elapsed) + " s (limit " + fmt(kSweepSeconds) + " s)");
}

void doc_check(Report& report) {
  bool ok = true;
  std::ostringstream sizes;
  const double widths[] = {10, 20, 30, 40, 50};
  const double areas[] = {3000, 6000, 9000, 12000, 15000};
  for (int doc = 1; doc <= 5; ++doc) {
    const DocSize bar = doc_size(OcclusionPattern::Bar, doc);
    const DocSize circle = doc_size(OcclusionPattern::Circle, doc);
    const DocSize rect = doc_size(OcclusionPattern::Rectangle, doc);
    ok = ok && bar.width == widths[doc - 1] && circle.radius == widths[doc - 1] && rect.area == areas[doc - 1];
  }
  for (int bad : {0, 6}) {
    try {
      doc_size(OcclusionPattern::Bar, bad);
      ok = false;
    } catch (const InvalidArgument&) {
    }
  }
  report.line(9, "doc schedule", ok, "bar width 10..50 px, circle radius 10..50 px, rectangle area 3000..15000 px^2");
}

std::string read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

int run_cli(const std::string& exe, const std::string& args) {
  const std::string cmd = "\"" + exe + "\" " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

void round_trip_check(Report& report, const std::string& cli, const JointModel& model) {
  const fs::path dir = fs::temp_directory_path() / "kinfit_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::vector<std::string> problems;

  // Library round trips.
  const TemplateModel mesh_model = synth_model(21);
  save_model(mesh_model, (dir / "m.json").string());
  const TemplateModel m2 = load_model((dir / "m.json").string());
  if (!(m2.template_vertices == mesh_model.template_vertices && m2.shape_basis == mesh_model.shape_basis &&
        m2.skin_weights == mesh_model.skin_weights && m2.joint_regressor == mesh_model.joint_regressor &&
        m2.faces == mesh_model.faces && m2.parents == mesh_model.parents &&
        m2.joint_names == mesh_model.joint_names && m2.pose_corrective_basis == mesh_model.pose_corrective_basis)) {
    problems.push_back("model");
  }
  CaseFile file = synth_case(model, 22, 1.0);
  file.obs.vis2d[3] = false;
  save_case(file, (dir / "c.json").string());
  const CaseFile c2 = load_case((dir / "c.json").string());
  if (!(c2.obs.joints3d == file.obs.joints3d && c2.obs.joints2d == file.obs.joints2d &&
        (c2.obs.vis2d == file.obs.vis2d).all() && c2.truth->pose == file.truth->pose &&
        c2.truth->shape == file.truth->shape && c2.truth->camera.rho == file.truth->camera.rho &&
        case_to_json(c2).dump() == case_to_json(file).dump())) {
    problems.push_back("case");
  }
  const SolverState state = outer_solve(model, default_chain_set(model.tree), file.obs, {});
  const std::string state_text = state_to_json(state).dump();
  const SolverState s2 = state_from_json(nlohmann::json::parse(state_text));
  if (!(s2.pose == state.pose && s2.shape == state.shape && s2.camera.s == state.camera.s &&
        s2.trace.size() == state.trace.size() && state_to_json(s2).dump() == state_text)) {
    problems.push_back("state");
  }

  // Every CLI command twice, byte for byte.
  int commands = 0;
  if (cli.empty() || !fs::exists(cli)) {
    problems.push_back("kinfit executable not given");
  } else {
    const std::string d = "\"" + dir.string() + "\"/";
    std::ofstream(dir / "fast.ini") << "[solver]\nouter_iters = 1\n[prior]\nsamples = 500\n";
    const std::vector<std::pair<std::string, std::vector<std::string>>> commands_and_outputs{
        {"synth-model --seed 5 --out " + d + "model_R.json", {"model_R.json"}},
        {"synth-case --model " + d + "model_a.json --seed 6 --noise2d 2 --out " + d + "case_R.json", {"case_R.json"}},
        {"fit --model " + d + "model_a.json --case " + d + "case_a.json --out " + d + "state_R.json --dump-obj " + d +
             "mesh_R.obj",
         {"state_R.json", "mesh_R.obj"}},
        {"sweep --model " + d + "model_a.json --config " + d + "fast.ini --patterns bar,circle,rectangle --docs 1,5 " +
             "--anchors 0,15,21 --modes hierarchical,flat,forward-only --out " + d + "sweep_R",
         {"sweep_R.csv", "sweep_R.json"}},
    };
    for (const auto& [args, outputs] : commands_and_outputs) {
      for (const char* tag : {"a", "b"}) {
        std::string a = args;
        for (std::size_t pos; (pos = a.find("_R")) != std::string::npos;) a.replace(pos, 2, std::string("_") + tag);
        if (run_cli(cli, a) != 0) problems.push_back("cli exit: " + a);
      }
      for (const std::string& out : outputs) {
        std::string fa = out, fb = out;
        fa.replace(fa.find("_R"), 2, "_a");
        fb.replace(fb.find("_R"), 2, "_b");
        const std::string ba = read_bytes(dir / fa), bb = read_bytes(dir / fb);
        if (ba.empty() || ba != bb) problems.push_back("not byte-identical: " + out);
      }
      ++commands;
    }
  }
  fs::remove_all(dir);
  std::string detail = "model, case and state files lossless; " + std::to_string(commands) +
                       " CLI commands byte-identical across repeated runs";
  if (!problems.empty()) {
    detail = "problems:";
    for (const std::string& p : problems) detail += " [" + p + "]";
  }
  report.line(10, "round trips and determinism", problems.empty(), detail);
}

}  // namespace

// kinfit_acceptance [kinfit-executable] [--skip-sweep] [--report FILE]
int main(int argc, char** argv) {
  std::string cli, report_path;
  bool quick = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--skip-sweep") {
      quick = true;
    } else if (arg == "--report" && i + 1 < argc) {
      report_path = argv[++i];
    } else {
      cli = arg;
    }
  }
  Report report;
  const auto finish = [&](const std::string& tail) {
    report.print(std::cout);
    std::cout << tail;
    if (report_path.empty()) return;
    std::ofstream out(report_path);
    report.print(out);
    out << tail;
  };
  TraceTally tally;
  try {
    const JointModel model = make_joint_model(synth_model(0));
    jacobian_check(report);
    oracle_check(report);
    two_link_check(report, tally);
    clean_recovery_check(report, tally, model);
    camera_check(report);
    prior_check(report);
    if (quick) {
      report.skip(8, "occlusion trends", "--skip-sweep");
    } else {
      sweep_check(report, tally, model);
    }
    doc_check(report);
    round_trip_check(report, cli, model);
    report.line(5, "monotone descent", tally.violations == 0,
                std::to_string(tally.solves) + " solves across criteria 3, 4 and 8, " + std::to_string(tally.violations) +
                    " with an increasing recorded objective");
  } catch (const std::exception& e) {
    finish(std::string("acceptance run aborted: ") + e.what() + "\n");
    return 1;
  }
  finish("");
  return 0;
}
