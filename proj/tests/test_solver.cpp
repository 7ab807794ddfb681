#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "kinfit/cases.hpp"
#include "kinfit/chains.hpp"
#include "kinfit/error.hpp"
#include "kinfit/solver.hpp"

using namespace kinfit;

namespace {

const TemplateModel& mesh_model() {
  static const TemplateModel m = synth_model(0);
  return m;
}

const JointModel& body() {
  static const JointModel m = make_joint_model(mesh_model());
  return m;
}

SolverState state_from_truth(const GroundTruth& t) {
  SolverState s;
  s.pose = t.pose;
  s.shape = t.shape;
  s.camera = t.camera;
  return s;
}

SolverState rest_state(const GroundTruth& t) {
  SolverState s = state_from_truth(t);
  s.pose.setZero();
  return s;
}

double joint_error(const JointModel& model, const SolverState& s, const GroundTruth& t, int joint) {
  return (predicted_joints(model, s).row(joint) - predicted_joints(model, state_from_truth(t)).row(joint)).norm();
}

}  // namespace

TEST_CASE("mean initialization is the rest pose and mean shape") {
  const auto [pose, shape] = mean_initialization();
  CHECK(pose.size() == 72);
  CHECK(shape.size() == 10);
  CHECK(pose.isZero(0.0));
  CHECK(shape.isZero(0.0));
  const PosedMesh mesh = mesh_function(mesh_model(), pose, shape);
  CHECK((mesh.vertices - mesh_model().template_vertices).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("solver config invariants") {
  SolverConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.inner_iters = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.outer_iters = -1;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.damping = 0;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg = {};
  cfg.weights.joints2d = -1;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  for (SolverMode m : {SolverMode::Hierarchical, SolverMode::NoHierarchy, SolverMode::ForwardOnly,
                       SolverMode::FlatSingleChain}) {
    CHECK(parse_solver_mode(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_solver_mode("sideways"), InvalidArgument);

  const CaseFile c = synth_case(body(), 1);
  cfg = {};
  cfg.inner_iters = 0;
  CHECK_THROWS_AS(outer_solve(body(), default_chain_set(body().tree), c.obs, cfg), InvalidArgument);
}

TEST_CASE("two-link arm converges to the closed-form solution") {
  const oracle::TwoLink arm;
  for (int seed = 0; seed < 25; ++seed) {
    std::mt19937_64 rng(seed);
    const Eigen::Vector2d target = arm.random_target(rng);
    const Eigen::Vector2d start = arm.random_start(rng);
    SolverState state;
    const int passes = arm.passes_to_converge(target, start, false, 20, state);
    INFO("seed " << seed);
    CHECK(passes > 0);
    const double q1 = state.pose[2], q2 = state.pose[5];
    CHECK((arm.tip(q1, q2) - target).norm() < 1e-6);
    // Only the active components move.
    for (int c : {0, 1, 3, 4, 6, 7, 8}) CHECK(state.pose[c] == 0.0);
    const Eigen::Vector2d branch = arm.solve(target, oracle::wrap_angle(q2) >= 0 ? 1.0 : -1.0);
    CHECK(std::abs(oracle::wrap_angle(q1 - branch[0])) < 1e-5);
    CHECK(std::abs(oracle::wrap_angle(q2 - branch[1])) < 1e-5);
  }
}

TEST_CASE("two-link arm also converges with forward passes only") {
  const oracle::TwoLink arm;
  for (int seed = 0; seed < 25; ++seed) {
    std::mt19937_64 rng(seed);
    const Eigen::Vector2d target = arm.random_target(rng);
    const Eigen::Vector2d start = arm.random_start(rng);
    SolverState state;
    CHECK(arm.passes_to_converge(target, start, true, 20, state) > 0);
  }
}

TEST_CASE("the rest pose of the arm is a stationary point for radial error") {
  // Straight arm, target straight ahead but closer: the Jacobian has no
  // radial component, so no step is taken.
  const oracle::TwoLink arm;
  SolverState state;
  CHECK(arm.passes_to_converge({0.7, 0.0}, {0.0, 0.0}, false, 4, state) == 0);
  CHECK(state.pose.isZero(0.0));
}

TEST_CASE("ground truth is a fixed point") {
  SolverConfig cfg;
  cfg.outer_iters = 2;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const CaseFile c = synth_case(body(), seed);
    for (SolverMode mode : {SolverMode::Hierarchical, SolverMode::FlatSingleChain}) {
      cfg.mode = mode;
      const SolverState init = state_from_truth(*c.truth);
      const SolverState out = outer_solve(body(), default_chain_set(body().tree), c.obs, cfg, nullptr, init);
      CHECK((out.pose - init.pose).cwiseAbs().maxCoeff() < 1e-8);
      CHECK((out.shape - init.shape).cwiseAbs().maxCoeff() < 1e-8);
      CHECK(std::abs(out.camera.s - init.camera.s) < 1e-8 * init.camera.s);
      CHECK((out.camera.rho - init.camera.rho).cwiseAbs().maxCoeff() < 1e-8 * 256);
    }
  }
}

TEST_CASE("zero outer iterations return the initialization") {
  const CaseFile c = synth_case(body(), 4);
  SolverConfig cfg;
  cfg.outer_iters = 0;
  const SolverState out = outer_solve(body(), default_chain_set(body().tree), c.obs, cfg);
  CHECK(out.pose.isZero(0.0));
  CHECK(out.shape.isZero(0.0));
  CHECK(out.trace.empty());
  CHECK(out.outer_losses.empty());
  // The camera comes from the initial joints.
  const CameraFit fit = estimate_camera(predicted_joints(body(), out), c.obs.joints2d, c.obs.vis2d);
  CHECK(out.camera.s == fit.camera.s);
}

TEST_CASE("recorded objective never increases within a sequence") {
  const PosePrior prior = default_prior(32, 2000, 0);
  for (SolverMode mode : {SolverMode::Hierarchical, SolverMode::NoHierarchy, SolverMode::ForwardOnly,
                          SolverMode::FlatSingleChain}) {
    SolverConfig cfg;
    cfg.mode = mode;
    CaseFile c = synth_case(body(), 10, 2.0);
    c.obs.vis3d[20] = c.obs.vis2d[22] = false;
    const SolverState out = outer_solve(body(), default_chain_set(body().tree), c.obs, cfg, &prior);
    CHECK(out.accepted_steps() > 0);
    CHECK(out.outer_losses.size() == 3);
    for (std::size_t k = 0; k < out.trace.size(); ++k) {
      const TraceRecord& r = out.trace[k];
      CHECK(std::isfinite(r.objective));
      CHECK(r.objective <= r.objective_before);
      if (!r.accepted) CHECK(r.objective == r.objective_before);
      if (k > 0 && out.trace[k - 1].sequence == r.sequence) CHECK(r.objective <= out.trace[k - 1].objective);
    }
    CHECK(trace_monotone(out.trace));
  }
}

TEST_CASE("trace_monotone flags increases within a sequence") {
  std::vector<TraceRecord> trace(2);
  trace[0].objective_before = 3.0;
  trace[0].objective = 2.0;
  trace[1].objective_before = 2.0;
  trace[1].objective = 1.5;
  CHECK(trace_monotone(trace));
  trace[1].objective = 2.5;
  CHECK_FALSE(trace_monotone(trace));
  trace[1].objective_before = 2.5;
  trace[1].objective = 2.5;
  CHECK_FALSE(trace_monotone(trace));
  trace[1].sequence = 1;
  CHECK(trace_monotone(trace));
  trace[0].objective = 3.5;
  CHECK_FALSE(trace_monotone(trace));
}

TEST_CASE("inner solve does not increase the chain objective") {
  const CaseFile c = synth_case(body(), 12);
  const SolverConfig cfg;
  const FitContext ctx{body(), c.obs, cfg};
  SolverState s = rest_state(*c.truth);
  for (const Chain& chain : default_chain_set(body().tree).chains) {
    const double before = chain_objective(ctx, chain, s);
    inner_solve_chain(ctx, chain, s);
    CHECK(chain_objective(ctx, chain, s) <= before);
  }
}

TEST_CASE("a chain pass only touches its own pose blocks") {
  const CaseFile c = synth_case(body(), 13);
  const SolverConfig cfg;
  const FitContext ctx{body(), c.obs, cfg};
  for (const Chain& chain : default_chain_set(body().tree).chains) {
    SolverState s = rest_state(*c.truth);
    std::mt19937_64 rng(1);
    s.pose = oracle::random_pose(rng, 24, 0.2);
    const PoseParams before = s.pose;
    chain_pass(ctx, chain, s, PassDirection::Forward);
    const PoseParams restored = scatter_pose(s.pose, chain, slice_pose(before, chain));
    CHECK(restored == before);
    CHECK(s.pose != before);
  }
}

TEST_CASE("identical inputs give a bitwise identical trace") {
  const CaseFile c = synth_case(body(), 14, 1.0);
  const PosePrior prior = default_prior(32, 2000, 0);
  const SolverConfig cfg;
  const SolverState a = outer_solve(body(), default_chain_set(body().tree), c.obs, cfg, &prior);
  const SolverState b = outer_solve(body(), default_chain_set(body().tree), c.obs, cfg, &prior);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t k = 0; k < a.trace.size(); ++k) {
    CHECK(a.trace[k].objective == b.trace[k].objective);
    CHECK(a.trace[k].alpha == b.trace[k].alpha);
    CHECK(a.trace[k].joint == b.trace[k].joint);
  }
  CHECK(a.pose == b.pose);
  CHECK(a.shape == b.shape);
  CHECK(state_to_json(a).dump() == state_to_json(b).dump());
}

TEST_CASE("shape update recovers the true shape at the true pose") {
  SolverConfig cfg;
  for (std::uint64_t seed : {20u, 21u, 22u}) {
    const CaseFile c = synth_case(body(), seed);
    REQUIRE(c.truth->shape.cwiseAbs().maxCoeff() > 0.1);
    const FitContext ctx{body(), c.obs, cfg};
    SolverState s = state_from_truth(*c.truth);
    s.shape.setZero();
    int calls = 0;
    while (calls < 10 && (s.shape - c.truth->shape).cwiseAbs().maxCoeff() >= 1e-3) {
      update_shape(ctx, s);
      ++calls;
    }
    CHECK((s.shape - c.truth->shape).cwiseAbs().maxCoeff() < 1e-3);
  }
}

TEST_CASE("shape update is a no-op without a shape basis") {
  JointModel flat = body();
  flat.shape_basis.setZero();
  const CaseFile c = synth_case(body(), 23);
  const SolverConfig cfg;
  const FitContext ctx{flat, c.obs, cfg};
  SolverState s = state_from_truth(*c.truth);
  const ShapeParams before = s.shape;
  update_shape(ctx, s);
  CHECK(s.shape == before);
  CHECK(s.trace.empty());
}

TEST_CASE("hidden hand still improves through the visible arm") {
  const KinematicTree& tree = body().tree;
  const int hand = tree.index_of("right_hand");
  int improved = 0;
  for (std::uint64_t seed = 30; seed < 35; ++seed) {
    CaseFile c = synth_case(body(), seed);
    c.obs.vis3d[hand] = c.obs.vis2d[hand] = false;
    SolverState init = rest_state(*c.truth);
    const double before = joint_error(body(), init, *c.truth, hand);
    const SolverState out = outer_solve(body(), default_chain_set(tree), c.obs, {}, nullptr, init);
    if (joint_error(body(), out, *c.truth, hand) < before) ++improved;
  }
  CHECK(improved == 5);
}

TEST_CASE("a perturbed truth needs fewer accepted steps than the mean start") {
  std::vector<int> mean_steps, near_steps;
  for (std::uint64_t seed = 40; seed < 50; ++seed) {
    const CaseFile c = synth_case(body(), seed);
    const SolverConfig cfg;
    mean_steps.push_back(outer_solve(body(), default_chain_set(body().tree), c.obs, cfg).accepted_steps());
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 0.1);
    SolverState init = state_from_truth(*c.truth);
    for (Eigen::Index k = 0; k < init.pose.size(); ++k) init.pose[k] += noise(rng);
    init.shape.setZero();
    near_steps.push_back(
        outer_solve(body(), default_chain_set(body().tree), c.obs, cfg, nullptr, init).accepted_steps());
  }
  std::nth_element(mean_steps.begin(), mean_steps.begin() + 5, mean_steps.end());
  std::nth_element(near_steps.begin(), near_steps.begin() + 5, near_steps.end());
  CHECK(near_steps[5] < mean_steps[5]);
}

namespace {

class ZeroProvider final : public ResidualProvider {
 public:
  Eigen::VectorXd residual(const JointStep& step) const override {
    return Eigen::VectorXd::Zero(static_cast<Eigen::Index>(step.joint_columns.size()));
  }
};

class BrokenProvider final : public ResidualProvider {
 public:
  Eigen::VectorXd residual(const JointStep&) const override { return Eigen::VectorXd::Zero(1); }
};

}  // namespace

TEST_CASE("residual providers are pluggable") {
  const CaseFile c = synth_case(body(), 60);
  const SolverConfig cfg;
  const ChainSet chains = default_chain_set(body().tree);
  const ZeroProvider zero;
  const SolverState idle = outer_solve(body(), chains, c.obs, cfg, nullptr, std::nullopt, &zero);
  CHECK(idle.pose.isZero(0.0));
  const BrokenProvider broken;
  CHECK_THROWS_AS(outer_solve(body(), chains, c.obs, cfg, nullptr, std::nullopt, &broken), NumericalFailure);
}

TEST_CASE("invalid observations are rejected") {
  const ChainSet chains = default_chain_set(body().tree);
  CHECK_THROWS_AS(outer_solve(body(), chains, Observations::hidden(24), {}), InvalidArgument);
  CaseFile c = synth_case(body(), 61);
  c.obs.joints3d(3, 1) = std::nan("");
  CHECK_THROWS_AS(outer_solve(body(), chains, c.obs, {}), InvalidArgument);
  c.obs.vis3d[3] = false;
  c.obs.vis2d[3] = false;
  CHECK_NOTHROW(outer_solve(body(), chains, c.obs, {}));
  CHECK_THROWS_AS(outer_solve(body(), chains, Observations::hidden(20), {}), InvalidArgument);
}

TEST_CASE("an unobserved chain is left alone") {
  CaseFile c = synth_case(body(), 62);
  const ChainSet chains = default_chain_set(body().tree);
  const Chain& head = chains.chains[1];
  for (int j : supervised_joints(body().tree, head)) c.obs.vis3d[j] = c.obs.vis2d[j] = false;
  const SolverConfig cfg;
  const FitContext ctx{body(), c.obs, cfg};
  SolverState s = rest_state(*c.truth);
  inner_solve_chain(ctx, head, s);
  CHECK(s.trace.empty());
  CHECK(s.pose.isZero(0.0));
}
