#include "kinfit/solver.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>

#include "kinfit/error.hpp"
#include "kinfit/kinematics.hpp"

namespace kinfit {

std::string to_string(SolverMode mode) {
  switch (mode) {
    case SolverMode::Hierarchical: return "hierarchical";
    case SolverMode::NoHierarchy: return "no-hierarchy";
    case SolverMode::ForwardOnly: return "forward-only";
    case SolverMode::FlatSingleChain: return "flat";
  }
  return "hierarchical";
}

SolverMode parse_solver_mode(const std::string& text) {
  for (SolverMode m : {SolverMode::Hierarchical, SolverMode::NoHierarchy, SolverMode::ForwardOnly,
                       SolverMode::FlatSingleChain}) {
    if (text == to_string(m)) return m;
  }
  throw InvalidArgument("unknown solver mode '" + text +
                        "' (expected hierarchical, no-hierarchy, forward-only or flat)");
}

std::string to_string(PassDirection direction) {
  return direction == PassDirection::Forward ? "forward" : "backward";
}

void SolverConfig::validate() const {
  if (outer_iters < 0) throw InvalidArgument("solver: outer_iters must be >= 0");
  if (inner_iters < 1) throw InvalidArgument("solver: inner_iters must be >= 1");
  if (!(damping > 0.0)) throw InvalidArgument("solver: damping must be > 0");
  if (!(step_scale > 0.0)) throw InvalidArgument("solver: step_scale must be > 0");
  if (max_halvings < 0) throw InvalidArgument("solver: max_halvings must be >= 0");
  if (!(min_step >= 0.0)) throw InvalidArgument("solver: min_step must be >= 0");
  if (!(l1_smoothing_3d > 0.0) || !(l1_smoothing_2d > 0.0)) throw InvalidArgument("solver: l1 smoothing must be > 0");
  if (weights.smpl < 0.0 || weights.joints3d < 0.0 || weights.joints2d < 0.0 || weights.prior < 0.0) {
    throw InvalidArgument("solver: loss weights must be >= 0");
  }
}

int SolverState::accepted_steps() const {
  return static_cast<int>(std::count_if(trace.begin(), trace.end(), [](const TraceRecord& r) {
    return r.accepted && (r.pass == "forward" || r.pass == "backward" || r.pass == "shape");
  }));
}

Eigen::VectorXd DampedLeastSquares::residual(const JointStep& step) const {
  Eigen::MatrixXd normal = step.jacobian.transpose() * step.jacobian;
  normal.diagonal().array() += step.damping;
  const Eigen::VectorXd full = normal.ldlt().solve(step.jacobian.transpose() * step.error);
  Eigen::VectorXd out(static_cast<Eigen::Index>(step.joint_columns.size()));
  for (std::size_t k = 0; k < step.joint_columns.size(); ++k) out[static_cast<Eigen::Index>(k)] = full[step.joint_columns[k]];
  return out;
}

std::pair<PoseParams, ShapeParams> mean_initialization(int joint_count, int shape_dim) {
  return {PoseParams::Zero(3 * joint_count), ShapeParams::Zero(shape_dim)};
}

Points3d predicted_joints(const JointModel& model, const SolverState& state) {
  return forward_kinematics(model.tree, state.pose, model.rest_joints(state.shape)).posed_joints;
}

bool trace_monotone(const std::vector<TraceRecord>& trace) {
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const TraceRecord& r = trace[k];
    if (!(r.objective <= r.objective_before)) return false;
    if (k > 0 && trace[k - 1].sequence == r.sequence && !(r.objective <= trace[k - 1].objective)) return false;
  }
  return true;
}

namespace {

const DampedLeastSquares& default_provider() {
  static const DampedLeastSquares provider;
  return provider;
}

double smooth_abs(double r, double eps) { return std::sqrt(r * r + eps * eps) - eps; }

// Rows of the reweighted least-squares model of the objective around the
// current parameters. A data component with residual r and weight lambda
// gets the row sqrt(lambda / sqrt(r^2 + eps^2)) * (r, dr), the quadratic
// that majorizes its smoothed absolute value.
class RowStack {
 public:
  RowStack(Eigen::Index rows, Eigen::Index cols) : jacobian_(Eigen::MatrixXd::Zero(rows, cols)), error_(rows) {}

  template <typename Row>
  void add_data(double weight, double eps, double residual, const Row& derivative) {
    const double scale = std::sqrt(weight / std::sqrt(residual * residual + eps * eps));
    add(scale, residual, derivative);
  }

  template <typename Row>
  void add(double scale, double residual, const Row& derivative) {
    jacobian_.row(next_) = scale * derivative;
    error_[next_] = scale * residual;
    ++next_;
  }

  Eigen::MatrixXd& jacobian() { return jacobian_; }
  Eigen::VectorXd& error() { return error_; }
  Eigen::Index next() const { return next_; }
  void skip(Eigen::Index rows) { next_ += rows; }

 private:
  Eigen::MatrixXd jacobian_;
  Eigen::VectorXd error_;
  Eigen::Index next_ = 0;
};

Eigen::Index data_rows(const Observations& obs, const std::vector<int>& joints) {
  Eigen::Index rows = 0;
  for (int i : joints) rows += (obs.vis3d[i] ? 3 : 0) + (obs.vis2d[i] ? 2 : 0);
  return rows;
}

// Appends the data rows of one joint given d(posed joint)/d(parameters).
void add_joint_rows(const FitContext& ctx, const WeakPerspectiveCamera& cam, int joint,
                    const Eigen::RowVector3d& predicted, const Eigen::Matrix3Xd& derivative, RowStack& rows) {
  const Observations& obs = ctx.obs;
  const LossWeights& w = ctx.config.weights;
  if (obs.vis3d[joint]) {
    for (int a = 0; a < 3; ++a) {
      rows.add_data(w.joints3d, ctx.config.l1_smoothing_3d, obs.joints3d(joint, a) - predicted[a],
                    derivative.row(a));
    }
  }
  if (obs.vis2d[joint]) {
    for (int a = 0; a < 2; ++a) {
      const double x = cam.s * predicted[a] + cam.rho[a];
      rows.add_data(w.joints2d, ctx.config.l1_smoothing_2d, obs.joints2d(joint, a) - x,
                    cam.s * derivative.row(a));
    }
  }
}

// Pose-dependent objective over a set of supervised joints at fixed shape
// and camera.
class PoseObjective {
 public:
  PoseObjective(const FitContext& ctx, std::vector<int> joints, const ShapeParams& shape,
                const WeakPerspectiveCamera& camera)
      : ctx_(ctx), joints_(std::move(joints)), shape_(shape), camera_(camera),
        rest_(ctx.model.rest_joints(shape)) {}

  const std::vector<int>& joints() const { return joints_; }
  const Points3d& rest() const { return rest_; }
  const WeakPerspectiveCamera& camera() const { return camera_; }

  double operator()(const PoseParams& pose) const {
    const Points3d posed = forward_kinematics(ctx_.model.tree, pose, rest_).posed_joints;
    const LossWeights& w = ctx_.config.weights;
    const Observations& obs = ctx_.obs;
    const double e3 = ctx_.config.l1_smoothing_3d;
    const double e2 = ctx_.config.l1_smoothing_2d;
    double data3 = 0.0;
    double data2 = 0.0;
    for (int i : joints_) {
      if (obs.vis3d[i]) {
        for (int a = 0; a < 3; ++a) data3 += smooth_abs(posed(i, a) - obs.joints3d(i, a), e3);
      }
      if (obs.vis2d[i]) {
        for (int a = 0; a < 2; ++a) {
          data2 += smooth_abs(camera_.s * posed(i, a) + camera_.rho[a] - obs.joints2d(i, a), e2);
        }
      }
    }
    double params = 0.0;
    if (obs.param_targets) {
      params = (pose - obs.param_targets->pose).squaredNorm() + (shape_ - obs.param_targets->shape).squaredNorm();
    }
    const double kl = ctx_.prior ? prior_penalty(*ctx_.prior, pose) : 0.0;
    return w.joints3d * data3 + w.joints2d * data2 + w.smpl * params + w.prior * kl;
  }

 private:
  const FitContext& ctx_;
  std::vector<int> joints_;
  ShapeParams shape_;
  WeakPerspectiveCamera camera_;
  Points3d rest_;
};

std::vector<int> all_joints(const KinematicTree& tree) {
  std::vector<int> out(static_cast<std::size_t>(tree.joint_count()));
  for (int j = 0; j < tree.joint_count(); ++j) out[static_cast<std::size_t>(j)] = j;
  return out;
}

bool observed(const Observations& obs, int joint) { return obs.vis3d[joint] || obs.vis2d[joint]; }

// A supervised joint without observations hands its role to its children,
// down to the nearest observed joints.
std::vector<int> supervised_set(const FitContext& ctx, const Chain& chain) {
  const KinematicTree& tree = ctx.model.tree;
  if (chain.id == ChainId::Flat) return all_joints(tree);
  std::vector<int> pending = supervised_joints(tree, chain);
  std::vector<bool> seen(static_cast<std::size_t>(tree.joint_count()), false);
  std::vector<int> out;
  while (!pending.empty()) {
    const int j = pending.back();
    pending.pop_back();
    if (seen[static_cast<std::size_t>(j)]) continue;
    seen[static_cast<std::size_t>(j)] = true;
    out.push_back(j);
    if (!observed(ctx.obs, j)) {
      for (int c : tree.children(j)) pending.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> active_components(const FitContext& ctx, int joint) {
  std::vector<int> comps;
  for (int a = 0; a < 3; ++a) {
    const int c = 3 * joint + a;
    if (!ctx.active_components || (*ctx.active_components)[c]) comps.push_back(c);
  }
  return comps;
}

// Reweighted least-squares model of a chain objective, linearized in the
// active pose components of the chain's joints.
struct Linearization {
  std::vector<int> components;  // pose index of each Jacobian column
  Eigen::MatrixXd jacobian;
  Eigen::VectorXd error;

  std::vector<int> columns_of(int joint) const {
    std::vector<int> cols;
    for (std::size_t k = 0; k < components.size(); ++k) {
      if (components[k] / 3 == joint) cols.push_back(static_cast<int>(k));
    }
    return cols;
  }
};

Linearization linearize_chain(const FitContext& ctx, const PoseObjective& objective, const PoseParams& pose,
                              const std::vector<int>& chain_joints) {
  const KinematicTree& tree = ctx.model.tree;
  const Observations& obs = ctx.obs;
  const LossWeights& w = ctx.config.weights;

  Linearization lin;
  for (int j : chain_joints) {
    for (int c : active_components(ctx, j)) lin.components.push_back(c);
  }
  const Eigen::Index ncols = static_cast<Eigen::Index>(lin.components.size());
  if (ncols == 0) return lin;

  const JointTransformsd fk = forward_kinematics(tree, pose, objective.rest());
  std::vector<Eigen::Matrix3d> axes(static_cast<std::size_t>(tree.joint_count()));
  for (int j : chain_joints) axes[static_cast<std::size_t>(j)] = joint_axes(tree, fk, pose, j);

  bool prior_columns = false;
  for (int c : lin.components) prior_columns = prior_columns || c >= 3;
  const bool use_targets = obs.param_targets && w.smpl > 0.0;
  const bool use_prior = ctx.prior && w.prior > 0.0 && prior_columns;
  Eigen::Index rows = data_rows(obs, objective.joints());
  if (use_targets) rows += ncols;
  if (use_prior) rows += ctx.prior->latent_dim();

  RowStack stack(rows, ncols);
  Eigen::Matrix3Xd block(3, ncols);
  for (int i : objective.joints()) {
    if (!observed(obs, i)) continue;
    block.setZero();
    for (Eigen::Index k = 0; k < ncols; ++k) {
      const int joint = lin.components[static_cast<std::size_t>(k)] / 3;
      if (!tree.is_ancestor(joint, i)) continue;
      block.col(k) = position_block(tree, fk, axes[static_cast<std::size_t>(joint)], joint, i)
                         .col(lin.components[static_cast<std::size_t>(k)] - 3 * joint);
    }
    add_joint_rows(ctx, objective.camera(), i, fk.posed_joints.row(i), block, stack);
  }
  if (use_targets) {
    const double scale = std::sqrt(2.0 * w.smpl);
    for (Eigen::Index k = 0; k < ncols; ++k) {
      const int c = lin.components[static_cast<std::size_t>(k)];
      stack.add(scale, obs.param_targets->pose[c] - pose[c], Eigen::RowVectorXd::Unit(ncols, k));
    }
  }
  if (use_prior) {
    const double scale = std::sqrt(w.prior);
    const PosePrior& prior = *ctx.prior;
    const Eigen::Index m = prior.latent_dim();
    const Eigen::VectorXd inv_std = prior.variances.cwiseSqrt().cwiseInverse();
    const Eigen::Index r = stack.next();
    for (Eigen::Index k = 0; k < ncols; ++k) {
      const Eigen::Index c = lin.components[static_cast<std::size_t>(k)] - 3;
      if (c < 0) continue;  // global orientation is outside the prior
      stack.jacobian().block(r, k, m, 1) = scale * inv_std.cwiseProduct(prior.basis.row(c).transpose());
    }
    stack.error().segment(r, m) = -scale * prior.latent(pose);
    stack.skip(m);
  }
  lin.jacobian = std::move(stack.jacobian());
  lin.error = std::move(stack.error());
  return lin;
}

bool chain_is_observed(const FitContext& ctx, const Chain& chain, const std::vector<int>& supervised) {
  for (int j : chain.joints) {
    if (active_components(ctx, j).empty()) continue;
    for (int i : supervised) {
      if (ctx.model.tree.is_ancestor(j, i) && observed(ctx.obs, i)) return true;
    }
  }
  return false;
}

[[noreturn]] void numerical_failure(const std::string& what, int outer, const std::string& chain, int joint) {
  throw NumericalFailure(what + " (outer iteration " + std::to_string(outer) + ", chain '" + chain +
                         "', joint " + std::to_string(joint) + ")");
}

void run_pass(const FitContext& ctx, const Chain& chain, SolverState& state, PassDirection direction,
              int outer, int sequence, const PoseObjective& objective) {
  const ResidualProvider& provider = ctx.provider ? *ctx.provider : default_provider();
  const SolverConfig& cfg = ctx.config;

  std::vector<int> order = chain.joints;
  if (direction == PassDirection::Backward) std::reverse(order.begin(), order.end());

  // Without joint hierarchy every step is linearized at the pass-entry pose.
  Linearization entry;
  if (cfg.mode == SolverMode::NoHierarchy) entry = linearize_chain(ctx, objective, state.pose, chain.joints);

  double current = objective(state.pose);
  if (!std::isfinite(current)) numerical_failure("non-finite objective", outer, chain.name, order.front());

  std::vector<Eigen::VectorXd> previous;
  for (int joint : order) {
    const Linearization lin = cfg.mode == SolverMode::NoHierarchy
                                  ? entry
                                  : linearize_chain(ctx, objective, state.pose, chain.joints);
    const std::vector<int> columns = lin.columns_of(joint);
    TraceRecord rec{sequence, outer, chain.name, to_string(direction), joint, current, current, 0.0, false};
    if (columns.empty() || lin.error.size() == 0) {
      state.trace.push_back(rec);
      continue;
    }

    const JointStep step{joint, lin.components, columns, lin.jacobian, lin.error, cfg.damping, previous};
    const Eigen::VectorXd delta = provider.residual(step);
    if (delta.size() != static_cast<Eigen::Index>(columns.size()) || !delta.allFinite()) {
      numerical_failure("residual provider returned an invalid step", outer, chain.name, joint);
    }
    previous.push_back(delta);
    if (delta.norm() >= cfg.min_step) {
      double alpha = cfg.step_scale;
      for (int h = 0; h <= cfg.max_halvings; ++h, alpha *= 0.5) {
        PoseParams trial = state.pose;
        for (std::size_t c = 0; c < columns.size(); ++c) {
          trial[lin.components[static_cast<std::size_t>(columns[c])]] += alpha * delta[static_cast<Eigen::Index>(c)];
        }
        const double value = objective(trial);
        if (!std::isfinite(value)) numerical_failure("non-finite objective", outer, chain.name, joint);
        if (value < current) {
          state.pose = std::move(trial);
          current = value;
          rec.objective = value;
          rec.alpha = alpha;
          rec.accepted = true;
          break;
        }
      }
    }
    state.trace.push_back(rec);
  }
}

double full_objective(const FitContext& ctx, const PoseParams& pose, const ShapeParams& shape,
                      const WeakPerspectiveCamera& camera) {
  return PoseObjective(ctx, all_joints(ctx.model.tree), shape, camera)(pose);
}

}  // namespace

double chain_objective(const FitContext& ctx, const Chain& chain, const SolverState& state) {
  return PoseObjective(ctx, supervised_set(ctx, chain), state.shape, state.camera)(state.pose);
}

double fit_objective(const FitContext& ctx, const SolverState& state) {
  return full_objective(ctx, state.pose, state.shape, state.camera);
}

void chain_pass(const FitContext& ctx, const Chain& chain, SolverState& state, PassDirection direction,
                int outer, int sequence) {
  check_pose(ctx.model.tree, state.pose);
  const std::vector<int> supervised = supervised_set(ctx, chain);
  if (!chain_is_observed(ctx, chain, supervised)) return;
  if (sequence < 0) sequence = state.next_sequence++;
  const PoseObjective objective(ctx, supervised, state.shape, state.camera);
  run_pass(ctx, chain, state, direction, outer, sequence, objective);
}

void inner_solve_chain(const FitContext& ctx, const Chain& chain, SolverState& state, int outer) {
  ctx.config.validate();
  check_pose(ctx.model.tree, state.pose);
  const std::vector<int> supervised = supervised_set(ctx, chain);
  if (!chain_is_observed(ctx, chain, supervised)) return;
  const int sequence = state.next_sequence++;
  const PoseObjective objective(ctx, supervised, state.shape, state.camera);
  for (int p = 0; p < ctx.config.inner_iters; ++p) {
    const bool forward = ctx.config.mode == SolverMode::ForwardOnly || p % 2 == 0;
    run_pass(ctx, chain, state, forward ? PassDirection::Forward : PassDirection::Backward, outer,
             sequence, objective);
  }
}

void update_shape(const FitContext& ctx, SolverState& state, int outer) {
  const JointModel& model = ctx.model;
  const Eigen::Index b = model.shape_dim();
  if (b == 0 || model.shape_basis.cwiseAbs().maxCoeff() == 0.0) return;
  if (state.shape.size() != b) throw InvalidArgument("update_shape: shape size mismatch");

  const KinematicTree& tree = model.tree;
  const Observations& obs = ctx.obs;
  const LossWeights& w = ctx.config.weights;
  const int n = tree.joint_count();
  const JointTransformsd fk = forward_kinematics(tree, state.pose, model.rest_joints(state.shape));

  // Posed joints are affine in beta at fixed pose.
  Eigen::MatrixXd d_posed(3 * n, b);
  for (int k = 0; k < n; ++k) {
    const int p = tree.parent(k);
    if (p == kNoParent) {
      d_posed.middleRows(3 * k, 3) = model.shape_basis.middleRows(3 * k, 3);
    } else {
      d_posed.middleRows(3 * k, 3) =
          d_posed.middleRows(3 * p, 3) +
          fk.global_rotations[static_cast<std::size_t>(p)] *
              (model.shape_basis.middleRows(3 * k, 3) - model.shape_basis.middleRows(3 * p, 3));
    }
  }

  const std::vector<int> joints = all_joints(tree);
  const bool use_targets = obs.param_targets && w.smpl > 0.0;
  const Eigen::Index rows = data_rows(obs, joints) + (use_targets ? b : 0);
  if (rows == 0) return;
  RowStack stack(rows, b);
  for (int i : joints) {
    if (observed(obs, i)) add_joint_rows(ctx, state.camera, i, fk.posed_joints.row(i), d_posed.middleRows(3 * i, 3), stack);
  }
  if (use_targets) {
    const double scale = std::sqrt(2.0 * w.smpl);
    for (Eigen::Index k = 0; k < b; ++k) {
      stack.add(scale, obs.param_targets->shape[k] - state.shape[k], Eigen::RowVectorXd::Unit(b, k));
    }
  }

  const Eigen::MatrixXd& jac = stack.jacobian();
  Eigen::MatrixXd normal = jac.transpose() * jac;
  normal.diagonal().array() += ctx.config.damping;
  const Eigen::VectorXd delta = normal.ldlt().solve(jac.transpose() * stack.error());
  if (!delta.allFinite()) numerical_failure("non-finite shape step", outer, "shape", -1);

  const int sequence = state.next_sequence++;
  const double current = full_objective(ctx, state.pose, state.shape, state.camera);
  if (!std::isfinite(current)) numerical_failure("non-finite objective", outer, "shape", -1);
  TraceRecord rec{sequence, outer, "shape", "shape", -1, current, current, 0.0, false};
  if (delta.norm() >= ctx.config.min_step) {
    double alpha = ctx.config.step_scale;
    for (int h = 0; h <= ctx.config.max_halvings; ++h, alpha *= 0.5) {
      const ShapeParams trial = state.shape + alpha * delta;
      const double value = full_objective(ctx, state.pose, trial, state.camera);
      if (!std::isfinite(value)) numerical_failure("non-finite objective", outer, "shape", -1);
      if (value < current) {
        state.shape = trial;
        rec.objective = value;
        rec.alpha = alpha;
        rec.accepted = true;
        break;
      }
    }
  }
  state.trace.push_back(rec);
}

void update_camera(const FitContext& ctx, SolverState& state, int outer) {
  if (ctx.obs.vis2d.count() < 2) return;
  const Points3d joints = predicted_joints(ctx.model, state);
  CameraFit fit;
  try {
    fit = estimate_camera(joints, ctx.obs.joints2d, ctx.obs.vis2d);
  } catch (const DegenerateConfiguration& e) {
    state.warnings.push_back("outer " + std::to_string(outer) + ": camera kept: " + e.what());
    return;
  }
  if (fit.clamped) {
    state.warnings.push_back("outer " + std::to_string(outer) +
                             ": degenerate-configuration: best-fit camera scale clamped");
  }
  const int sequence = state.next_sequence++;
  const double before = fit_objective(ctx, state);
  SolverState trial_state;
  trial_state.pose = state.pose;
  trial_state.shape = state.shape;
  trial_state.camera = fit.camera;
  const double after = fit_objective(ctx, trial_state);
  TraceRecord rec{sequence, outer, "camera", "camera", -1, before, before, 0.0, false};
  if (after <= before) {
    state.camera = fit.camera;
    rec.objective = after;
    rec.alpha = 1.0;
    rec.accepted = true;
  }
  state.trace.push_back(rec);
}

SolverState outer_solve(const JointModel& model, const ChainSet& chains, const Observations& obs,
                        const SolverConfig& config, const PosePrior* prior,
                        std::optional<SolverState> init, const ResidualProvider* provider) {
  config.validate();
  validate(obs, model.tree.joint_count());
  if (prior && prior->dim() + 3 != model.tree.pose_dim()) {
    throw InvalidArgument("outer_solve: prior dimension does not match the model");
  }

  SolverState state;
  if (init) {
    state = std::move(*init);
    check_pose(model.tree, state.pose);
    if (state.shape.size() != model.shape_dim()) throw InvalidArgument("outer_solve: init shape size mismatch");
  } else {
    auto [pose, shape] = mean_initialization(model.tree.joint_count(), model.shape_dim());
    state.pose = std::move(pose);
    state.shape = std::move(shape);
    if (obs.vis2d.count() >= 2) {
      try {
        const CameraFit fit = estimate_camera(predicted_joints(model, state), obs.joints2d, obs.vis2d);
        state.camera = fit.camera;
        if (fit.clamped) state.warnings.push_back("init: degenerate-configuration: camera scale clamped");
      } catch (const DegenerateConfiguration& e) {
        state.warnings.push_back(std::string("init: camera left at default: ") + e.what());
      }
    }
  }

  const FitContext ctx{model, obs, config, prior, provider, nullptr};
  std::vector<Chain> schedule;
  if (config.mode == SolverMode::FlatSingleChain) {
    schedule.push_back(flat_chain(model.tree));
  } else {
    schedule = chains.chains;
  }

  for (int t = 1; t <= config.outer_iters; ++t) {
    for (const Chain& chain : schedule) inner_solve_chain(ctx, chain, state, t);
    update_shape(ctx, state, t);
    update_camera(ctx, state, t);
    const LossBreakdown loss = total_loss(model, state.pose, state.shape, state.camera, obs, prior, config.weights);
    state.outer_losses.push_back(loss);
    state.aggregate_loss += loss.total;
  }
  return state;
}

}  // namespace kinfit
