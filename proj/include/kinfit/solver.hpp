#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "kinfit/body_model.hpp"
#include "kinfit/camera.hpp"
#include "kinfit/chains.hpp"
#include "kinfit/objectives.hpp"
#include "kinfit/observations.hpp"

namespace kinfit {

// Hierarchical: root chain, then dependent chains, forward/backward passes.
// NoHierarchy: per-joint steps all linearized at the pass-entry pose.
// ForwardOnly: every inner pass runs root-to-tip.
// FlatSingleChain: one chain over all joints in topological order.
enum class SolverMode { Hierarchical, NoHierarchy, ForwardOnly, FlatSingleChain };
enum class PassDirection { Forward, Backward };

std::string to_string(SolverMode mode);
SolverMode parse_solver_mode(const std::string& text);
std::string to_string(PassDirection direction);

struct SolverConfig {
  int outer_iters = 3;
  int inner_iters = 4;  // directional passes per chain per outer iteration
  double step_scale = 1.0;
  double damping = 1e-4;
  int max_halvings = 8;
  double min_step = 1e-10;  // residuals with a smaller norm are not applied
  // The solver descends a smoothed L1 data term: each component r costs
  // sqrt(r^2 + eps^2) - eps. eps in meters (3D) and pixels (2D).
  double l1_smoothing_3d = 1e-2;
  double l1_smoothing_2d = 1.0;
  LossWeights weights;
  SolverMode mode = SolverMode::Hierarchical;

  void validate() const;
};

// One per-joint step (or shape / camera refresh). `objective` is the value
// of the sequence's objective after the record, so within one sequence the
// values never increase.
struct TraceRecord {
  int sequence = 0;
  int outer = 0;
  std::string chain;
  std::string pass;
  int joint = -1;
  double objective_before = 0.0;
  double objective = 0.0;
  double alpha = 0.0;
  bool accepted = false;
};

struct SolverState {
  PoseParams pose;
  ShapeParams shape;
  WeakPerspectiveCamera camera;
  std::vector<TraceRecord> trace;
  std::vector<LossBreakdown> outer_losses;
  double aggregate_loss = 0.0;  // sum of outer_losses[t].total
  std::vector<std::string> warnings;
  int next_sequence = 0;

  int accepted_steps() const;
};

// Inputs a residual provider sees for one joint of a pass: the chain
// objective linearized at the current pose over all active chain components.
struct JointStep {
  int joint = 0;
  std::span<const int> components;     // pose index of each Jacobian column
  std::span<const int> joint_columns;  // columns owned by `joint`; the residual has one entry per column
  const Eigen::MatrixXd& jacobian;     // rows x components
  const Eigen::VectorXd& error;     // rows
  double damping = 0.0;
  std::span<const Eigen::VectorXd> previous_residuals;  // earlier joints of this pass
};

// Maps the linearized chain error to a pose residual for one joint.
class ResidualProvider {
 public:
  virtual ~ResidualProvider() = default;
  virtual Eigen::VectorXd residual(const JointStep& step) const = 0;
};

// J^T (J J^T + damping I)^-1 e restricted to the joint's columns, evaluated
// in its equivalent (J^T J + damping I)^-1 J^T e form.
class DampedLeastSquares final : public ResidualProvider {
 public:
  Eigen::VectorXd residual(const JointStep& step) const override;
};

struct FitContext {
  const JointModel& model;
  const Observations& obs;
  const SolverConfig& config;
  const PosePrior* prior = nullptr;
  const ResidualProvider* provider = nullptr;  // null: damped least squares
  const Mask* active_components = nullptr;     // null: every pose component
};

std::pair<PoseParams, ShapeParams> mean_initialization(int joint_count = kSmplJointCount,
                                                       int shape_dim = kShapeDim);

// Objective the solver descends for one chain (supervised joints of the
// chain only) at the state's shape and camera: the weighted loss total with
// the L1 data terms smoothed.
double chain_objective(const FitContext& ctx, const Chain& chain, const SolverState& state);
// Same objective over every joint.
double fit_objective(const FitContext& ctx, const SolverState& state);

// One directional pass; each visited joint is linearized at the pose already
// updated by the joints visited before it. sequence < 0 opens a new one.
void chain_pass(const FitContext& ctx, const Chain& chain, SolverState& state, PassDirection direction,
                int outer = 0, int sequence = -1);
void inner_solve_chain(const FitContext& ctx, const Chain& chain, SolverState& state, int outer = 0);
void update_shape(const FitContext& ctx, SolverState& state, int outer = 0);
void update_camera(const FitContext& ctx, SolverState& state, int outer = 0);

SolverState outer_solve(const JointModel& model, const ChainSet& chains, const Observations& obs,
                        const SolverConfig& config, const PosePrior* prior = nullptr,
                        std::optional<SolverState> init = std::nullopt,
                        const ResidualProvider* provider = nullptr);

Points3d predicted_joints(const JointModel& model, const SolverState& state);

// Every record keeps objective <= objective_before, and within a sequence
// each record's objective is <= the one before it.
bool trace_monotone(const std::vector<TraceRecord>& trace);

}  // namespace kinfit
