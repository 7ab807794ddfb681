#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Core>
#include "json.hpp"

#include "kinfit/body_model.hpp"
#include "kinfit/camera.hpp"
#include "kinfit/observations.hpp"
#include "kinfit/types.hpp"

namespace kinfit {

struct LossWeights {
  double smpl = 1.0;
  double joints3d = 1.0;
  double joints2d = 1e-2;
  double prior = 1e-3;
};

// `available` is false when the term had nothing to evaluate (no visible
// joints, no parameter targets); the value is then 0.
struct LossTerm {
  double value = 0.0;
  bool available = false;
};

// Sum over visible joints of the component-wise L1 distance.
LossTerm loss_3d(const Points3d& predicted, const Observations& obs);
LossTerm loss_2d(const Points2d& predicted, const Observations& obs);
// Squared L2 distance of [pose, shape] to the parameter targets.
LossTerm loss_smpl(const PoseParams& pose, const ShapeParams& shape,
                   const std::optional<ParamTargets>& targets);

inline constexpr double kPriorVarianceFloor = 1e-6;

// Gaussian over a linear latent of the non-global pose (pose entries 3..).
struct PosePrior {
  Eigen::VectorXd mean;       // D
  Eigen::MatrixXd basis;      // D x m, orthonormal columns
  Eigen::VectorXd variances;  // m

  int dim() const { return static_cast<int>(mean.size()); }
  int latent_dim() const { return static_cast<int>(variances.size()); }
  // diag(variances)^(-1/2) * basis^T, so latent(pose) = whitening * (pose[3:] - mean).
  Eigen::MatrixXd whitening() const;
  Eigen::VectorXd latent(const PoseParams& pose) const;
};

// Mean plus the top `latent_dim` principal directions of the sample rows.
PosePrior fit_prior(const RowMatrixXd& samples, int latent_dim);

// 0.5 * ||latent||^2; the global-orientation block is not penalized.
double prior_penalty(const PosePrior& prior, const PoseParams& pose);
// Gradient with respect to the full pose (zeros in the global block).
Eigen::VectorXd prior_gradient(const PosePrior& prior, const PoseParams& pose);

// Per-component standard deviations (radians) of the plausible-pose sampler.
Eigen::VectorXd plausible_pose_std();
// `count` x 72 poses; global orientation left at zero. Each component is an
// independent zero-mean Gaussian truncated at two standard deviations.
RowMatrixXd sample_plausible_poses(int count, std::uint64_t seed);
// Prior fit to the plausible-pose sampler.
PosePrior default_prior(int latent_dim = 32, int samples = 5000, std::uint64_t seed = 0);

nlohmann::json prior_to_json(const PosePrior& prior);
PosePrior prior_from_json(const nlohmann::json& doc);
void save_prior(const PosePrior& prior, const std::string& path);
PosePrior load_prior(const std::string& path);

struct LossBreakdown {
  double l_3d = 0.0;
  double l_2d = 0.0;
  double l_smpl = 0.0;
  double l_kl = 0.0;
  double total = 0.0;
  LossWeights weights;
};

LossBreakdown combine_losses(double l_3d, double l_2d, double l_smpl, double l_kl,
                             const LossWeights& weights);

// All loss terms at one parameter setting; `prior` may be null.
LossBreakdown total_loss(const JointModel& model, const PoseParams& pose, const ShapeParams& shape,
                         const WeakPerspectiveCamera& camera, const Observations& obs,
                         const PosePrior* prior, const LossWeights& weights);

nlohmann::json to_json(const LossBreakdown& loss);

}  // namespace kinfit
