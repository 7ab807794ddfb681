#include "kinfit/objectives.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "kinfit/codec.hpp"
#include "kinfit/error.hpp"
#include "kinfit/kinematics.hpp"

namespace kinfit {

LossTerm loss_3d(const Points3d& predicted, const Observations& obs) {
  if (predicted.rows() != obs.joints3d.rows()) throw InvalidArgument("loss_3d: joint count mismatch");
  LossTerm term;
  for (Eigen::Index i = 0; i < predicted.rows(); ++i) {
    if (!obs.vis3d[i]) continue;
    term.value += (predicted.row(i) - obs.joints3d.row(i)).cwiseAbs().sum();
    term.available = true;
  }
  return term;
}

LossTerm loss_2d(const Points2d& predicted, const Observations& obs) {
  if (predicted.rows() != obs.joints2d.rows()) throw InvalidArgument("loss_2d: joint count mismatch");
  LossTerm term;
  for (Eigen::Index i = 0; i < predicted.rows(); ++i) {
    if (!obs.vis2d[i]) continue;
    term.value += (predicted.row(i) - obs.joints2d.row(i)).cwiseAbs().sum();
    term.available = true;
  }
  return term;
}

LossTerm loss_smpl(const PoseParams& pose, const ShapeParams& shape,
                   const std::optional<ParamTargets>& targets) {
  if (!targets) return {};
  if (targets->pose.size() != pose.size() || targets->shape.size() != shape.size()) {
    throw InvalidArgument("loss_smpl: target sizes differ from the parameters");
  }
  return {(pose - targets->pose).squaredNorm() + (shape - targets->shape).squaredNorm(), true};
}

Eigen::MatrixXd PosePrior::whitening() const {
  return variances.cwiseSqrt().cwiseInverse().asDiagonal() * basis.transpose();
}

Eigen::VectorXd PosePrior::latent(const PoseParams& pose) const {
  if (pose.size() != dim() + 3) {
    throw InvalidArgument("pose prior: pose has " + std::to_string(pose.size()) +
                          " entries, prior expects " + std::to_string(dim() + 3));
  }
  const Eigen::VectorXd projected = basis.transpose() * (pose.tail(dim()) - mean);
  return projected.cwiseQuotient(variances.cwiseSqrt());
}

PosePrior fit_prior(const RowMatrixXd& samples, int latent_dim) {
  const Eigen::Index count = samples.rows();
  const Eigen::Index dim = samples.cols();
  if (latent_dim < 1 || latent_dim > dim) {
    throw InvalidArgument("fit_prior: latent dimension must lie in [1, " + std::to_string(dim) + "]");
  }
  if (count < latent_dim + 1) {
    throw InvalidArgument("fit_prior: need at least " + std::to_string(latent_dim + 1) +
                          " samples, got " + std::to_string(count));
  }
  PosePrior prior;
  prior.mean = samples.colwise().mean().transpose();
  const Eigen::MatrixXd centered = samples.rowwise() - prior.mean.transpose();
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(count - 1);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);

  prior.basis.resize(dim, latent_dim);
  prior.variances.resize(latent_dim);
  for (int k = 0; k < latent_dim; ++k) {
    const Eigen::Index src = dim - 1 - k;  // eigenvalues ascend
    Eigen::VectorXd v = eig.eigenvectors().col(src);
    Eigen::Index largest = 0;
    v.cwiseAbs().maxCoeff(&largest);
    if (v[largest] < 0.0) v = -v;
    prior.basis.col(k) = v;
    prior.variances[k] = std::max(eig.eigenvalues()[src], kPriorVarianceFloor);
  }
  return prior;
}

double prior_penalty(const PosePrior& prior, const PoseParams& pose) {
  return 0.5 * prior.latent(pose).squaredNorm();
}

Eigen::VectorXd prior_gradient(const PosePrior& prior, const PoseParams& pose) {
  const Eigen::VectorXd z = prior.latent(pose);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(pose.size());
  grad.tail(prior.dim()) = prior.basis * z.cwiseQuotient(prior.variances.cwiseSqrt());
  return grad;
}

Eigen::VectorXd plausible_pose_std() {
  // Rows: joint index; columns: rotation about x, y, z.
  static const double table[kSmplJointCount][3] = {
      {0.00, 0.00, 0.00},  // pelvis (global)
      {0.50, 0.20, 0.20}, {0.50, 0.20, 0.20},  // hips
      {0.15, 0.10, 0.10},                      // spine1
      {0.60, 0.05, 0.05}, {0.60, 0.05, 0.05},  // knees
      {0.10, 0.10, 0.10},                      // spine2
      {0.20, 0.10, 0.10}, {0.20, 0.10, 0.10},  // ankles
      {0.10, 0.10, 0.10},                      // spine3
      {0.10, 0.05, 0.05}, {0.10, 0.05, 0.05},  // feet
      {0.20, 0.15, 0.10},                      // neck
      {0.10, 0.10, 0.15}, {0.10, 0.10, 0.15},  // collars
      {0.20, 0.20, 0.10},                      // head
      {0.30, 0.40, 0.50}, {0.30, 0.40, 0.50},  // shoulders
      {0.05, 0.60, 0.10}, {0.05, 0.60, 0.10},  // elbows
      {0.20, 0.20, 0.30}, {0.20, 0.20, 0.30},  // wrists
      {0.10, 0.10, 0.10}, {0.10, 0.10, 0.10},  // hands
  };
  Eigen::VectorXd out(kSmplPoseDim);
  for (int j = 0; j < kSmplJointCount; ++j) {
    for (int a = 0; a < 3; ++a) out[3 * j + a] = table[j][a];
  }
  return out;
}

RowMatrixXd sample_plausible_poses(int count, std::uint64_t seed) {
  if (count < 0) throw InvalidArgument("sample_plausible_poses: negative count");
  const Eigen::VectorXd sigma = plausible_pose_std();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  RowMatrixXd out(count, kSmplPoseDim);
  for (int s = 0; s < count; ++s) {
    for (int c = 0; c < kSmplPoseDim; ++c) {
      double z = gauss(rng);
      while (std::abs(z) > 2.0) z = gauss(rng);
      out(s, c) = sigma[c] * z;
    }
  }
  return out;
}

PosePrior default_prior(int latent_dim, int samples, std::uint64_t seed) {
  const RowMatrixXd poses = sample_plausible_poses(samples, seed);
  return fit_prior(poses.rightCols(kSmplPoseDim - 3), latent_dim);
}

nlohmann::json prior_to_json(const PosePrior& prior) {
  const auto encode = [](const auto& m) {
    return codec::encode_f64(std::span<const double>(m.data(), static_cast<std::size_t>(m.size())));
  };
  const RowMatrixXd basis = prior.basis;
  nlohmann::json doc;
  doc["version"] = 1;
  doc["kind"] = "pose_prior";
  doc["units"] = "radians";
  doc["encoding"] = "base64 little-endian float64, row-major";
  doc["shapes"] = {{"mean", {prior.dim()}},
                   {"basis", {prior.dim(), prior.latent_dim()}},
                   {"variances", {prior.latent_dim()}}};
  doc["mean"] = encode(prior.mean);
  doc["basis"] = encode(basis);
  doc["variances"] = encode(prior.variances);
  return doc;
}

PosePrior prior_from_json(const nlohmann::json& doc) {
  const auto dims = codec::read_shape(doc, "basis");
  if (dims.size() != 2 || dims[0] < 1 || dims[1] < 1) throw ParseError("field 'shapes.basis': expected [D,m]");
  const auto d = static_cast<Eigen::Index>(dims[0]);
  const auto m = static_cast<Eigen::Index>(dims[1]);
  const auto mean = codec::read_array(doc, "mean", static_cast<std::size_t>(d));
  const auto basis = codec::read_array(doc, "basis", static_cast<std::size_t>(d * m));
  const auto variances = codec::read_array(doc, "variances", static_cast<std::size_t>(m));
  PosePrior prior;
  prior.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), d);
  prior.basis = Eigen::Map<const RowMatrixXd>(basis.data(), d, m);
  prior.variances = Eigen::Map<const Eigen::VectorXd>(variances.data(), m);
  if ((prior.variances.array() <= 0.0).any()) throw ValidationError("prior variances must be positive");
  const Eigen::MatrixXd gram = prior.basis.transpose() * prior.basis;
  if ((gram - Eigen::MatrixXd::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-9) {
    throw ValidationError("prior basis columns are not orthonormal");
  }
  return prior;
}

void save_prior(const PosePrior& prior, const std::string& path) {
  codec::write_file(path, prior_to_json(prior).dump(2) + "\n");
}

PosePrior load_prior(const std::string& path) {
  try {
    return prior_from_json(codec::parse_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

LossBreakdown combine_losses(double l_3d, double l_2d, double l_smpl, double l_kl,
                             const LossWeights& weights) {
  LossBreakdown out{l_3d, l_2d, l_smpl, l_kl, 0.0, weights};
  out.total = weights.smpl * l_smpl + weights.joints3d * l_3d + weights.joints2d * l_2d +
              weights.prior * l_kl;
  return out;
}

LossBreakdown total_loss(const JointModel& model, const PoseParams& pose, const ShapeParams& shape,
                         const WeakPerspectiveCamera& camera, const Observations& obs,
                         const PosePrior* prior, const LossWeights& weights) {
  const JointTransformsd fk = forward_kinematics(model.tree, pose, model.rest_joints(shape));
  const double l3 = loss_3d(fk.posed_joints, obs).value;
  const double l2 = loss_2d(project(fk.posed_joints, camera), obs).value;
  const double ls = loss_smpl(pose, shape, obs.param_targets).value;
  const double lk = prior ? prior_penalty(*prior, pose) : 0.0;
  return combine_losses(l3, l2, ls, lk, weights);
}

nlohmann::json to_json(const LossBreakdown& loss) {
  return {{"l_3d", loss.l_3d},
          {"l_2d", loss.l_2d},
          {"l_smpl", loss.l_smpl},
          {"l_kl", loss.l_kl},
          {"total", loss.total},
          {"weights",
           {{"smpl", loss.weights.smpl},
            {"joints3d", loss.weights.joints3d},
            {"joints2d", loss.weights.joints2d},
            {"prior", loss.weights.prior}}}};
}

}  // namespace kinfit
