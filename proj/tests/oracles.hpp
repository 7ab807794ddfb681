#pragma once

// Slow, independent reference implementations used only by the tests.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "kinfit/body_model.hpp"
#include "kinfit/observations.hpp"
#include "kinfit/solver.hpp"
#include "kinfit/skeleton.hpp"
#include "kinfit/types.hpp"

namespace oracle {

using Mat4 = Eigen::Matrix4d;

// Axis-angle through a unit quaternion.
inline Eigen::Matrix3d rotation_via_quaternion(const Eigen::Vector3d& v) {
  const double angle = v.norm();
  if (angle == 0.0) return Eigen::Matrix3d::Identity();
  const Eigen::Vector3d axis = v / angle;
  const double w = std::cos(angle / 2), s = std::sin(angle / 2);
  const double x = axis.x() * s, y = axis.y() * s, z = axis.z() * s;
  Eigen::Matrix3d r;
  r << 1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w),
       2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w),
       2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y);
  return r;
}

inline Mat4 homogeneous(const Eigen::Matrix3d& r, const Eigen::Vector3d& t) {
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = r;
  m.topRightCorner<3, 1>() = t;
  return m;
}

// Global 4x4 transform of every joint as an explicit root-to-joint product of
// local transforms, each rebuilt from scratch.
inline std::vector<Mat4> chained_transforms(const std::vector<int>& parents, const Eigen::VectorXd& pose,
                                            const kinfit::Points3d& rest) {
  const int n = static_cast<int>(parents.size());
  std::vector<Mat4> out(n);
  for (int j = 0; j < n; ++j) {
    std::vector<int> path;
    for (int k = j; k != -1; k = parents[k]) path.insert(path.begin(), k);
    Mat4 g = Mat4::Identity();
    for (int k : path) {
      const int p = parents[k];
      const Eigen::Vector3d offset =
          p < 0 ? Eigen::Vector3d(rest.row(k).transpose()) : Eigen::Vector3d((rest.row(k) - rest.row(p)).transpose());
      g = g * homogeneous(rotation_via_quaternion(pose.segment<3>(3 * k)), offset);
    }
    out[j] = g;
  }
  return out;
}

inline kinfit::Points3d chained_joints(const std::vector<int>& parents, const Eigen::VectorXd& pose,
                                       const kinfit::Points3d& rest) {
  const auto t = chained_transforms(parents, pose, rest);
  kinfit::Points3d out(rest.rows(), 3);
  for (int j = 0; j < rest.rows(); ++j) out.row(j) = t[j].topRightCorner<3, 1>().transpose();
  return out;
}

// Per-vertex, per-joint accumulation of posed-transform * inverse-rest-transform.
inline kinfit::Points3d naive_lbs(const kinfit::TemplateModel& model, const kinfit::Points3d& shaped,
                                  const Eigen::VectorXd& pose) {
  const int n = model.vertex_count();
  const int k = model.joint_count();
  kinfit::Points3d rest(k, 3);
  for (int j = 0; j < k; ++j) {
    Eigen::Vector3d acc = Eigen::Vector3d::Zero();
    for (int v = 0; v < n; ++v) acc += model.joint_regressor(j, v) * shaped.row(v).transpose();
    rest.row(j) = acc.transpose();
  }
  const auto posed = chained_transforms(model.parents, pose, rest);
  kinfit::Points3d out(n, 3);
  for (int v = 0; v < n; ++v) {
    Eigen::Vector4d acc = Eigen::Vector4d::Zero();
    const Eigen::Vector4d x(shaped(v, 0), shaped(v, 1), shaped(v, 2), 1.0);
    for (int j = 0; j < k; ++j) {
      const double w = model.skin_weights(v, j);
      if (w == 0.0) continue;
      const Mat4 rest_inv = homogeneous(Eigen::Matrix3d::Identity(), -Eigen::Vector3d(rest.row(j).transpose()));
      acc += w * (posed[j] * rest_inv * x);
    }
    out.row(v) = acc.head<3>().transpose();
  }
  return out;
}

inline Eigen::VectorXd random_pose(std::mt19937_64& rng, int joints, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Eigen::VectorXd pose(3 * joints);
  for (int i = 0; i < pose.size(); ++i) pose[i] = u(rng);
  return pose;
}

// Planar arm: shoulder at the origin, elbow at (l1, 0, 0), tip at
// (l1 + l2, 0, 0). Only rotation about z is active at the two chain joints.
struct TwoLink {
  double l1 = 0.6;
  double l2 = 0.4;

  kinfit::KinematicTree tree() const {
    kinfit::Points3d rest(3, 3);
    rest << 0, 0, 0, l1, 0, 0, l1 + l2, 0, 0;
    return kinfit::KinematicTree({-1, 0, 1}, {"shoulder", "elbow", "tip"}, rest);
  }
  kinfit::JointModel model() const { return {tree(), kinfit::RowMatrixXd(9, 0)}; }
  kinfit::Mask active() const {
    kinfit::Mask m = kinfit::Mask::Constant(9, false);
    m[2] = m[5] = true;
    return m;
  }
  Eigen::Vector2d tip(double q1, double q2) const {
    return {l1 * std::cos(q1) + l2 * std::cos(q1 + q2), l1 * std::sin(q1) + l2 * std::sin(q1 + q2)};
  }
  // Closed-form inverse: (q1, q2) with the elbow sign `branch`.
  Eigen::Vector2d solve(const Eigen::Vector2d& target, double branch) const {
    const double c = (target.squaredNorm() - l1 * l1 - l2 * l2) / (2 * l1 * l2);
    const double q2 = branch * std::acos(std::clamp(c, -1.0, 1.0));
    const double q1 = std::atan2(target.y(), target.x()) - std::atan2(l2 * std::sin(q2), l1 + l2 * std::cos(q2));
    return {q1, q2};
  }
  kinfit::Observations tip_target(const Eigen::Vector2d& target) const {
    kinfit::Observations obs = kinfit::Observations::hidden(3);
    obs.joints3d.row(2) << target.x(), target.y(), 0.0;
    obs.vis3d[2] = true;
    return obs;
  }
  // Reachable targets, away from full extension and the folded singularity.
  Eigen::Vector2d random_target(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> radius(std::abs(l1 - l2) + 0.05, l1 + l2 - 0.05);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    const double r = radius(rng), a = angle(rng);
    return {r * std::cos(a), r * std::sin(a)};
  }
  // Start angles drawn after the target. The straight arm is singular for
  // radial error, so the rest pose is not used.
  Eigen::Vector2d random_start(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    const double q1 = angle(rng), q2 = angle(rng);
    return {q1, q2};
  }
  // Directional passes until the tip is within `tol`; 0 if it never gets there.
  int passes_to_converge(const Eigen::Vector2d& target, const Eigen::Vector2d& start, bool forward_only,
                         int max_passes, kinfit::SolverState& state, double tol = 1e-6) const;
};

inline int TwoLink::passes_to_converge(const Eigen::Vector2d& target, const Eigen::Vector2d& start,
                                       bool forward_only, int max_passes, kinfit::SolverState& state,
                                       double tol) const {
  using namespace kinfit;
  const JointModel m = model();
  const Observations obs = tip_target(target);
  const SolverConfig cfg;
  const Mask mask = active();
  const FitContext ctx{m, obs, cfg, nullptr, nullptr, &mask};
  const Chain chain{ChainId::Custom, "arm", {0, 1}};
  state = SolverState{};
  state.pose = PoseParams::Zero(9);
  state.pose[2] = start[0];
  state.pose[5] = start[1];
  state.shape = ShapeParams::Zero(0);
  for (int p = 0; p < max_passes; ++p) {
    const bool forward = forward_only || p % 2 == 0;
    chain_pass(ctx, chain, state, forward ? PassDirection::Forward : PassDirection::Backward);
    const Eigen::Vector2d tip = predicted_joints(m, state).row(2).head<2>().transpose();
    if ((tip - target).norm() < tol) return p + 1;
  }
  return 0;
}

inline double wrap_angle(double a) { return std::remainder(a, 2.0 * M_PI); }

}  // namespace oracle
