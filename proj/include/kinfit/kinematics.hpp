#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "kinfit/error.hpp"
#include "kinfit/rotation.hpp"
#include "kinfit/skeleton.hpp"
#include "kinfit/types.hpp"

namespace kinfit {

template <typename Scalar>
struct JointTransforms {
  std::vector<Matrix3<Scalar>> local_rotations;
  std::vector<Matrix3<Scalar>> global_rotations;
  Points3<Scalar> global_translations;
  // Identical to global_translations; kept as its own field for readability
  // at call sites that only care about joint positions.
  Points3<Scalar> posed_joints;
  // Rest configuration the transforms were built from.
  Points3<Scalar> rest_joints;
};

using JointTransformsd = JointTransforms<double>;

// Global joint transforms for `pose`. The root is rotated in place about its
// rest position; every child is rotated about its rest offset from its parent.
template <typename Scalar>
JointTransforms<Scalar> forward_kinematics(const KinematicTree& tree, const VectorX<Scalar>& pose,
                                           const Points3<Scalar>& rest_joints) {
  const int n = tree.joint_count();
  if (pose.size() != 3 * n) {
    throw InvalidArgument("forward_kinematics: pose has " + std::to_string(pose.size()) +
                          " entries, tree expects " + std::to_string(3 * n));
  }
  if (rest_joints.rows() != n) {
    throw InvalidArgument("forward_kinematics: rest joints do not match the tree");
  }

  JointTransforms<Scalar> out;
  out.local_rotations.resize(n);
  out.global_rotations.resize(n);
  out.global_translations.resize(n, 3);
  out.rest_joints = rest_joints;
  for (int j = 0; j < n; ++j) {
    out.local_rotations[j] = rodrigues(pose.template segment<3>(3 * j));
    const int p = tree.parent(j);
    if (p == kNoParent) {
      out.global_rotations[j] = out.local_rotations[j];
      out.global_translations.row(j) = rest_joints.row(j);
    } else {
      out.global_rotations[j] = out.global_rotations[p] * out.local_rotations[j];
      const Vector3<Scalar> offset = (rest_joints.row(j) - rest_joints.row(p)).transpose();
      out.global_translations.row(j) =
          out.global_translations.row(p) + (out.global_rotations[p] * offset).transpose();
    }
  }
  out.posed_joints = out.global_translations;
  return out;
}

// World-frame rotation axes of joint `joint`: column m is the instantaneous
// angular velocity of the joint's frame per unit change of pose component m.
template <typename Scalar>
Matrix3<Scalar> joint_axes(const KinematicTree& tree, const JointTransforms<Scalar>& fk,
                           const VectorX<Scalar>& pose, int joint) {
  const Matrix3<Scalar> jl = left_jacobian(pose.template segment<3>(3 * joint));
  const int p = tree.parent(joint);
  return p == kNoParent ? jl : Matrix3<Scalar>(fk.global_rotations[p] * jl);
}

// d(position of `target`) / d(pose block of `joint`), given that joint's axes.
// Zero unless `joint` is a strict ancestor of `target`.
template <typename Scalar>
Matrix3<Scalar> position_block(const KinematicTree& tree, const JointTransforms<Scalar>& fk,
                               const Matrix3<Scalar>& axes, int joint, int target) {
  if (!tree.is_ancestor(joint, target)) return Matrix3<Scalar>::Zero();
  const Vector3<Scalar> lever =
      (fk.posed_joints.row(target) - fk.posed_joints.row(joint)).transpose();
  return -skew(lever) * axes;
}

// Analytic Jacobian of the posed positions of `targets` with respect to the
// full pose vector: (3 * targets) x (3 * joint_count).
Eigen::MatrixXd joint_jacobian(const KinematicTree& tree, const PoseParams& pose,
                               const Points3d& rest_joints, std::span<const int> targets);

}  // namespace kinfit
