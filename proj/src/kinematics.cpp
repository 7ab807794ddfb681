#include "kinfit/kinematics.hpp"

namespace kinfit {

Eigen::MatrixXd joint_jacobian(const KinematicTree& tree, const PoseParams& pose,
                               const Points3d& rest_joints, std::span<const int> targets) {
  const int n = tree.joint_count();
  for (int t : targets) {
    if (t < 0 || t >= n) {
      throw InvalidArgument("joint_jacobian: joint index " + std::to_string(t) + " out of range");
    }
  }
  const JointTransformsd fk = forward_kinematics(tree, pose, rest_joints);

  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(3 * static_cast<Eigen::Index>(targets.size()), 3 * n);
  for (int j = 0; j < n; ++j) {
    const Eigen::Matrix3d axes = joint_axes(tree, fk, pose, j);
    for (std::size_t r = 0; r < targets.size(); ++r) {
      if (!tree.is_ancestor(j, targets[r])) continue;
      jac.block<3, 3>(3 * static_cast<Eigen::Index>(r), 3 * j) =
          position_block(tree, fk, axes, j, targets[r]);
    }
  }
  return jac;
}

}  // namespace kinfit
