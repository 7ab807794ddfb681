#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "kinfit/types.hpp"

namespace kinfit {

inline constexpr int kNoParent = -1;

// Joint hierarchy with rest positions. Joints are stored in topological
// order: joint 0 is the root and every parent index precedes its child.
class KinematicTree {
 public:
  KinematicTree() = default;
  KinematicTree(std::vector<int> parents, std::vector<std::string> names, Points3d rest_joints);

  int joint_count() const { return static_cast<int>(parents_.size()); }
  int pose_dim() const { return 3 * joint_count(); }
  int parent(int joint) const { return parents_[joint]; }
  const std::vector<int>& parents() const { return parents_; }
  const std::vector<std::string>& names() const { return names_; }
  const Points3d& rest_joints() const { return rest_joints_; }
  std::vector<int> children(int joint) const;

  // True when `ancestor` lies strictly above `joint` on its root path.
  bool is_ancestor(int ancestor, int joint) const { return ancestor_(ancestor, joint); }
  int index_of(const std::string& name) const;

 private:
  std::vector<int> parents_;
  std::vector<std::string> names_;
  Points3d rest_joints_;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> ancestor_;
};

// Standard 24-joint body skeleton (SMPL joint order and parent table) with
// humanoid rest positions in meters, y up, facing +z.
KinematicTree smpl_tree();
const std::vector<int>& smpl_parents();
const std::vector<std::string>& smpl_joint_names();

void check_pose(const KinematicTree& tree, const PoseParams& pose);

}  // namespace kinfit
