#include "kinfit/skeleton.hpp"

#include <algorithm>
#include <set>

#include "kinfit/error.hpp"

namespace kinfit {

KinematicTree::KinematicTree(std::vector<int> parents, std::vector<std::string> names,
                             Points3d rest_joints)
    : parents_(std::move(parents)), names_(std::move(names)), rest_joints_(std::move(rest_joints)) {
  const int n = joint_count();
  if (n == 0) throw InvalidArgument("kinematic tree: no joints");
  if (static_cast<int>(names_.size()) != n || rest_joints_.rows() != n) {
    throw InvalidArgument("kinematic tree: parents, names and rest joints disagree in size");
  }
  if (parents_[0] != kNoParent) throw InvalidArgument("kinematic tree: joint 0 must be the root");
  for (int i = 1; i < n; ++i) {
    if (parents_[i] < 0 || parents_[i] >= i) {
      throw InvalidArgument("kinematic tree: joint " + std::to_string(i) +
                            " must have a parent with a smaller index");
    }
  }
  if (std::set<std::string>(names_.begin(), names_.end()).size() != names_.size()) {
    throw InvalidArgument("kinematic tree: joint names are not unique");
  }
  if (!rest_joints_.allFinite()) throw InvalidArgument("kinematic tree: non-finite rest joints");

  ancestor_.setConstant(n, n, false);
  for (int j = 1; j < n; ++j) {
    for (int a = parents_[j]; a != kNoParent; a = parents_[a]) ancestor_(a, j) = true;
  }
}

std::vector<int> KinematicTree::children(int joint) const {
  std::vector<int> out;
  for (int i = 0; i < joint_count(); ++i) {
    if (parents_[i] == joint) out.push_back(i);
  }
  return out;
}

int KinematicTree::index_of(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InvalidArgument("unknown joint '" + name + "'");
  return static_cast<int>(it - names_.begin());
}

const std::vector<int>& smpl_parents() {
  static const std::vector<int> parents = {-1, 0,  0,  0,  1,  2,  3,  4,  5,  6,  7,  8,
                                           9,  9,  9,  12, 13, 14, 16, 17, 18, 19, 20, 21};
  return parents;
}

const std::vector<std::string>& smpl_joint_names() {
  static const std::vector<std::string> names = {
      "pelvis",      "left_hip",       "right_hip",      "spine1",     "left_knee",
      "right_knee",  "spine2",         "left_ankle",     "right_ankle", "spine3",
      "left_foot",   "right_foot",     "neck",           "left_collar", "right_collar",
      "head",        "left_shoulder",  "right_shoulder", "left_elbow",  "right_elbow",
      "left_wrist",  "right_wrist",    "left_hand",      "right_hand"};
  return names;
}

KinematicTree smpl_tree() {
  Points3d rest(kSmplJointCount, 3);
  rest << 0.00, 0.95, 0.00,    // pelvis
          0.09, 0.86, -0.01,   // left_hip
          -0.09, 0.86, -0.01,  // right_hip
          0.00, 1.06, -0.02,   // spine1
          0.10, 0.48, 0.00,    // left_knee
          -0.10, 0.48, 0.00,   // right_knee
          0.00, 1.19, 0.01,    // spine2
          0.09, 0.08, -0.04,   // left_ankle
          -0.09, 0.08, -0.04,  // right_ankle
          0.00, 1.25, 0.03,    // spine3
          0.11, 0.02, 0.09,    // left_foot
          -0.11, 0.02, 0.09,   // right_foot
          0.00, 1.47, -0.01,   // neck
          0.07, 1.39, 0.00,    // left_collar
          -0.07, 1.39, 0.00,   // right_collar
          0.00, 1.60, 0.04,    // head
          0.18, 1.42, -0.02,   // left_shoulder
          -0.18, 1.42, -0.02,  // right_shoulder
          0.44, 1.41, -0.04,   // left_elbow
          -0.44, 1.41, -0.04,  // right_elbow
          0.69, 1.42, -0.02,   // left_wrist
          -0.69, 1.42, -0.02,  // right_wrist
          0.78, 1.41, -0.03,   // left_hand
          -0.78, 1.41, -0.03;  // right_hand
  return KinematicTree(smpl_parents(), smpl_joint_names(), std::move(rest));
}

void check_pose(const KinematicTree& tree, const PoseParams& pose) {
  if (pose.size() != tree.pose_dim()) {
    throw InvalidArgument("pose has " + std::to_string(pose.size()) + " entries, tree expects " +
                          std::to_string(tree.pose_dim()));
  }
  if (!pose.allFinite()) throw InvalidArgument("pose contains non-finite entries");
}

}  // namespace kinfit
