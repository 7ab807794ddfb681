#include "kinfit/chains.hpp"

#include <algorithm>

#include "kinfit/error.hpp"

namespace kinfit {

std::string to_string(ChainId id) {
  switch (id) {
    case ChainId::Root: return "root";
    case ChainId::Head: return "head";
    case ChainId::RArm: return "right_arm";
    case ChainId::LArm: return "left_arm";
    case ChainId::RLeg: return "right_leg";
    case ChainId::LLeg: return "left_leg";
    case ChainId::Flat: return "flat";
    case ChainId::Custom: return "custom";
  }
  return "custom";
}

int ChainSet::pose_dim() const {
  int dim = 0;
  for (const Chain& c : chains) dim += c.pose_dim();
  return dim;
}

ChainSet default_chain_set(const KinematicTree& tree) {
  if (tree.joint_count() != kSmplJointCount || tree.parents() != smpl_parents()) {
    throw UnsupportedSkeleton("default chain set requires the standard 24-joint skeleton");
  }
  const auto make = [](ChainId id, std::vector<int> joints) {
    return Chain{id, to_string(id), std::move(joints)};
  };
  ChainSet set;
  set.chains = {make(ChainId::Root, {0, 3, 6, 9}),       make(ChainId::Head, {12, 15}),
                make(ChainId::RArm, {14, 17, 19, 21, 23}), make(ChainId::LArm, {13, 16, 18, 20, 22}),
                make(ChainId::RLeg, {2, 5, 8, 11}),       make(ChainId::LLeg, {1, 4, 7, 10})};
  for (const Chain& c : set.chains) validate_chain(tree, c);
  return set;
}

Chain flat_chain(const KinematicTree& tree) {
  Chain c{ChainId::Flat, to_string(ChainId::Flat), {}};
  c.joints.resize(static_cast<std::size_t>(tree.joint_count()));
  for (int j = 0; j < tree.joint_count(); ++j) c.joints[static_cast<std::size_t>(j)] = j;
  return c;
}

void validate_chain(const KinematicTree& tree, const Chain& chain) {
  if (chain.joints.empty()) throw InvalidArgument("chain '" + chain.name + "' is empty");
  for (int j : chain.joints) {
    if (j < 0 || j >= tree.joint_count()) {
      throw InvalidArgument("chain '" + chain.name + "' references joint " + std::to_string(j));
    }
  }
  for (std::size_t k = 1; k < chain.joints.size(); ++k) {
    if (tree.parent(chain.joints[k]) != chain.joints[k - 1]) {
      throw InvalidArgument("chain '" + chain.name + "': joint " + std::to_string(chain.joints[k]) +
                            " is not a child of joint " + std::to_string(chain.joints[k - 1]));
    }
  }
}

std::vector<int> supervised_joints(const KinematicTree& tree, const Chain& chain) {
  std::vector<int> out = chain.joints;
  for (int j : chain.joints) {
    for (int c : tree.children(j)) {
      if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::VectorXd slice_pose(const PoseParams& pose, const Chain& chain) {
  Eigen::VectorXd out(chain.pose_dim());
  for (std::size_t k = 0; k < chain.joints.size(); ++k) {
    const int j = chain.joints[k];
    if (3 * j + 3 > pose.size()) throw InvalidArgument("slice_pose: chain exceeds pose size");
    out.segment<3>(3 * static_cast<Eigen::Index>(k)) = pose.segment<3>(3 * j);
  }
  return out;
}

PoseParams scatter_pose(const PoseParams& pose, const Chain& chain, const Eigen::VectorXd& chain_pose) {
  if (chain_pose.size() != chain.pose_dim()) {
    throw InvalidArgument("scatter_pose: chain pose has " + std::to_string(chain_pose.size()) +
                          " entries, chain expects " + std::to_string(chain.pose_dim()));
  }
  PoseParams out = pose;
  for (std::size_t k = 0; k < chain.joints.size(); ++k) {
    const int j = chain.joints[k];
    if (3 * j + 3 > pose.size()) throw InvalidArgument("scatter_pose: chain exceeds pose size");
    out.segment<3>(3 * j) = chain_pose.segment<3>(3 * static_cast<Eigen::Index>(k));
  }
  return out;
}

nlohmann::json to_json(const ChainSet& set, const KinematicTree& tree) {
  nlohmann::json out = nlohmann::json::array();
  for (const Chain& c : set.chains) {
    nlohmann::json names = nlohmann::json::array();
    for (int j : c.joints) names.push_back(tree.names()[static_cast<std::size_t>(j)]);
    out.push_back({{"id", c.name},
                   {"joints", c.joints},
                   {"joint_names", names},
                   {"end_effector", c.end_effector()},
                   {"pose_dim", c.pose_dim()}});
  }
  return out;
}

}  // namespace kinfit
