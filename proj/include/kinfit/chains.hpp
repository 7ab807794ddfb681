#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>
#include "json.hpp"

#include "kinfit/skeleton.hpp"
#include "kinfit/types.hpp"

namespace kinfit {

enum class ChainId { Root, Head, RArm, LArm, RLeg, LLeg, Flat, Custom };

std::string to_string(ChainId id);

struct Chain {
  ChainId id = ChainId::Custom;
  std::string name;
  std::vector<int> joints;  // root-to-tip

  int end_effector() const { return joints.back(); }
  int pose_dim() const { return 3 * static_cast<int>(joints.size()); }
};

// Root chain first, then its dependent chains.
struct ChainSet {
  std::vector<Chain> chains;

  int pose_dim() const;
  const Chain& root() const { return chains.front(); }
};

// Root = pelvis..spine3, Head = neck, head, each arm = collar..hand,
// each leg = hip..foot. Throws UnsupportedSkeleton for other trees.
ChainSet default_chain_set(const KinematicTree& tree);

// All joints in topological order, as one chain.
Chain flat_chain(const KinematicTree& tree);

// Checks that consecutive joints are parent -> child links in `tree`.
void validate_chain(const KinematicTree& tree, const Chain& chain);

// Joints whose observations drive the chain: its own joints plus the
// off-chain children they carry (e.g. hips, neck and collars for the root).
std::vector<int> supervised_joints(const KinematicTree& tree, const Chain& chain);

Eigen::VectorXd slice_pose(const PoseParams& pose, const Chain& chain);
PoseParams scatter_pose(const PoseParams& pose, const Chain& chain, const Eigen::VectorXd& chain_pose);

nlohmann::json to_json(const ChainSet& set, const KinematicTree& tree);

}  // namespace kinfit
