#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"

#include "kinfit/chains.hpp"
#include "kinfit/error.hpp"

using namespace kinfit;

TEST_CASE("default chain set partitions the skeleton") {
  const KinematicTree tree = smpl_tree();
  const ChainSet set = default_chain_set(tree);
  REQUIRE(set.chains.size() == 6);
  CHECK(set.root().id == ChainId::Root);
  CHECK(set.root().pose_dim() == 12);
  CHECK(set.pose_dim() == 72);

  std::vector<std::size_t> sizes;
  std::multiset<int> all;
  for (const Chain& c : set.chains) {
    sizes.push_back(c.joints.size());
    all.insert(c.joints.begin(), c.joints.end());
    CHECK_NOTHROW(validate_chain(tree, c));
  }
  CHECK(sizes == std::vector<std::size_t>{4, 2, 5, 5, 4, 4});
  CHECK(all.size() == 24);
  for (int j = 0; j < 24; ++j) CHECK(all.count(j) == 1);
}

TEST_CASE("chain membership and end effectors by name") {
  const KinematicTree tree = smpl_tree();
  const ChainSet set = default_chain_set(tree);
  auto names = [&](const Chain& c) {
    std::vector<std::string> out;
    for (int j : c.joints) out.push_back(tree.names()[j]);
    return out;
  };
  CHECK(names(set.chains[0]) == std::vector<std::string>{"pelvis", "spine1", "spine2", "spine3"});
  CHECK(names(set.chains[1]) == std::vector<std::string>{"neck", "head"});
  for (const Chain& c : set.chains) {
    const std::string tip = tree.names()[c.end_effector()];
    if (c.id == ChainId::Root) CHECK(tip == "spine3");
    if (c.id == ChainId::Head) CHECK(tip == "head");
    if (c.id == ChainId::RArm || c.id == ChainId::LArm) {
      CHECK(tip.find("hand") != std::string::npos);
      CHECK(tree.names()[c.joints.front()].find("collar") != std::string::npos);
    }
    if (c.id == ChainId::RLeg || c.id == ChainId::LLeg) CHECK(tip.find("foot") != std::string::npos);
  }
}

TEST_CASE("nonstandard trees are rejected") {
  const KinematicTree small({-1, 0, 1}, {"a", "b", "c"}, Points3d::Zero(3, 3));
  CHECK_THROWS_AS(default_chain_set(small), UnsupportedSkeleton);
  const KinematicTree tree = smpl_tree();
  Chain broken{ChainId::Custom, "broken", {0, 4}};
  CHECK_THROWS_AS(validate_chain(tree, broken), InvalidArgument);
}

TEST_CASE("flat chain is topological over all joints") {
  const KinematicTree tree = smpl_tree();
  const Chain flat = flat_chain(tree);
  CHECK(flat.joints.size() == 24);
  for (std::size_t k = 0; k < flat.joints.size(); ++k) {
    const int p = tree.parent(flat.joints[k]);
    if (p == kNoParent) continue;
    const auto pos = std::find(flat.joints.begin(), flat.joints.end(), p) - flat.joints.begin();
    CHECK(static_cast<std::size_t>(pos) < k);
  }
}

TEST_CASE("slice and scatter round trip and stay local") {
  const KinematicTree tree = smpl_tree();
  const ChainSet set = default_chain_set(tree);
  std::mt19937_64 rng(6);
  const PoseParams pose = oracle::random_pose(rng, 24, 1.0);
  CHECK(slice_pose(PoseParams::Zero(72), set.root()) == Eigen::VectorXd::Zero(12));
  for (const Chain& c : set.chains) {
    CHECK(scatter_pose(pose, c, slice_pose(pose, c)) == pose);
    const Eigen::VectorXd other = Eigen::VectorXd::Constant(c.pose_dim(), 0.25);
    const PoseParams written = scatter_pose(pose, c, other);
    for (const Chain& d : set.chains) {
      if (d.id == c.id) {
        CHECK(slice_pose(written, d) == other);
      } else {
        CHECK(slice_pose(written, d) == slice_pose(pose, d));
      }
    }
    CHECK_THROWS_AS(scatter_pose(pose, c, Eigen::VectorXd::Zero(c.pose_dim() + 1)), InvalidArgument);
  }
}

TEST_CASE("supervised joints add the off-chain children") {
  const KinematicTree tree = smpl_tree();
  const ChainSet set = default_chain_set(tree);
  const std::vector<int> root = supervised_joints(tree, set.root());
  for (const std::string name : {"pelvis", "spine1", "spine2", "spine3", "left_hip", "right_hip", "neck",
                                 "left_collar", "right_collar"}) {
    CHECK(std::count(root.begin(), root.end(), tree.index_of(name)) == 1);
  }
  CHECK(root.size() == 9);
}

TEST_CASE("chain set JSON lists joint names") {
  const KinematicTree tree = smpl_tree();
  const nlohmann::json doc = to_json(default_chain_set(tree), tree);
  CHECK(doc.dump().find("spine3") != std::string::npos);
}
