#include "kinfit/observations.hpp"

#include <string>

#include "kinfit/error.hpp"

namespace kinfit {

Observations Observations::hidden(int joint_count) {
  Observations obs;
  obs.joints3d = Points3d::Zero(joint_count, 3);
  obs.joints2d = Points2d::Zero(joint_count, 2);
  obs.vis3d = Mask::Constant(joint_count, false);
  obs.vis2d = Mask::Constant(joint_count, false);
  return obs;
}

void validate(const Observations& obs, int joint_count) {
  if (obs.joints3d.rows() != joint_count || obs.joints2d.rows() != joint_count ||
      obs.vis3d.size() != joint_count || obs.vis2d.size() != joint_count) {
    throw InvalidArgument("observations: expected " + std::to_string(joint_count) + " joints");
  }
  for (int i = 0; i < joint_count; ++i) {
    if (obs.vis3d[i] && !obs.joints3d.row(i).allFinite()) {
      throw InvalidArgument("observations: visible 3D joint " + std::to_string(i) + " is not finite");
    }
    if (obs.vis2d[i] && !obs.joints2d.row(i).allFinite()) {
      throw InvalidArgument("observations: visible 2D joint " + std::to_string(i) + " is not finite");
    }
  }
  if (!obs.any_visible()) throw InvalidArgument("observations: no visible joints");
  if (obs.param_targets) {
    if (obs.param_targets->pose.size() != 3 * joint_count || !obs.param_targets->pose.allFinite() ||
        !obs.param_targets->shape.allFinite()) {
      throw InvalidArgument("observations: malformed parameter targets");
    }
  }
}

}  // namespace kinfit
