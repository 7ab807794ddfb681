#pragma once

#include <optional>

#include "kinfit/types.hpp"

namespace kinfit {

struct ParamTargets {
  PoseParams pose;
  ShapeParams shape;
};

// Per-joint supervision. Entries whose visibility flag is false are ignored
// and may hold any value.
struct Observations {
  Points3d joints3d;  // meters, model frame
  Points2d joints2d;  // pixels
  Mask vis3d;
  Mask vis2d;
  std::optional<ParamTargets> param_targets;

  int joint_count() const { return static_cast<int>(joints3d.rows()); }
  bool any_visible() const { return vis3d.any() || vis2d.any(); }

  static Observations hidden(int joint_count);
};

// Throws InvalidArgument on size mismatch, non-finite visible entries, or
// when no joint is visible at all.
void validate(const Observations& obs, int joint_count);

}  // namespace kinfit
