#pragma once

#include <Eigen/Core>

#include "kinfit/types.hpp"

namespace kinfit {

inline constexpr double kMinCameraScale = 1e-6;

// x = s * (X, Y) + rho. Pixels; origin top-left, +x right, +y down.
struct WeakPerspectiveCamera {
  double s = 1.0;
  Eigen::Vector2d rho = Eigen::Vector2d::Zero();
};

template <typename Scalar>
Points2<Scalar> project(const Points3<Scalar>& points, const WeakPerspectiveCamera& cam) {
  Points2<Scalar> out = Scalar(cam.s) * points.template leftCols<2>();
  out.rowwise() += cam.rho.transpose().template cast<Scalar>();
  return out;
}

struct CameraFit {
  WeakPerspectiveCamera camera;
  bool clamped = false;  // best-fit scale was below kMinCameraScale
};

// Closed-form least-squares (s, rho) over the visible correspondences.
// Throws DegenerateConfiguration with fewer than two visible joints or when
// the visible joints project to a single point.
CameraFit estimate_camera(const Points3d& joints3d, const Points2d& joints2d, const Mask& visible);

}  // namespace kinfit
