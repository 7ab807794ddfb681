#include "kinfit/camera.hpp"

#include "kinfit/error.hpp"

namespace kinfit {

CameraFit estimate_camera(const Points3d& joints3d, const Points2d& joints2d, const Mask& visible) {
  const Eigen::Index n = joints3d.rows();
  if (joints2d.rows() != n || visible.size() != n) {
    throw InvalidArgument("estimate_camera: joint counts disagree");
  }
  const Eigen::Index count = visible.count();
  if (count < 2) throw DegenerateConfiguration("estimate_camera: fewer than two visible joints");

  Eigen::Vector2d mean3 = Eigen::Vector2d::Zero();
  Eigen::Vector2d mean2 = Eigen::Vector2d::Zero();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!visible[i]) continue;
    mean3 += joints3d.row(i).head<2>().transpose();
    mean2 += joints2d.row(i).transpose();
  }
  mean3 /= static_cast<double>(count);
  mean2 /= static_cast<double>(count);

  double cross = 0.0;
  double spread = 0.0;
  double magnitude = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!visible[i]) continue;
    const Eigen::Vector2d a = joints3d.row(i).head<2>().transpose() - mean3;
    const Eigen::Vector2d b = joints2d.row(i).transpose() - mean2;
    cross += a.dot(b);
    spread += a.squaredNorm();
    magnitude += joints3d.row(i).head<2>().squaredNorm();
  }
  if (spread <= 1e-24 * (1.0 + magnitude)) {
    throw DegenerateConfiguration("estimate_camera: visible joints project to a single point");
  }

  CameraFit fit;
  fit.camera.s = cross / spread;
  if (fit.camera.s < kMinCameraScale) {
    fit.camera.s = kMinCameraScale;
    fit.clamped = true;
  }
  fit.camera.rho = mean2 - fit.camera.s * mean3;
  return fit;
}

}  // namespace kinfit
