#pragma once

#include <Eigen/Core>

namespace kinfit {

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// One 3D point per row (vertices, joints).
template <typename Scalar>
using Points3 = Eigen::Matrix<Scalar, Eigen::Dynamic, 3, Eigen::RowMajor>;
// One 2D point per row (image-plane joints).
template <typename Scalar>
using Points2 = Eigen::Matrix<Scalar, Eigen::Dynamic, 2, Eigen::RowMajor>;

using Points3d = Points3<double>;
using Points2d = Points2<double>;
using RowMatrixXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Mask = Eigen::Array<bool, Eigen::Dynamic, 1>;

// Pose: concatenated per-joint axis-angle blocks, 3 entries per joint.
using PoseParams = Eigen::VectorXd;
using ShapeParams = Eigen::VectorXd;

inline constexpr int kSmplJointCount = 24;
inline constexpr int kSmplPoseDim = 3 * kSmplJointCount;
inline constexpr int kShapeDim = 10;
inline constexpr int kPoseCorrectiveDim = 9 * (kSmplJointCount - 1);

}  // namespace kinfit
