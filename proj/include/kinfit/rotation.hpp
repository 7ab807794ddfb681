#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>

#include "kinfit/error.hpp"
#include "kinfit/types.hpp"

namespace kinfit {

// Below this angle the exponential map switches to its second-order series.
inline constexpr double kSmallAngle = 1e-8;

template <typename Derived>
Matrix3<typename Derived::Scalar> skew(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  Matrix3<Scalar> k;
  k << Scalar(0), -v(2), v(1),
       v(2), Scalar(0), -v(0),
       -v(1), v(0), Scalar(0);
  return k;
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& v) {
  return v.array().isFinite().all();
}

// Exponential map from an axis-angle vector (angle = norm) to SO(3).
template <typename Derived>
Matrix3<typename Derived::Scalar> rodrigues(const Eigen::MatrixBase<Derived>& aa) {
  using Scalar = typename Derived::Scalar;
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 3);
  if (!all_finite(aa)) throw InvalidArgument("rodrigues: non-finite axis-angle");

  const Matrix3<Scalar> k = skew(aa);
  const Matrix3<Scalar> k2 = k * k;
  const Scalar angle = aa.norm();
  if (angle < Scalar(kSmallAngle)) {
    return Matrix3<Scalar>::Identity() + k + Scalar(0.5) * k2;
  }
  const Scalar half_sin = std::sin(angle / Scalar(2));
  const Scalar a = std::sin(angle) / angle;
  const Scalar b = Scalar(2) * half_sin * half_sin / (angle * angle);
  return Matrix3<Scalar>::Identity() + a * k + b * k2;
}

// Left Jacobian of SO(3): d(R(v)) R(v)^T = skew(J_l(v) dv).
template <typename Derived>
Matrix3<typename Derived::Scalar> left_jacobian(const Eigen::MatrixBase<Derived>& aa) {
  using Scalar = typename Derived::Scalar;
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 3);
  const Matrix3<Scalar> k = skew(aa);
  const Matrix3<Scalar> k2 = k * k;
  const Scalar angle = aa.norm();
  if (angle < Scalar(kSmallAngle)) {
    return Matrix3<Scalar>::Identity() + Scalar(0.5) * k + k2 / Scalar(6);
  }
  const Scalar half_sin = std::sin(angle / Scalar(2));
  const Scalar angle2 = angle * angle;
  const Scalar a = Scalar(2) * half_sin * half_sin / angle2;
  const Scalar b = (angle - std::sin(angle)) / (angle2 * angle);
  return Matrix3<Scalar>::Identity() + a * k + b * k2;
}

// Same rotation with the angle wrapped into [-pi, pi].
template <typename Derived>
Vector3<typename Derived::Scalar> canonicalize(const Eigen::MatrixBase<Derived>& aa) {
  using Scalar = typename Derived::Scalar;
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 3);
  const Scalar angle = aa.norm();
  if (angle <= Scalar(std::numbers::pi)) return aa;
  const Scalar wrapped = std::remainder(angle, Scalar(2 * std::numbers::pi));
  if (wrapped == Scalar(0)) return Vector3<Scalar>::Zero();
  return aa * (wrapped / angle);
}

}  // namespace kinfit
