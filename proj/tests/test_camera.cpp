#include <random>

#include <Eigen/Dense>

#include "doctest.h"
#include "oracles.hpp"

#include "kinfit/camera.hpp"
#include "kinfit/error.hpp"
#include "kinfit/kinematics.hpp"

using namespace kinfit;

namespace {

Points3d random_joints(std::mt19937_64& rng) {
  const KinematicTree tree = smpl_tree();
  return forward_kinematics(tree, oracle::random_pose(rng, 24, 0.5), tree.rest_joints()).posed_joints;
}

WeakPerspectiveCamera random_camera(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> scale(50.0, 300.0), offset(-50.0, 300.0);
  WeakPerspectiveCamera cam;
  cam.s = scale(rng);
  cam.rho = {offset(rng), offset(rng)};
  return cam;
}

// Visibility with at least two joints, sometimes only two.
Mask random_mask(std::mt19937_64& rng, int seed) {
  std::bernoulli_distribution coin(seed % 3 == 0 ? 1.0 : 0.4);
  Mask m(24);
  for (int i = 0; i < 24; ++i) m[i] = coin(rng);
  if (seed % 5 == 1) {
    m.setConstant(false);
    m[static_cast<Eigen::Index>(rng() % 24)] = true;
  }
  while (m.count() < 2) m[static_cast<Eigen::Index>(rng() % 24)] = true;
  return m;
}

// Generic least squares over the stacked linear system in (s, rho).
Eigen::Vector3d lstsq_camera(const Points3d& x3, const Points2d& x2, const Mask& vis) {
  Eigen::MatrixXd a(2 * vis.count(), 3);
  Eigen::VectorXd b(2 * vis.count());
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < x3.rows(); ++i) {
    if (!vis[i]) continue;
    a.row(r) << x3(i, 0), 1, 0;
    a.row(r + 1) << x3(i, 1), 0, 1;
    b[r] = x2(i, 0);
    b[r + 1] = x2(i, 1);
    r += 2;
  }
  return a.colPivHouseholderQr().solve(b);
}

}  // namespace

TEST_CASE("projection is scale then offset on x and y") {
  Points3d p(2, 3);
  p << 1, 2, 3, -1, 0.5, 9;
  WeakPerspectiveCamera cam;
  cam.s = 2;
  cam.rho = {10, 20};
  const Points2d x = project(p, cam);
  CHECK(x(0, 0) == 12);
  CHECK(x(0, 1) == 24);
  CHECK(x(1, 0) == 8);
  CHECK(x(1, 1) == 21);
}

TEST_CASE("camera recovered exactly from noise-free correspondences") {
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937_64 rng(seed);
    const Points3d x3 = random_joints(rng);
    const WeakPerspectiveCamera truth = random_camera(rng);
    const Mask vis = random_mask(rng, seed);
    Points2d x2 = project(x3, truth);
    for (Eigen::Index i = 0; i < 24; ++i) {
      if (!vis[i]) x2.row(i).setConstant(1e6);  // hidden entries must be ignored
    }
    const CameraFit fit = estimate_camera(x3, x2, vis);
    CHECK_FALSE(fit.clamped);
    CHECK(std::abs(fit.camera.s - truth.s) < 1e-9);
    CHECK((fit.camera.rho - truth.rho).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("two visible joints suffice") {
  std::mt19937_64 rng(3);
  const Points3d x3 = random_joints(rng);
  const WeakPerspectiveCamera truth = random_camera(rng);
  Mask vis = Mask::Constant(24, false);
  vis[20] = vis[7] = true;
  const CameraFit fit = estimate_camera(x3, project(x3, truth), vis);
  CHECK(std::abs(fit.camera.s - truth.s) < 1e-9);
}

TEST_CASE("noisy correspondences match a generic least-squares solve") {
  for (int seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(100 + seed);
    const Points3d x3 = random_joints(rng);
    const Mask vis = random_mask(rng, seed);
    Points2d x2 = project(x3, random_camera(rng));
    std::normal_distribution<double> noise(0.0, 3.0);
    for (Eigen::Index i = 0; i < 24; ++i) x2.row(i) += Eigen::RowVector2d(noise(rng), noise(rng));
    const CameraFit fit = estimate_camera(x3, x2, vis);
    const Eigen::Vector3d ref = lstsq_camera(x3, x2, vis);
    CHECK(fit.camera.s == doctest::Approx(ref[0]).epsilon(1e-9));
    CHECK(fit.camera.rho.x() == doctest::Approx(ref[1]).epsilon(1e-9));
    CHECK(fit.camera.rho.y() == doctest::Approx(ref[2]).epsilon(1e-9));

    // Stationary point of the squared reprojection error.
    Eigen::Vector3d grad = Eigen::Vector3d::Zero();
    const Points2d r = project(x3, fit.camera) - x2;
    for (Eigen::Index i = 0; i < 24; ++i) {
      if (!vis[i]) continue;
      grad[0] += r(i, 0) * x3(i, 0) + r(i, 1) * x3(i, 1);
      grad[1] += r(i, 0);
      grad[2] += r(i, 1);
    }
    CHECK(grad.norm() < 1e-8 * (1.0 + x2.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("degenerate camera inputs") {
  Points3d x3 = Points3d::Zero(24, 3);
  Points2d x2 = Points2d::Zero(24, 2);
  Mask one = Mask::Constant(24, false);
  one[0] = true;
  CHECK_THROWS_AS(estimate_camera(x3, x2, one), DegenerateConfiguration);

  // All visible joints share (X, Y), depth differences do not help.
  Mask all = Mask::Constant(24, true);
  for (Eigen::Index i = 0; i < 24; ++i) x3(i, 2) = 0.1 * static_cast<double>(i);
  CHECK_THROWS_AS(estimate_camera(x3, x2, all), DegenerateConfiguration);

  CHECK_THROWS_AS(estimate_camera(x3, Points2d::Zero(3, 2), all), InvalidArgument);

  // A mirrored image asks for negative scale; the fit clamps and reports it.
  std::mt19937_64 rng(1);
  const Points3d joints = random_joints(rng);
  WeakPerspectiveCamera flipped;
  flipped.s = -100;
  const CameraFit fit = estimate_camera(joints, project(joints, flipped), all);
  CHECK(fit.clamped);
  CHECK(fit.camera.s == kMinCameraScale);
}
