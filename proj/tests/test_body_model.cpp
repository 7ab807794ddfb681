#include <cstring>
#include <filesystem>
#include <limits>
#include <random>

#include "doctest.h"
#include "oracles.hpp"

#include "kinfit/body_model.hpp"
#include "kinfit/codec.hpp"
#include "kinfit/error.hpp"
#include "kinfit/kinematics.hpp"
#include "kinfit/model_io.hpp"

using namespace kinfit;

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

const TemplateModel& model7() {
  static const TemplateModel m = synth_model(7, 512);
  return m;
}

ShapeParams random_beta(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2, 2);
  ShapeParams b(10);
  for (int k = 0; k < 10; ++k) b[k] = u(rng);
  return b;
}

}  // namespace

TEST_CASE("synth_model satisfies the model invariants for 20 seeds") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TemplateModel m = synth_model(seed, 256 + 16 * static_cast<int>(seed));
    CHECK_NOTHROW(validate(m));
    CHECK((m.skin_weights.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-9);
    CHECK(m.skin_weights.minCoeff() >= 0.0);
    CHECK((m.joint_regressor.rowwise().sum().array() - 1.0).abs().maxCoeff() <= 1e-9);
    CHECK(m.joint_regressor.minCoeff() >= 0.0);
    CHECK(m.faces.minCoeff() >= 0);
    CHECK(m.faces.maxCoeff() < m.vertex_count());
    CHECK(m.shape_dim() == 10);
  }
}

TEST_CASE("synth_model is deterministic and rejects tiny meshes") {
  const TemplateModel a = synth_model(3, 300), b = synth_model(3, 300);
  CHECK(max_abs(a.template_vertices - b.template_vertices) == 0.0);
  CHECK(max_abs(a.shape_basis - b.shape_basis) == 0.0);
  CHECK(max_abs(a.skin_weights - b.skin_weights) == 0.0);
  CHECK(max_abs(a.joint_regressor - b.joint_regressor) == 0.0);
  CHECK(synth_model(4, 300).template_vertices != a.template_vertices);
  CHECK_THROWS_AS(synth_model(0, 10), InvalidArgument);
}

TEST_CASE("seed 7 model: rest joints lie inside the vertex bounding box") {
  const TemplateModel& m = model7();
  const Points3d joints = regress_rest_joints(m, m.template_vertices);
  const Eigen::RowVector3d lo = m.template_vertices.colwise().minCoeff();
  const Eigen::RowVector3d hi = m.template_vertices.colwise().maxCoeff();
  for (int j = 0; j < 24; ++j) {
    CHECK((joints.row(j).array() >= lo.array()).all());
    CHECK((joints.row(j).array() <= hi.array()).all());
  }
}

TEST_CASE("shape_deform is affine in beta") {
  const TemplateModel& m = model7();
  CHECK(max_abs(shape_deform(m, ShapeParams::Zero(10)) - m.template_vertices) == 0.0);
  for (int k = 0; k < 10; ++k) {
    const Points3d v = shape_deform(m, ShapeParams::Unit(10, k));
    for (int i = 0; i < m.vertex_count(); ++i) {
      for (int a = 0; a < 3; ++a) {
        CHECK(v(i, a) - m.template_vertices(i, a) == doctest::Approx(m.shape_basis(3 * i + a, k)).epsilon(1e-12));
      }
    }
  }
  std::mt19937_64 rng(1);
  const ShapeParams a = random_beta(rng), b = random_beta(rng);
  const Points3d lhs = shape_deform(m, a + b);
  const Points3d rhs = shape_deform(m, a) + shape_deform(m, b) - m.template_vertices;
  CHECK(max_abs(lhs - rhs) < 1e-12);
  CHECK_THROWS_AS(shape_deform(m, ShapeParams::Zero(9)), InvalidArgument);
}

TEST_CASE("regress_rest_joints matches a double-loop oracle and follows translations") {
  const TemplateModel& m = model7();
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  Points3d verts(m.vertex_count(), 3);
  for (int i = 0; i < verts.size(); ++i) verts.data()[i] = g(rng);
  const Points3d joints = regress_rest_joints(m, verts);
  for (int j = 0; j < 24; ++j) {
    Eigen::Vector3d acc = Eigen::Vector3d::Zero();
    for (int v = 0; v < m.vertex_count(); ++v) acc += m.joint_regressor(j, v) * verts.row(v).transpose();
    CHECK((joints.row(j).transpose() - acc).norm() < 1e-12);
  }
  const Eigen::RowVector3d d(0.3, -0.2, 1.5);
  const Points3d shifted = verts.rowwise() + d;
  CHECK(max_abs(regress_rest_joints(m, shifted) - (joints.rowwise() + d)) < 1e-12);
}

TEST_CASE("skinning matches the unvectorized LBS oracle") {
  const TemplateModel& m = model7();
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    const PoseParams pose = oracle::random_pose(rng, 24, 0.8);
    const ShapeParams beta = random_beta(rng);
    const PosedMesh mesh = mesh_function(m, pose, beta);
    const Points3d ref = oracle::naive_lbs(m, shape_deform(m, beta), pose);
    CHECK(max_abs(mesh.vertices - ref) < 1e-10);
  }
}

TEST_CASE("mesh_function: rest at zero, joints agree with kinematics") {
  const TemplateModel& m = model7();
  const PosedMesh rest = mesh_function(m, PoseParams::Zero(72), ShapeParams::Zero(10));
  CHECK(max_abs(rest.vertices - m.template_vertices) <= 1e-12);

  const JointModel jm = make_joint_model(m);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const PoseParams pose = oracle::random_pose(rng, 24, 1.0);
    const ShapeParams beta = random_beta(rng);
    const PosedMesh mesh = mesh_function(m, pose, beta);
    const Points3d fk = forward_kinematics(jm.tree, pose, jm.rest_joints(beta)).posed_joints;
    CHECK(max_abs(mesh.joints - fk) < 1e-9);
    CHECK(max_abs(mesh.joints - m.joint_regressor * mesh.vertices) < 1e-12);
    CHECK(max_abs(jm.rest_joints(beta) - regress_rest_joints(m, shape_deform(m, beta))) < 1e-12);
  }
}

TEST_CASE("a root-only pose moves the mesh rigidly") {
  const TemplateModel& m = model7();
  PoseParams pose = PoseParams::Zero(72);
  pose.head<3>() = Eigen::Vector3d(0.2, 0.9, -0.4);
  const PosedMesh mesh = mesh_function(m, pose, ShapeParams::Zero(10));
  const Eigen::Matrix3d r = rodrigues(Eigen::Vector3d(pose.head<3>()));
  const Eigen::RowVector3d pelvis = regress_rest_joints(m, m.template_vertices).row(0);
  const Points3d expect = ((m.template_vertices.rowwise() - pelvis) * r.transpose()).rowwise() + pelvis;
  CHECK(max_abs(mesh.vertices - expect) < 1e-9);
}

TEST_CASE("skin rejects transforms built on other rest joints") {
  const TemplateModel& m = model7();
  const Points3d shaped = m.template_vertices;
  Points3d rest = regress_rest_joints(m, shaped);
  rest(3, 1) += 0.1;
  const auto fk = forward_kinematics(model_tree(m), PoseParams::Zero(72).eval(), rest);
  CHECK_THROWS_AS(skin(m, shaped, fk), InvalidArgument);
}

TEST_CASE("validate names the offending row") {
  TemplateModel m = synth_model(1, 128);
  m.skin_weights.row(5) *= 0.5;
  try {
    validate(m);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("5") != std::string::npos);
  }
}

TEST_CASE("model file round trip is lossless") {
  TemplateModel m = synth_model(7, 200);
  m.pose_corrective_basis = RowMatrixXd::Random(3 * 200, kPoseCorrectiveDim) * 1e-3;
  const TemplateModel back = model_from_json(nlohmann::json::parse(model_to_json(m).dump()));
  CHECK(back.joint_names == m.joint_names);
  CHECK(back.parents == m.parents);
  CHECK(back.template_vertices == m.template_vertices);
  CHECK(back.shape_basis == m.shape_basis);
  CHECK(back.pose_corrective_basis == m.pose_corrective_basis);
  CHECK(back.skin_weights == m.skin_weights);
  CHECK(back.joint_regressor == m.joint_regressor);
  CHECK(back.faces == m.faces);
}

TEST_CASE("model loading reports truncation and bad rows") {
  const std::string dir = (std::filesystem::temp_directory_path() / "kinfit_test_model_io").string();
  std::filesystem::create_directories(dir);
  const TemplateModel m = synth_model(2, 128);
  const std::string text = model_to_json(m).dump();
  codec::write_file(dir + "/trunc.json", text.substr(0, text.size() / 2));
  CHECK_THROWS_AS(load_model(dir + "/trunc.json"), ParseError);

  TemplateModel bad = m;
  bad.skin_weights.row(17) *= 0.5;
  codec::write_file(dir + "/bad.json", model_to_json(bad).dump());
  try {
    load_model(dir + "/bad.json");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("17") != std::string::npos);
  }
  CHECK_THROWS_AS(load_model(dir + "/missing.json"), IoError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("base64 float64 codec round trips exactly") {
  const std::vector<double> values{0.0, -0.0, 1.0 / 3.0, 1e-300, -7.25e12, std::numeric_limits<double>::max()};
  const std::string text = codec::encode_f64(values);
  const std::vector<double> back = codec::decode_f64(text, "x");
  REQUIRE(back.size() == values.size());
  for (std::size_t i = 0; i < values.size(); ++i) CHECK(std::memcmp(&back[i], &values[i], sizeof(double)) == 0);
  CHECK(codec::encode_f64(std::vector<double>{1.0}) == "AAAAAAAA8D8=");
  CHECK_THROWS_AS(codec::decode_f64("AAAA", "x"), ParseError);
}

TEST_CASE("OBJ export lists vertices then 1-indexed faces") {
  Points3d v(3, 3);
  v << 0, 0, 0, 1, 0, 0, 0, 1, 0;
  Faces f(1, 3);
  f << 0, 1, 2;
  const std::string obj = obj_string(v, f);
  CHECK(obj.find("v 1 0 0\n") != std::string::npos);
  CHECK(obj.find("f 1 2 3\n") != std::string::npos);
  CHECK(obj.find("v ") < obj.find("f "));
}
