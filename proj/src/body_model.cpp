#include "kinfit/body_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Geometry>
#include <Eigen/QR>

#include "kinfit/error.hpp"

namespace kinfit {
namespace {

constexpr double kConvexTolerance = 1e-9;

void check_convex_rows(const RowMatrixXd& m, const std::string& field) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (!m.row(r).allFinite()) {
      throw ValidationError(field + " row " + std::to_string(r) + " has non-finite entries");
    }
    if (m.row(r).minCoeff() < 0.0) {
      throw ValidationError(field + " row " + std::to_string(r) + " has a negative entry");
    }
    const double sum = m.row(r).sum();
    if (std::abs(sum - 1.0) > kConvexTolerance) {
      throw ValidationError(field + " row " + std::to_string(r) + " sums to " +
                            std::to_string(sum) + ", expected 1");
    }
  }
}

Eigen::Map<const Points3d> as_points(const Eigen::VectorXd& flat) {
  return Eigen::Map<const Points3d>(flat.data(), flat.size() / 3, 3);
}

}  // namespace

void validate(const TemplateModel& model) {
  const Eigen::Index n = model.vertex_count();
  const Eigen::Index j = model.joint_count();
  if (n == 0) throw ValidationError("template_vertices: model has no vertices");
  if (j == 0) throw ValidationError("parents: model has no joints");
  if (!model.template_vertices.allFinite()) {
    throw ValidationError("template_vertices: non-finite entries");
  }
  if (model.shape_basis.rows() != 3 * n || model.shape_basis.cols() != kShapeDim) {
    throw ValidationError("shape_basis: expected shape [" + std::to_string(n) + ",3," +
                          std::to_string(kShapeDim) + "]");
  }
  if (!model.shape_basis.allFinite()) throw ValidationError("shape_basis: non-finite entries");
  if (model.has_pose_correctives() &&
      (model.pose_corrective_basis.rows() != 3 * n ||
       model.pose_corrective_basis.cols() != 9 * (j - 1) ||
       !model.pose_corrective_basis.allFinite())) {
    throw ValidationError("pose_corrective_basis: expected finite shape [" + std::to_string(n) +
                          ",3," + std::to_string(9 * (j - 1)) + "]");
  }
  if (static_cast<Eigen::Index>(model.joint_names.size()) != j) {
    throw ValidationError("joint_names: count differs from parents");
  }
  if (model.skin_weights.rows() != n || model.skin_weights.cols() != j) {
    throw ValidationError("skin_weights: expected shape [" + std::to_string(n) + "," +
                          std::to_string(j) + "]");
  }
  if (model.joint_regressor.rows() != j || model.joint_regressor.cols() != n) {
    throw ValidationError("joint_regressor: expected shape [" + std::to_string(j) + "," +
                          std::to_string(n) + "]");
  }
  check_convex_rows(model.skin_weights, "skin_weights");
  check_convex_rows(model.joint_regressor, "joint_regressor");
  if (model.faces.size() > 0 && (model.faces.minCoeff() < 0 || model.faces.maxCoeff() >= n)) {
    throw ValidationError("faces: index out of range");
  }
  try {
    model_tree(model);
  } catch (const InvalidArgument& e) {
    throw ValidationError(std::string("parents: ") + e.what());
  }
}

KinematicTree model_tree(const TemplateModel& model) {
  return KinematicTree(model.parents, model.joint_names,
                       regress_rest_joints(model, model.template_vertices));
}

Points3d shape_deform(const TemplateModel& model, const ShapeParams& beta) {
  if (beta.size() != model.shape_dim()) {
    throw InvalidArgument("shape_deform: beta has " + std::to_string(beta.size()) +
                          " entries, model expects " + std::to_string(model.shape_dim()));
  }
  const Eigen::VectorXd offsets = model.shape_basis * beta;
  return model.template_vertices + as_points(offsets);
}

Points3d regress_rest_joints(const TemplateModel& model, const Points3d& shaped_vertices) {
  if (shaped_vertices.rows() != model.vertex_count()) {
    throw InvalidArgument("regress_rest_joints: vertex count mismatch");
  }
  return model.joint_regressor * shaped_vertices;
}

PosedMesh skin(const TemplateModel& model, const Points3d& shaped_vertices,
               const JointTransformsd& transforms) {
  const int j_count = model.joint_count();
  if (static_cast<int>(transforms.global_rotations.size()) != j_count) {
    throw InvalidArgument("skin: transforms do not match the model's joint count");
  }
  const Points3d rest = regress_rest_joints(model, shaped_vertices);
  const double scale = 1.0 + rest.cwiseAbs().maxCoeff();
  if ((rest - transforms.rest_joints).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw InvalidArgument("skin: transforms were built on rest joints that do not match the "
                          "joints regressed from the shaped vertices");
  }

  Points3d base = shaped_vertices;
  if (model.has_pose_correctives()) {
    Eigen::VectorXd feature(9 * (j_count - 1));
    for (int j = 1; j < j_count; ++j) {
      const Eigen::Matrix<double, 3, 3, Eigen::RowMajor> d =
          transforms.local_rotations[j] - Eigen::Matrix3d::Identity();
      feature.segment<9>(9 * (j - 1)) = Eigen::Map<const Eigen::Matrix<double, 9, 1>>(d.data());
    }
    const Eigen::VectorXd offsets = model.pose_corrective_basis * feature;
    base += as_points(offsets);
  }

  // Per joint: rotation (row-major) then translation mapping rest to posed.
  Eigen::Matrix<double, Eigen::Dynamic, 12, Eigen::RowMajor> affine(j_count, 12);
  for (int j = 0; j < j_count; ++j) {
    const Eigen::Matrix<double, 3, 3, Eigen::RowMajor> r = transforms.global_rotations[j];
    const Eigen::Vector3d t = transforms.posed_joints.row(j).transpose() -
                              r * transforms.rest_joints.row(j).transpose();
    affine.row(j).head<9>() = Eigen::Map<const Eigen::Matrix<double, 1, 9>>(r.data());
    affine.row(j).tail<3>() = t.transpose();
  }
  const Eigen::Matrix<double, Eigen::Dynamic, 12, Eigen::RowMajor> blended =
      model.skin_weights * affine;

  PosedMesh out;
  out.vertices.resize(base.rows(), 3);
  for (Eigen::Index v = 0; v < base.rows(); ++v) {
    const Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>> m(blended.row(v).data());
    out.vertices.row(v) = (m * base.row(v).transpose()).transpose() + blended.row(v).tail<3>();
  }
  out.joints = model.joint_regressor * out.vertices;
  return out;
}

PosedMesh mesh_function(const TemplateModel& model, const PoseParams& pose, const ShapeParams& beta) {
  const Points3d shaped = shape_deform(model, beta);
  const Points3d rest = regress_rest_joints(model, shaped);
  const KinematicTree tree(model.parents, model.joint_names, rest);
  const JointTransformsd fk = forward_kinematics(tree, pose, rest);
  return skin(model, shaped, fk);
}

Points3d JointModel::rest_joints(const ShapeParams& beta) const {
  if (beta.size() != shape_dim()) {
    throw InvalidArgument("rest_joints: beta has " + std::to_string(beta.size()) +
                          " entries, model expects " + std::to_string(shape_dim()));
  }
  if (shape_dim() == 0) return tree.rest_joints();
  const Eigen::VectorXd offsets = shape_basis * beta;
  return tree.rest_joints() + as_points(offsets);
}

JointModel make_joint_model(const TemplateModel& model) {
  JointModel out{model_tree(model), RowMatrixXd(3 * model.joint_count(), model.shape_dim())};
  const Eigen::Index n = model.vertex_count();
  const Eigen::Index b = model.shape_dim();
  for (int axis = 0; axis < 3; ++axis) {
    const Eigen::Map<const RowMatrixXd, 0, Eigen::OuterStride<>> axis_basis(
        model.shape_basis.data() + axis * b, n, b, Eigen::OuterStride<>(3 * b));
    const RowMatrixXd joint_axis = model.joint_regressor * axis_basis;
    for (int j = 0; j < model.joint_count(); ++j) out.shape_basis.row(3 * j + axis) = joint_axis.row(j);
  }
  return out;
}

// --- procedural model -------------------------------------------------------

namespace {

double bone_radius(int child) {
  switch (child) {
    case 3: case 6: case 9: return 0.12;
    case 1: case 2: return 0.09;
    case 4: case 5: return 0.07;
    case 7: case 8: return 0.05;
    case 10: case 11: return 0.04;
    case 12: return 0.05;
    case 13: case 14: return 0.06;
    case 15: return 0.09;
    case 16: case 17: return 0.05;
    case 18: case 19: return 0.045;
    case 20: case 21: return 0.035;
    default: return 0.03;
  }
}

double segment_distance(const Eigen::Vector3d& x, const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  const Eigen::Vector3d ab = b - a;
  const double len2 = ab.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp((x - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  return (a + t * ab - x).norm();
}

void orthonormal_frame(const Eigen::Vector3d& dir, Eigen::Vector3d& u, Eigen::Vector3d& w) {
  const Eigen::Vector3d helper =
      std::abs(dir.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  u = dir.cross(helper).normalized();
  w = dir.cross(u).normalized();
}

}  // namespace

TemplateModel synth_model(std::uint64_t seed, int vertex_count) {
  if (vertex_count < kSmplJointCount) {
    throw InvalidArgument("synth_model: need at least " + std::to_string(kSmplJointCount) +
                          " vertices, got " + std::to_string(vertex_count));
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const KinematicTree skeleton = smpl_tree();
  const Points3d& joints = skeleton.rest_joints();
  const int j_count = skeleton.joint_count();
  const int n = vertex_count;
  const int cluster = n >= 6 * j_count ? 6 : 1;
  constexpr double kClusterRadius = 0.015;
  constexpr double kJitter = 0.003;
  constexpr double kSkinSigma = 0.04;
  constexpr int kRingSegments = 6;

  TemplateModel model;
  model.joint_names = skeleton.names();
  model.parents = skeleton.parents();
  model.template_vertices.resize(n, 3);
  model.skin_weights = RowMatrixXd::Zero(n, j_count);
  model.joint_regressor = RowMatrixXd::Zero(j_count, n);
  std::vector<Eigen::Vector3i> faces;
  std::vector<int> surface_bone(static_cast<std::size_t>(n), -1);
  RowMatrixXd radial = RowMatrixXd::Zero(n, 3);  // surface offset from the bone axis

  // Rigid joint clusters: octahedra around each joint (or the joint itself).
  int v = 0;
  for (int j = 0; j < j_count; ++j) {
    const int first = v;
    for (int k = 0; k < cluster; ++k, ++v) {
      Eigen::Vector3d offset = Eigen::Vector3d::Zero();
      if (cluster > 1) offset[k / 2] = (k % 2 == 0 ? kClusterRadius : -kClusterRadius);
      model.template_vertices.row(v) = joints.row(j) + offset.transpose();
      model.skin_weights(v, j) = 1.0;
      model.joint_regressor(j, v) = 1.0 / cluster;
    }
    if (cluster == 6) {
      // +x -x +y -y +z -z
      const int px = first, nx = first + 1, py = first + 2, ny = first + 3, pz = first + 4,
                nz = first + 5;
      for (const Eigen::Vector3i& f :
           {Eigen::Vector3i(px, py, pz), Eigen::Vector3i(py, nx, pz), Eigen::Vector3i(nx, ny, pz),
            Eigen::Vector3i(ny, px, pz), Eigen::Vector3i(py, px, nz), Eigen::Vector3i(nx, py, nz),
            Eigen::Vector3i(ny, nx, nz), Eigen::Vector3i(px, ny, nz)}) {
        faces.push_back(f);
      }
    }
  }

  // Surface vertices: jittered cylinders along each bone.
  const int bones = j_count - 1;
  const int remaining = n - v;
  for (int child = 1; child <= bones; ++child) {
    const int count = remaining / bones + (child - 1 < remaining % bones ? 1 : 0);
    if (count == 0) continue;
    const Eigen::Vector3d a = joints.row(skeleton.parent(child)).transpose();
    const Eigen::Vector3d b = joints.row(child).transpose();
    Eigen::Vector3d dir = b - a;
    if (dir.norm() < 1e-9) dir = Eigen::Vector3d::UnitY();
    dir.normalize();
    Eigen::Vector3d u, w;
    orthonormal_frame(dir, u, w);
    const double radius = bone_radius(child);

    const int rings = count >= 2 * kRingSegments ? count / kRingSegments : 0;
    const int ring_start = v;
    for (int r = 0; r < rings; ++r) {
      const double t = (r + 0.5) / rings;
      for (int s = 0; s < kRingSegments; ++s, ++v) {
        const double phi = 2.0 * std::numbers::pi * (s + 0.5 * (r % 2)) / kRingSegments;
        Eigen::Vector3d x = a + t * (b - a) + radius * (std::cos(phi) * u + std::sin(phi) * w);
        for (int d = 0; d < 3; ++d) x[d] += kJitter * gauss(rng);
        model.template_vertices.row(v) = x.transpose();
        surface_bone[static_cast<std::size_t>(v)] = child;
        radial.row(v) = ((x - a) - (x - a).dot(dir) * dir).transpose();
      }
    }
    for (int r = 0; r + 1 < rings; ++r) {
      for (int s = 0; s < kRingSegments; ++s) {
        const int s1 = (s + 1) % kRingSegments;
        const int i00 = ring_start + r * kRingSegments + s;
        const int i01 = ring_start + r * kRingSegments + s1;
        const int i10 = ring_start + (r + 1) * kRingSegments + s;
        const int i11 = ring_start + (r + 1) * kRingSegments + s1;
        faces.emplace_back(i00, i01, i11);
        faces.emplace_back(i00, i11, i10);
      }
    }
    for (int k = rings * kRingSegments; k < count; ++k, ++v) {
      const double t = unit(rng);
      const double phi = 2.0 * std::numbers::pi * unit(rng);
      const double rr = radius * (0.5 + 0.5 * unit(rng));
      const Eigen::Vector3d x = a + t * (b - a) + rr * (std::cos(phi) * u + std::sin(phi) * w);
      model.template_vertices.row(v) = x.transpose();
      surface_bone[static_cast<std::size_t>(v)] = child;
      radial.row(v) = ((x - a) - (x - a).dot(dir) * dir).transpose();
    }
  }

  // Smooth skin weights for surface vertices from distance to each joint's
  // bone segments, truncated to the four closest joints.
  const int first_surface = cluster * j_count;
  std::vector<std::vector<int>> kids(j_count);
  for (int j = 1; j < j_count; ++j) kids[skeleton.parent(j)].push_back(j);
  for (int s = first_surface; s < n; ++s) {
    const Eigen::Vector3d x = model.template_vertices.row(s).transpose();
    Eigen::VectorXd dist2(j_count);
    for (int j = 0; j < j_count; ++j) {
      const Eigen::Vector3d a = joints.row(j).transpose();
      double d = (x - a).norm();
      for (int c : kids[j]) d = std::min(d, segment_distance(x, a, joints.row(c).transpose()));
      dist2[j] = d * d;
    }
    std::vector<int> order(j_count);
    for (int j = 0; j < j_count; ++j) order[j] = j;
    std::partial_sort(order.begin(), order.begin() + 4, order.end(),
                      [&](int l, int r) { return dist2[l] < dist2[r] || (dist2[l] == dist2[r] && l < r); });
    const double nearest = dist2[order[0]];
    double total = 0.0;
    for (int k = 0; k < 4; ++k) {
      const double wk = std::exp(-(dist2[order[k]] - nearest) / (2.0 * kSkinSigma * kSkinSigma));
      model.skin_weights(s, order[k]) = wk;
      total += wk;
    }
    model.skin_weights.row(s) /= total;
  }

  // Shape basis: random bone-length scalings (joints move along their bones,
  // pelvis fixed) plus random limb girth on the surface, blended into vertex
  // fields by the skin weights, then orthonormalized and scaled.
  RowMatrixXd bone_scale(j_count, kShapeDim);
  RowMatrixXd girth(j_count, kShapeDim);
  for (Eigen::Index i = 0; i < bone_scale.size(); ++i) bone_scale.data()[i] = gauss(rng);
  for (Eigen::Index i = 0; i < girth.size(); ++i) girth.data()[i] = gauss(rng);
  RowMatrixXd joint_fields = RowMatrixXd::Zero(3 * j_count, kShapeDim);
  for (int j = 1; j < j_count; ++j) {
    const int p = skeleton.parent(j);
    const Eigen::Vector3d bone = (joints.row(j) - joints.row(p)).transpose();
    for (int axis = 0; axis < 3; ++axis) {
      joint_fields.row(3 * j + axis) = joint_fields.row(3 * p + axis) + bone[axis] * bone_scale.row(j);
    }
  }
  Eigen::MatrixXd raw(3 * n, kShapeDim);
  for (int s = 0; s < n; ++s) {
    for (int axis = 0; axis < 3; ++axis) {
      Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(kShapeDim);
      for (int j = 0; j < j_count; ++j) {
        const double wj = model.skin_weights(s, j);
        if (wj != 0.0) row += wj * joint_fields.row(3 * j + axis);
      }
      const int bone = surface_bone[static_cast<std::size_t>(s)];
      if (bone >= 0) row += 0.5 * radial(s, axis) * girth.row(bone);
      raw.row(3 * s + axis) = row;
    }
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(3 * n, kShapeDim);
  model.shape_basis = q * (0.003 * std::sqrt(3.0 * n));

  model.faces.resize(static_cast<Eigen::Index>(faces.size()), 3);
  for (std::size_t f = 0; f < faces.size(); ++f) model.faces.row(static_cast<Eigen::Index>(f)) = faces[f].transpose();
  return model;
}

}  // namespace kinfit
