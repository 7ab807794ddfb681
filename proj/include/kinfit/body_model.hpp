#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "kinfit/kinematics.hpp"
#include "kinfit/skeleton.hpp"
#include "kinfit/types.hpp"

namespace kinfit {

using Faces = Eigen::Matrix<int, Eigen::Dynamic, 3, Eigen::RowMajor>;

// Parametric body model M(pose, beta). Per-vertex blend data uses the row
// index 3 * vertex + axis.
struct TemplateModel {
  std::vector<std::string> joint_names;
  std::vector<int> parents;
  Points3d template_vertices;         // N x 3
  RowMatrixXd shape_basis;            // 3N x 10
  RowMatrixXd pose_corrective_basis;  // 3N x 9(J-1), or empty
  RowMatrixXd skin_weights;           // N x J
  RowMatrixXd joint_regressor;        // J x N
  Faces faces;

  int vertex_count() const { return static_cast<int>(template_vertices.rows()); }
  int joint_count() const { return static_cast<int>(parents.size()); }
  int shape_dim() const { return static_cast<int>(shape_basis.cols()); }
  bool has_pose_correctives() const { return pose_corrective_basis.size() > 0; }
};

struct PosedMesh {
  Points3d vertices;
  Points3d joints;
};

// Throws ValidationError naming the offending field and row.
void validate(const TemplateModel& model);

KinematicTree model_tree(const TemplateModel& model);

Points3d shape_deform(const TemplateModel& model, const ShapeParams& beta);
Points3d regress_rest_joints(const TemplateModel& model, const Points3d& shaped_vertices);

// Linear blend skinning of `shaped_vertices`. The transforms must have been
// built on the rest joints regressed from the same vertices.
PosedMesh skin(const TemplateModel& model, const Points3d& shaped_vertices,
               const JointTransformsd& transforms);

PosedMesh mesh_function(const TemplateModel& model, const PoseParams& pose, const ShapeParams& beta);

// Procedural humanoid model on the standard 24-joint skeleton. Every joint
// owns a small cluster of rigidly bound vertices that its regressor row
// averages, so regressed posed joints coincide with forward kinematics.
TemplateModel synth_model(std::uint64_t seed, int vertex_count = 512);

// Joint-level reduction of a body model: all the fitting code needs.
struct JointModel {
  KinematicTree tree;        // rest joints at beta = 0
  RowMatrixXd shape_basis;   // 3J x B, row 3 * joint + axis

  int shape_dim() const { return static_cast<int>(shape_basis.cols()); }
  Points3d rest_joints(const ShapeParams& beta) const;
};

JointModel make_joint_model(const TemplateModel& model);

}  // namespace kinfit
