#include "kinfit/model_io.hpp"

#include <cstdio>

#include "kinfit/codec.hpp"
#include "kinfit/error.hpp"

namespace kinfit {
namespace {

template <typename Matrix>
std::string encode(const Matrix& m) {
  return codec::encode_f64(std::span<const double>(m.data(), static_cast<std::size_t>(m.size())));
}

void expect_rank(const std::vector<long long>& shape, std::size_t rank, const std::string& field) {
  if (shape.size() != rank) {
    throw ParseError("field 'shapes." + field + "': expected rank " + std::to_string(rank));
  }
}

RowMatrixXd read_matrix(const nlohmann::json& doc, const std::string& field, Eigen::Index rows,
                        Eigen::Index cols) {
  if (rows < 0 || cols < 0) throw ParseError("field '" + field + "': negative dimension");
  const std::vector<double> values =
      codec::read_array(doc, field, static_cast<std::size_t>(rows * cols));
  return Eigen::Map<const RowMatrixXd>(values.data(), rows, cols);
}

}  // namespace

nlohmann::json model_to_json(const TemplateModel& model) {
  const long long n = model.vertex_count();
  const long long j = model.joint_count();
  nlohmann::json doc;
  doc["version"] = kModelFileVersion;
  doc["units"] = "vertices and joints in meters; pose angles in radians";
  doc["encoding"] = "base64 little-endian float64, row-major";
  doc["joint_names"] = model.joint_names;
  doc["parents"] = model.parents;
  nlohmann::json shapes;
  shapes["template_vertices"] = {n, 3};
  shapes["shape_basis"] = {n, 3, model.shape_basis.cols()};
  shapes["skin_weights"] = {n, j};
  shapes["joint_regressor"] = {j, n};
  shapes["faces"] = {model.faces.rows(), 3};
  doc["template_vertices"] = encode(model.template_vertices);
  doc["shape_basis"] = encode(model.shape_basis);
  doc["skin_weights"] = encode(model.skin_weights);
  doc["joint_regressor"] = encode(model.joint_regressor);
  const Eigen::Matrix<double, Eigen::Dynamic, 3, Eigen::RowMajor> faces = model.faces.cast<double>();
  doc["faces"] = encode(faces);
  if (model.has_pose_correctives()) {
    shapes["pose_corrective_basis"] = {n, 3, model.pose_corrective_basis.cols()};
    doc["pose_corrective_basis"] = encode(model.pose_corrective_basis);
  }
  doc["shapes"] = shapes;
  return doc;
}

TemplateModel model_from_json(const nlohmann::json& doc) {
  const nlohmann::json& version = codec::require(doc, "version");
  if (!version.is_number_integer() || version.get<int>() != kModelFileVersion) {
    throw ParseError("field 'version': unsupported model file version");
  }
  TemplateModel model;
  try {
    model.joint_names = codec::require(doc, "joint_names").get<std::vector<std::string>>();
    model.parents = codec::require(doc, "parents").get<std::vector<int>>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("joint table: ") + e.what());
  }

  const auto vshape = codec::read_shape(doc, "template_vertices");
  expect_rank(vshape, 2, "template_vertices");
  if (vshape[1] != 3) throw ParseError("field 'shapes.template_vertices': expected [N,3]");
  const Eigen::Index n = vshape[0];
  const Eigen::Index j = static_cast<Eigen::Index>(model.parents.size());
  model.template_vertices = read_matrix(doc, "template_vertices", n, 3);

  const auto sshape = codec::read_shape(doc, "shape_basis");
  expect_rank(sshape, 3, "shape_basis");
  if (sshape[0] != n || sshape[1] != 3) throw ParseError("field 'shapes.shape_basis': expected [N,3,B]");
  model.shape_basis = read_matrix(doc, "shape_basis", 3 * n, sshape[2]);

  const auto wshape = codec::read_shape(doc, "skin_weights");
  if (wshape != std::vector<long long>{n, j}) throw ParseError("field 'shapes.skin_weights': expected [N,J]");
  model.skin_weights = read_matrix(doc, "skin_weights", n, j);

  const auto rshape = codec::read_shape(doc, "joint_regressor");
  if (rshape != std::vector<long long>{j, n}) throw ParseError("field 'shapes.joint_regressor': expected [J,N]");
  model.joint_regressor = read_matrix(doc, "joint_regressor", j, n);

  const auto fshape = codec::read_shape(doc, "faces");
  expect_rank(fshape, 2, "faces");
  if (fshape[1] != 3) throw ParseError("field 'shapes.faces': expected [F,3]");
  const RowMatrixXd faces = read_matrix(doc, "faces", fshape[0], 3);
  model.faces = faces.cast<int>();
  if (faces.size() > 0 && (model.faces.cast<double>() - faces).cwiseAbs().maxCoeff() > 0.0) {
    throw ParseError("field 'faces': indices must be integers");
  }

  if (doc.contains("pose_corrective_basis")) {
    const auto pshape = codec::read_shape(doc, "pose_corrective_basis");
    expect_rank(pshape, 3, "pose_corrective_basis");
    if (pshape[0] != n || pshape[1] != 3) {
      throw ParseError("field 'shapes.pose_corrective_basis': expected [N,3,P]");
    }
    model.pose_corrective_basis = read_matrix(doc, "pose_corrective_basis", 3 * n, pshape[2]);
  }
  validate(model);
  return model;
}

void save_model(const TemplateModel& model, const std::string& path) {
  codec::write_file(path, model_to_json(model).dump(2) + "\n");
}

TemplateModel load_model(const std::string& path) {
  const nlohmann::json doc = codec::parse_file(path);
  try {
    return model_from_json(doc);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string obj_string(const Points3d& vertices, const Faces& faces) {
  std::string out;
  char line[128];
  for (Eigen::Index v = 0; v < vertices.rows(); ++v) {
    std::snprintf(line, sizeof(line), "v %.9g %.9g %.9g\n", vertices(v, 0), vertices(v, 1),
                  vertices(v, 2));
    out += line;
  }
  for (Eigen::Index f = 0; f < faces.rows(); ++f) {
    std::snprintf(line, sizeof(line), "f %d %d %d\n", faces(f, 0) + 1, faces(f, 1) + 1,
                  faces(f, 2) + 1);
    out += line;
  }
  return out;
}

void write_obj(const std::string& path, const Points3d& vertices, const Faces& faces) {
  codec::write_file(path, obj_string(vertices, faces));
}

}  // namespace kinfit
