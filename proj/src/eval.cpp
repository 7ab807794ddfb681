#include "kinfit/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "kinfit/error.hpp"
#include "kinfit/kinematics.hpp"

namespace kinfit {

std::string to_string(OcclusionPattern pattern) {
  switch (pattern) {
    case OcclusionPattern::Bar:
      return "bar";
    case OcclusionPattern::Circle:
      return "circle";
    case OcclusionPattern::Rectangle:
      return "rectangle";
  }
  return "unknown";
}

OcclusionPattern parse_occlusion_pattern(const std::string& text) {
  if (text == "bar") return OcclusionPattern::Bar;
  if (text == "circle") return OcclusionPattern::Circle;
  if (text == "rectangle" || text == "rect") return OcclusionPattern::Rectangle;
  throw InvalidArgument("unknown occlusion pattern '" + text + "' (bar, circle, rectangle)");
}

DocSize doc_size(OcclusionPattern pattern, int doc) {
  if (doc < kMinDoc || doc > kMaxDoc) {
    throw InvalidArgument("doc_size: degree of occlusion " + std::to_string(doc) + " outside [1, 5]");
  }
  DocSize size;
  switch (pattern) {
    case OcclusionPattern::Bar:
      size.width = 10.0 * doc;
      break;
    case OcclusionPattern::Circle:
      size.radius = 10.0 * doc;
      break;
    case OcclusionPattern::Rectangle:
      size.area = 3000.0 * doc;
      break;
  }
  return size;
}

double bar_length() { return std::sqrt(2.0) * kCanvasSize; }

bool occluder_contains(const Occluder& occluder, const Eigen::Vector2d& center, const Eigen::Vector2d& point) {
  const DocSize size = doc_size(occluder.pattern, occluder.doc);
  const Eigen::Vector2d d = point - center;
  switch (occluder.pattern) {
    case OcclusionPattern::Bar: {
      const Eigen::Vector2d along(std::cos(occluder.bar_angle), std::sin(occluder.bar_angle));
      const double a = d.dot(along);
      const double across = d.x() * along.y() - d.y() * along.x();
      return std::abs(across) <= 0.5 * size.width && std::abs(a) <= 0.5 * bar_length();
    }
    case OcclusionPattern::Circle:
      return d.norm() <= size.radius;
    case OcclusionPattern::Rectangle: {
      if (!(occluder.rect_aspect > 0.0)) throw InvalidArgument("occluder: rect_aspect must be > 0");
      const double w = std::sqrt(size.area * occluder.rect_aspect);
      const double h = size.area / w;
      return std::abs(d.x()) <= 0.5 * w && std::abs(d.y()) <= 0.5 * h;
    }
  }
  return false;
}

OcclusionResult apply_occlusion(const Points2d& x2d, const Mask& vis2d, const Occluder& occluder) {
  if (x2d.rows() != vis2d.size()) throw InvalidArgument("apply_occlusion: size mismatch");
  if (occluder.anchor_joint < 0 || occluder.anchor_joint >= x2d.rows()) {
    throw InvalidArgument("apply_occlusion: anchor joint out of range");
  }
  doc_size(occluder.pattern, occluder.doc);
  OcclusionResult out{vis2d, true};
  if (!vis2d[occluder.anchor_joint]) {
    out.anchor_visible = false;
    return out;
  }
  const Eigen::Vector2d center = x2d.row(occluder.anchor_joint).transpose();
  for (Eigen::Index j = 0; j < x2d.rows(); ++j) {
    if (out.vis2d[j] && occluder_contains(occluder, center, x2d.row(j).transpose())) out.vis2d[j] = false;
  }
  return out;
}

double mpjpe(const Points3d& predicted, const Points3d& truth) {
  if (predicted.rows() != truth.rows()) throw InvalidArgument("mpjpe: joint count mismatch");
  if (predicted.rows() == 0) throw InvalidArgument("mpjpe: no joints");
  return (predicted - truth).rowwise().norm().mean();
}

double pck(const Points2d& predicted, const Points2d& truth, double threshold_px) {
  if (predicted.rows() != truth.rows()) throw InvalidArgument("pck: joint count mismatch");
  if (!(threshold_px > 0.0)) throw InvalidArgument("pck: threshold must be > 0");
  if (predicted.rows() == 0) return 0.0;
  const auto within = ((predicted - truth).rowwise().norm().array() <= threshold_px).count();
  return 100.0 * static_cast<double>(within) / static_cast<double>(predicted.rows());
}

void SweepConfig::validate() const {
  for (int d : docs) doc_size(OcclusionPattern::Circle, d);
  if (modes.empty()) throw InvalidArgument("sweep: no solver modes");
  if (!(rect_aspect > 0.0)) throw InvalidArgument("sweep: rect_aspect must be > 0");
  if (!(pck_threshold > 0.0)) throw InvalidArgument("sweep: pck_threshold must be > 0");
  if (workers < 0) throw InvalidArgument("sweep: workers must be >= 0");
  solver.validate();
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<long>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  return 0.5 * (upper + *std::max_element(values.begin(), values.begin() + static_cast<long>(mid)));
}

namespace {

double mean(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

std::string mask_key(const Mask& mask) {
  std::string key(static_cast<std::size_t>(mask.size()), '0');
  for (Eigen::Index j = 0; j < mask.size(); ++j) {
    if (mask[j]) key[static_cast<std::size_t>(j)] = '1';
  }
  return key;
}

struct Job {
  int case_index = 0;
  int mode_index = 0;
  Mask hidden;  // joints removed from the observations
};

struct JobResult {
  bool failed = false;
  std::string error;
  Points3d joints;
  Points2d joints2d;
  int accepted_steps = 0;
  bool monotone = true;
};

JobResult solve_job(const JointModel& model, const ChainSet& chains, const CaseFile& file, const Job& job,
                    const SweepConfig& config, const PosePrior* prior) {
  Observations obs = file.obs;
  obs.vis2d = obs.vis2d && !job.hidden;
  obs.vis3d = obs.vis3d && !job.hidden;
  SolverConfig solver = config.solver;
  solver.mode = config.modes[static_cast<std::size_t>(job.mode_index)];
  JobResult out;
  try {
    const SolverState state = outer_solve(model, chains, obs, solver, prior);
    out.joints = predicted_joints(model, state);
    out.joints2d = project(out.joints, state.camera);
    out.accepted_steps = state.accepted_steps();
    out.monotone = trace_monotone(state.trace);
  } catch (const Error& e) {
    out.failed = true;
    out.error = e.what();
  }
  return out;
}

template <typename Fn>
void parallel_for(int count, int workers, Fn fn) {
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, std::max(count, 1));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
  }
}

}  // namespace

EvalReport summarize(const SweepConfig& config, std::vector<SweepRow> rows) {
  EvalReport report;
  report.config = config;
  report.rows = std::move(rows);

  std::vector<std::string> modes;
  for (SolverMode m : config.modes) modes.push_back(to_string(m));
  for (const SweepRow& row : report.rows) {
    if (std::find(modes.begin(), modes.end(), row.mode) == modes.end()) modes.push_back(row.mode);
  }

  for (const std::string& mode : modes) {
    for (OcclusionPattern p : config.patterns) {
      for (int doc : config.docs) {
        std::vector<double> values;
        for (const SweepRow& row : report.rows) {
          if (!row.failed && row.mode == mode && row.pattern == to_string(p) && row.doc == doc) {
            values.push_back(1000.0 * row.mpjpe);
          }
        }
        report.curves.push_back({mode, to_string(p), doc, static_cast<int>(values.size()), median(values),
                                 mean(values)});
      }
    }

    ModeSummary summary;
    summary.mode = mode;
    std::vector<double> standard, occluded, pcks;
    Eigen::VectorXd joint_sum;
    int joint_rows = 0;
    for (const SweepRow& row : report.rows) {
      if (row.mode != mode) continue;
      if (row.failed) {
        ++summary.failed_count;
        continue;
      }
      if (row.pattern == "none") standard.push_back(1000.0 * row.mpjpe);
      if (row.occluded > 0) occluded.push_back(1000.0 * row.mpjpe);
      pcks.push_back(row.pck);
      if (joint_sum.size() == 0) joint_sum = Eigen::VectorXd::Zero(row.joint_errors.size());
      if (row.joint_errors.size() == joint_sum.size()) {
        joint_sum += row.joint_errors;
        ++joint_rows;
      }
    }
    summary.standard_count = static_cast<int>(standard.size());
    summary.occluded_count = static_cast<int>(occluded.size());
    summary.standard_median_mm = median(standard);
    summary.occluded_median_mm = median(occluded);
    summary.standard_mean_mm = mean(standard);
    summary.occluded_mean_mm = mean(occluded);
    summary.mean_pck = mean(pcks);
    summary.joint_mean_mm = joint_rows > 0 ? Eigen::VectorXd(1000.0 * joint_sum / joint_rows) : Eigen::VectorXd();
    report.modes.push_back(std::move(summary));
  }
  return report;
}

EvalReport run_occlusion_sweep(const JointModel& model, const ChainSet& chains, const std::vector<CaseFile>& cases,
                               const SweepConfig& config, const PosePrior* prior) {
  config.validate();
  const int n = model.tree.joint_count();
  std::vector<int> anchors = config.anchors;
  if (anchors.empty()) {
    for (int j = 0; j < n; ++j) anchors.push_back(j);
  }
  for (int a : anchors) {
    if (a < 0 || a >= n) throw InvalidArgument("sweep: anchor joint " + std::to_string(a) + " out of range");
  }
  for (std::size_t c = 0; c < cases.size(); ++c) {
    if (!cases[c].truth) throw InvalidArgument("sweep: case " + std::to_string(c) + " has no ground truth");
    validate(cases[c].obs, n);
  }

  // Conditions that hide the same joints share one fit.
  std::vector<Job> jobs;
  std::map<std::tuple<int, int, std::string>, int> job_index;
  auto job_for = [&](int c, int m, const Mask& hidden) {
    const auto key = std::make_tuple(c, m, mask_key(hidden));
    const auto it = job_index.find(key);
    if (it != job_index.end()) return it->second;
    const int id = static_cast<int>(jobs.size());
    jobs.push_back({c, m, hidden});
    job_index.emplace(key, id);
    return id;
  };

  std::vector<SweepRow> rows;
  std::vector<int> row_job;
  std::vector<Mask> row_hidden;
  for (int c = 0; c < static_cast<int>(cases.size()); ++c) {
    const CaseFile& file = cases[static_cast<std::size_t>(c)];
    std::mt19937_64 rng(config.seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(c + 1)));
    const double bar_angle = std::uniform_real_distribution<double>(0.0, std::numbers::pi)(rng);
    for (int m = 0; m < static_cast<int>(config.modes.size()); ++m) {
      SweepRow base;
      base.case_index = c;
      base.case_seed = file.seed;
      base.mode = to_string(config.modes[static_cast<std::size_t>(m)]);
      SweepRow row = base;
      row.pattern = "none";
      const Mask none = Mask::Constant(n, false);
      rows.push_back(row);
      row_job.push_back(job_for(c, m, none));
      row_hidden.push_back(none);
      for (OcclusionPattern p : config.patterns) {
        for (int doc : config.docs) {
          for (int a : anchors) {
            const Occluder occluder{p, doc, a, bar_angle, config.rect_aspect};
            const OcclusionResult occ = apply_occlusion(file.obs.joints2d, file.obs.vis2d, occluder);
            const Mask hidden = file.obs.vis2d && !occ.vis2d;
            row = base;
            row.pattern = to_string(p);
            row.doc = doc;
            row.anchor = a;
            row.bar_angle = p == OcclusionPattern::Bar ? bar_angle : 0.0;
            row.anchor_visible = occ.anchor_visible;
            row.occluded = static_cast<int>(hidden.count());
            rows.push_back(row);
            row_job.push_back(job_for(c, m, hidden));
            row_hidden.push_back(hidden);
          }
        }
      }
    }
  }

  std::vector<JobResult> results(jobs.size());
  parallel_for(static_cast<int>(jobs.size()), config.workers, [&](int i) {
    const Job& job = jobs[static_cast<std::size_t>(i)];
    results[static_cast<std::size_t>(i)] =
        solve_job(model, chains, cases[static_cast<std::size_t>(job.case_index)], job, config, prior);
  });

  std::vector<Points3d> truth3d;
  std::vector<Points2d> truth2d;
  for (const CaseFile& file : cases) {
    SolverState gt;
    gt.pose = file.truth->pose;
    gt.shape = file.truth->shape;
    gt.camera = file.truth->camera;
    truth3d.push_back(predicted_joints(model, gt));
    truth2d.push_back(project(truth3d.back(), gt.camera));
  }

  for (std::size_t r = 0; r < rows.size(); ++r) {
    SweepRow& row = rows[r];
    const JobResult& res = results[static_cast<std::size_t>(row_job[r])];
    if (res.failed) {
      row.failed = true;
      row.error = res.error;
      continue;
    }
    const auto c = static_cast<std::size_t>(row.case_index);
    row.joint_errors = (res.joints - truth3d[c]).rowwise().norm();
    row.mpjpe = mpjpe(res.joints, truth3d[c]);
    const Mask& hidden = row_hidden[r];
    if (row.occluded > 0) {
      double sum = 0.0;
      for (int j = 0; j < n; ++j) {
        if (hidden[j]) sum += row.joint_errors[j];
      }
      row.occluded_mpjpe = sum / row.occluded;
    }
    row.pck = pck(res.joints2d, truth2d[c], config.pck_threshold);
    row.accepted_steps = res.accepted_steps;
    row.monotone = res.monotone;
  }

  EvalReport report = summarize(config, std::move(rows));
  for (const CaseFile& file : cases) report.case_seeds.push_back(file.seed);
  report.solves = static_cast<int>(jobs.size());
  return report;
}

const CurvePoint* find_curve(const EvalReport& report, const std::string& mode, const std::string& pattern,
                             int doc) {
  for (const CurvePoint& p : report.curves) {
    if (p.mode == mode && p.pattern == pattern && p.doc == doc) return &p;
  }
  return nullptr;
}

const ModeSummary* find_mode(const EvalReport& report, const std::string& mode) {
  for (const ModeSummary& m : report.modes) {
    if (m.mode == mode) return &m;
  }
  return nullptr;
}

namespace {

const char* kOcclusionNote =
    "occlusion is geometric: joints whose 2D location falls inside the occluder footprint lose their 2D and 3D "
    "observations";

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string report_csv(const EvalReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "# kinfit occlusion sweep; " << kOcclusionNote << "\n";
  out << "# canvas " << kCanvasSize << "x" << kCanvasSize << " px; lengths m and mm, angles radians, image pixels\n";
  out << "# seed " << report.config.seed << "; config " << solver_config_to_json(report.config.solver).dump() << "\n";
  out << "case,case_seed,mode,pattern,doc,anchor,bar_angle,occluded,anchor_visible,failed,mpjpe_m,mpjpe_mm,"
         "occluded_mpjpe_mm,pck,accepted_steps,monotone,error\n";
  for (const SweepRow& row : report.rows) {
    out << row.case_index << ',' << row.case_seed << ',' << row.mode << ',' << row.pattern << ',' << row.doc << ','
        << row.anchor << ',' << row.bar_angle << ',' << row.occluded << ',' << (row.anchor_visible ? 1 : 0) << ','
        << (row.failed ? 1 : 0) << ',' << row.mpjpe << ',' << 1000.0 * row.mpjpe << ','
        << 1000.0 * row.occluded_mpjpe << ',' << row.pck << ',' << row.accepted_steps << ','
        << (row.monotone ? 1 : 0) << ',' << csv_field(row.error) << '\n';
  }
  return out.str();
}

nlohmann::json report_json(const EvalReport& report) {
  const SweepConfig& cfg = report.config;
  nlohmann::json doc;
  doc["format"] = "kinfit-sweep";
  doc["version"] = 1;
  doc["units"] = units_json();
  doc["note"] = kOcclusionNote;
  doc["canvas_px"] = {kCanvasSize, kCanvasSize};
  nlohmann::json sweep;
  std::vector<std::string> patterns, modes;
  for (OcclusionPattern p : cfg.patterns) patterns.push_back(to_string(p));
  for (SolverMode m : cfg.modes) modes.push_back(to_string(m));
  sweep["patterns"] = patterns;
  sweep["docs"] = cfg.docs;
  sweep["modes"] = modes;
  sweep["anchors"] = cfg.anchors;
  sweep["rect_aspect"] = cfg.rect_aspect;
  sweep["pck_threshold_px"] = cfg.pck_threshold;
  sweep["seed"] = cfg.seed;
  doc["sweep"] = std::move(sweep);
  doc["solver"] = solver_config_to_json(cfg.solver);
  doc["case_seeds"] = report.case_seeds;
  doc["rows"] = report.rows.size();
  doc["solves"] = report.solves;

  nlohmann::json curves = nlohmann::json::array();
  for (const CurvePoint& p : report.curves) {
    curves.push_back({{"mode", p.mode},
                      {"pattern", p.pattern},
                      {"doc", p.doc},
                      {"count", p.count},
                      {"median_mm", p.median_mm},
                      {"mean_mm", p.mean_mm}});
  }
  doc["doc_curves"] = std::move(curves);

  nlohmann::json table = nlohmann::json::array();
  for (const ModeSummary& m : report.modes) {
    table.push_back({{"mode", m.mode},
                     {"standard_count", m.standard_count},
                     {"occluded_count", m.occluded_count},
                     {"failed_count", m.failed_count},
                     {"standard_median_mm", m.standard_median_mm},
                     {"occluded_median_mm", m.occluded_median_mm},
                     {"standard_mean_mm", m.standard_mean_mm},
                     {"occluded_mean_mm", m.occluded_mean_mm},
                     {"mean_pck", m.mean_pck},
                     {"joint_mean_mm", std::vector<double>(m.joint_mean_mm.data(),
                                                           m.joint_mean_mm.data() + m.joint_mean_mm.size())}});
  }
  doc["modes"] = std::move(table);
  return doc;
}

}  // namespace kinfit
