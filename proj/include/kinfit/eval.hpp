#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>
#include "json.hpp"

#include "kinfit/cases.hpp"
#include "kinfit/chains.hpp"
#include "kinfit/solver.hpp"
#include "kinfit/types.hpp"

namespace kinfit {

enum class OcclusionPattern { Bar, Circle, Rectangle };

std::string to_string(OcclusionPattern pattern);
OcclusionPattern parse_occlusion_pattern(const std::string& text);

inline constexpr int kMinDoc = 1;
inline constexpr int kMaxDoc = 5;

// Footprint centered on the anchor joint's 2D location. Size comes from
// doc_size(pattern, doc); bar_angle and rect_aspect only shape it.
struct Occluder {
  OcclusionPattern pattern = OcclusionPattern::Circle;
  int doc = 1;
  int anchor_joint = 0;
  double bar_angle = 0.0;    // radians, direction of the bar's long axis
  double rect_aspect = 2.0;  // width / height, axis aligned
};

// Only the field matching the pattern is nonzero. px and px^2.
struct DocSize {
  double width = 0.0;
  double radius = 0.0;
  double area = 0.0;
};

DocSize doc_size(OcclusionPattern pattern, int doc);

// Bars run across the whole canvas.
double bar_length();

bool occluder_contains(const Occluder& occluder, const Eigen::Vector2d& center, const Eigen::Vector2d& point);

struct OcclusionResult {
  Mask vis2d;
  bool anchor_visible = true;  // false: nothing was masked
};

OcclusionResult apply_occlusion(const Points2d& x2d, const Mask& vis2d, const Occluder& occluder);

// Mean Euclidean joint distance, no alignment.
double mpjpe(const Points3d& predicted, const Points3d& truth);
// Percentage of joints within threshold_px.
double pck(const Points2d& predicted, const Points2d& truth, double threshold_px);

struct SweepConfig {
  std::vector<OcclusionPattern> patterns{OcclusionPattern::Bar, OcclusionPattern::Circle,
                                         OcclusionPattern::Rectangle};
  std::vector<int> docs{1, 2, 3, 4, 5};
  std::vector<SolverMode> modes{SolverMode::Hierarchical};
  std::vector<int> anchors;  // empty: every joint
  double rect_aspect = 2.0;
  double pck_threshold = 10.0;  // px
  std::uint64_t seed = 0;       // bar angles
  int workers = 0;              // 0: hardware concurrency
  SolverConfig solver;

  void validate() const;
};

// One case under one condition. Unoccluded baselines have pattern "none",
// doc 0 and anchor -1.
struct SweepRow {
  int case_index = 0;
  std::uint64_t case_seed = 0;
  std::string pattern;
  int doc = 0;
  int anchor = -1;
  double bar_angle = 0.0;
  std::string mode;
  int occluded = 0;  // joints masked by the occluder
  bool anchor_visible = true;
  bool failed = false;
  std::string error;
  double mpjpe = 0.0;           // m
  double occluded_mpjpe = 0.0;  // m, over the masked joints; 0 when none
  double pck = 0.0;
  int accepted_steps = 0;
  bool monotone = true;  // trace_monotone on the fit's trace
  Eigen::VectorXd joint_errors;  // m
};

struct CurvePoint {
  std::string mode;
  std::string pattern;
  int doc = 0;
  int count = 0;
  double median_mm = 0.0;
  double mean_mm = 0.0;
};

// Standard (unoccluded) versus occluded rows per mode.
struct ModeSummary {
  std::string mode;
  int standard_count = 0;
  int occluded_count = 0;
  int failed_count = 0;
  double standard_median_mm = 0.0;
  double occluded_median_mm = 0.0;
  double standard_mean_mm = 0.0;
  double occluded_mean_mm = 0.0;
  double mean_pck = 0.0;
  Eigen::VectorXd joint_mean_mm;  // over every successful row
};

struct EvalReport {
  SweepConfig config;
  std::vector<std::uint64_t> case_seeds;
  std::vector<SweepRow> rows;
  std::vector<CurvePoint> curves;
  std::vector<ModeSummary> modes;
  int solves = 0;  // distinct fits after memoization
};

// Aggregates are recomputed from rows only; failed rows are counted, not used.
EvalReport summarize(const SweepConfig& config, std::vector<SweepRow> rows);

// Cases need ground truth. Occluded joints lose their 2D and 3D observations.
EvalReport run_occlusion_sweep(const JointModel& model, const ChainSet& chains,
                               const std::vector<CaseFile>& cases, const SweepConfig& config,
                               const PosePrior* prior = nullptr);

const CurvePoint* find_curve(const EvalReport& report, const std::string& mode, const std::string& pattern,
                             int doc);
const ModeSummary* find_mode(const EvalReport& report, const std::string& mode);

double median(std::vector<double> values);

std::string report_csv(const EvalReport& report);
nlohmann::json report_json(const EvalReport& report);

}  // namespace kinfit
