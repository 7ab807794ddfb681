#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "kinfit/eval.hpp"
#include "kinfit/objectives.hpp"
#include "kinfit/solver.hpp"

namespace kinfit {

struct PriorSettings {
  bool enabled = true;
  std::string file;  // empty: fit to the plausible-pose sampler
  int latent_dim = 32;
  int samples = 5000;
  std::uint64_t seed = 0;
};

// Case generation for sweeps that are not given a cases directory.
struct SuiteSettings {
  int cases = 50;
  std::uint64_t first_seed = 1000;
  double noise2d = 0.0;
};

struct RunConfig {
  SolverConfig solver;
  PriorSettings prior;
  SweepConfig sweep;
  SuiteSettings suite;

  void validate() const;
};

// INI text with [solver], [weights], [prior] and [sweep] sections. Missing
// keys keep their defaults; unknown sections or keys are rejected.
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");
RunConfig load_config(const std::string& path);
std::string config_to_ini(const RunConfig& config);
nlohmann::json config_to_json(const RunConfig& config);

std::optional<PosePrior> make_prior(const PriorSettings& settings);

// "1,3,5" or "1..5".
std::vector<int> parse_int_list(const std::string& text);
std::vector<std::string> split_list(const std::string& text);

}  // namespace kinfit
