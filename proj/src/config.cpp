#include "kinfit/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "kinfit/error.hpp"

namespace kinfit {

namespace pt = boost::property_tree;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

namespace {

int to_int(const std::string& text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) throw InvalidArgument("not an integer: '" + text + "'");
  return value;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const std::string& item : split_list(text)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(to_int(item));
      continue;
    }
    const int lo = to_int(item.substr(0, dots));
    const int hi = to_int(item.substr(dots + 2));
    if (hi < lo) throw InvalidArgument("empty range '" + item + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

void RunConfig::validate() const {
  solver.validate();
  SweepConfig s = sweep;
  s.solver = solver;
  s.validate();
  if (prior.latent_dim < 1) throw InvalidArgument("prior.latent_dim must be >= 1");
  if (prior.samples <= prior.latent_dim) throw InvalidArgument("prior.samples must exceed prior.latent_dim");
  if (suite.cases < 1) throw InvalidArgument("sweep.cases must be >= 1");
  if (!(suite.noise2d >= 0.0)) throw InvalidArgument("sweep.noise2d must be >= 0");
}

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"solver",
       {"outer_iters", "inner_iters", "step_scale", "damping", "max_halvings", "min_step", "l1_smoothing_3d",
        "l1_smoothing_2d", "mode"}},
      {"weights", {"smpl", "joints3d", "joints2d", "prior"}},
      {"prior", {"enabled", "file", "latent_dim", "samples", "seed"}},
      {"sweep",
       {"patterns", "docs", "modes", "anchors", "rect_aspect", "pck_threshold", "seed", "workers", "cases",
        "first_seed", "noise2d"}},
  };
  return keys;
}

template <typename T>
void read(const pt::ptree& section, const std::string& key, T& value, const std::string& where) {
  const auto text = section.get_optional<std::string>(key);
  if (!text) return;
  try {
    if constexpr (std::is_same_v<T, std::string>) {
      value = *text;
    } else if constexpr (std::is_same_v<T, bool>) {
      if (*text == "true" || *text == "1" || *text == "yes") {
        value = true;
      } else if (*text == "false" || *text == "0" || *text == "no") {
        value = false;
      } else {
        throw InvalidArgument("not a boolean");
      }
    } else {
      const auto parsed = section.get_optional<T>(key);
      if (!parsed) throw InvalidArgument("wrong type");
      value = *parsed;
    }
  } catch (const InvalidArgument& e) {
    throw ParseError(where + ": key '" + key + "' = '" + *text + "': " + e.what());
  }
}

}  // namespace

RunConfig parse_config(std::istream& in, const std::string& source) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError(source + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [name, section] : tree) {
    const auto it = known_keys().find(name);
    if (it == known_keys().end()) throw ParseError(source + ": unknown section [" + name + "]");
    if (section.empty() && !section.data().empty()) throw ParseError(source + ": key '" + name + "' outside a section");
    for (const auto& [key, value] : section) {
      if (!it->second.count(key)) throw ParseError(source + ": unknown key '" + key + "' in [" + name + "]");
    }
  }

  RunConfig cfg;
  const pt::ptree empty;
  const auto section = [&](const std::string& name) -> const pt::ptree& {
    const auto child = tree.get_child_optional(name);
    return child ? *child : empty;
  };

  const pt::ptree& solver = section("solver");
  const std::string sw = source + " [solver]";
  read(solver, "outer_iters", cfg.solver.outer_iters, sw);
  read(solver, "inner_iters", cfg.solver.inner_iters, sw);
  read(solver, "step_scale", cfg.solver.step_scale, sw);
  read(solver, "damping", cfg.solver.damping, sw);
  read(solver, "max_halvings", cfg.solver.max_halvings, sw);
  read(solver, "min_step", cfg.solver.min_step, sw);
  read(solver, "l1_smoothing_3d", cfg.solver.l1_smoothing_3d, sw);
  read(solver, "l1_smoothing_2d", cfg.solver.l1_smoothing_2d, sw);
  std::string mode = to_string(cfg.solver.mode);
  read(solver, "mode", mode, sw);

  const pt::ptree& weights = section("weights");
  const std::string ww = source + " [weights]";
  read(weights, "smpl", cfg.solver.weights.smpl, ww);
  read(weights, "joints3d", cfg.solver.weights.joints3d, ww);
  read(weights, "joints2d", cfg.solver.weights.joints2d, ww);
  read(weights, "prior", cfg.solver.weights.prior, ww);

  const pt::ptree& prior = section("prior");
  const std::string pw = source + " [prior]";
  read(prior, "enabled", cfg.prior.enabled, pw);
  read(prior, "file", cfg.prior.file, pw);
  read(prior, "latent_dim", cfg.prior.latent_dim, pw);
  read(prior, "samples", cfg.prior.samples, pw);
  read(prior, "seed", cfg.prior.seed, pw);

  const pt::ptree& sweep = section("sweep");
  const std::string xw = source + " [sweep]";
  std::string patterns, docs, modes, anchors;
  read(sweep, "patterns", patterns, xw);
  read(sweep, "docs", docs, xw);
  read(sweep, "modes", modes, xw);
  read(sweep, "anchors", anchors, xw);
  read(sweep, "rect_aspect", cfg.sweep.rect_aspect, xw);
  read(sweep, "pck_threshold", cfg.sweep.pck_threshold, xw);
  read(sweep, "seed", cfg.sweep.seed, xw);
  read(sweep, "workers", cfg.sweep.workers, xw);
  read(sweep, "cases", cfg.suite.cases, xw);
  read(sweep, "first_seed", cfg.suite.first_seed, xw);
  read(sweep, "noise2d", cfg.suite.noise2d, xw);

  try {
    cfg.solver.mode = parse_solver_mode(mode);
    if (sweep.get_optional<std::string>("patterns")) {
      cfg.sweep.patterns.clear();
      for (const std::string& p : split_list(patterns)) cfg.sweep.patterns.push_back(parse_occlusion_pattern(p));
    }
    if (sweep.get_optional<std::string>("docs")) cfg.sweep.docs = parse_int_list(docs);
    if (sweep.get_optional<std::string>("modes")) {
      cfg.sweep.modes.clear();
      for (const std::string& m : split_list(modes)) cfg.sweep.modes.push_back(parse_solver_mode(m));
    }
    if (sweep.get_optional<std::string>("anchors")) cfg.sweep.anchors = parse_int_list(anchors);
    cfg.sweep.solver = cfg.solver;
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw ParseError(source + ": " + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

namespace {

template <typename T, typename Fn>
std::string join(const std::vector<T>& items, Fn fn) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ',';
    out += fn(items[i]);
  }
  return out;
}

std::string num(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

}  // namespace

std::string config_to_ini(const RunConfig& config) {
  const SolverConfig& s = config.solver;
  std::ostringstream out;
  out << "[solver]\n"
      << "outer_iters = " << s.outer_iters << "\n"
      << "inner_iters = " << s.inner_iters << "\n"
      << "step_scale = " << num(s.step_scale) << "\n"
      << "damping = " << num(s.damping) << "\n"
      << "max_halvings = " << s.max_halvings << "\n"
      << "min_step = " << num(s.min_step) << "\n"
      << "l1_smoothing_3d = " << num(s.l1_smoothing_3d) << "\n"
      << "l1_smoothing_2d = " << num(s.l1_smoothing_2d) << "\n"
      << "mode = " << to_string(s.mode) << "\n\n"
      << "[weights]\n"
      << "smpl = " << num(s.weights.smpl) << "\n"
      << "joints3d = " << num(s.weights.joints3d) << "\n"
      << "joints2d = " << num(s.weights.joints2d) << "\n"
      << "prior = " << num(s.weights.prior) << "\n\n"
      << "[prior]\n"
      << "enabled = " << (config.prior.enabled ? "true" : "false") << "\n";
  if (!config.prior.file.empty()) out << "file = " << config.prior.file << "\n";
  out << "latent_dim = " << config.prior.latent_dim << "\n"
      << "samples = " << config.prior.samples << "\n"
      << "seed = " << config.prior.seed << "\n\n";
  const SweepConfig& w = config.sweep;
  out << "[sweep]\n"
      << "patterns = " << join(w.patterns, [](OcclusionPattern p) { return to_string(p); }) << "\n"
      << "docs = " << join(w.docs, [](int d) { return std::to_string(d); }) << "\n"
      << "modes = " << join(w.modes, [](SolverMode m) { return to_string(m); }) << "\n";
  if (!w.anchors.empty()) out << "anchors = " << join(w.anchors, [](int a) { return std::to_string(a); }) << "\n";
  out << "rect_aspect = " << num(w.rect_aspect) << "\n"
      << "pck_threshold = " << num(w.pck_threshold) << "\n"
      << "seed = " << w.seed << "\n"
      << "workers = " << w.workers << "\n"
      << "cases = " << config.suite.cases << "\n"
      << "first_seed = " << config.suite.first_seed << "\n"
      << "noise2d = " << num(config.suite.noise2d) << "\n";
  return out.str();
}

nlohmann::json config_to_json(const RunConfig& config) {
  nlohmann::json doc;
  doc["solver"] = solver_config_to_json(config.solver);
  doc["prior"] = {{"enabled", config.prior.enabled},
                  {"file", config.prior.file},
                  {"latent_dim", config.prior.latent_dim},
                  {"samples", config.prior.samples},
                  {"seed", config.prior.seed}};
  std::vector<std::string> patterns, modes;
  for (OcclusionPattern p : config.sweep.patterns) patterns.push_back(to_string(p));
  for (SolverMode m : config.sweep.modes) modes.push_back(to_string(m));
  doc["sweep"] = {{"patterns", patterns},
                  {"docs", config.sweep.docs},
                  {"modes", modes},
                  {"anchors", config.sweep.anchors},
                  {"rect_aspect", config.sweep.rect_aspect},
                  {"pck_threshold", config.sweep.pck_threshold},
                  {"seed", config.sweep.seed},
                  {"cases", config.suite.cases},
                  {"first_seed", config.suite.first_seed},
                  {"noise2d", config.suite.noise2d}};
  return doc;
}

std::optional<PosePrior> make_prior(const PriorSettings& settings) {
  if (!settings.enabled) return std::nullopt;
  if (!settings.file.empty()) return load_prior(settings.file);
  return default_prior(settings.latent_dim, settings.samples, settings.seed);
}

}  // namespace kinfit
