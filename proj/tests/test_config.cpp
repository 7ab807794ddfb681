#include <sstream>

#include "doctest.h"

#include "kinfit/config.hpp"
#include "kinfit/error.hpp"

using namespace kinfit;

namespace {

RunConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test.ini");
}

}  // namespace

TEST_CASE("missing keys keep their defaults") {
  const RunConfig cfg = parse("");
  CHECK(cfg.solver.outer_iters == 3);
  CHECK(cfg.solver.inner_iters == 4);
  CHECK(cfg.solver.damping == 1e-4);
  CHECK(cfg.solver.weights.joints2d == 1e-2);
  CHECK(cfg.solver.weights.prior == 1e-3);
  CHECK(cfg.prior.enabled);
  CHECK(cfg.sweep.docs == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(cfg.suite.cases == 50);
}

TEST_CASE("config sections are read") {
  const RunConfig cfg = parse(
      "[solver]\nouter_iters = 6\nmode = flat\n"
      "[weights]\nprior = 0\n"
      "[prior]\nenabled = false\n"
      "[sweep]\npatterns = bar, rect\ndocs = 2..4\nmodes = hierarchical,forward-only\nanchors = 0,21\ncases = 5\n");
  CHECK(cfg.solver.outer_iters == 6);
  CHECK(cfg.solver.mode == SolverMode::FlatSingleChain);
  CHECK(cfg.sweep.solver.outer_iters == 6);
  CHECK(cfg.solver.weights.prior == 0.0);
  CHECK_FALSE(cfg.prior.enabled);
  CHECK_FALSE(make_prior(cfg.prior).has_value());
  CHECK(cfg.sweep.patterns == std::vector<OcclusionPattern>{OcclusionPattern::Bar, OcclusionPattern::Rectangle});
  CHECK(cfg.sweep.docs == std::vector<int>{2, 3, 4});
  CHECK(cfg.sweep.modes == std::vector<SolverMode>{SolverMode::Hierarchical, SolverMode::ForwardOnly});
  CHECK(cfg.sweep.anchors == std::vector<int>{0, 21});
  CHECK(cfg.suite.cases == 5);
}

TEST_CASE("bad config input is rejected with context") {
  auto message = [](const std::string& text) {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("[solver]\nouter_itres = 3\n").find("outer_itres") != std::string::npos);
  CHECK(message("[solvr]\nouter_iters = 3\n").find("solvr") != std::string::npos);
  CHECK(message("[solver]\nouter_iters = three\n").find("outer_iters") != std::string::npos);
  CHECK(message("[solver]\ninner_iters = 0\n").find("inner_iters") != std::string::npos);
  CHECK(message("[sweep]\ndocs = 0..2\n").find("test.ini") != std::string::npos);
  CHECK(message("[prior]\nenabled = maybe\n").find("enabled") != std::string::npos);
  CHECK_THROWS_AS(load_config("/nonexistent/kinfit.ini"), IoError);
}

TEST_CASE("INI output parses back to the same config") {
  RunConfig cfg = parse("[solver]\ndamping = 0.00037\nstep_scale = 0.7\n[sweep]\nanchors = 3\nnoise2d = 1.25\n");
  cfg.solver.weights.joints2d = 1.0 / 3.0;
  const RunConfig back = parse(config_to_ini(cfg));
  CHECK(config_to_ini(back) == config_to_ini(cfg));
  CHECK(config_to_json(back) == config_to_json(cfg));
  CHECK(back.solver.weights.joints2d == cfg.solver.weights.joints2d);
}

TEST_CASE("integer lists") {
  CHECK(parse_int_list("1,3, 5") == std::vector<int>{1, 3, 5});
  CHECK(parse_int_list("1..3,7") == std::vector<int>{1, 2, 3, 7});
  CHECK_THROWS_AS(parse_int_list("3..1"), InvalidArgument);
  CHECK_THROWS_AS(parse_int_list("x"), InvalidArgument);
  CHECK(split_list(" a , b,,c ") == std::vector<std::string>{"a", "b", "c"});
}
