#include <stdexcept>
#include <string>
#include <vector>

#include "bpsg/config.hpp"
#include "bpsg/schedules.hpp"
#include "doctest.h"

using namespace bpsg;

TEST_CASE("key=value documents parse into configs") {
  const std::string text =
      "problem = lasso\n"
      "# a comment line\n"
      "samples = 120\n"
      "dim = 40\n"
      "blocks = 4\n"
      "schedule = \"geometric:0.95\"\n"
      "selection = lipschitz\n"
      "budget_iterations = 30\n"
      "seed = 9\n";
  const ExperimentConfig cfg = parse_config(text);
  CHECK(cfg.samples == 120);
  CHECK(cfg.dim == 40);
  CHECK(cfg.blocks == 4);
  CHECK(cfg.schedule == "geometric:0.95");
  CHECK(parse_batch_policy(cfg.schedule).base == doctest::Approx(0.95));
  CHECK(cfg.selection == "lipschitz");
  CHECK(cfg.budget_iterations == 30);
  CHECK(cfg.seed == 9);
}

TEST_CASE("parsing rejects unknown, duplicate and malformed keys") {
  try {
    parse_config("nonsense = 1\n");
    FAIL("expected an unknown-key error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("nonsense") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config("samples = 10\nsamples = 20\n"),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_config("samples = abc\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("samples\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_config("schedule = \"unterminated\n"),
                  std::invalid_argument);
}

TEST_CASE("validation catches bad schedule and steplength specs") {
  ExperimentConfig cfg = preset("table2");
  apply_override(cfg, "schedule=geometric:1.5");
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  cfg = preset("table2");
  apply_override(cfg, "steplength=fixed:-3");
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  cfg = preset("table2");
  apply_override(cfg, "trajectories=0");
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

  cfg = preset("table2");
  apply_override(cfg, "selection=sometimes");
  CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);
}

TEST_CASE("setting one budget clears the other") {
  ExperimentConfig cfg = preset("table2");
  CHECK(cfg.budget_epochs == 50);
  CHECK(cfg.budget_iterations == 0);

  apply_override(cfg, "budget_iterations=100");
  CHECK(cfg.budget_iterations == 100);
  CHECK(cfg.budget_epochs == 0);

  apply_override(cfg, "budget_epochs=5");
  CHECK(cfg.budget_epochs == 5);
  CHECK(cfg.budget_iterations == 0);

  CHECK_THROWS_AS(apply_override(cfg, "no_equals_sign"),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply_override(cfg, "=5"), std::invalid_argument);
}

TEST_CASE("every preset round-trips through serialization") {
  for (const std::string& name : preset_names()) {
    const ExperimentConfig cfg = preset(name);
    CHECK(parse_config(serialize_config(cfg)) == cfg);
    validate_config(cfg);  // presets must be valid as shipped
  }
}

TEST_CASE("the preset list is stable") {
  const std::vector<std::string> names = preset_names();
  const std::vector<std::string> expected = {
      "table2",        "table3", "table5",        "pl_geometric",
      "pl_polynomial", "delay",  "classification"};
  CHECK(names == expected);
  CHECK_THROWS_AS(preset("table9"), std::invalid_argument);
}

TEST_CASE("the dense lasso preset carries its published parameters") {
  const ExperimentConfig cfg = preset("table3");
  CHECK(cfg.problem == "lasso");
  CHECK(cfg.samples == 2000);
  CHECK(cfg.dim == 200);
  CHECK(cfg.blocks == 10);
  CHECK(cfg.lambda == 0.1);
  CHECK(cfg.budget_epochs == 50);
  CHECK(cfg.trajectories == 50);

  REQUIRE(cfg.arms.size() == 4);
  CHECK(cfg.arms[0].name == "geo95");
  CHECK(cfg.arms[0].schedule == "geometric:0.95");
  CHECK(cfg.arms[1].name == "geo98");
  CHECK(cfg.arms[1].schedule == "geometric:0.98");
  CHECK(cfg.arms[2].name == "bsg16");
  CHECK(cfg.arms[2].algo == "bsg");
  CHECK(cfg.arms[2].batch == 16);
  CHECK(cfg.arms[3].name == "bsg64");
  CHECK(cfg.arms[3].batch == 64);
}

TEST_CASE("the batch-size comparison preset sweeps three bases") {
  const ExperimentConfig cfg = preset("table2");
  CHECK(cfg.samples == 1000);
  CHECK(cfg.dim == 400);
  REQUIRE(cfg.arms.size() == 3);
  CHECK(cfg.arms[0].schedule == "geometric:0.85");
  CHECK(cfg.arms[1].schedule == "geometric:0.9");
  CHECK(cfg.arms[2].schedule == "geometric:0.95");
}

TEST_CASE("the heterogeneous preset searches for a Lipschitz ratio") {
  const ExperimentConfig cfg = preset("table5");
  CHECK(cfg.target_lip_ratio > 1.0);
  CHECK(cfg.selection == "lipschitz");
  REQUIRE(cfg.arms.size() == 2);
  CHECK(cfg.arms[0].name == "identical");
  CHECK(cfg.arms[1].name == "blockwise");
  CHECK(cfg.arms[1].steplength == "inverse");
}

TEST_CASE("the delay preset sweeps the staleness bound") {
  const ExperimentConfig cfg = preset("delay");
  REQUIRE(cfg.arms.size() == 3);
  CHECK(cfg.arms[0].delay_max == 0);
  CHECK(cfg.arms[1].delay_max == 5);
  CHECK(cfg.arms[2].delay_max == 20);
  CHECK(cfg.budget_iterations > 0);
  CHECK(cfg.budget_epochs == 0);
}

TEST_CASE("quadratic presets use the certified-rate steplength") {
  for (const char* name : {"pl_geometric", "pl_polynomial"}) {
    const ExperimentConfig cfg = preset(name);
    CHECK(cfg.problem == "pl_quadratic");
    CHECK(cfg.steplength == "pl_optimal");
    CHECK(cfg.budget_iterations > 0);
  }
  CHECK(preset("pl_geometric").schedule == "geometric_pl:0.5");
  CHECK(preset("pl_polynomial").arms.size() == 2);
}

TEST_CASE("variance lists parse and reject junk") {
  const std::vector<double> v = parse_variance_list("1,2.5,4");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == 1.0);
  CHECK(v[1] == 2.5);
  CHECK(v[2] == 4.0);
  CHECK_THROWS_AS(parse_variance_list("1,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_variance_list("1,abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_variance_list("1,-2"), std::invalid_argument);
}

TEST_CASE("serialization is a fixed point on a custom config") {
  ExperimentConfig cfg = preset("table3");
  apply_override(cfg, "trajectories=3");
  apply_override(cfg, "seed=123");
  apply_override(cfg, "out=custom.csv");
  const std::string once = serialize_config(cfg);
  const std::string twice = serialize_config(parse_config(once));
  CHECK(once == twice);
}
