#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "persuade/config.hpp"
#include "persuade/report.hpp"

using namespace persuade;

namespace {

// Returns the collected violation message, or an empty string on success.
std::string parse_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const std::runtime_error& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("minimal config fills the documented defaults") {
  ScenarioConfig cfg = parse_config(
      R"({"schema_version": 1, "experiment": "solve", "instance": "appendixA"})");
  CHECK(cfg.experiment == "solve");
  CHECK(cfg.instance_id == "appendixA");
  CHECK(cfg.grid == 2000);
  CHECK(cfg.eps_stop == doctest::Approx(1e-6));
  CHECK(cfg.trials == 100000);
  CHECK(cfg.seed == 42);
  CHECK(cfg.horizon == 10000);
  CHECK(cfg.strategy_res == 20);
  REQUIRE(cfg.deltas.size() == 5);
  CHECK(cfg.deltas.front() == doctest::Approx(0.0));
  CHECK(cfg.deltas.back() == doctest::Approx(0.9));
  CHECK_FALSE(cfg.has_inline_instance());
  CHECK(cfg.make_matrix().size() == 2);
  CHECK(cfg.make_instance().name() == "appendixA");
}

TEST_CASE("violations are collected with pointed messages") {
  CHECK(parse_error(R"({"experiment": "solve", "instance": "appendixA"})")
            .find("schema_version") != std::string::npos);
  CHECK(parse_error(
            R"({"schema_version": 1, "experiment": "solve", "instance": "appendixA",
                "typo_key": 3})")
            .find("typo_key") != std::string::npos);
  CHECK(parse_error(R"({"schema_version": 1, "experiment": "paint"})")
            .find("experiment") != std::string::npos);
  CHECK(parse_error(
            R"({"schema_version": 1, "experiment": "solve", "instance": "mystery"})")
            .find("mystery") != std::string::npos);

  // delta = 1 deserves its dedicated explanation.
  std::string msg = parse_error(
      R"({"schema_version": 1, "experiment": "solve", "instance": "appendixA",
          "deltas": [0.5, 1.0]})");
  CHECK(msg.find("deltas") != std::string::npos);
  CHECK(msg.find("undiscounted") != std::string::npos);

  CHECK(parse_error(
            R"({"schema_version": 1, "experiment": "gamma", "instance": "appendixA",
                "x": 1.25})")
            .find("x must lie") != std::string::npos);

  // Row sums are named by row index.
  CHECK(parse_error(
            R"({"schema_version": 1, "experiment": "solve",
                "matrix": [[0.5, 0.5], [0.4, 0.4]],
                "sender_values": [[0.0, 1.0], [1.0, 0.0]],
                "receiver_values": [[1.0, 0.0], [0.0, 1.0]]})")
            .find("row 1") != std::string::npos);

  CHECK(parse_error(
            R"({"schema_version": 1, "experiment": "solve", "instance": "appendixA",
                "matrix": [[0.5, 0.5], [0.5, 0.5]],
                "sender_values": [[0.0, 1.0], [1.0, 0.0]],
                "receiver_values": [[1.0, 0.0], [0.0, 1.0]]})")
            .find("not both") != std::string::npos);

  CHECK(parse_error(
            R"({"schema_version": 1, "experiment": "solve",
                "matrix": [[0.5, 0.5], [0.5, 0.5]]})")
            .find("sender_values") != std::string::npos);

  // Several violations arrive in a single message.
  std::string multi = parse_error(
      R"({"schema_version": 2, "experiment": "paint", "trials": 0})");
  CHECK(multi.find("schema_version") != std::string::npos);
  CHECK(multi.find("experiment") != std::string::npos);
  CHECK(multi.find("trials") != std::string::npos);
}

TEST_CASE("experiment cross-field requirements") {
  CHECK(parse_error(R"({"schema_version": 1, "experiment": "solve"})")
            .find("instance") != std::string::npos);
  CHECK(parse_error(
            R"({"schema_version": 1, "experiment": "mcgame", "instance": "periodic"})")
            .find("game") != std::string::npos);
  CHECK(parse_error(
            R"({"schema_version": 1, "experiment": "mcgame",
                "game": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 1.0]]]})")
            .find("matrix") != std::string::npos);
  // Game size must match the chain.
  CHECK(parse_error(
            R"({"schema_version": 1, "experiment": "mcgame",
                "matrix": [[0.5, 0.5], [0.5, 0.5]],
                "game": [[[1.0, 0.0], [0.0, 0.0]]]})")
            .find("states") != std::string::npos);
  // Ragged game blocks are rejected.
  CHECK(parse_error(
            R"({"schema_version": 1, "experiment": "mcgame",
                "matrix": [[0.5, 0.5], [0.5, 0.5]],
                "game": [[[1.0, 0.0], [0.0, 0.0]], [[0.0], [0.0]]]})")
            .find("game[1]") != std::string::npos);
}

TEST_CASE("delta ladders expand from range strings") {
  ScenarioConfig cfg = parse_config(
      R"({"schema_version": 1, "experiment": "solve", "instance": "appendixA",
          "deltas": "0.1:0.2:0.9"})");
  REQUIRE(cfg.deltas.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(cfg.deltas[i] == doctest::Approx(0.1 + 0.2 * static_cast<double>(i)));
  }
  CHECK(parse_error(
            R"({"schema_version": 1, "experiment": "solve", "instance": "appendixA",
                "deltas": "0.9:-0.2:0.1"})")
            .find("deltas") != std::string::npos);

  ScenarioConfig single = parse_config(
      R"({"schema_version": 1, "experiment": "solve", "instance": "appendixA",
          "delta": 0.5})");
  REQUIRE(single.deltas.size() == 1);
  CHECK(single.deltas[0] == doctest::Approx(0.5));
}

TEST_CASE("inline instances round-trip into model objects") {
  ScenarioConfig cfg = parse_config(
      R"({"schema_version": 1, "experiment": "trajectory",
          "matrix": [[0.7, 0.3], [0.2, 0.8]],
          "sender_values": [[0.0, 1.0], [0.5, 0.0]],
          "receiver_values": [[1.0, 0.0], [0.0, 1.0]],
          "deltas": [0.0, 0.5]})");
  CHECK(cfg.has_inline_instance());
  StochasticMatrix m = cfg.make_matrix();
  CHECK(m(0, 0) == doctest::Approx(0.7));
  PersuasionInstance inst = cfg.make_instance();
  CHECK_FALSE(inst.is_analytic());
  CHECK(inst.states() == 2);

  ScenarioConfig game_cfg = parse_config(
      R"({"schema_version": 1, "experiment": "mcgame",
          "matrix": [[0.5, 0.5], [0.5, 0.5]],
          "game": [[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 1.0]]]})");
  MatrixGameFamily fam = game_cfg.make_game();
  CHECK(fam.states() == 2);
  CHECK(fam.payoff(1, 1, 1) == doctest::Approx(1.0));
}

TEST_CASE("number formatting is locale-proof and round-trippable") {
  CHECK(format_number(0.5125) == "0.5125");
  CHECK(format_number(1e-9).find("1e-09") != std::string::npos);
  CHECK(format_number(-3.0) == "-3");
  CHECK(csv_cell(true) == "1");
  CHECK(csv_cell(false) == "0");
  CHECK(csv_cell(std::optional<double>{}) == "");
  CHECK(csv_cell(std::optional<double>{0.25}) == "0.25");
  CHECK(csv_cell(std::size_t{42}) == "42");
}

TEST_CASE("csv writing is exact and width-checked") {
  const std::string path = "test_report_tmp.csv";
  write_csv(path, {"a", "b"}, {{"1", "2"}, {"3", "4"}});
  CHECK(slurp(path) == "a,b\n1,2\n3,4\n");
  CHECK_THROWS_AS(write_csv(path, {"a", "b"}, {{"1"}}), std::runtime_error);
  std::remove(path.c_str());

  const std::string tpath = "test_traj_tmp.csv";
  TrajectoryRow row;
  row.delta = 0.5;
  row.phi = 0.5125;
  row.psi = 0.31875;
  row.tolerance = 1e-3;
  write_trajectory_csv(tpath, {row}, 42);
  std::string text = slurp(tpath);
  CHECK(text.find("model,delta,phi,psi") == 0);
  CHECK(text.find("persuasion,0.5,0.5125,0.31875") != std::string::npos);
  // Optional diagnostics left empty, not zero-filled.
  CHECK(text.find(",,") != std::string::npos);
  std::remove(tpath.c_str());
}

TEST_CASE("summaries carry verdict lines for every check") {
  const std::string path = "test_summary_tmp.txt";
  std::vector<CheckRow> checks = {
      {"flat_value", 0.5125, 0.5145, true, "closed form"},
      {"bad_bound", 2.0, 1.0, false, ""},
  };
  bool all = write_summary(path, "unit summary", {"seed = 42"}, checks);
  CHECK_FALSE(all);
  std::string text = slurp(path);
  CHECK(text.find("[PASS] flat_value") != std::string::npos);
  CHECK(text.find("[FAIL] bad_bound") != std::string::npos);
  CHECK(text.find("seed = 42") != std::string::npos);
  CHECK(text.find("RESULT: FAIL") != std::string::npos);
  CHECK(text.find("1/2") != std::string::npos);
  std::remove(path.c_str());

  bool ok = write_summary(path, "unit summary", {}, {checks[0]});
  CHECK(ok);
  CHECK(slurp(path).find("RESULT: PASS") != std::string::npos);
  std::remove(path.c_str());
}
