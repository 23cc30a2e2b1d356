#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "persuade/instance.hpp"
#include "persuade/markov.hpp"
#include "persuade/mcgame.hpp"

namespace persuade {

/// Flat, versioned scenario description.  Parsing is strict: unknown keys,
/// out-of-range parameters, and malformed matrices are errors, never
/// warnings.  Defaults (grid 2000, eps_stop 1e-6, trials 100000, seed 42)
/// are filled here and nowhere else.
struct ScenarioConfig {
  int schema_version = 1;
  std::string scenario = "scenario";
  std::string experiment;  // solve | trajectory | gamma | mcgame | sorin

  // Instance: either a named id or an inline matrix + payoff tables.
  std::string instance_id;  // "appendixA" | "periodic" when named
  std::vector<std::vector<double>> matrix;
  std::vector<std::vector<double>> sender_values;
  std::vector<std::vector<double>> receiver_values;

  // Game family for the mcgame experiment (K x I x J).
  std::vector<std::vector<std::vector<double>>> game;

  std::vector<double> deltas{0.0, 0.25, 0.5, 0.75, 0.9};
  double x = 0.5;
  double y = 0.6;
  std::size_t horizon = 10000;  // N
  std::size_t trials = 100000;
  std::uint64_t seed = 42;
  std::size_t grid = 2000;
  std::size_t strategy_res = 20;
  double eps_stop = 1e-6;

  bool has_inline_instance() const { return !matrix.empty(); }

  PersuasionInstance make_instance() const;
  StochasticMatrix make_matrix() const;
  MatrixGameFamily make_game() const;
};

/// Parses and validates a JSON scenario document.  Violations are collected
/// and reported together in the exception message, one per line.
ScenarioConfig parse_config(const std::string& text);

/// Convenience: reads the file and parses it.
ScenarioConfig load_config(const std::string& path);

}  // namespace persuade
