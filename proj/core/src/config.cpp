#include "persuade/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace persuade {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::vector<std::string>& violations) {
  std::ostringstream os;
  os << "invalid scenario config:";
  for (const auto& v : violations) os << "\n  - " << v;
  throw std::runtime_error(os.str());
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

bool get_double(const json& j, const char* key, double& out, std::vector<std::string>& errs) {
  if (!j.at(key).is_number()) {
    errs.push_back(std::string(key) + " must be a number");
    return false;
  }
  out = j.at(key).get<double>();
  if (!std::isfinite(out)) {
    errs.push_back(std::string(key) + " must be finite");
    return false;
  }
  return true;
}

bool get_size(const json& j, const char* key, std::size_t& out, std::vector<std::string>& errs) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    errs.push_back(std::string(key) + " must be a nonnegative integer");
    return false;
  }
  out = static_cast<std::size_t>(v.get<long long>());
  return true;
}

// "start:step:stop", inclusive of stop up to a half-step of rounding.
std::vector<double> expand_range(const std::string& text, std::vector<std::string>& errs) {
  double start = 0, step = 0, stop = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &step, &stop, &tail) != 3 || step <= 0) {
    errs.push_back("deltas range must look like \"start:step:stop\" with step > 0, got \"" +
                   text + "\"");
    return {};
  }
  std::vector<double> out;
  for (double d = start; d <= stop + step / 2; d += step) out.push_back(d);
  return out;
}

void check_deltas(const std::vector<double>& deltas, std::vector<std::string>& errs) {
  if (deltas.empty()) {
    errs.push_back("deltas must be non-empty");
    return;
  }
  for (double d : deltas) {
    if (!(d >= 0.0) || !(d < 1.0)) {
      errs.push_back("deltas entries must lie in [0, 1); got " + fmt(d) +
                     (d == 1.0 ? " (the undiscounted limit is reported separately, not solved)"
                               : ""));
      return;
    }
  }
}

std::vector<std::vector<double>> parse_table(const json& v, const char* key,
                                             std::vector<std::string>& errs) {
  std::vector<std::vector<double>> rows;
  if (!v.is_array() || v.empty()) {
    errs.push_back(std::string(key) + " must be a non-empty array of rows");
    return rows;
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& row = v[i];
    if (!row.is_array() || row.empty()) {
      errs.push_back(std::string(key) + " row " + std::to_string(i) + " must be a non-empty array");
      return {};
    }
    std::vector<double> r;
    for (const auto& cell : row) {
      if (!cell.is_number() || !std::isfinite(cell.get<double>())) {
        errs.push_back(std::string(key) + " row " + std::to_string(i) +
                       " contains a non-finite entry");
        return {};
      }
      r.push_back(cell.get<double>());
    }
    if (!rows.empty() && r.size() != rows[0].size()) {
      errs.push_back(std::string(key) + " row " + std::to_string(i) + " has " +
                     std::to_string(r.size()) + " entries, expected " +
                     std::to_string(rows[0].size()));
      return {};
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

void check_stochastic(const std::vector<std::vector<double>>& m, std::vector<std::string>& errs) {
  if (m.empty()) return;
  if (m.size() != m[0].size()) {
    errs.push_back("matrix must be square, got " + std::to_string(m.size()) + "x" +
                   std::to_string(m[0].size()));
    return;
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    double sum = 0;
    for (double e : m[i]) {
      if (e < 0) {
        errs.push_back("matrix row " + std::to_string(i) + " has a negative entry");
        return;
      }
      sum += e;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      errs.push_back("matrix row " + std::to_string(i) + " sums to " + fmt(sum) +
                     ", expected 1");
      return;
    }
  }
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("scenario config is not valid JSON: ") + e.what());
  }
  std::vector<std::string> errs;
  if (!j.is_object()) fail({"top-level document must be a JSON object"});

  static const std::set<std::string> known = {
      "schema_version", "scenario", "experiment",   "instance", "matrix",
      "sender_values",  "receiver_values", "game",  "deltas",   "delta",
      "x",              "y",        "N",            "trials",   "seed",
      "grid",           "strategy_res", "eps_stop"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) errs.push_back("unknown key \"" + item.key() + "\"");
  }

  ScenarioConfig cfg;
  if (!j.contains("schema_version")) {
    errs.push_back("schema_version is required");
  } else if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != 1) {
    errs.push_back("schema_version must be the integer 1");
  }

  if (j.contains("scenario")) {
    if (j["scenario"].is_string()) {
      cfg.scenario = j["scenario"].get<std::string>();
    } else {
      errs.push_back("scenario must be a string");
    }
  }

  static const std::set<std::string> experiments = {"solve", "trajectory", "gamma", "mcgame",
                                                    "sorin"};
  if (!j.contains("experiment")) {
    errs.push_back("experiment is required (one of solve, trajectory, gamma, mcgame, sorin)");
  } else if (!j["experiment"].is_string() || !experiments.count(j["experiment"].get<std::string>())) {
    errs.push_back("experiment must be one of solve, trajectory, gamma, mcgame, sorin");
  } else {
    cfg.experiment = j["experiment"].get<std::string>();
  }

  if (j.contains("instance")) {
    if (!j["instance"].is_string()) {
      errs.push_back("instance must be a string id (use matrix/sender_values/receiver_values "
                     "for inline problems)");
    } else {
      cfg.instance_id = j["instance"].get<std::string>();
      if (cfg.instance_id != "appendixA" && cfg.instance_id != "periodic") {
        errs.push_back("unknown instance id \"" + cfg.instance_id +
                       "\" (known: appendixA, periodic)");
      }
    }
  }
  if (j.contains("matrix")) {
    cfg.matrix = parse_table(j["matrix"], "matrix", errs);
    check_stochastic(cfg.matrix, errs);
  }
  if (j.contains("sender_values"))
    cfg.sender_values = parse_table(j["sender_values"], "sender_values", errs);
  if (j.contains("receiver_values"))
    cfg.receiver_values = parse_table(j["receiver_values"], "receiver_values", errs);
  if (!cfg.instance_id.empty() && !cfg.matrix.empty())
    errs.push_back("give either a named instance or an inline matrix, not both");
  if (!cfg.matrix.empty()) {
    if (cfg.sender_values.empty() || cfg.receiver_values.empty()) {
      if (cfg.experiment != "mcgame")
        errs.push_back("inline instances need both sender_values and receiver_values");
    } else {
      if (cfg.sender_values.size() != cfg.matrix.size())
        errs.push_back("sender_values must have one row per state");
      if (cfg.receiver_values.size() != cfg.sender_values.size() ||
          (!cfg.receiver_values.empty() && !cfg.sender_values.empty() &&
           cfg.receiver_values[0].size() != cfg.sender_values[0].size()))
        errs.push_back("receiver_values must match sender_values in shape");
      for (std::size_t s = 0; s < cfg.sender_values.size(); ++s)
        for (double e : cfg.sender_values[s])
          if (e < 0) {
            errs.push_back("sender_values row " + std::to_string(s) + " has a negative entry");
            s = cfg.sender_values.size() - 1;
            break;
          }
    }
  }

  if (j.contains("game")) {
    const auto& g = j["game"];
    if (!g.is_array() || g.empty()) {
      errs.push_back("game must be a non-empty array of payoff matrices, one per state");
    } else {
      for (std::size_t s = 0; s < g.size(); ++s) {
        auto t = parse_table(g[s], ("game[" + std::to_string(s) + "]").c_str(), errs);
        if (t.empty()) break;
        if (!cfg.game.empty() &&
            (t.size() != cfg.game[0].size() || t[0].size() != cfg.game[0][0].size())) {
          errs.push_back("game[" + std::to_string(s) + "] shape differs from game[0]");
          break;
        }
        cfg.game.push_back(std::move(t));
      }
    }
  }

  if (j.contains("deltas") && j.contains("delta"))
    errs.push_back("give either deltas or delta, not both");
  if (j.contains("deltas")) {
    const auto& d = j["deltas"];
    if (d.is_string()) {
      cfg.deltas = expand_range(d.get<std::string>(), errs);
    } else if (d.is_array()) {
      cfg.deltas.clear();
      for (const auto& e : d) {
        if (!e.is_number()) {
          errs.push_back("deltas must contain only numbers");
          break;
        }
        cfg.deltas.push_back(e.get<double>());
      }
    } else {
      errs.push_back("deltas must be an array or a \"start:step:stop\" string");
    }
    if (errs.empty()) check_deltas(cfg.deltas, errs);
  } else if (j.contains("delta")) {
    double d;
    if (get_double(j, "delta", d, errs)) {
      cfg.deltas = {d};
      check_deltas(cfg.deltas, errs);
    }
  }

  if (j.contains("x")) {
    if (get_double(j, "x", cfg.x, errs) && !(cfg.x > 0.0 && cfg.x < 1.0))
      errs.push_back("x must lie in (0, 1); got " + fmt(cfg.x));
  }
  if (j.contains("y")) {
    if (get_double(j, "y", cfg.y, errs) && !(cfg.y > 0.0 && cfg.y <= 1.0))
      errs.push_back("y must lie in (0, 1]; got " + fmt(cfg.y));
  }
  if (j.contains("N")) {
    if (get_size(j, "N", cfg.horizon, errs) && cfg.horizon == 0)
      errs.push_back("N must be at least 1");
  }
  if (j.contains("trials")) {
    if (get_size(j, "trials", cfg.trials, errs) && cfg.trials == 0)
      errs.push_back("trials must be at least 1");
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) {
      errs.push_back("seed must be an integer");
    } else {
      cfg.seed = j["seed"].get<std::uint64_t>();
    }
  }
  if (j.contains("grid")) {
    if (get_size(j, "grid", cfg.grid, errs) && cfg.grid < 2)
      errs.push_back("grid must be at least 2 cells per axis");
  }
  if (j.contains("strategy_res")) {
    if (get_size(j, "strategy_res", cfg.strategy_res, errs) && cfg.strategy_res < 2)
      errs.push_back("strategy_res must be at least 2");
  }
  if (j.contains("eps_stop")) {
    if (get_double(j, "eps_stop", cfg.eps_stop, errs) && !(cfg.eps_stop > 0))
      errs.push_back("eps_stop must be positive");
  }

  // Cross-field requirements per experiment.
  if (cfg.experiment == "mcgame") {
    if (cfg.game.empty())
      errs.push_back("the mcgame experiment needs a game (K x I x J payoff family)");
    if (cfg.instance_id.empty() && cfg.matrix.empty())
      errs.push_back("the mcgame experiment needs a transition matrix (named or inline)");
    if (!cfg.game.empty() && !cfg.matrix.empty() && cfg.game.size() != cfg.matrix.size())
      errs.push_back("game has " + std::to_string(cfg.game.size()) +
                     " payoff matrices but the chain has " + std::to_string(cfg.matrix.size()) +
                     " states");
  }
  if ((cfg.experiment == "solve" || cfg.experiment == "trajectory" || cfg.experiment == "gamma") &&
      cfg.instance_id.empty() && cfg.matrix.empty())
    errs.push_back("the " + cfg.experiment + " experiment needs an instance (named or inline)");

  if (!errs.empty()) fail(errs);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

PersuasionInstance ScenarioConfig::make_instance() const {
  if (!instance_id.empty()) return PersuasionInstance::named(instance_id);
  return PersuasionInstance::from_tables(scenario, ActionTables{sender_values, receiver_values});
}

StochasticMatrix ScenarioConfig::make_matrix() const {
  if (instance_id == "appendixA") return appendix_a_matrix();
  if (instance_id == "periodic") return periodic_matrix();
  return StochasticMatrix(matrix);
}

MatrixGameFamily ScenarioConfig::make_game() const { return MatrixGameFamily(game); }

}  // namespace persuade
