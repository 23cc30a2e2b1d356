#include "persuade/instance.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace persuade {

PersuasionInstance PersuasionInstance::from_tables(std::string name,
                                                   ActionTables tables) {
  if (tables.states() < 2) {
    throw std::invalid_argument("PersuasionInstance: need at least two states");
  }
  if (tables.actions() == 0) {
    throw std::invalid_argument("PersuasionInstance: need at least one action");
  }
  if (tables.receiver.size() != tables.states()) {
    throw std::invalid_argument("PersuasionInstance: table shapes disagree");
  }
  for (std::size_t l = 0; l < tables.states(); ++l) {
    if (tables.sender[l].size() != tables.actions() ||
        tables.receiver[l].size() != tables.actions()) {
      throw std::invalid_argument("PersuasionInstance: ragged action tables");
    }
    for (double v : tables.sender[l]) {
      if (v < 0.0) {
        throw std::invalid_argument(
            "PersuasionInstance: sender payoffs must be nonnegative");
      }
    }
  }
  PersuasionInstance inst;
  inst.name_ = std::move(name);
  inst.k_ = tables.states();
  inst.tables_ = std::move(tables);
  return inst;
}

PersuasionInstance PersuasionInstance::analytic(
    std::string name, std::size_t k, std::function<double(const Belief&)> u) {
  if (k < 2) throw std::invalid_argument("PersuasionInstance: need k >= 2");
  if (!u) throw std::invalid_argument("PersuasionInstance: empty callback");
  PersuasionInstance inst;
  inst.name_ = std::move(name);
  inst.k_ = k;
  inst.u_ = std::move(u);
  return inst;
}

PersuasionInstance PersuasionInstance::named(const std::string& id) {
  if (id == "appendixA") {
    return analytic("appendixA", 2, [](const Belief& xi) {
      double p = xi[0];
      return p * (2.0 - 3.0 * std::abs(p - 0.5)) + (1.0 - p) * p / 10.0;
    });
  }
  if (id == "periodic") {
    return analytic("periodic", 2, [](const Belief& xi) {
      double p = xi[0];
      return p * (1.0 - p);
    });
  }
  throw std::invalid_argument("PersuasionInstance::named: unknown id '" + id + "'");
}

const ActionTables& PersuasionInstance::tables() const {
  if (!tables_) {
    throw std::logic_error("PersuasionInstance: analytic instance has no tables");
  }
  return *tables_;
}

double PersuasionInstance::u(const Belief& xi) const {
  if (xi.size() != k_) throw std::invalid_argument("u: dimension mismatch");
  if (!tables_) return u_(xi);
  const ActionTables& t = *tables_;
  std::size_t b = best_action(xi);
  double val = 0.0;
  for (std::size_t l = 0; l < k_; ++l) val += xi[l] * t.sender[l][b];
  return val;
}

std::size_t PersuasionInstance::best_action(const Belief& xi) const {
  if (!tables_) {
    throw std::logic_error(
        "best_action: not defined for an analytic instance (no receiver model)");
  }
  const ActionTables& t = *tables_;
  const std::size_t nb = t.actions();
  std::size_t best = 0;
  double best_w = -std::numeric_limits<double>::infinity();
  double best_v = -std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < nb; ++b) {
    double w = 0.0, v = 0.0;
    for (std::size_t l = 0; l < k_; ++l) {
      w += xi[l] * t.receiver[l][b];
      v += xi[l] * t.sender[l][b];
    }
    // Strictly better for the receiver wins; a tie goes to the sender's
    // payoff, and a full tie to the lowest action index.
    if (w > best_w + kComponentTol ||
        (w > best_w - kComponentTol && v > best_v + kComponentTol)) {
      best = b;
      best_w = w;
      best_v = v;
    }
  }
  return best;
}

double u_eval(const PersuasionInstance& inst, const Belief& xi) { return inst.u(xi); }

std::size_t receiver_best_action(const PersuasionInstance& inst, const Belief& xi) {
  return inst.best_action(xi);
}

StochasticMatrix appendix_a_matrix() {
  return StochasticMatrix({{0.5, 0.5}, {1.0 / 6.0, 5.0 / 6.0}});
}

StochasticMatrix periodic_matrix() {
  return StochasticMatrix({{0.0, 1.0}, {1.0, 0.0}});
}

double appendix_a_value(double delta, double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("appendix_a_value: p outside [0,1]");
  if (delta < 0.0 || delta >= 1.0) {
    throw std::invalid_argument("appendix_a_value: delta outside [0,1)");
  }
  if (p <= 0.5) {
    return 2.05 * (3.0 * (delta - 1.0) * p - delta / 2.0) / (delta - 3.0);
  }
  double u = p * (2.0 - 3.0 * std::abs(p - 0.5)) + (1.0 - p) * p / 10.0;
  return (1.0 - delta) * u +
         delta * 2.05 * ((delta - 1.0) * p - 0.5) / (delta - 3.0);
}

}  // namespace persuade
