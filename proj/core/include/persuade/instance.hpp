#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "persuade/belief.hpp"
#include "persuade/markov.hpp"

namespace persuade {

/// Finite action model: sender payoff V[state][action] (nonnegative) and
/// receiver payoff W[state][action].
struct ActionTables {
  std::vector<std::vector<double>> sender;
  std::vector<std::vector<double>> receiver;
  std::size_t states() const { return sender.size(); }
  std::size_t actions() const { return sender.empty() ? 0 : sender[0].size(); }
};

/**
 * One persuasion problem: the stage payoff u over beliefs.  Either derived
 * from action tables (the receiver best-responds to the belief, ties broken
 * toward the sender and then to the lowest action index) or supplied as a
 * direct analytic callback, which bypasses the receiver model entirely.
 */
class PersuasionInstance {
 public:
  static PersuasionInstance from_tables(std::string name, ActionTables tables);
  static PersuasionInstance analytic(std::string name, std::size_t k,
                                     std::function<double(const Belief&)> u);
  /// Built-ins: "appendixA" and "periodic".
  static PersuasionInstance named(const std::string& id);

  const std::string& name() const { return name_; }
  std::size_t states() const { return k_; }
  bool is_analytic() const { return !tables_.has_value(); }
  const ActionTables& tables() const;

  double u(const Belief& xi) const;
  std::size_t best_action(const Belief& xi) const;

 private:
  PersuasionInstance() = default;
  std::string name_;
  std::size_t k_ = 0;
  std::optional<ActionTables> tables_;
  std::function<double(const Belief&)> u_;
};

double u_eval(const PersuasionInstance& inst, const Belief& xi);
std::size_t receiver_best_action(const PersuasionInstance& inst, const Belief& xi);

/// Transition matrices paired with the built-in instances.
StochasticMatrix appendix_a_matrix();
StochasticMatrix periodic_matrix();

/// Closed-form discounted value of the "appendixA" problem under its
/// matrix, as a function of the first belief coordinate p.
double appendix_a_value(double delta, double p);

}  // namespace persuade
