#include "persuade/markov.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace persuade {

namespace {

// Strongly connected components by Kosaraju over the positivity digraph.
std::vector<int> scc_labels(const std::vector<bool>& edge, std::size_t k) {
  std::vector<std::size_t> order;
  order.reserve(k);
  std::vector<bool> seen(k, false);
  // Iterative DFS recording finish order.
  for (std::size_t s = 0; s < k; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
    seen[s] = true;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      bool descended = false;
      for (std::size_t v = next; v < k; ++v) {
        if (edge[u * k + v] && !seen[v]) {
          stack.back().second = v + 1;
          stack.emplace_back(v, 0);
          seen[v] = true;
          descended = true;
          break;
        }
      }
      if (!descended) {
        order.push_back(u);
        stack.pop_back();
      }
    }
  }
  std::vector<int> label(k, -1);
  int comp = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (label[*it] >= 0) continue;
    // BFS on the transposed graph.
    std::queue<std::size_t> q;
    q.push(*it);
    label[*it] = comp;
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      for (std::size_t v = 0; v < k; ++v) {
        if (edge[v * k + u] && label[v] < 0) {
          label[v] = comp;
          q.push(v);
        }
      }
    }
    ++comp;
  }
  return label;
}

// Period of one strongly connected component: gcd of the closed-walk
// length differences seen along a BFS tree.  Returns 0 when the component
// carries no internal edge (an acyclic singleton).
std::size_t component_period(const std::vector<bool>& edge, std::size_t k,
                             const std::vector<int>& label, int comp) {
  std::size_t root = k;
  for (std::size_t i = 0; i < k; ++i) {
    if (label[i] == comp) {
      root = i;
      break;
    }
  }
  std::vector<long> level(k, -1);
  std::queue<std::size_t> q;
  level[root] = 0;
  q.push(root);
  long g = 0;
  bool has_edge = false;
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop();
    for (std::size_t v = 0; v < k; ++v) {
      if (!edge[u * k + v] || label[v] != comp) continue;
      has_edge = true;
      if (level[v] < 0) {
        level[v] = level[u] + 1;
        q.push(v);
      } else {
        g = std::gcd(g, std::abs(level[u] + 1 - level[v]));
      }
    }
  }
  if (!has_edge) return 0;
  return g == 0 ? 0 : static_cast<std::size_t>(g);
}

ChainClassification classify(const std::vector<double>& a, std::size_t k) {
  std::vector<bool> edge(k * k);
  for (std::size_t i = 0; i < k * k; ++i) edge[i] = a[i] > kComponentTol;
  std::vector<int> label = scc_labels(edge, k);
  int comps = *std::max_element(label.begin(), label.end()) + 1;

  ChainClassification cls;
  cls.irreducible = comps == 1;
  std::size_t g = 0;
  for (int c = 0; c < comps; ++c) {
    std::size_t p = component_period(edge, k, label, c);
    if (p > 0) g = std::gcd(g, p);
  }
  cls.period = g == 0 ? 1 : g;
  cls.aperiodic = cls.period == 1;
  return cls;
}

}  // namespace

StochasticMatrix::StochasticMatrix(std::vector<std::vector<double>> rows)
    : k_(rows.size()) {
  if (k_ < 2) throw std::invalid_argument("StochasticMatrix: need k >= 2");
  a_.resize(k_ * k_);
  for (std::size_t i = 0; i < k_; ++i) {
    if (rows[i].size() != k_) {
      throw std::invalid_argument("StochasticMatrix: row " + std::to_string(i) +
                                  " has wrong length");
    }
    double total = 0.0;
    for (std::size_t j = 0; j < k_; ++j) {
      double x = rows[i][j];
      if (x < 0.0) {
        if (x < -kComponentTol) {
          throw std::invalid_argument("StochasticMatrix: negative entry in row " +
                                      std::to_string(i));
        }
        x = 0.0;
      }
      if (x > 1.0 + kComponentTol) {
        throw std::invalid_argument("StochasticMatrix: entry > 1 in row " +
                                    std::to_string(i));
      }
      a_[i * k_ + j] = std::min(x, 1.0);
      total += a_[i * k_ + j];
    }
    if (std::abs(total - 1.0) > kMassTol) {
      throw std::invalid_argument("StochasticMatrix: row " + std::to_string(i) +
                                  " sums to " + std::to_string(total));
    }
    for (std::size_t j = 0; j < k_; ++j) a_[i * k_ + j] /= total;
  }
  cls_ = classify(a_, k_);
}

Belief invariant_distribution(const StochasticMatrix& m) {
  const auto k = static_cast<Eigen::Index>(m.size());
  // Stack (M^T - I) with the all-ones normalisation row and take the
  // least-squares solution; the residual of the stacked system is zero at
  // any invariant law, so the SVD returns an exact one (minimum norm).
  Eigen::MatrixXd A(k + 1, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      A(i, j) = m(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) -
                (i == j ? 1.0 : 0.0);
    }
  }
  for (Eigen::Index j = 0; j < k; ++j) A(k, j) = 1.0;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k + 1);
  b(k) = 1.0;

  Eigen::VectorXd pi =
      A.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);

  std::vector<double> w(m.size());
  for (Eigen::Index i = 0; i < k; ++i) w[static_cast<std::size_t>(i)] = pi(i);
  Belief out{std::move(w)};

  Belief pushed = push_belief(out, m);
  if (out.l1_distance(pushed) > 1e-10) {
    throw std::runtime_error("invariant_distribution: residual exceeds 1e-10");
  }
  return out;
}

Belief push_belief(const Belief& xi, const StochasticMatrix& m, std::size_t steps) {
  if (xi.size() != m.size()) {
    throw std::invalid_argument("push_belief: dimension mismatch");
  }
  std::vector<double> cur = xi.weights();
  std::vector<double> next(cur.size());
  const std::size_t k = m.size();
  for (std::size_t s = 0; s < steps; ++s) {
    for (std::size_t j = 0; j < k; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < k; ++i) acc += cur[i] * m(i, j);
      next[j] = acc;
    }
    std::swap(cur, next);
  }
  return Belief(std::move(cur));
}

std::size_t mixing_steps(const StochasticMatrix& m, const Belief& pi, double eps,
                         std::size_t cap) {
  if (!m.ergodic()) {
    throw std::invalid_argument(
        "mixing_steps: chain is not ergodic (irreducible + aperiodic required)");
  }
  if (eps <= 0.0) throw std::invalid_argument("mixing_steps: eps must be positive");
  const std::size_t k = m.size();
  // Track all rows of M^n at once and advance one multiply per step.
  std::vector<Belief> rows;
  rows.reserve(k);
  for (std::size_t l = 0; l < k; ++l) rows.push_back(Belief::dirac(k, l));
  for (std::size_t n = 0;; ++n) {
    double worst = 0.0;
    for (const Belief& r : rows) worst = std::max(worst, r.l1_distance(pi));
    if (worst <= eps) return n;
    if (n >= cap) {
      throw std::runtime_error("mixing_steps: cap of " + std::to_string(cap) +
                               " steps exceeded");
    }
    for (Belief& r : rows) r = push_belief(r, m);
  }
}

}  // namespace persuade
