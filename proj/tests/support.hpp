#pragma once

// Shared helpers for the test suites: independent reference oracles and
// randomized instance generators. Everything here stays deliberately naive;
// these routines are what the library is checked against, so they must not
// share code with the implementation paths they validate.

#include <cmath>
#include <cstdint>
#include <vector>

#include "hyperrel/common.hpp"
#include "hyperrel/dnf.hpp"
#include "hyperrel/hypergraph.hpp"

namespace testsupport {

using hyperrel::DisjointSet;
using hyperrel::Hypergraph;
using hyperrel::Rng;

inline bool subset_connected(const Hypergraph& g, std::uint64_t surviving_mask) {
  DisjointSet dsu(g.num_vertices());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    if (!(surviving_mask >> i & 1ull)) continue;
    const auto& e = g.edge(i);
    for (std::size_t j = 1; j < e.size(); ++j) dsu.unite(e[0], e[j]);
  }
  return dsu.components() == 1;
}

/// Disconnection probability by enumerating all 2^m subsets of the raw
/// (unmerged) edge list, each edge failing independently with probability p.
inline double unmerged_unreliability(const Hypergraph& g, double p) {
  if (g.num_vertices() == 1) return 0.0;
  const std::size_t m = g.num_edges();
  if (m > 24) throw std::invalid_argument("unmerged oracle capped at 24 edges");
  double total = 0.0;
  for (std::uint64_t fail_mask = 0; fail_mask < (1ull << m); ++fail_mask) {
    double prob = 1.0;
    for (std::size_t i = 0; i < m; ++i) prob *= (fail_mask >> i & 1ull) ? p : 1.0 - p;
    if (!subset_connected(g, ~fail_mask)) total += prob;
  }
  return total;
}

/// Uniformly random connected hypergraph: a random spanning tree of rank-2
/// edges plus extra edges of random rank in [2, max_rank].
inline Hypergraph random_connected_hypergraph(std::uint32_t n, std::size_t m,
                                              std::uint32_t max_rank, Rng& rng) {
  std::vector<Hypergraph::Edge> edges;
  for (std::uint32_t v = 1; v < n; ++v) {
    std::uint32_t parent = static_cast<std::uint32_t>(hyperrel::uniform01(rng) * v);
    edges.push_back({parent, v});
  }
  while (edges.size() < m) {
    std::uint32_t rank =
        2 + static_cast<std::uint32_t>(hyperrel::uniform01(rng) * (max_rank - 1));
    rank = std::min(rank, n);
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    Hypergraph::Edge e;
    for (std::uint32_t i = 0; i < rank; ++i) {
      std::size_t j = i + static_cast<std::size_t>(hyperrel::uniform01(rng) * (n - i));
      std::swap(pool[i], pool[j]);
      e.push_back(pool[i]);
    }
    edges.push_back(std::move(e));
  }
  return Hypergraph(n, std::move(edges));
}

/// Random connected hypergraph guaranteed to carry at least one edge of rank
/// greater than n/2.
inline Hypergraph random_existentially_large(std::uint32_t n, std::size_t m, Rng& rng) {
  Hypergraph base = random_connected_hypergraph(n, m > 0 ? m - 1 : 0, n / 2, rng);
  std::vector<Hypergraph::Edge> edges = base.edges();
  std::uint32_t rank = n / 2 + 1 +
                       static_cast<std::uint32_t>(hyperrel::uniform01(rng) * (n - n / 2 - 1));
  std::vector<std::uint32_t> pool(n);
  for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
  Hypergraph::Edge e;
  for (std::uint32_t i = 0; i < rank; ++i) {
    std::size_t j = i + static_cast<std::size_t>(hyperrel::uniform01(rng) * (n - i));
    std::swap(pool[i], pool[j]);
    e.push_back(pool[i]);
  }
  edges.push_back(std::move(e));
  return Hypergraph(n, std::move(edges));
}

/// Upper critical value of the chi-square distribution via the
/// Wilson-Hilferty cube approximation; accurate to a few percent, which is
/// plenty for goodness-of-fit gates.
inline double chi_square_critical(std::uint32_t dof, double z_upper) {
  double k = static_cast<double>(dof);
  double t = 1.0 - 2.0 / (9.0 * k) + z_upper * std::sqrt(2.0 / (9.0 * k));
  return k * t * t * t;
}

inline double standard_error(double mean, double second_moment, std::uint64_t count) {
  double variance = std::max(0.0, second_moment - mean * mean);
  return std::sqrt(variance / static_cast<double>(count));
}

/// Enumerate satisfying assignments of a small formula.
inline std::vector<std::uint64_t> satisfying_assignments(const hyperrel::DnfFormula& f) {
  std::vector<std::uint64_t> sat;
  for (std::uint64_t mask = 0; mask < (1ull << f.num_vars); ++mask) {
    std::vector<char> assignment(f.num_vars);
    for (std::uint32_t v = 0; v < f.num_vars; ++v) assignment[v] = (mask >> v & 1ull) ? 1 : 0;
    if (hyperrel::formula_satisfied(f, assignment)) sat.push_back(mask);
  }
  return sat;
}

inline double assignment_probability(std::uint64_t mask, std::uint32_t num_vars, double p) {
  double prob = 1.0;
  for (std::uint32_t v = 0; v < num_vars; ++v) prob *= (mask >> v & 1ull) ? p : 1.0 - p;
  return prob;
}

}  // namespace testsupport
