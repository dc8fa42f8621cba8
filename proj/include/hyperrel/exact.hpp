#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "hyperrel/common.hpp"
#include "hyperrel/dnf.hpp"
#include "hyperrel/hypergraph.hpp"

namespace hyperrel {

struct WeightedEdge {
  Hypergraph::Edge vertices;
  std::uint32_t multiplicity = 1;
};

/// Hypergraph with parallel edges collapsed into multiplicities. A weighted
/// edge of multiplicity w fails only when all w copies fail, i.e. with
/// probability p^w.
struct WeightedHypergraph {
  std::uint32_t num_vertices = 1;
  std::vector<WeightedEdge> wedges;

  std::uint32_t total_multiplicity() const {
    std::uint32_t total = 0;
    for (const auto& we : wedges) total += we.multiplicity;
    return total;
  }
};

inline WeightedHypergraph merge_parallel(const Hypergraph& g) {
  std::map<Hypergraph::Edge, std::uint32_t> counts;
  for (const auto& e : g.edges()) ++counts[e];
  WeightedHypergraph wh;
  wh.num_vertices = g.num_vertices();
  wh.wedges.reserve(counts.size());
  for (auto& [edge, mult] : counts) wh.wedges.push_back({edge, mult});
  return wh;
}

namespace detail {

struct KahanSum {
  double sum = 0.0, carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace detail

/// Exact disconnection probability when every edge fails independently with
/// probability p, by enumerating all failure subsets of the merged weighted
/// edges. Exact up to IEEE rounding; the subset sum uses compensated
/// summation in a fixed order so results are bit-stable.
inline double exact_unreliability(const Hypergraph& g, double p, std::size_t wedge_cap = 25) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("failure probability must be in [0,1]");
  const std::uint32_t n = g.num_vertices();
  if (n == 1) return 0.0;

  WeightedHypergraph wh = merge_parallel(g);
  const std::size_t k = wh.wedges.size();
  if (k > wedge_cap) throw TooLargeForExactError(k, wedge_cap);
  if (k == 0) return 1.0;

  std::vector<double> fail(k), survive(k);
  for (std::size_t i = 0; i < k; ++i) {
    fail[i] = std::pow(p, static_cast<double>(wh.wedges[i].multiplicity));
    survive[i] = 1.0 - fail[i];
  }

  detail::KahanSum total;
  const std::uint64_t subsets = 1ull << k;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    double prob = 1.0;
    for (std::size_t i = 0; i < k; ++i) prob *= (mask >> i & 1ull) ? fail[i] : survive[i];
    if (prob == 0.0) continue;
    DisjointSet dsu(n);
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1ull) continue;  // failed edges do not connect
      const auto& e = wh.wedges[i].vertices;
      for (std::size_t j = 1; j < e.size(); ++j) dsu.unite(e[0], e[j]);
    }
    if (dsu.components() >= 2) total.add(prob);
  }
  return total.sum;
}

/// Exact satisfaction probability of a DNF formula with independent
/// p-biased variables, by enumerating all assignments.
inline double exact_dnf_probability(const DnfFormula& f, double p, std::uint32_t max_vars = 20) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("variable probability must be in [0,1]");
  if (f.num_vars > max_vars)
    throw TooLargeForExactError(f.num_vars, max_vars);
  if (f.clauses.empty()) return 0.0;

  const std::uint32_t n = f.num_vars;
  std::vector<std::uint64_t> pos_mask(f.clauses.size(), 0), neg_mask(f.clauses.size(), 0);
  for (std::size_t c = 0; c < f.clauses.size(); ++c) {
    for (std::uint32_t v : f.clauses[c].pos) pos_mask[c] |= 1ull << v;
    for (std::uint32_t v : f.clauses[c].neg) neg_mask[c] |= 1ull << v;
  }

  detail::KahanSum total;
  const std::uint64_t assignments = 1ull << n;
  for (std::uint64_t mask = 0; mask < assignments; ++mask) {
    bool sat = false;
    for (std::size_t c = 0; c < f.clauses.size(); ++c) {
      if ((mask & pos_mask[c]) == pos_mask[c] && (mask & neg_mask[c]) == 0) {
        sat = true;
        break;
      }
    }
    if (!sat) continue;
    int trues = std::popcount(mask);
    total.add(std::pow(p, trues) * std::pow(1.0 - p, static_cast<int>(n) - trues));
  }
  return total.sum;
}

}  // namespace hyperrel
