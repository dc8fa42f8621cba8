#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "hyperrel/common.hpp"
#include "hyperrel/exact.hpp"
#include "hyperrel/hypergraph.hpp"
#include "hyperrel/mincut.hpp"
#include "hyperrel/stats.hpp"

namespace hyperrel {

/// Tuning knobs for the enumeration estimator. The "paper" profile keeps the
/// published constants, which are only runnable on toy inputs; the "desk"
/// profile trades the single-run variance guarantee for tractable counts and
/// relies on an external median-of-means amplifier.
struct Alg1Profile {
  std::string name = "paper";
  /// Exponent c: Monte Carlo handles p^lambda >= n^-c, and random
  /// contraction keeps each edge with probability q = n^(-c/lambda).
  double mc_exponent = 10.0;
  double reps_coeff = 2.0;
  double reps_exponent = 12.0;
  std::uint32_t small_n_threshold = 8;
  std::size_t wedge_cap = 25;
  /// Hard cap on per-node repetition counts; 0 means uncapped.
  std::uint64_t reps_cap = 0;
  std::uint64_t recursion_budget = 10'000'000;

  static Alg1Profile paper() { return Alg1Profile{}; }

  static Alg1Profile desk() {
    Alg1Profile p;
    p.name = "desk";
    p.mc_exponent = 2.0;
    p.reps_exponent = 4.0;
    p.reps_cap = 16384;
    return p;
  }

  std::uint64_t capped(double count) const {
    if (!(count >= 1.0)) return 1;
    std::uint64_t c = count > 1e18 ? std::uint64_t(1) << 62 : static_cast<std::uint64_t>(count);
    if (reps_cap > 0) c = std::min(c, reps_cap);
    return c;
  }

  std::uint64_t contraction_reps(std::uint32_t n) const {
    return capped(reps_coeff * std::pow(static_cast<double>(n), reps_exponent));
  }

  std::uint64_t mc_trials(std::uint32_t n) const {
    return capped(std::pow(static_cast<double>(n), mc_exponent));
  }
};

struct Alg1Branch {
  Hypergraph graph;
  double weight = 0.0;
};

/// Deterministic decomposition of an existentially large hypergraph over the
/// first large edge (rank > n/2, input order) that survives. Branch i < l
/// deletes the first i large edges and contracts the (i+1)-th, carrying
/// weight p^i (1-p); the final branch deletes all l of them and carries
/// weight p^l. The weights sum to 1 and every branch is strictly smaller:
/// contracting a large edge at least halves the vertex count, and the final
/// branch is universally small.
inline std::vector<Alg1Branch> large_edge_split(const Hypergraph& g, double p) {
  std::vector<std::uint32_t> larges = large_edge_ids(g);
  if (larges.empty()) throw std::invalid_argument("hypergraph has no edge of rank > n/2");
  std::vector<Alg1Branch> branches;
  branches.reserve(larges.size() + 1);
  double p_pow_i = 1.0;
  for (std::size_t i = 0; i < larges.size(); ++i) {
    RemovalResult removed = remove_edges(
        g, std::span<const std::uint32_t>(larges.data(), i));
    std::uint32_t contract_id = static_cast<std::uint32_t>(removed.edge_image[larges[i]]);
    ContractionResult cr = contract(removed.graph, std::vector<std::uint32_t>{contract_id});
    branches.push_back({std::move(cr.graph), p_pow_i * (1.0 - p)});
    p_pow_i *= p;
  }
  RemovalResult rest = remove_edges(g, std::span<const std::uint32_t>(larges));
  branches.push_back({std::move(rest.graph), p_pow_i});
  return branches;
}

namespace detail {

inline double alg1_recurse(const Hypergraph& g, double p, const Alg1Profile& prof,
                           RunCounters& counters, std::uint64_t seed) {
  counters.enter();
  const std::uint32_t n = g.num_vertices();
  if (n == 1) return 0.0;
  if (!is_connected(g)) return 1.0;

  const std::uint32_t lambda = min_cut_value(g);
  const double log_n = std::log(static_cast<double>(n));

  // Monte Carlo once the disconnection probability is at least n^-c.
  if (static_cast<double>(lambda) * std::log(p) >= -prof.mc_exponent * log_n) {
    std::uint64_t trials = prof.mc_trials(n);
    counters.samples += trials;
    return monte_carlo_unreliability(g, p, trials, derive_seed(seed, 0)).estimate;
  }

  if (n <= prof.small_n_threshold) {
    WeightedHypergraph wh = merge_parallel(g);
    if (wh.wedges.size() <= prof.wedge_cap) return exact_unreliability(g, p, prof.wedge_cap);
  }

  if (is_universally_small(g)) {
    const double q = std::exp(-prof.mc_exponent * log_n / static_cast<double>(lambda));
    assert(q > p);  // otherwise the Monte Carlo case would have fired
    const double p_child = p / q;
    const std::uint64_t reps = prof.contraction_reps(n);
    counters.samples += reps;
    double sum = 0.0;
    for (std::uint64_t i = 0; i < reps; ++i) {
      const std::uint64_t branch_seed = derive_seed(seed, i + 1);
      Rng rng = make_rng(branch_seed);
      ContractionResult cr = random_contract(g, q, rng);
      if (p_child >= 1.0) {
        // Degenerate coupling: every surviving edge fails, so the sample
        // reduces to the disconnection indicator.
        sum += cr.map.num_super >= 2 ? 1.0 : 0.0;
        continue;
      }
      assert(recursion_progress(n, g.num_edges(), p, cr.map.num_super, cr.graph.num_edges(),
                                p_child));
      sum += alg1_recurse(cr.graph, p_child, prof, counters, derive_seed(branch_seed, 1));
    }
    return sum / static_cast<double>(reps);
  }

  std::vector<Alg1Branch> branches = large_edge_split(g, p);
  double estimate = 0.0;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    assert(recursion_progress(n, g.num_edges(), p, branches[i].graph.num_vertices(),
                              branches[i].graph.num_edges(), p));
    estimate +=
        branches[i].weight * alg1_recurse(branches[i].graph, p, prof, counters, derive_seed(seed, i + 1));
  }
  return estimate;
}

}  // namespace detail

/// Recursive random-contraction estimator with explicit enumeration over
/// large edges. Unbiased for the disconnection probability; under the paper
/// profile the relative variance of a single run is at most 1.
inline EstimatorRun estimate_alg1(const Hypergraph& g, double p, const Alg1Profile& prof,
                                  std::uint64_t seed) {
  if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("failure probability must be in (0,1)");
  RunCounters counters;
  counters.budget = prof.recursion_budget;
  EstimatorRun run;
  run.estimate = detail::alg1_recurse(g, p, prof, counters, seed);
  run.samples_used = std::max<std::uint64_t>(1, counters.samples);
  run.seed = seed;
  run.recursion_calls = counters.calls;
  return run;
}

}  // namespace hyperrel
