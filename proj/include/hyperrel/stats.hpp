#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hyperrel/common.hpp"
#include "hyperrel/hypergraph.hpp"

namespace hyperrel {

/// Result of one estimator run together with its accounting. For unbiased
/// estimators the additive bias bound is 0; estimators that trade bias for
/// speed report their declared bound instead.
struct EstimatorRun {
  double estimate = 0.0;
  std::uint64_t samples_used = 0;
  std::uint64_t seed = 0;
  double additive_bias_bound = 0.0;
  std::uint64_t recursion_calls = 0;
};

/// Shared bookkeeping threaded through recursive estimators. Exceeding the
/// call budget raises instead of truncating the run.
struct RunCounters {
  std::uint64_t calls = 0;
  std::uint64_t samples = 0;
  std::uint64_t budget = 0;
  /// Children that started a new phase vs. children that inherited the
  /// tracked edge set (phase-based recursions only).
  std::uint64_t phase_children = 0;
  std::uint64_t inherited_children = 0;

  void enter() {
    if (++calls > budget) throw BudgetExhaustedError(budget);
  }
};

#ifndef NDEBUG
namespace detail {
/// Each recursive call must strictly shrink (n, m, ceil(m ln(1/p))) in some
/// coordinate, otherwise the recursion could fail to terminate.
inline bool recursion_progress(std::uint32_t n_parent, std::size_t m_parent, double p_parent,
                               std::uint32_t n_child, std::size_t m_child, double p_child) {
  if (n_child < n_parent || m_child < m_parent) return true;
  auto kappa = [](std::size_t m, double p) {
    return std::ceil(static_cast<double>(m) * std::log(1.0 / p));
  };
  return kappa(m_child, p_child) < kappa(m_parent, p_parent);
}
}  // namespace detail
#endif

/// Plain Monte Carlo estimate of the disconnection probability: delete each
/// edge independently with probability p and count disconnected outcomes.
/// Trial i draws from the generator seeded derive_seed(seed, i), so the
/// result does not depend on how trials are scheduled.
inline EstimatorRun monte_carlo_unreliability(const Hypergraph& g, double p, std::uint64_t trials,
                                              std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("failure probability must be in [0,1]");
  const std::uint32_t n = g.num_vertices();
  std::uint64_t disconnected = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng = make_rng(derive_seed(seed, t));
    DisjointSet dsu(n);
    for (const auto& e : g.edges()) {
      if (bernoulli(rng, p)) continue;  // edge failed
      for (std::size_t j = 1; j < e.size(); ++j) dsu.unite(e[0], e[j]);
    }
    if (dsu.components() >= 2) ++disconnected;
  }
  EstimatorRun run;
  run.estimate = static_cast<double>(disconnected) / static_cast<double>(trials);
  run.samples_used = trials;
  run.seed = seed;
  return run;
}

/// Median of per-group means over pre-drawn samples laid out group by group.
/// Each group is summed in sorted order, so the result is bit-identical
/// under any permutation of samples within a group.
inline double median_of_means_grouped(std::span<const double> samples, std::uint32_t groups,
                                      std::uint64_t group_size) {
  if (groups < 1 || groups % 2 == 0) throw std::invalid_argument("group count must be odd");
  if (group_size < 1) throw std::invalid_argument("group size must be at least 1");
  if (samples.size() != static_cast<std::size_t>(groups) * group_size)
    throw std::invalid_argument("sample count does not match groups * group_size");
  std::vector<double> means(groups);
  std::vector<double> group(group_size);
  for (std::uint32_t gidx = 0; gidx < groups; ++gidx) {
    auto begin = samples.begin() + gidx * group_size;
    std::copy(begin, begin + group_size, group.begin());
    std::sort(group.begin(), group.end());
    double sum = 0.0;
    for (double x : group) sum += x;
    means[gidx] = sum / static_cast<double>(group_size);
  }
  std::nth_element(means.begin(), means.begin() + groups / 2, means.end());
  return means[groups / 2];
}

/// Median-of-means amplifier: draws groups * group_size samples from the
/// source (sample i sees a generator seeded derive_seed(seed, i)) and returns
/// the median of the group means. Turns any bounded-relative-variance
/// estimator into a with-high-probability approximation; groups = 1 reduces
/// to a plain mean.
inline double median_of_means(const std::function<double(Rng&)>& source, std::uint32_t groups,
                              std::uint64_t group_size, std::uint64_t seed) {
  if (groups < 1 || groups % 2 == 0) throw std::invalid_argument("group count must be odd");
  if (group_size < 1) throw std::invalid_argument("group size must be at least 1");
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(groups) * group_size);
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(groups) * group_size; ++i) {
    Rng rng = make_rng(derive_seed(seed, i));
    samples.push_back(source(rng));
  }
  return median_of_means_grouped(samples, groups, group_size);
}

namespace detail {

inline std::pair<double, double> mean_and_sample_variance(std::span<const double> samples) {
  if (samples.size() < 2) throw std::invalid_argument("need at least two samples");
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= static_cast<double>(samples.size());
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  return {mean, ss / static_cast<double>(samples.size() - 1)};
}

}  // namespace detail

/// Sample variance divided by max(mean^2, delta^2). The cap keeps the ratio
/// meaningful for estimators whose mean may drop below the additive budget
/// delta.
inline double empirical_capped_relative_variance(std::span<const double> samples, double delta) {
  auto [mean, var] = detail::mean_and_sample_variance(samples);
  double denom = std::max(mean * mean, delta * delta);
  if (denom == 0.0) throw UndefinedRelativeVarianceError();
  return var / denom;
}

/// Relative variance is the uncapped (delta = 0) case.
inline double empirical_relative_variance(std::span<const double> samples) {
  return empirical_capped_relative_variance(samples, 0.0);
}

}  // namespace hyperrel
