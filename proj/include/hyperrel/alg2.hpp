#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hyperrel/common.hpp"
#include "hyperrel/dnf.hpp"
#include "hyperrel/exact.hpp"
#include "hyperrel/hypergraph.hpp"
#include "hyperrel/mincut.hpp"
#include "hyperrel/stats.hpp"

namespace hyperrel {

/// Tuning knobs for the DNF-sampling estimator. As with the enumeration
/// estimator, the "paper" profile keeps the published constants and is only
/// runnable on toy inputs; the "desk" profile uses tractable counts and
/// leans on external amplification.
struct Alg2Profile {
  std::string name = "paper";
  /// Contraction exponent for the no-large-edges case: q = n^(-c/lambda).
  double c = 10.0;
  /// Contraction exponent for partial revelation: q = n^(-c_pr/beta).
  double c_pr = 700.0;
  double full_coeff = 8.0, full_exp = 2.0;
  double partial_coeff = 32.0, partial_exp = 704.0;
  double us_coeff = 16.0, us_exp = 12.0;
  std::uint32_t small_n_threshold = 8;
  std::size_t wedge_cap = 25;
  /// Hard cap on partial-revelation and contraction repetition counts;
  /// 0 means uncapped.
  std::uint64_t reps_cap = 0;
  std::uint64_t recursion_budget = 10'000'000;
  /// Single-shot count for each unbiased DNF probability estimate;
  /// 0 means "use the clause count", which brings relative variance to <= 1.
  std::uint64_t klm_inner = 0;

  static Alg2Profile paper() { return Alg2Profile{}; }

  static Alg2Profile desk() {
    Alg2Profile p;
    p.name = "desk";
    p.c = 2.0;
    p.c_pr = 4.0;
    p.partial_exp = 4.0;
    p.us_exp = 4.0;
    p.reps_cap = 8192;
    return p;
  }

  std::uint64_t saturate(double count) const {
    if (!(count >= 1.0)) return 1;
    return count > 1e18 ? std::uint64_t(1) << 62 : static_cast<std::uint64_t>(count);
  }

  std::uint64_t capped(double count) const {
    std::uint64_t c0 = saturate(count);
    return reps_cap > 0 ? std::min(c0, reps_cap) : c0;
  }

  std::uint64_t full_reps(std::uint32_t n) const {
    return saturate(full_coeff * std::pow(static_cast<double>(n), full_exp));
  }
  std::uint64_t partial_reps(std::uint32_t n) const {
    return capped(partial_coeff * std::pow(static_cast<double>(n), partial_exp));
  }
  std::uint64_t us_reps(std::uint32_t n) const {
    return capped(us_coeff * std::pow(static_cast<double>(n), us_exp));
  }
  std::uint64_t inner_trials(const DnfFormula& f) const {
    return klm_inner > 0 ? klm_inner : std::max<std::uint64_t>(1, f.num_clauses());
  }
};

/// Recursion state threaded through the DNF-sampling estimator. The additive
/// budget delta and N = ceil(log2(1/delta)) are fixed at the root; phase_n
/// and large_ids track the current phase, whose edge partition stays frozen
/// until the vertex count drops to 80% of the phase node's.
struct Alg2Context {
  double p = 0.0;
  double delta = 0.0;
  std::uint32_t N = 0;
  std::uint32_t phase_n = 0;
  std::vector<std::uint32_t> large_ids;
  std::uint32_t depth = 0;
  /// Largest value gamma = |E_large| - min large-degree may take at this
  /// node; gamma cannot grow inside a phase.
  std::int64_t gamma_limit = std::numeric_limits<std::int64_t>::max();
};

inline Alg2Context root_context(const Hypergraph& g, double p, double delta) {
  Alg2Context ctx;
  ctx.p = p;
  ctx.delta = delta;
  ctx.N = static_cast<std::uint32_t>(std::max(1.0, std::ceil(std::log2(1.0 / delta))));
  ctx.phase_n = g.num_vertices();
  ctx.large_ids = large_edge_ids(g);
  return ctx;
}

/// Carry the context across one contraction. A child whose vertex count
/// drops to at most 0.8x the phase node's starts a new phase and recomputes
/// the large-edge set from current ranks; otherwise the tracked set is
/// inherited through the edge mapping. A tracked edge vanishing outside a
/// phase boundary indicates a conditioning bug and is reported.
inline Alg2Context update_phase(const Alg2Context& ctx, const ContractionResult& cr) {
  Alg2Context child = ctx;
  child.depth = ctx.depth + 1;
  const std::uint32_t n_new = cr.map.num_super;
  if (10ull * n_new <= 8ull * ctx.phase_n) {
    child.phase_n = n_new;
    child.large_ids = large_edge_ids(cr.graph);
    child.gamma_limit = std::numeric_limits<std::int64_t>::max();
    return child;
  }
  child.large_ids.clear();
  child.large_ids.reserve(ctx.large_ids.size());
  for (std::uint32_t id : ctx.large_ids) {
    std::int32_t mapped = cr.edge_image[id];
    if (mapped < 0)
      throw InvariantViolationError("tracked large edge contracted away without a phase change");
    child.large_ids.push_back(static_cast<std::uint32_t>(mapped));
  }
  return child;
}

/// Cut statistics steering the revelation cases; recomputed at every node,
/// never cached across contractions. The min cut of the large-edge
/// sub-hypergraph equals its minimum degree because the set is pairwise
/// intersecting; a vertex with no incident large edge gives lambda_large = 0
/// (that sub-hypergraph is already disconnected).
struct RevelationParams {
  std::uint32_t lambda = 0;
  std::uint32_t lambda_large = 0;
  std::int64_t beta = 0;
  std::int64_t gamma = 0;
};

inline RevelationParams revelation_params(const Hypergraph& g,
                                          const std::vector<std::uint32_t>& large_ids,
                                          std::uint32_t lambda) {
  RevelationParams rp;
  rp.lambda = lambda;
  std::vector<std::uint32_t> deg = degrees_in(g, large_ids);
  std::uint32_t min_deg = std::numeric_limits<std::uint32_t>::max();
  for (std::uint32_t v = 0; v < g.num_vertices(); ++v) min_deg = std::min(min_deg, deg[v]);
  rp.lambda_large = min_deg;
  rp.beta = static_cast<std::int64_t>(lambda) - static_cast<std::int64_t>(min_deg);
  rp.gamma = static_cast<std::int64_t>(large_ids.size()) - static_cast<std::int64_t>(min_deg);
  return rp;
}

namespace detail {

class Alg2Engine {
 public:
  Alg2Engine(const Alg2Profile& prof, RunCounters& counters) : prof_(prof), counters_(counters) {}

  double recurse(const Hypergraph& g, const Alg2Context& ctx, std::uint64_t seed) {
    counters_.enter();
    const std::uint32_t n = g.num_vertices();
    if (n == 1) return 0.0;
    if (!is_connected(g)) return 1.0;
    // p/q can round up to exactly 1 when p sits within an ulp of q; with
    // certain failure every edge is gone and any n >= 2 node disconnects.
    if (ctx.p >= 1.0) return 1.0;

    if (n <= prof_.small_n_threshold &&
        merge_parallel(g).wedges.size() <= prof_.wedge_cap)
      return exact_unreliability(g, ctx.p, prof_.wedge_cap);

    const std::uint32_t lambda = min_cut_value(g);
    // Below p^lambda < 2^(-3N) even the n^2 p^lambda ceiling on the
    // disconnection probability is under delta, so 0 is close enough.
    if (static_cast<double>(lambda) * std::log(ctx.p) < -3.0 * ctx.N * std::log(2.0)) return 0.0;

#ifndef NDEBUG
    check_phase_invariants(g, ctx);
#endif

    if (ctx.large_ids.empty()) return universally_small_step(g, ctx, lambda, seed);

    RevelationParams rp = revelation_params(g, ctx.large_ids, lambda);
    assert(rp.beta >= 0 && rp.gamma >= 0);
    assert(rp.gamma <= ctx.gamma_limit);
    if (rp.beta * static_cast<std::int64_t>(ctx.N) < static_cast<std::int64_t>(lambda))
      return full_revelation(g, ctx, seed);
    return partial_revelation(g, ctx, rp, seed);
  }

  /// Random contraction when no large edges are tracked; mirrors the
  /// enumeration estimator's contraction branch. If the target rate q falls
  /// to p, the coupled recursion degenerates to the plain disconnection
  /// indicator (each kept edge would fail with probability p/q = 1).
  double universally_small_step(const Hypergraph& g, const Alg2Context& ctx, std::uint32_t lambda,
                                std::uint64_t seed) {
    const std::uint32_t n = g.num_vertices();
    double q = std::exp(-prof_.c * std::log(static_cast<double>(n)) / lambda);
    const bool degenerate = q <= ctx.p;
    if (degenerate) q = ctx.p;
    const std::uint64_t reps = prof_.us_reps(n);
    counters_.samples += reps;
    double sum = 0.0;
    for (std::uint64_t i = 0; i < reps; ++i) {
      const std::uint64_t branch_seed = derive_seed(seed, i + 1);
      Rng rng = make_rng(branch_seed);
      ContractionResult cr = random_contract(g, q, rng);
      if (degenerate || ctx.p / q >= 1.0) {
        sum += cr.map.num_super >= 2 ? 1.0 : 0.0;
        continue;
      }
      Alg2Context child = update_phase(ctx, cr);
      child.p = ctx.p / q;
      ++(child.phase_n == ctx.phase_n ? counters_.inherited_children : counters_.phase_children);
      assert(recursion_progress(n, g.num_edges(), ctx.p, cr.map.num_super,
                                cr.graph.num_edges(), child.p));
      sum += recurse(cr.graph, child, derive_seed(branch_seed, 1));
    }
    return sum / static_cast<double>(reps);
  }

  /// Base case for beta < lambda/N: sample the tracked edges at rate p
  /// conditioned on them not contracting everything together, finish the
  /// remaining edges unconditioned, and score the disconnection indicator.
  /// Scaled by an unbiased estimate of the conditioning probability.
  double full_revelation(const Hypergraph& g, const Alg2Context& ctx, std::uint64_t seed) {
    return revelation_round(g, ctx, ctx.p, prof_.full_reps(g.num_vertices()), true, seed);
  }

  /// Recursive case for beta >= lambda/N: identical conditioned sampling at
  /// the more aggressive rate q = n^(-c_pr/beta), followed by recursion at
  /// failure probability p/q. q is clamped to at least p, in which case the
  /// round degenerates to the indicator form.
  double partial_revelation(const Hypergraph& g, const Alg2Context& ctx,
                            const RevelationParams& rp, std::uint64_t seed) {
    const std::uint32_t n = g.num_vertices();
    double q = std::exp(-prof_.c_pr * std::log(static_cast<double>(n)) / static_cast<double>(rp.beta));
    bool degenerate = false;
    if (q <= ctx.p) {
      q = ctx.p;
      degenerate = true;
    }
    return revelation_round(g, ctx, q, prof_.partial_reps(n), degenerate, seed,
                            rp.gamma);
  }

 private:
#ifndef NDEBUG
  void check_phase_invariants(const Hypergraph& g, const Alg2Context& ctx) const {
    const std::uint64_t n = g.num_vertices();
    std::vector<char> is_large(g.num_edges(), 0);
    for (std::uint32_t id : ctx.large_ids) {
      assert(id < g.num_edges());
      is_large[id] = 1;
      assert(g.rank(id) >= 2);
      assert(10ull * g.rank(id) >= 3ull * n);  // tracked edges keep large rank
    }
    for (std::size_t i = 0; i < g.num_edges(); ++i)
      if (!is_large[i]) assert(10ull * g.rank(i) <= 7ull * n);
    assert(is_pairwise_intersecting(g, ctx.large_ids));
  }
#endif

  /// One conditioned sampling round shared by both revelation cases.
  /// `indicator` selects the base-case scoring; otherwise each sample
  /// recurses at failure probability p/q.
  double revelation_round(const Hypergraph& g, const Alg2Context& ctx, double q,
                          std::uint64_t reps, bool indicator, std::uint64_t seed,
                          std::int64_t gamma = std::numeric_limits<std::int64_t>::max()) {
    DnfFormula f = degree_cut_dnf(g, ctx.large_ids);
    if (clause_weights(f, q).total <= 0.0) return 0.0;  // unreachable for sane inputs

    std::vector<char> is_large(g.num_edges(), 0);
    for (std::uint32_t id : ctx.large_ids) is_large[id] = 1;

    counters_.samples += reps;
    double sum = 0.0;
    std::vector<char> selected(g.num_edges());
    for (std::uint64_t i = 0; i < reps; ++i) {
      const std::uint64_t branch_seed = derive_seed(seed, 2 * i + 2);
      Rng rng = make_rng(branch_seed);
      std::vector<char> fails = klm_sample_satisfying(f, q, rng);
      for (std::size_t e = 0; e < g.num_edges(); ++e)
        selected[e] = is_large[e] ? 0 : (bernoulli(rng, 1.0 - q) ? 1 : 0);
      for (std::size_t j = 0; j < ctx.large_ids.size(); ++j)
        if (!fails[j]) selected[ctx.large_ids[j]] = 1;

      if (indicator) {
        sum += contracted_vertex_count(g, selected) >= 2 ? 1.0 : 0.0;
        continue;
      }
      ContractionResult cr = contract_by_selection(g, selected);
      Alg2Context child = update_phase(ctx, cr);
      child.p = ctx.p / q;
      if (child.phase_n == ctx.phase_n) {
        child.gamma_limit = gamma;  // same phase: gamma may not grow
        ++counters_.inherited_children;
      } else {
        ++counters_.phase_children;
      }
      assert(recursion_progress(g.num_vertices(), g.num_edges(), ctx.p, cr.map.num_super,
                                cr.graph.num_edges(), child.p));
      sum += recurse(cr.graph, child, derive_seed(branch_seed, 1));
    }

    Rng z_rng = make_rng(derive_seed(seed, 1));
    const std::uint64_t inner = prof_.inner_trials(f);
    counters_.samples += inner;
    double z = klm_unbiased_estimate(f, q, inner, z_rng);
    return (sum / static_cast<double>(reps)) * z;
  }

  const Alg2Profile& prof_;
  RunCounters& counters_;
};

}  // namespace detail

/// DNF-sampling estimator with phase-tracked recursion. Returns an estimate
/// whose expectation sits within [u - delta, u] for the true disconnection
/// probability u; under the paper profile its delta-capped relative variance
/// is at most 3. When delta >= 1/n the recursion is skipped entirely in
/// favor of plain Monte Carlo, which already meets the contract at that
/// accuracy.
inline EstimatorRun estimate_alg2(const Hypergraph& g, double p, double delta,
                                  const Alg2Profile& prof, std::uint64_t seed) {
  if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("failure probability must be in (0,1)");
  if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("additive budget must be in (0,1)");

  RunCounters counters;
  counters.budget = prof.recursion_budget;
  EstimatorRun run;
  run.seed = seed;

  if (delta * static_cast<double>(g.num_vertices()) >= 1.0) {
    std::uint64_t trials = prof.saturate(std::ceil(1.0 / delta));
    EstimatorRun mc = monte_carlo_unreliability(g, p, trials, derive_seed(seed, 0));
    run.estimate = mc.estimate;
    run.samples_used = trials;
    run.recursion_calls = 0;
    return run;
  }

  detail::Alg2Engine engine(prof, counters);
  run.estimate = engine.recurse(g, root_context(g, p, delta), seed);
  run.samples_used = std::max<std::uint64_t>(1, counters.samples);
  run.recursion_calls = counters.calls;
  run.additive_bias_bound = delta;
  return run;
}

}  // namespace hyperrel
