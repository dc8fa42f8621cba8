#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "hyperrel/common.hpp"
#include "hyperrel/hypergraph.hpp"

namespace hyperrel {

/// One conjunctive clause: all positive variables true and all negative
/// variables false. An empty clause is always satisfied.
struct DnfClause {
  std::vector<std::uint32_t> pos;
  std::vector<std::uint32_t> neg;
};

/// Disjunction of conjunctive clauses over boolean variables 0..num_vars-1.
/// Zero clauses means unsatisfiable. In the reliability setting one variable
/// tracks one hyperedge with true = "the edge fails".
struct DnfFormula {
  std::uint32_t num_vars = 0;
  std::vector<DnfClause> clauses;

  std::size_t num_clauses() const { return clauses.size(); }

  void validate() const {
    std::vector<char> seen(num_vars, 0);
    for (const auto& c : clauses) {
      for (std::uint32_t v : c.pos) {
        if (v >= num_vars) throw std::invalid_argument("literal id out of range");
        if (seen[v]) throw std::invalid_argument("variable repeated within a clause");
        seen[v] = 1;
      }
      for (std::uint32_t v : c.neg) {
        if (v >= num_vars) throw std::invalid_argument("literal id out of range");
        if (seen[v]) throw std::invalid_argument("variable repeated within a clause");
        seen[v] = 1;
      }
      for (std::uint32_t v : c.pos) seen[v] = 0;
      for (std::uint32_t v : c.neg) seen[v] = 0;
    }
  }
};

inline bool clause_satisfied(const DnfClause& c, const std::vector<char>& assignment) {
  for (std::uint32_t v : c.pos)
    if (!assignment[v]) return false;
  for (std::uint32_t v : c.neg)
    if (assignment[v]) return false;
  return true;
}

inline std::size_t count_satisfied_clauses(const DnfFormula& f, const std::vector<char>& assignment) {
  std::size_t count = 0;
  for (const auto& c : f.clauses)
    if (clause_satisfied(c, assignment)) ++count;
  return count;
}

inline bool formula_satisfied(const DnfFormula& f, const std::vector<char>& assignment) {
  for (const auto& c : f.clauses)
    if (clause_satisfied(c, assignment)) return true;
  return false;
}

/// Per-clause satisfaction probabilities u_i = p^{|pos|} (1-p)^{|neg|} and
/// their sum U. U is the normalizer of the clause-proportional proposal.
struct ClauseWeights {
  std::vector<double> weight;
  double total = 0.0;
};

inline ClauseWeights clause_weights(const DnfFormula& f, double p) {
  ClauseWeights w;
  w.weight.reserve(f.clauses.size());
  for (const auto& c : f.clauses) {
    double u = std::pow(p, static_cast<double>(c.pos.size())) *
               std::pow(1.0 - p, static_cast<double>(c.neg.size()));
    w.weight.push_back(u);
    w.total += u;
  }
  return w;
}

inline bool is_pairwise_intersecting(const Hypergraph& g, const std::vector<std::uint32_t>& ids) {
  for (std::size_t a = 0; a < ids.size(); ++a) {
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      const auto& ea = g.edge(ids[a]);
      const auto& eb = g.edge(ids[b]);
      // Sorted-merge intersection test.
      std::size_t i = 0, j = 0;
      bool share = false;
      while (i < ea.size() && j < eb.size()) {
        if (ea[i] == eb[j]) {
          share = true;
          break;
        }
        (ea[i] < eb[j]) ? ++i : ++j;
      }
      if (!share) return false;
    }
  }
  return true;
}

/// Disconnection formula of the sub-hypergraph induced by a pairwise
/// intersecting edge set: one variable per tracked edge, one all-positive
/// clause per vertex listing the tracked edges incident to it. A vertex with
/// no incident tracked edge yields an empty clause, so the formula is then
/// trivially true (that vertex is already separated).
///
/// Variables are indexed by position in `large_ids`; the caller owns the
/// correspondence back to edge indices.
inline DnfFormula degree_cut_dnf(const Hypergraph& g, const std::vector<std::uint32_t>& large_ids) {
#ifndef NDEBUG
  if (!is_pairwise_intersecting(g, large_ids)) throw NotPairwiseIntersectingError();
#endif
  DnfFormula f;
  f.num_vars = static_cast<std::uint32_t>(large_ids.size());
  f.clauses.resize(g.num_vertices());
  for (std::uint32_t j = 0; j < large_ids.size(); ++j)
    for (std::uint32_t v : g.edge(large_ids[j])) f.clauses[v].pos.push_back(j);
  return f;
}

namespace detail {

/// One proposal of the clause-proportional sampler: pick clause i with
/// probability u_i/U, force its literals, fill the rest independently at
/// rate p, then accept with probability 1/f(x) where f(x) counts satisfied
/// clauses. Accepted samples are exactly the p-biased assignments
/// conditioned on satisfying the formula.
inline bool klm_propose(const DnfFormula& f, const ClauseWeights& w, double p, Rng& rng,
                        std::vector<char>& assignment) {
  double target = uniform01(rng) * w.total;
  std::size_t pick = f.clauses.size() - 1;
  double acc = 0.0;
  for (std::size_t i = 0; i < f.clauses.size(); ++i) {
    acc += w.weight[i];
    if (target < acc) {
      pick = i;
      break;
    }
  }
  assignment.assign(f.num_vars, 0);
  std::vector<char> forced(f.num_vars, 0);
  for (std::uint32_t v : f.clauses[pick].pos) {
    assignment[v] = 1;
    forced[v] = 1;
  }
  for (std::uint32_t v : f.clauses[pick].neg) forced[v] = 1;
  for (std::uint32_t v = 0; v < f.num_vars; ++v)
    if (!forced[v]) assignment[v] = bernoulli(rng, p) ? 1 : 0;

  std::size_t sat = count_satisfied_clauses(f, assignment);
  return sat == 1 || uniform01(rng) * static_cast<double>(sat) < 1.0;
}

}  // namespace detail

/// Draw an assignment distributed as: each variable independently true with
/// probability p, conditioned on satisfying the formula. Repeats proposals
/// until one is accepted. Acceptance happens with probability at least 1/M
/// per proposal, so the loop cap of 10^4 * M consecutive rejections can only
/// trigger on a broken formula or generator and is reported loudly.
inline std::vector<char> klm_sample_satisfying(const DnfFormula& f, double p, Rng& rng,
                                               std::uint64_t* proposals_out = nullptr) {
  if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("variable probability must be in (0,1)");
  ClauseWeights w = clause_weights(f, p);
  if (w.total <= 0.0) throw UnsatisfiableFormulaError();
  const std::uint64_t max_rejections = 10000ull * std::max<std::uint64_t>(1, f.clauses.size());
  std::vector<char> assignment;
  for (std::uint64_t attempt = 0; attempt < max_rejections; ++attempt) {
    bool accepted = detail::klm_propose(f, w, p, rng, assignment);
    if (proposals_out) ++*proposals_out;
    if (accepted) return assignment;
  }
  throw InvariantViolationError("conditional sampler exceeded its rejection cap");
}

/// Unbiased estimate of the probability that the formula is satisfied when
/// each variable is independently true with probability p. Averages
/// `inner_trials` single-proposal estimators, each worth U on acceptance and
/// 0 on rejection; `inner_trials` equal to the clause count brings the
/// relative variance down to at most 1.
inline double klm_unbiased_estimate(const DnfFormula& f, double p, std::uint64_t inner_trials,
                                    Rng& rng) {
  if (inner_trials < 1) throw std::invalid_argument("inner_trials must be at least 1");
  if (p <= 0.0 || p >= 1.0) throw std::invalid_argument("variable probability must be in (0,1)");
  ClauseWeights w = clause_weights(f, p);
  if (w.total <= 0.0) return 0.0;
  std::vector<char> assignment;
  double sum = 0.0;
  for (std::uint64_t t = 0; t < inner_trials; ++t)
    if (detail::klm_propose(f, w, p, rng, assignment)) sum += w.total;
  return sum / static_cast<double>(inner_trials);
}

}  // namespace hyperrel
