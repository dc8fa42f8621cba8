#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperrel {

using Rng = std::mt19937_64;

/// Uniform double in [0, 1) built from the top 53 bits of one draw, so the
/// value depends only on the generator state and not on any
/// distribution-object internals.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double prob) { return uniform01(rng) < prob; }

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for the i-th independent sample stream of a computation seeded by
/// `base`. Every module derives per-sample generators through this single
/// function, which keeps results reproducible no matter how samples are
/// scheduled.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

// Error taxonomy. Estimation errors signal that a run could not complete
// under its configured limits; they are never downgraded to a truncated
// result.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct AlreadyDisconnectedError : Error {
  AlreadyDisconnectedError() : Error("AlreadyDisconnected: input hypergraph is disconnected") {}
};

struct TooLargeForExactError : Error {
  explicit TooLargeForExactError(std::size_t wedges, std::size_t cap)
      : Error("TooLargeForExact: " + std::to_string(wedges) +
              " distinct weighted hyperedges exceed cap " + std::to_string(cap)) {}
};

struct UnsatisfiableFormulaError : Error {
  UnsatisfiableFormulaError() : Error("UnsatisfiableFormula: no clause can be satisfied") {}
};

struct NotPairwiseIntersectingError : Error {
  NotPairwiseIntersectingError() : Error("NotPairwiseIntersecting: two tracked edges are disjoint") {}
};

struct BudgetExhaustedError : Error {
  explicit BudgetExhaustedError(std::uint64_t budget)
      : Error("BudgetExhausted: recursion budget of " + std::to_string(budget) +
              " calls exceeded") {}
};

struct UndefinedRelativeVarianceError : Error {
  UndefinedRelativeVarianceError()
      : Error("UndefinedRelativeVariance: zero mean with zero cap") {}
};

/// Internal consistency failure; indicates a bug, not bad input.
struct InvariantViolationError : Error {
  explicit InvariantViolationError(const std::string& what)
      : Error("InvariantViolation: " + what) {}
};

struct ParseError : Error {
  ParseError(std::size_t line, const std::string& what)
      : Error("parse error at line " + std::to_string(line) + ": " + what), line_number(line) {}
  std::size_t line_number;
};

/// Union-find over a fixed universe, used for connectivity and contraction.
class DisjointSet {
 public:
  explicit DisjointSet(std::uint32_t n) : parent_(n), components_(n) {
    for (std::uint32_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    // Attach the larger id under the smaller so that the root of every
    // component is its smallest member.
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --components_;
    return true;
  }

  std::uint32_t components() const { return components_; }

 private:
  std::vector<std::uint32_t> parent_;
  std::uint32_t components_;
};

}  // namespace hyperrel
