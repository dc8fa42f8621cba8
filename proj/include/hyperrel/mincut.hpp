#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "hyperrel/common.hpp"
#include "hyperrel/hypergraph.hpp"

namespace hyperrel {

namespace detail {

// Working copy used by the ordering-based minimum cut. Vertices are merged
// pairwise; edges whose image drops below rank 2 disappear (they can no
// longer cross any cut). Parallel edges stay distinct since the cut value
// counts multiplicity.
struct MincutWork {
  std::uint32_t n;
  std::vector<std::vector<std::uint32_t>> edges;

  void merge(std::uint32_t keep, std::uint32_t drop) {
    std::vector<std::vector<std::uint32_t>> next;
    next.reserve(edges.size());
    std::vector<std::uint32_t> image;
    for (const auto& e : edges) {
      image.clear();
      for (std::uint32_t v : e) {
        std::uint32_t w = (v == drop) ? keep : v;
        if (w > drop) --w;  // close the id gap left by `drop`
        image.push_back(w);
      }
      std::sort(image.begin(), image.end());
      image.erase(std::unique(image.begin(), image.end()), image.end());
      if (image.size() >= 2) next.push_back(std::move(image));
    }
    edges = std::move(next);
    --n;
  }
};

}  // namespace detail

/// Exact minimum cut value of a connected hypergraph via maximum-adjacency
/// ordering (Queyranne / Mak-Wong). Each round builds an ordering in which
/// the next vertex u maximizes the doubled attachment key
///   2 * #{edges fully absorbed by W+u} + #{edges straddling W, u and beyond},
/// equivalently minimizes cut(W+u) - cut({u}). The last two vertices of the
/// ordering form a pendant pair, so the degree of the last vertex is the
/// minimum cut separating it from the second-to-last; merging them and
/// repeating scans all n-1 candidates.
inline std::uint32_t min_cut_value(const Hypergraph& g) {
  if (g.num_vertices() < 2) throw std::invalid_argument("minimum cut needs at least two vertices");
  if (!is_connected(g)) throw AlreadyDisconnectedError();

  detail::MincutWork work{g.num_vertices(), g.edges()};
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();

  while (work.n >= 2) {
    const std::uint32_t k = work.n;
    const std::size_t m = work.edges.size();
    std::vector<std::vector<std::uint32_t>> incident(k);
    for (std::size_t i = 0; i < m; ++i)
      for (std::uint32_t v : work.edges[i]) incident[v].push_back(static_cast<std::uint32_t>(i));

    std::vector<char> in_order(k, 0);
    std::vector<std::uint32_t> members_in_w(m, 0);
    std::uint32_t prev = 0, last = 0;

    auto add_vertex = [&](std::uint32_t v) {
      in_order[v] = 1;
      for (std::uint32_t eid : incident[v]) ++members_in_w[eid];
      prev = last;
      last = v;
    };

    add_vertex(0);
    for (std::uint32_t step = 1; step < k; ++step) {
      std::uint64_t best_key = 0;
      std::uint32_t pick = k;
      for (std::uint32_t v = 0; v < k; ++v) {
        if (in_order[v]) continue;
        std::uint64_t key = 0;
        for (std::uint32_t eid : incident[v]) {
          std::uint32_t inside = members_in_w[eid];
          if (inside == 0) continue;
          key += (inside + 1 == work.edges[eid].size()) ? 2 : 1;
        }
        if (pick == k || key > best_key) {
          best_key = key;
          pick = v;
        }
      }
      add_vertex(pick);
    }

    best = std::min<std::uint32_t>(best, static_cast<std::uint32_t>(incident[last].size()));
    work.merge(std::min(prev, last), std::max(prev, last));
  }
  return best;
}

/// Reference minimum cut by enumerating all 2^(n-1)-1 bipartitions.
inline std::uint32_t brute_force_min_cut(const Hypergraph& g) {
  const std::uint32_t n = g.num_vertices();
  if (n < 2) throw std::invalid_argument("minimum cut needs at least two vertices");
  if (n > 24) throw std::invalid_argument("brute-force minimum cut capped at 24 vertices");
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  const std::uint64_t limit = 1ull << (n - 1);
  // Vertex 0 stays on side 0; masks enumerate the side assignment of 1..n-1.
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    std::uint32_t crossing = 0;
    for (const auto& e : g.edges()) {
      bool side0 = false, side1 = false;
      for (std::uint32_t v : e) {
        bool s = v > 0 && ((mask >> (v - 1)) & 1ull);
        (s ? side1 : side0) = true;
      }
      if (side0 && side1) ++crossing;
    }
    best = std::min(best, crossing);
  }
  return best;
}

}  // namespace hyperrel
