#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hyperrel/common.hpp"

namespace hyperrel {

/// An unweighted hypergraph on vertices 0..n-1. Hyperedges are kept as
/// strictly sorted vertex lists of rank >= 2; parallel (identical) edges are
/// retained as distinct entries because the failure model treats every edge
/// as an independent trial. Rank-1 edges can never cross a cut, so the
/// constructor drops them and only keeps a count.
class Hypergraph {
 public:
  using Edge = std::vector<std::uint32_t>;

  Hypergraph() = default;

  Hypergraph(std::uint32_t num_vertices, std::vector<Edge> edges) : n_(num_vertices) {
    if (num_vertices == 0) throw std::invalid_argument("hypergraph needs at least one vertex");
    edges_.reserve(edges.size());
    for (Edge& e : edges) {
      if (e.empty()) throw std::invalid_argument("empty hyperedge");
      std::sort(e.begin(), e.end());
      if (std::adjacent_find(e.begin(), e.end()) != e.end())
        throw std::invalid_argument("duplicate vertex within a hyperedge");
      if (e.back() >= n_) throw std::invalid_argument("vertex id out of range");
      if (e.size() == 1) {
        ++dropped_unit_edges_;
        continue;
      }
      edges_.push_back(std::move(e));
    }
  }

  std::uint32_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }
  std::uint32_t rank(std::size_t i) const { return static_cast<std::uint32_t>(edges_[i].size()); }

  /// Number of rank-1 edges discarded at construction.
  std::uint32_t dropped_unit_edges() const { return dropped_unit_edges_; }

  bool operator==(const Hypergraph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  std::uint32_t n_ = 1;
  std::vector<Edge> edges_;
  std::uint32_t dropped_unit_edges_ = 0;
};

/// Surjection from the vertices of a hypergraph onto the supervertices of its
/// contraction. Supervertices are numbered by the smallest original vertex
/// they contain, which makes contracted hypergraphs canonical and
/// seed-reproducible.
struct ContractionMap {
  std::vector<std::uint32_t> to_super;
  std::uint32_t num_super = 0;
};

struct ContractionResult {
  Hypergraph graph;
  ContractionMap map;
  /// For each original edge index, its index in the contracted hypergraph, or
  /// -1 if the image collapsed to a single supervertex and was removed.
  std::vector<std::int32_t> edge_image;
  /// Which edges were selected for contraction (useful to inspect the
  /// randomized selection).
  std::vector<char> selected;
};

inline bool is_connected(const Hypergraph& g) {
  if (g.num_vertices() == 1) return true;
  DisjointSet dsu(g.num_vertices());
  for (const auto& e : g.edges())
    for (std::size_t i = 1; i < e.size(); ++i) dsu.unite(e[0], e[i]);
  return dsu.components() == 1;
}

namespace detail {

/// Canonical relabeling of a union-find partition: supervertex ids are
/// assigned in increasing order of the smallest contained original vertex.
inline ContractionMap canonical_map(DisjointSet& dsu, std::uint32_t n) {
  ContractionMap cm;
  cm.to_super.assign(n, 0);
  std::vector<std::int64_t> super_of_root(n, -1);
  std::uint32_t next = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    std::uint32_t r = dsu.find(v);
    if (super_of_root[r] < 0) super_of_root[r] = next++;
    cm.to_super[v] = static_cast<std::uint32_t>(super_of_root[r]);
  }
  cm.num_super = next;
  return cm;
}

inline ContractionResult contract_by_selection(const Hypergraph& g, std::vector<char> selected) {
  DisjointSet dsu(g.num_vertices());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    if (!selected[i]) continue;
    const auto& e = g.edge(i);
    for (std::size_t k = 1; k < e.size(); ++k) dsu.unite(e[0], e[k]);
  }
  ContractionResult res;
  res.map = canonical_map(dsu, g.num_vertices());
  res.selected = std::move(selected);
  res.edge_image.assign(g.num_edges(), -1);

  std::vector<Hypergraph::Edge> new_edges;
  Hypergraph::Edge image;
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    image.clear();
    for (std::uint32_t v : g.edge(i)) image.push_back(res.map.to_super[v]);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (image.size() >= 2) {
      res.edge_image[i] = static_cast<std::int32_t>(new_edges.size());
      new_edges.push_back(image);
    }
  }
  res.graph = Hypergraph(res.map.num_super, std::move(new_edges));
  return res;
}

}  // namespace detail

/// Contract the edges indexed by `edge_ids`; surviving edges are mapped
/// element-wise and those whose image becomes a single supervertex are
/// removed. Duplicate images are kept as parallel edges.
inline ContractionResult contract(const Hypergraph& g, std::span<const std::uint32_t> edge_ids) {
  std::vector<char> selected(g.num_edges(), 0);
  for (std::uint32_t id : edge_ids) {
    if (id >= g.num_edges()) throw std::invalid_argument("edge index out of range");
    selected[id] = 1;
  }
  return detail::contract_by_selection(g, std::move(selected));
}

inline ContractionResult contract(const Hypergraph& g, const std::vector<std::uint32_t>& edge_ids) {
  return contract(g, std::span<const std::uint32_t>(edge_ids));
}

/// Contract each edge independently with probability 1-q.
inline ContractionResult random_contract(const Hypergraph& g, double q, Rng& rng) {
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("contraction survival probability must be in [0,1]");
  std::vector<char> selected(g.num_edges(), 0);
  for (std::size_t i = 0; i < g.num_edges(); ++i) selected[i] = bernoulli(rng, 1.0 - q) ? 1 : 0;
  return detail::contract_by_selection(g, std::move(selected));
}

/// Number of supervertices after contracting `selected` edges, without
/// building the contracted hypergraph.
inline std::uint32_t contracted_vertex_count(const Hypergraph& g, const std::vector<char>& selected) {
  DisjointSet dsu(g.num_vertices());
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    if (!selected[i]) continue;
    const auto& e = g.edge(i);
    for (std::size_t k = 1; k < e.size(); ++k) dsu.unite(e[0], e[k]);
  }
  return dsu.components();
}

inline std::uint32_t max_rank(const Hypergraph& g) {
  std::uint32_t r = 0;
  for (const auto& e : g.edges()) r = std::max<std::uint32_t>(r, static_cast<std::uint32_t>(e.size()));
  return r;
}

/// Per-vertex incidence counts restricted to the given edge subset.
inline std::vector<std::uint32_t> degrees_in(const Hypergraph& g,
                                             std::span<const std::uint32_t> edge_ids) {
  std::vector<std::uint32_t> deg(g.num_vertices(), 0);
  for (std::uint32_t id : edge_ids) {
    if (id >= g.num_edges()) throw std::invalid_argument("edge index out of range");
    for (std::uint32_t v : g.edge(id)) ++deg[v];
  }
  return deg;
}

inline std::vector<std::uint32_t> degrees_in(const Hypergraph& g,
                                             const std::vector<std::uint32_t>& edge_ids) {
  return degrees_in(g, std::span<const std::uint32_t>(edge_ids));
}

/// Indices of edges incident to v; the cut separating v from the rest.
inline std::vector<std::uint32_t> degree_cut(const Hypergraph& g, std::uint32_t v) {
  if (v >= g.num_vertices()) throw std::invalid_argument("vertex id out of range");
  std::vector<std::uint32_t> ids;
  for (std::size_t i = 0; i < g.num_edges(); ++i)
    if (std::binary_search(g.edge(i).begin(), g.edge(i).end(), v))
      ids.push_back(static_cast<std::uint32_t>(i));
  return ids;
}

/// True when every edge has rank at most n/2 (exact rational comparison).
inline bool is_universally_small(const Hypergraph& g) {
  return 2ull * max_rank(g) <= g.num_vertices();
}

/// Indices of edges of rank strictly greater than n/2, in input order.
inline std::vector<std::uint32_t> large_edge_ids(const Hypergraph& g) {
  std::vector<std::uint32_t> ids;
  for (std::size_t i = 0; i < g.num_edges(); ++i)
    if (2ull * g.rank(i) > g.num_vertices()) ids.push_back(static_cast<std::uint32_t>(i));
  return ids;
}

struct RemovalResult {
  Hypergraph graph;
  std::vector<std::int32_t> edge_image;
};

/// Delete the edges indexed by `edge_ids`, keeping vertices in place.
inline RemovalResult remove_edges(const Hypergraph& g, std::span<const std::uint32_t> edge_ids) {
  std::vector<char> removed(g.num_edges(), 0);
  for (std::uint32_t id : edge_ids) {
    if (id >= g.num_edges()) throw std::invalid_argument("edge index out of range");
    removed[id] = 1;
  }
  RemovalResult res;
  res.edge_image.assign(g.num_edges(), -1);
  std::vector<Hypergraph::Edge> kept;
  for (std::size_t i = 0; i < g.num_edges(); ++i) {
    if (removed[i]) continue;
    res.edge_image[i] = static_cast<std::int32_t>(kept.size());
    kept.push_back(g.edge(i));
  }
  res.graph = Hypergraph(g.num_vertices(), std::move(kept));
  return res;
}

}  // namespace hyperrel
