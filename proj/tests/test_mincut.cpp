#include <catch2/catch_amalgamated.hpp>

#include "hyperrel/hypergraph.hpp"
#include "hyperrel/io.hpp"
#include "hyperrel/mincut.hpp"
#include "support.hpp"

using namespace hyperrel;

TEST_CASE("minimum cut on known instances") {
  Hypergraph k4 = generate(parse_instance_spec("complete-graph:4"), 0);
  CHECK(min_cut_value(k4) == 3);

  // Five edges of rank four, one omitting each vertex; min cut n-1.
  Hypergraph sun = generate(parse_instance_spec("sunflower:5"), 0);
  CHECK(min_cut_value(sun) == 4);

  Hypergraph spanning(3, {{0, 1, 2}});
  CHECK(min_cut_value(spanning) == 1);

  Hypergraph path(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(min_cut_value(path) == 1);

  Hypergraph parallel(2, {{0, 1}, {0, 1}, {0, 1}});
  CHECK(min_cut_value(parallel) == 3);
}

TEST_CASE("errors on degenerate inputs") {
  CHECK_THROWS_AS(min_cut_value(Hypergraph(4, {{0, 1}, {2, 3}})), AlreadyDisconnectedError);
  CHECK_THROWS_AS(min_cut_value(Hypergraph(1, {})), std::invalid_argument);
}

TEST_CASE("ordering-based cut matches brute force on random instances") {
  Rng rng = make_rng(31337);
  for (int iter = 0; iter < 250; ++iter) {
    std::uint32_t n = 2 + static_cast<std::uint32_t>(uniform01(rng) * 9);
    std::size_t m = (n - 1) + static_cast<std::size_t>(uniform01(rng) * 8);
    Hypergraph g = testsupport::random_connected_hypergraph(n, m, std::max(2u, n - 1), rng);
    INFO("n=" << n << " m=" << g.num_edges());
    CHECK(min_cut_value(g) == brute_force_min_cut(g));
  }
}

TEST_CASE("ordering-based cut matches brute force on wider instances") {
  Rng rng = make_rng(777);
  for (int iter = 0; iter < 40; ++iter) {
    std::uint32_t n = 11 + static_cast<std::uint32_t>(uniform01(rng) * 5);
    std::size_t m = n + static_cast<std::size_t>(uniform01(rng) * 10);
    Hypergraph g = testsupport::random_connected_hypergraph(n, m, n - 1, rng);
    INFO("n=" << n << " m=" << g.num_edges());
    CHECK(min_cut_value(g) == brute_force_min_cut(g));
  }
}

TEST_CASE("brute force agrees on parallel-heavy instances") {
  Rng rng = make_rng(555);
  for (int iter = 0; iter < 60; ++iter) {
    std::uint32_t n = 3 + static_cast<std::uint32_t>(uniform01(rng) * 4);
    Hypergraph base = testsupport::random_connected_hypergraph(n, n, 3, rng);
    std::vector<Hypergraph::Edge> edges = base.edges();
    // Duplicate a few edges to stress multiplicity handling.
    std::size_t original = edges.size();
    for (std::size_t i = 0; i < original; ++i)
      if (bernoulli(rng, 0.5)) edges.push_back(edges[i]);
    Hypergraph g(n, std::move(edges));
    CHECK(min_cut_value(g) == brute_force_min_cut(g));
  }
}
