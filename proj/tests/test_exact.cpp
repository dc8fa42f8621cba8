#include <catch2/catch_amalgamated.hpp>

#include "hyperrel/exact.hpp"
#include "hyperrel/mincut.hpp"
#include "support.hpp"

using namespace hyperrel;

TEST_CASE("merge_parallel collapses identical edges") {
  Hypergraph two(2, {{0, 1}, {0, 1}});
  WeightedHypergraph wh = merge_parallel(two);
  REQUIRE(wh.wedges.size() == 1);
  CHECK(wh.wedges[0].multiplicity == 2);
  CHECK(wh.total_multiplicity() == 2);

  Hypergraph tri(3, {{0, 1}, {1, 2}, {0, 2}});
  wh = merge_parallel(tri);
  CHECK(wh.wedges.size() == 3);
  for (const auto& we : wh.wedges) CHECK(we.multiplicity == 1);

  CHECK(merge_parallel(Hypergraph(3, {})).wedges.empty());
}

TEST_CASE("closed forms") {
  Hypergraph single(2, {{0, 1}});
  CHECK(exact_unreliability(single, 0.3) == Catch::Approx(0.3).margin(1e-12));

  Hypergraph path(3, {{0, 1}, {1, 2}});
  CHECK(exact_unreliability(path, 0.5) == Catch::Approx(0.75).margin(1e-12));

  Hypergraph tri(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(exact_unreliability(tri, 0.5) == Catch::Approx(0.5).margin(1e-12));

  CHECK(exact_unreliability(Hypergraph(1, {}), 0.7) == 0.0);
  CHECK(exact_unreliability(Hypergraph(3, {}), 0.7) == 1.0);
}

TEST_CASE("endpoints and monotonicity in p") {
  Rng rng = make_rng(4242);
  for (int iter = 0; iter < 40; ++iter) {
    std::uint32_t n = 2 + static_cast<std::uint32_t>(uniform01(rng) * 6);
    Hypergraph g = testsupport::random_connected_hypergraph(n, n + 3, 4, rng);
    CHECK(exact_unreliability(g, 0.0) == 0.0);
    CHECK(exact_unreliability(g, 1.0) == 1.0);
    double prev = 0.0;
    for (double p : {0.05, 0.2, 0.4, 0.6, 0.8, 0.95}) {
      double u = exact_unreliability(g, p);
      CHECK(u >= prev - 1e-12);
      prev = u;
    }
  }
}

TEST_CASE("merged computation equals raw subset enumeration") {
  Rng rng = make_rng(888);
  for (int iter = 0; iter < 60; ++iter) {
    std::uint32_t n = 2 + static_cast<std::uint32_t>(uniform01(rng) * 5);
    Hypergraph base = testsupport::random_connected_hypergraph(n, n + 2, 4, rng);
    std::vector<Hypergraph::Edge> edges = base.edges();
    std::size_t original = edges.size();
    for (std::size_t i = 0; i < original && edges.size() < 12; ++i)
      if (bernoulli(rng, 0.4)) edges.push_back(edges[i]);
    Hypergraph g(n, std::move(edges));
    for (double p : {0.1, 0.37, 0.5, 0.8}) {
      INFO("n=" << n << " m=" << g.num_edges() << " p=" << p);
      CHECK(exact_unreliability(g, p) ==
            Catch::Approx(testsupport::unmerged_unreliability(g, p)).margin(1e-12));
    }
  }
}

TEST_CASE("disconnection probability sandwich") {
  // p^lambda <= u <= n^2 p^lambda on random connected instances.
  Rng rng = make_rng(1001);
  int instances = 0;
  while (instances < 200) {
    std::uint32_t n = 2 + static_cast<std::uint32_t>(uniform01(rng) * 7);
    std::size_t m = (n - 1) + static_cast<std::size_t>(uniform01(rng) * (13 - n));
    Hypergraph g = testsupport::random_connected_hypergraph(n, std::min<std::size_t>(m, 12),
                                                            std::max(2u, n - 1), rng);
    std::uint32_t lambda = min_cut_value(g);
    for (double p : {0.05, 0.1, 0.3, 0.5}) {
      double u = exact_unreliability(g, p);
      double low = std::pow(p, lambda);
      double high = static_cast<double>(n) * n * low;
      CHECK(u >= low - 1e-12);
      CHECK(u <= high + 1e-12);
    }
    ++instances;
  }
}

TEST_CASE("wedge cap is enforced") {
  Hypergraph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}});
  CHECK_THROWS_AS(exact_unreliability(g, 0.5, 4), TooLargeForExactError);
  CHECK_NOTHROW(exact_unreliability(g, 0.5, 5));
}

TEST_CASE("exact DNF probability") {
  DnfFormula both;
  both.num_vars = 2;
  both.clauses = {{{0, 1}, {}}};
  CHECK(exact_dnf_probability(both, 0.5) == Catch::Approx(0.25).margin(1e-12));

  DnfFormula either;
  either.num_vars = 2;
  either.clauses = {{{0}, {}}, {{1}, {}}};
  CHECK(exact_dnf_probability(either, 0.3) == Catch::Approx(0.51).margin(1e-12));

  DnfFormula empty;
  empty.num_vars = 3;
  CHECK(exact_dnf_probability(empty, 0.5) == 0.0);

  DnfFormula with_negation;
  with_negation.num_vars = 3;
  with_negation.clauses = {{{0}, {1}}, {{}, {2}}};
  // P[x0 and not x1] + P[not x2] - P[both] with p = 0.4:
  // 0.4*0.6 + 0.6 - 0.4*0.6*0.6 = 0.696
  CHECK(exact_dnf_probability(with_negation, 0.4) == Catch::Approx(0.696).margin(1e-12));

  DnfFormula too_big;
  too_big.num_vars = 21;
  too_big.clauses = {{{0}, {}}};
  CHECK_THROWS_AS(exact_dnf_probability(too_big, 0.5), TooLargeForExactError);
}
