#include <doctest.h>

#include <sstream>

#include "qigs/error.hpp"
#include "qigs/graph.hpp"
#include "qigs/hafnian.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace qigs;

using testing::complete_graph;
using testing::parse_edges;
using testing::path4;

namespace {

ErrorKind kind_of(const std::function<void()>& f) { return testing::error_kind_of(f); }

Graph complete(int n) { return complete_graph(n); }

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("edge list parses weights, comments and defaults") {
    const Graph g = parse_edges("# comment\n\n0 1 1.0\n1\t2 2.5\n");
    CHECK(g.size() == 3);
    CHECK(g.weight(0, 1) == 1.0);
    CHECK(g.weight(1, 0) == 1.0);
    CHECK(g.weight(1, 2) == 2.5);
    CHECK(g.weight(0, 2) == 0.0);
    CHECK(g.edge_count() == 2);
  }

  TEST_CASE("edge list errors carry line numbers") {
    auto expect = [](const std::string& text, const std::string& fragment) {
      try {
        parse_edges(text);
        FAIL("no error for " << text);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse);
        CHECK(std::string(e.what()).find(fragment) != std::string::npos);
      }
    };
    expect("0 1 1.0\n2 2 1.0\n", "line 2: self-loop");
    expect("0 1 -1\n", "negative weight");
    expect("0 1\n1 0 2\n", "duplicate edge");
    expect("0 x\n", "line 1");
    expect("0 1 2 3\n", "expected");
  }

  TEST_CASE("matrix csv of K4") {
    std::istringstream in("0,1,1,1\n1,0,1,1\n1,1,0,1\n1,1,1,0\n");
    CHECK(parse_graph(in, GraphFormat::matrix_csv) == complete(4));
  }

  TEST_CASE("matrix csv rejects asymmetric input and self-loops") {
    std::istringstream asym("0,1\n2,0\n");
    CHECK(kind_of([&] { parse_graph(asym, GraphFormat::matrix_csv); }) == ErrorKind::parse);
    std::istringstream loop("1,1\n1,0\n");
    CHECK(kind_of([&] { parse_graph(loop, GraphFormat::matrix_csv); }) == ErrorKind::parse);
  }

  TEST_CASE("vertex weights file") {
    std::istringstream in("1\n2.5\n\n0\n");
    const VertexWeights w = parse_vertex_weights(in);
    CHECK(w.size() == 3);
    CHECK(w[1] == 2.5);
    std::istringstream bad("1\n-2\n");
    CHECK(kind_of([&] { parse_vertex_weights(bad); }) == ErrorKind::parse);
  }

  TEST_CASE("graph construction enforces invariants") {
    SymMatrix neg(2);
    neg.set(0, 1, -1.0);
    CHECK(kind_of([&] { Graph{neg}; }) == ErrorKind::invalid_argument);
    SymMatrix diag(2);
    diag.set(0, 0, 1.0);
    CHECK(kind_of([&] { Graph{diag}; }) == ErrorKind::invalid_argument);
    CHECK(kind_of([] { Subset({2, 1}); }) == ErrorKind::invalid_argument);
    CHECK(kind_of([] { Subset::from_unsorted({1, 1}); }) == ErrorKind::invalid_argument);
  }

  TEST_CASE("erdos_renyi extremes and reproducibility") {
    CHECK(erdos_renyi(5, 0.0, 7).edge_count() == 0);
    CHECK(erdos_renyi(5, 1.0, 7) == complete(5));
    CHECK(erdos_renyi(12, 0.4, 99) == erdos_renyi(12, 0.4, 99));
    CHECK_FALSE(erdos_renyi(12, 0.4, 99) == erdos_renyi(12, 0.4, 100));
    CHECK(kind_of([] { erdos_renyi(3, 1.5, 1); }) == ErrorKind::invalid_argument);
  }

  TEST_CASE("erdos_renyi mean edge count") {
    // Binomial(435, 0.3): mean 130.5, sd of the 1000-seed average ~0.30.
    double total = 0.0;
    for (std::uint64_t s = 0; s < 1000; ++s) total += static_cast<double>(erdos_renyi(30, 0.3, s).edge_count());
    CHECK(std::abs(total / 1000.0 - 130.5) <= 5.0);
  }

  TEST_CASE("density") {
    CHECK(density(complete(4), Subset({0, 1, 3})) == 1.0);
    CHECK(density(erdos_renyi(6, 0.0, 1), Subset({0, 2, 4})) == 0.0);
    CHECK(density(path4(), Subset({0, 1, 2})) == doctest::Approx(2.0 / 3.0));
    CHECK(kind_of([] { density(complete(3), Subset({1})); }) == ErrorKind::invalid_argument);
  }

  TEST_CASE("is_clique") {
    CHECK(is_clique(complete(4), Subset({0, 1, 2, 3})));
    CHECK_FALSE(is_clique(parse_edges("0 1\n1 2\n"), Subset({0, 2})));
    CHECK(is_clique(path4(), Subset({3})));
    CHECK(is_clique(path4(), Subset()));
  }

  TEST_CASE("clique_weight") {
    CHECK(clique_weight(VertexWeights({1, 2, 3}), Subset({0, 2})) == 4.0);
    CHECK(clique_weight(VertexWeights({1, 2, 3}), Subset()) == 0.0);
    CHECK(clique_weight(VertexWeights({0.5, 0.5, 0.5, 0.5}), Subset({0, 1, 2, 3})) == 2.0);
  }

  TEST_CASE("apply_vertex_weights") {
    const Graph k4 = complete(4);
    CHECK(apply_vertex_weights(k4, VertexWeights({3, 1, 4, 1}), 0.0) == k4);
    const Graph k2 = parse_edges("0 1 1\n");
    CHECK(apply_vertex_weights(k2, VertexWeights({1, 2}), 1.0).weight(0, 1) == 6.0);
    // Every vertex scaled by 2 doubles each factor: haf = 2^4 * 3.
    const Graph scaled = apply_vertex_weights(k4, VertexWeights({1, 1, 1, 1}), 1.0);
    CHECK(hafnian_naive(scaled.adjacency()) == doctest::Approx(48.0));
    CHECK(hafnian(scaled.adjacency()) == doctest::Approx(48.0));
    CHECK(kind_of([&] { apply_vertex_weights(k4, VertexWeights({1, 1}), 1.0); }) == ErrorKind::invalid_argument);
    CHECK(kind_of([&] { apply_vertex_weights(k4, VertexWeights({1, 1, 1, 1}), -1.0); }) ==
          ErrorKind::invalid_argument);
  }

  TEST_CASE("induced_subgraph") {
    CHECK(induced_subgraph(complete(4), Subset({0, 1})) == complete(2));
    CHECK(induced_subgraph(erdos_renyi(5, 0.0, 3), Subset({1, 4})).edge_count() == 0);
    CHECK(induced_subgraph(path4(), Subset({0, 2})).edge_count() == 0);
    CHECK(kind_of([] { induced_subgraph(complete(3), Subset()); }) == ErrorKind::invalid_argument);
  }

  TEST_CASE("property: density and clique agree with the induced subgraph") {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 3 + rng.below(8);
      const Graph g = erdos_renyi(n, rng.uniform(), rng());
      std::vector<int> pick;
      for (int v = 0; v < static_cast<int>(n); ++v)
        if (rng.uniform() < 0.6) pick.push_back(v);
      if (pick.size() < 2) continue;
      const Subset s(pick);
      const Graph sub = induced_subgraph(g, s);
      CHECK(density(g, s) == density(sub, Subset::range(static_cast<int>(s.size()))));
      CHECK(is_clique(g, s) == (density(g, s) == 1.0));
    }
  }
}
