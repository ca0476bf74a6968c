#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qigs/hafnian.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace qigs;
using testing::complete_graph;
using testing::error_kind_of;

namespace {

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_SUITE("hafnian") {
  TEST_CASE("naive definition on small cases") {
    CHECK(hafnian_naive(SymMatrix::from_rows({{0, 1}, {1, 0}})) == doctest::Approx(1.0));
    CHECK(hafnian_naive(complete_graph(4).adjacency()) == doctest::Approx(3.0));
    Rng rng(5);
    CHECK(hafnian_naive(testing::random_symmetric(3, rng)) == 0.0);
    CHECK(hafnian_naive(SymMatrix(0)) == 1.0);
    CHECK(error_kind_of([] { hafnian_naive(SymMatrix(10)); }) == ErrorKind::budget);
  }

  TEST_CASE("expansion on small cases") {
    CHECK(hafnian(complete_graph(6).adjacency()) == 15.0);
    CHECK(hafnian(testing::cycle4().adjacency()) == 2.0);
    CHECK(hafnian(SymMatrix(0)) == 1.0);
    CHECK(hafnian(SymMatrix(5)) == 0.0);
    CHECK(error_kind_of([] { hafnian(SymMatrix(22)); }) == ErrorKind::budget);
  }

  TEST_CASE("hafnian_sub") {
    CHECK(hafnian_sub(complete_graph(4), Subset::range(4)) == 3.0);
    CHECK(hafnian_sub(testing::path4(), Subset::range(4)) == 1.0);
    CHECK(hafnian_sub(complete_graph(5), Subset({0, 2, 4})) == 0.0);
    CHECK(hafnian_sub(complete_graph(5), Subset()) == 1.0);
  }

  TEST_CASE("complete graphs give double factorials") {
    const double expected[] = {1, 3, 15, 105, 945};
    for (int m = 1; m <= 5; ++m) {
      CHECK(hafnian(complete_graph(2 * m).adjacency()) == expected[m - 1]);
      CHECK(matching_count_bound(2 * m) == expected[m - 1]);
    }
  }

  TEST_CASE("agrees with the permutation sum on random matrices") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t dim = 2 + rng.below(7);
      const SymMatrix m = testing::random_symmetric(dim, rng);
      CHECK(close_rel(hafnian(m), hafnian_naive(m), 1e-12));
    }
  }

  TEST_CASE("agrees with explicit matching enumeration on graphs") {
    Rng rng(12);
    for (int trial = 0; trial < 50; ++trial) {
      const Graph g = testing::random_weighted_graph(10, 0.6, rng);
      std::vector<int> all(10);
      std::iota(all.begin(), all.end(), 0);
      CHECK(close_rel(hafnian(g.adjacency()), testing::matching_sum(g, all), 1e-12));
    }
  }

  TEST_CASE("diagonal entries are ignored") {
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t dim = 2 * (1 + rng.below(4));
      SymMatrix m = testing::random_symmetric(dim, rng);
      const double before = hafnian(m);
      for (std::size_t i = 0; i < dim; ++i) m.set(i, i, 100.0 * rng.uniform());
      CHECK(hafnian(m) == before);
    }
  }

  TEST_CASE("vertex scaling multiplies by the product of factors") {
    Rng rng(14);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 * (1 + rng.below(4));
      const Graph g = testing::random_weighted_graph(n, 0.7, rng);
      std::vector<double> w(n);
      for (double& x : w) x = rng.uniform();
      const double alpha = 2.0 * rng.uniform();
      double factor = 1.0;
      for (double x : w) factor *= 1.0 + alpha * x;
      const Graph b = apply_vertex_weights(g, VertexWeights(w), alpha);
      CHECK(close_rel(hafnian(b.adjacency()), factor * hafnian(g.adjacency()), 1e-10));
    }
  }

  TEST_CASE("relabeling vertices leaves the hafnian unchanged") {
    Rng rng(15);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t n = 8;
      const SymMatrix m = testing::random_symmetric(n, rng);
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      SymMatrix p(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) p.set(i, j, m(perm[i], perm[j]));
      CHECK(close_rel(hafnian(p), hafnian(m), 1e-12));
    }
  }

  TEST_CASE("principal submatrix hafnian matches the copied submatrix") {
    Rng rng(16);
    const SymMatrix m = testing::random_symmetric(10, rng);
    const std::vector<int> idx{1, 3, 4, 8};
    CHECK(hafnian_of_principal(m, idx) == hafnian(m.principal_submatrix(idx)));
  }
}
