#include <doctest.h>

#include <cmath>

#include "qigs/encoding.hpp"
#include "qigs/hafnian.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace qigs;
using testing::complete_graph;
using testing::error_kind_of;
using testing::parse_edges;

namespace {

double max_abs_diff(const Eigen::MatrixXd& a, const SymMatrix& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) worst = std::max(worst, std::abs(a(i, j) - m(i, j)));
  return worst;
}

}  // namespace

TEST_SUITE("encoding") {
  TEST_CASE("diagonal fix") {
    const SymMatrix k2 = diagonal_dominant_fix(complete_graph(2).adjacency());
    CHECK(k2(0, 0) == 1.0);
    CHECK(k2(1, 1) == 1.0);
    CHECK(k2(0, 1) == 1.0);
    CHECK(diagonal_dominant_fix(SymMatrix(3)) == SymMatrix(3));
    const SymMatrix k4 = diagonal_dominant_fix(complete_graph(4).adjacency());
    for (int i = 0; i < 4; ++i) CHECK(k4(i, i) == 3.0);
    SymMatrix neg(2);
    neg.set(0, 1, -1.0);
    CHECK(error_kind_of([&] { diagonal_dominant_fix(neg); }) == ErrorKind::invalid_argument);
  }

  TEST_CASE("H factor of a weighted edge") {
    const SymMatrix fixed = diagonal_dominant_fix(complete_graph(2, 4.0).adjacency());
    const Eigen::MatrixXd h = build_H(fixed);
    CHECK(h.rows() == 2);
    CHECK(h.cols() == 4);
    int nonzero_columns = 0;
    for (int c = 0; c < 4; ++c)
      if (h.col(c).norm() > 0) {
        ++nonzero_columns;
        CHECK(h(0, c) == 2.0);
        CHECK(h(1, c) == 2.0);
      }
    CHECK(nonzero_columns == 1);
    const Eigen::MatrixXd hh = h * h.transpose();
    CHECK(hh(0, 0) == 4.0);
    CHECK(hh(0, 1) == 4.0);
    CHECK(hh(1, 1) == 4.0);
    CHECK(build_H(SymMatrix(3)).isZero());
  }

  TEST_CASE("H factor requires the diagonal fix") {
    CHECK(error_kind_of([] { build_H(complete_graph(3).adjacency()); }) == ErrorKind::invalid_argument);
  }

  TEST_CASE("H factor reconstructs random graphs") {
    Rng rng(21);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + rng.below(11);
      const Graph g = testing::random_weighted_graph(n, 0.5, rng);
      const SymMatrix fixed = diagonal_dominant_fix(g.adjacency());
      const Eigen::MatrixXd h = build_H(fixed);
      CHECK(max_abs_diff(h * h.transpose(), fixed) <= 1e-12);
    }
  }

  TEST_CASE("edge model examples") {
    const EdgeModel c4 = build_edge_model(testing::cycle4());
    CHECK(c4.edges().size() == 4);
    for (std::size_t e = 0; e < 4; ++e) CHECK(c4.probability(e) == 0.25);
    CHECK(c4.trace_coeff() == 16.0);

    const EdgeModel k2 = build_edge_model(complete_graph(2, 2.0));
    CHECK(k2.edges().size() == 1);
    CHECK(k2.probability(0) == 1.0);
    CHECK(k2.trace_coeff() == 8.0);

    const EdgeModel tri = build_edge_model(parse_edges("0 1 1\n0 2 2\n1 2 3\n"));
    CHECK(tri.probability(0) == doctest::Approx(1.0 / 6.0));
    CHECK(tri.probability(1) == doctest::Approx(2.0 / 6.0));
    CHECK(tri.probability(2) == doctest::Approx(3.0 / 6.0));
    CHECK(tri.trace_coeff() == 24.0);

    CHECK(error_kind_of([] { build_edge_model(Graph(SymMatrix(3))); }) == ErrorKind::empty_sector);
  }

  TEST_CASE("edge model normalization and reconstruction") {
    Rng rng(22);
    for (int trial = 0; trial < 100; ++trial) {
      const Graph g = testing::random_weighted_graph(2 + rng.below(11), 0.5, rng);
      if (g.edge_count() == 0) continue;
      const EdgeModel model = build_edge_model(g);
      double total = 0.0;
      for (std::size_t e = 0; e < model.edges().size(); ++e) {
        const double q = model.probability(e);
        CHECK(q > 0.0);
        total += q;
        const WeightedEdge& edge = model.edges()[e];
        CHECK(model.trace_coeff() * q / 4.0 == doctest::Approx(g.weight(edge.i, edge.j)).epsilon(1e-14));
      }
      CHECK(std::abs(total - 1.0) <= 1e-12);
      const auto cum = model.cumulative();
      for (std::size_t e = 1; e < cum.size(); ++e) CHECK(cum[e] > cum[e - 1]);
      CHECK(std::abs(cum.back() - 1.0) <= 1e-12);
    }
  }

  TEST_CASE("edge draws follow the edge weights") {
    const EdgeModel tri = build_edge_model(parse_edges("0 1 1\n0 2 2\n1 2 3\n"));
    Rng rng(23);
    std::vector<double> observed(3, 0.0);
    const int draws = 60000;
    for (int t = 0; t < draws; ++t) observed[tri.draw(rng)] += 1.0;
    const std::vector<double> expected{draws / 6.0, draws * 2.0 / 6.0, draws * 3.0 / 6.0};
    CHECK(testing::chi_square_pvalue(observed, expected) > 0.001);
  }

  TEST_CASE("fixed submatrices keep their hafnians") {
    Rng rng(24);
    for (int trial = 0; trial < 50; ++trial) {
      const Graph g = testing::random_weighted_graph(10, 0.5, rng);
      const SymMatrix fixed = diagonal_dominant_fix(g.adjacency());
      for (int rep = 0; rep < 10; ++rep) {
        std::vector<int> pick;
        for (int v = 0; v < 10; ++v)
          if (rng.uniform() < 0.5) pick.push_back(v);
        if (pick.size() % 2 == 1) pick.pop_back();
        const Subset s(pick);
        CHECK(hafnian_of_principal(fixed, s.vertices()) == hafnian_sub(g, s));
      }
    }
  }

  TEST_CASE("Takagi values") {
    SymMatrix id(3);
    for (int i = 0; i < 3; ++i) id.set(i, i, 1.0);
    for (double v : takagi_singular_values(id)) CHECK(v == doctest::Approx(1.0));
    for (double v : takagi_singular_values(SymMatrix::from_rows({{0, 1}, {1, 0}}))) CHECK(v == doctest::Approx(1.0));
    const auto k4 = takagi_singular_values(complete_graph(4).adjacency());
    REQUIRE(k4.size() == 4);
    CHECK(k4[0] == doctest::Approx(3.0));
    for (int i = 1; i < 4; ++i) CHECK(k4[i] == doctest::Approx(1.0));
  }

  TEST_CASE("scale calibration") {
    const std::vector<double> one{1.0};
    const SqueezeSpec a = calibrate_scale(one, 1.0);
    CHECK(a.scale == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(a.squeezers[0] == doctest::Approx(std::atanh(1.0 / std::sqrt(2.0))));
    CHECK(a.squeezers[0] == doctest::Approx(0.8814).epsilon(1e-4));

    const std::vector<double> two{1.0, 1.0};
    CHECK(calibrate_scale(two, 2.0).scale == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));

    const std::vector<double> k4{3.0, 1.0, 1.0, 1.0};
    const SqueezeSpec c = calibrate_scale(k4, 10.0);
    CHECK(std::abs(c.mean_photons - 10.0) <= 1e-9);
    CHECK(c.scale * 3.0 < 1.0);
    double independent = 0.0;
    for (double l : k4) independent += std::pow(std::sinh(std::atanh(c.scale * l)), 2);
    CHECK(std::abs(independent - 10.0) <= 1e-9);
    CHECK(c.max_squeezing() == doctest::Approx(std::atanh(3.0 * c.scale)));

    const std::vector<double> zeros{0.0, 0.0};
    CHECK(error_kind_of([&] { calibrate_scale(zeros, 1.0); }) == ErrorKind::invalid_argument);
  }

  TEST_CASE("loss compensation") {
    CHECK(loss_compensate(1.2, 1.0) == doctest::Approx(1.2).epsilon(1e-15));
    CHECK(loss_compensate(0.0, 0.3) == 0.0);
    const double r = 1.380;
    const double r1 = loss_compensate(r, 1.0);
    const double r07 = loss_compensate(r, 0.7);
    const double r05 = loss_compensate(r, 0.5);
    CHECK(r1 < r07);
    CHECK(r07 < r05);
    for (double eta : {0.9, 0.7, 0.5, 0.1}) {
      const double rp = loss_compensate(r, eta);
      const double lhs = eta * std::pow(std::sinh(rp), 2);
      const double rhs = std::pow(std::sinh(r), 2);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * rhs);
    }
    CHECK(error_kind_of([] { loss_compensate(1.0, 0.0); }) == ErrorKind::invalid_argument);
    CHECK(error_kind_of([] { loss_compensate(1.0, 1.5); }) == ErrorKind::invalid_argument);
  }
}
