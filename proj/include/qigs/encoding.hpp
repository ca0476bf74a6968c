#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qigs/graph.hpp"
#include "qigs/rng.hpp"

namespace qigs {

/// Sets each diagonal entry to its off-diagonal row sum. The result is
/// completely positive and has the same hafnian on every principal submatrix.
SymMatrix diagonal_dominant_fix(const SymMatrix& m);

/// M x M^2 factor with H H^T == m for a diagonally fixed m. Column M*i + j
/// (0-based, j < i) carries sqrt(m[i][j]) at rows i and j; all other columns
/// are zero.
Eigen::MatrixXd build_H(const SymMatrix& fixed);

struct WeightedEdge {
  int i;
  int j;
  double weight;
};

/// Compiled sampling program: each positive-weight edge is one two-photon
/// circuit chosen with probability proportional to its weight.
class EdgeModel {
 public:
  EdgeModel(std::size_t vertices, std::vector<WeightedEdge> edges);

  std::size_t vertex_count() const { return vertices_; }
  std::span<const WeightedEdge> edges() const { return edges_; }
  std::span<const double> cumulative() const { return cumprob_; }
  double probability(std::size_t e) const;
  double total_weight() const { return total_; }
  /// Tr[D^2] = 4 * total edge weight.
  double trace_coeff() const { return 4.0 * total_; }

  /// Inverse-CDF edge draw.
  std::size_t draw(Rng& rng) const;

 private:
  std::size_t vertices_;
  std::vector<WeightedEdge> edges_;
  std::vector<double> cumprob_;
  double total_ = 0.0;
};

/// Throws if the graph has no edges.
EdgeModel build_edge_model(const Graph& g);

/// |eigenvalues| of a real symmetric matrix, nonincreasing.
std::vector<double> takagi_singular_values(const SymMatrix& m);

struct SqueezeSpec {
  std::vector<double> singvals;
  double scale = 0.0;
  std::vector<double> squeezers;  // r_i = atanh(scale * singvals[i])
  double mean_photons = 0.0;

  double max_squeezing() const;
};

/// Mean photon number sum_i sinh^2(r_i) with tanh r_i = c * lambda_i.
double mean_photon_number(std::span<const double> singvals, double scale);

/// Bisection for the scale c in (0, 1/lambda_max) hitting `target` mean photons.
SqueezeSpec calibrate_scale(std::span<const double> singvals, double target);

/// Squeezing r' with eta * sinh^2(r') == sinh^2(r).
double loss_compensate(double r, double eta);

}  // namespace qigs
