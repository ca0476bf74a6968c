#include "qigs/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qigs/error.hpp"

namespace qigs {

SymMatrix diagonal_dominant_fix(const SymMatrix& m) {
  const std::size_t n = m.dim();
  SymMatrix out = m;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (m(i, j) < 0.0) throw Error(ErrorKind::invalid_argument, "negative off-diagonal entry");
      row += m(i, j);
    }
    out.set(i, i, row);
  }
  return out;
}

Eigen::MatrixXd build_H(const SymMatrix& fixed) {
  const std::size_t n = fixed.dim();
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) row += fixed(i, j);
    if (std::abs(fixed(i, i) - row) > 1e-12 * std::max(1.0, row))
      throw Error(ErrorKind::invalid_argument,
                  "build_H expects diagonal entries equal to off-diagonal row sums (row " + std::to_string(i) + ")");
  }
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const double a = fixed(i, j);
      if (a < 0.0) throw Error(ErrorKind::invalid_argument, "negative off-diagonal entry");
      const auto col = static_cast<Eigen::Index>(n * i + j);
      h(static_cast<Eigen::Index>(i), col) = std::sqrt(a);
      h(static_cast<Eigen::Index>(j), col) = std::sqrt(a);
    }
  }
  return h;
}

EdgeModel::EdgeModel(std::size_t vertices, std::vector<WeightedEdge> edges)
    : vertices_(vertices), edges_(std::move(edges)) {
  std::erase_if(edges_, [](const WeightedEdge& e) { return !(e.weight > 0.0); });
  if (edges_.empty()) throw Error(ErrorKind::empty_sector, "graph has no edges to sample");
  for (const auto& e : edges_) {
    if (e.i < 0 || e.j <= e.i || static_cast<std::size_t>(e.j) >= vertices_)
      throw Error(ErrorKind::invalid_argument, "edge endpoints must satisfy 0 <= i < j < n");
    if (!std::isfinite(e.weight)) throw Error(ErrorKind::invalid_argument, "non-finite edge weight");
  }
  cumprob_.resize(edges_.size());
  double running = 0.0;
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    running += edges_[e].weight;
    cumprob_[e] = running;
  }
  total_ = running;
  for (double& c : cumprob_) c /= total_;
}

double EdgeModel::probability(std::size_t e) const {
  return edges_[e].weight / total_;
}

std::size_t EdgeModel::draw(Rng& rng) const {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cumprob_.begin(), cumprob_.end(), u);
  if (it == cumprob_.end()) return edges_.size() - 1;
  return static_cast<std::size_t>(it - cumprob_.begin());
}

EdgeModel build_edge_model(const Graph& g) {
  std::vector<WeightedEdge> edges;
  for (const Edge& e : g.edges()) edges.push_back({e.i, e.j, e.weight});
  if (edges.empty()) throw Error(ErrorKind::empty_sector, "edgeless graph has no edge model");
  return EdgeModel(g.size(), std::move(edges));
}

std::vector<double> takagi_singular_values(const SymMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  if (n == 0) return {};
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> view(m.data(), n, n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(view, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::invalid_argument, "eigenvalue solver failed");
  std::vector<double> values(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) values[i] = std::abs(solver.eigenvalues()[i]);
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

double SqueezeSpec::max_squeezing() const {
  return squeezers.empty() ? 0.0 : *std::max_element(squeezers.begin(), squeezers.end());
}

double mean_photon_number(std::span<const double> singvals, double scale) {
  double total = 0.0;
  for (double lambda : singvals) {
    const double t = scale * lambda;
    total += t * t / (1.0 - t * t);  // sinh^2(atanh t)
  }
  return total;
}

SqueezeSpec calibrate_scale(std::span<const double> singvals, double target) {
  if (!(target > 0.0)) throw Error(ErrorKind::invalid_argument, "target mean photon number must be positive");
  double lambda_max = 0.0;
  for (double l : singvals) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw Error(ErrorKind::invalid_argument, "singular values must be nonnegative");
    lambda_max = std::max(lambda_max, l);
  }
  if (lambda_max == 0.0) throw Error(ErrorKind::invalid_argument, "all singular values are zero");

  double lo = 0.0;
  double hi = (1.0 - 1e-12) / lambda_max;
  if (mean_photon_number(singvals, hi) < target)
    throw Error(ErrorKind::invalid_argument, "target mean photon number is not reachable below the pole");
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (mean_photon_number(singvals, mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  // Pick whichever end of the final bracket is closer.
  const double f_lo = mean_photon_number(singvals, lo);
  const double f_hi = mean_photon_number(singvals, hi);
  SqueezeSpec spec;
  spec.singvals.assign(singvals.begin(), singvals.end());
  spec.scale = std::abs(f_lo - target) < std::abs(f_hi - target) ? lo : hi;
  spec.mean_photons = mean_photon_number(singvals, spec.scale);
  for (double l : singvals) spec.squeezers.push_back(std::atanh(spec.scale * l));
  return spec;
}

double loss_compensate(double r, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw Error(ErrorKind::invalid_argument, "transmission must lie in (0, 1]");
  if (!(r >= 0.0)) throw Error(ErrorKind::invalid_argument, "squeezing parameter must be nonnegative");
  if (eta == 1.0) return r;
  const double s = std::sinh(r);
  return std::asinh(s / std::sqrt(eta));
}

}  // namespace qigs
