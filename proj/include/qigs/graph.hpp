#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qigs {

/// Sorted set of distinct vertex indices: a collision-free outcome.
class Subset {
 public:
  Subset() = default;

  /// Throws unless `vertices` is strictly increasing and nonnegative.
  explicit Subset(std::vector<int> vertices);

  /// Sorts; throws on duplicates or negative indices.
  static Subset from_unsorted(std::vector<int> vertices);
  static Subset from_mask(std::uint64_t mask);
  static Subset range(int n);

  std::span<const int> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool empty() const { return vertices_.empty(); }
  int operator[](std::size_t i) const { return vertices_[i]; }
  auto begin() const { return vertices_.begin(); }
  auto end() const { return vertices_.end(); }

  bool contains(int v) const;
  Subset without(int v) const;
  Subset with(int v) const;
  std::uint64_t mask() const;

  /// "0;3;5"
  std::string to_string(char sep = ';') const;

  friend bool operator==(const Subset&, const Subset&) = default;
  friend auto operator<=>(const Subset&, const Subset&) = default;

 private:
  std::vector<int> vertices_;
};

/// Dense symmetric matrix of finite reals. Writes go through set(), which
/// updates both triangles.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

  /// Throws if rows are ragged, asymmetric, or non-finite.
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t dim() const { return dim_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  void set(std::size_t i, std::size_t j, double value);
  const double* data() const { return data_.data(); }

  SymMatrix principal_submatrix(std::span<const int> indices) const;

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> data_;
};

struct Edge {
  int i;
  int j;
  double weight;
};

/// Undirected graph with nonnegative edge weights and zero diagonal.
class Graph {
 public:
  Graph() = default;
  explicit Graph(SymMatrix adjacency);
  static Graph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const { return adj_.dim(); }
  double weight(int i, int j) const { return adj_(i, j); }
  bool adjacent(int i, int j) const { return adj_(i, j) > 0.0; }
  const SymMatrix& adjacency() const { return adj_; }

  /// Positive-weight pairs with i < j, row-major order.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  SymMatrix adj_;
};

class VertexWeights {
 public:
  VertexWeights() = default;
  explicit VertexWeights(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

 private:
  std::vector<double> values_;
};

enum class GraphFormat { edge_list, matrix_csv };

/// `.csv` means matrix-csv, anything else an edge list.
GraphFormat guess_format(const std::filesystem::path& path);

/// Edge-list vertex count is max index + 1, raised to `min_vertices`.
Graph parse_graph(std::istream& in, GraphFormat format, std::size_t min_vertices = 0);
Graph load_graph(const std::filesystem::path& path, GraphFormat format, std::size_t min_vertices = 0);

VertexWeights parse_vertex_weights(std::istream& in);
VertexWeights load_vertex_weights(const std::filesystem::path& path);

/// G(n, p) with unit weights; pairs visited in row-major order.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// Fraction of the C(|s|,2) pairs in s joined by a positive-weight edge.
double density(const Graph& g, const Subset& s);
bool is_clique(const Graph& g, const Subset& s);
double clique_weight(const VertexWeights& w, const Subset& s);

/// adj'[i][j] = (1 + alpha w_i) adj[i][j] (1 + alpha w_j).
Graph apply_vertex_weights(const Graph& g, const VertexWeights& w, double alpha);

Graph induced_subgraph(const Graph& g, const Subset& s);

}  // namespace qigs
