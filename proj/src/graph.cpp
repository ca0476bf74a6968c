#include "qigs/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "qigs/error.hpp"
#include "qigs/rng.hpp"

namespace qigs {

namespace {

Error parse_error(std::size_t line, const std::string& what) {
  return Error(ErrorKind::parse, "line " + std::to_string(line) + ": " + what);
}

template <typename T>
bool parse_token(std::string_view token, T& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> split(std::string_view line, std::string_view seps) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t next = line.find_first_of(seps, pos);
    const std::size_t end = next == std::string_view::npos ? line.size() : next;
    tokens.push_back(line.substr(pos, end - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return tokens;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  return in;
}

}  // namespace

// ---------------------------------------------------------------- Subset

Subset::Subset(std::vector<int> vertices) : vertices_(std::move(vertices)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] < 0) throw Error(ErrorKind::invalid_argument, "negative vertex index");
    if (i > 0 && vertices_[i] <= vertices_[i - 1])
      throw Error(ErrorKind::invalid_argument, "subset must be strictly increasing");
  }
}

Subset Subset::from_unsorted(std::vector<int> vertices) {
  std::sort(vertices.begin(), vertices.end());
  return Subset(std::move(vertices));
}

Subset Subset::from_mask(std::uint64_t mask) {
  std::vector<int> v;
  for (int i = 0; mask != 0; ++i, mask >>= 1)
    if (mask & 1U) v.push_back(i);
  return Subset(std::move(v));
}

Subset Subset::range(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = i;
  return Subset(std::move(v));
}

bool Subset::contains(int v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

Subset Subset::without(int v) const {
  std::vector<int> out;
  out.reserve(vertices_.size());
  for (int x : vertices_)
    if (x != v) out.push_back(x);
  Subset s;
  s.vertices_ = std::move(out);
  return s;
}

Subset Subset::with(int v) const {
  if (contains(v)) return *this;
  std::vector<int> out = vertices_;
  out.insert(std::upper_bound(out.begin(), out.end(), v), v);
  Subset s;
  s.vertices_ = std::move(out);
  return s;
}

std::uint64_t Subset::mask() const {
  std::uint64_t m = 0;
  for (int v : vertices_) {
    if (v >= 64) throw Error(ErrorKind::invalid_argument, "vertex index too large for a 64-bit mask");
    m |= std::uint64_t{1} << v;
  }
  return m;
}

std::string Subset::to_string(char sep) const {
  std::string out;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(vertices_[i]);
  }
  return out;
}

// ---------------------------------------------------------------- SymMatrix

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  SymMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size())
      throw Error(ErrorKind::invalid_argument, "matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (!std::isfinite(rows[i][j])) throw Error(ErrorKind::invalid_argument, "non-finite matrix entry");
      if (rows[i][j] != rows[j][i]) throw Error(ErrorKind::invalid_argument, "matrix is not symmetric");
      m.data_[i * m.dim_ + j] = rows[i][j];
    }
  }
  return m;
}

void SymMatrix::set(std::size_t i, std::size_t j, double value) {
  if (!std::isfinite(value)) throw Error(ErrorKind::invalid_argument, "non-finite matrix entry");
  data_[i * dim_ + j] = value;
  data_[j * dim_ + i] = value;
}

SymMatrix SymMatrix::principal_submatrix(std::span<const int> indices) const {
  SymMatrix sub(indices.size());
  for (std::size_t a = 0; a < indices.size(); ++a)
    for (std::size_t b = 0; b < indices.size(); ++b)
      sub.data_[a * sub.dim_ + b] = (*this)(indices[a], indices[b]);
  return sub;
}

// ---------------------------------------------------------------- Graph

Graph::Graph(SymMatrix adjacency) : adj_(std::move(adjacency)) {
  const std::size_t n = adj_.dim();
  for (std::size_t i = 0; i < n; ++i) {
    if (adj_(i, i) != 0.0) throw Error(ErrorKind::invalid_argument, "graph adjacency must have zero diagonal");
    for (std::size_t j = 0; j < n; ++j) {
      const double w = adj_(i, j);
      if (!(w >= 0.0) || !std::isfinite(w))
        throw Error(ErrorKind::invalid_argument, "edge weights must be finite and nonnegative");
      if (w != adj_(j, i)) throw Error(ErrorKind::invalid_argument, "graph adjacency must be symmetric");
    }
  }
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges) {
  SymMatrix m(n);
  for (const Edge& e : edges) {
    if (e.i < 0 || e.j < 0 || static_cast<std::size_t>(e.i) >= n || static_cast<std::size_t>(e.j) >= n)
      throw Error(ErrorKind::invalid_argument, "edge endpoint out of range");
    if (e.i == e.j) throw Error(ErrorKind::invalid_argument, "self-loop");
    m.set(e.i, e.j, e.weight);
  }
  return Graph(std::move(m));
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  const int n = static_cast<int>(size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (adj_(i, j) > 0.0) out.push_back({i, j, adj_(i, j)});
  return out;
}

std::size_t Graph::edge_count() const {
  std::size_t count = 0;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (adj_(i, j) > 0.0) ++count;
  return count;
}

VertexWeights::VertexWeights(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw Error(ErrorKind::invalid_argument, "vertex weights must be finite and nonnegative");
}

// ---------------------------------------------------------------- I/O

GraphFormat guess_format(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? GraphFormat::matrix_csv : GraphFormat::edge_list;
}

namespace {

Graph parse_edge_list(std::istream& in, std::size_t min_vertices) {
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> seen;
  std::size_t n = min_vertices;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::vector<std::string_view> tokens;
    for (auto t : split(body, " \t"))
      if (!t.empty()) tokens.push_back(t);
    if (tokens.size() != 2 && tokens.size() != 3)
      throw parse_error(lineno, "expected \"i j [w]\"");
    int i = 0, j = 0;
    double w = 1.0;
    if (!parse_token(tokens[0], i) || !parse_token(tokens[1], j) || i < 0 || j < 0)
      throw parse_error(lineno, "vertex indices must be nonnegative integers");
    if (tokens.size() == 3 && (!parse_token(tokens[2], w) || !std::isfinite(w)))
      throw parse_error(lineno, "bad weight");
    if (i == j) throw parse_error(lineno, "self-loop on vertex " + std::to_string(i));
    if (w < 0.0) throw parse_error(lineno, "negative weight");
    if (!seen.emplace(std::min(i, j), std::max(i, j)).second)
      throw parse_error(lineno, "duplicate edge " + std::to_string(i) + "-" + std::to_string(j));
    n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max(i, j)) + 1);
    edges.push_back({i, j, w});
  }
  return Graph::from_edges(n, edges);
}

Graph parse_matrix_csv(std::istream& in, std::size_t min_vertices) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = trim(line);
    if (body.empty()) continue;
    std::vector<double> row;
    for (auto cell : split(body, ",")) {
      double v = 0.0;
      if (!parse_token(trim(cell), v) || !std::isfinite(v)) throw parse_error(lineno, "bad matrix entry");
      if (v < 0.0) throw parse_error(lineno, "negative weight");
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) throw parse_error(lineno, "ragged row");
    rows.push_back(std::move(row));
  }
  const std::size_t n = rows.size();
  if (n > 0 && rows.front().size() != n)
    throw Error(ErrorKind::parse, "matrix-csv is not square");
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i][i] != 0.0) throw parse_error(i + 1, "nonzero diagonal (self-loop)");
    for (std::size_t j = 0; j < i; ++j)
      if (rows[i][j] != rows[j][i])
        throw parse_error(i + 1, "asymmetric entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  SymMatrix m(std::max(n, min_vertices));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m.set(i, j, rows[i][j]);
  return Graph(std::move(m));
}

}  // namespace

Graph parse_graph(std::istream& in, GraphFormat format, std::size_t min_vertices) {
  return format == GraphFormat::edge_list ? parse_edge_list(in, min_vertices)
                                          : parse_matrix_csv(in, min_vertices);
}

Graph load_graph(const std::filesystem::path& path, GraphFormat format, std::size_t min_vertices) {
  auto in = open_input(path);
  return parse_graph(in, format, min_vertices);
}

VertexWeights parse_vertex_weights(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    double v = 0.0;
    if (!parse_token(body, v) || !std::isfinite(v)) throw parse_error(lineno, "bad vertex weight");
    if (v < 0.0) throw parse_error(lineno, "negative vertex weight");
    values.push_back(v);
  }
  return VertexWeights(std::move(values));
}

VertexWeights load_vertex_weights(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_vertex_weights(in);
}

// ---------------------------------------------------------------- generators and metrics

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::invalid_argument, "edge probability must lie in [0,1]");
  Rng rng(seed);
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform() < p) m.set(i, j, 1.0);
  return Graph(std::move(m));
}

double density(const Graph& g, const Subset& s) {
  if (s.size() < 2) throw Error(ErrorKind::invalid_argument, "density needs at least two vertices");
  std::size_t present = 0;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (g.adjacent(s[a], s[b])) ++present;
  const double pairs = 0.5 * static_cast<double>(s.size()) * static_cast<double>(s.size() - 1);
  return static_cast<double>(present) / pairs;
}

bool is_clique(const Graph& g, const Subset& s) {
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (!g.adjacent(s[a], s[b])) return false;
  return true;
}

double clique_weight(const VertexWeights& w, const Subset& s) {
  double total = 0.0;
  for (int v : s) total += w[v];
  return total;
}

Graph apply_vertex_weights(const Graph& g, const VertexWeights& w, double alpha) {
  if (w.size() != g.size()) throw Error(ErrorKind::invalid_argument, "vertex weight count does not match graph size");
  if (!(alpha >= 0.0)) throw Error(ErrorKind::invalid_argument, "alpha must be nonnegative");
  const std::size_t n = g.size();
  SymMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      m.set(i, j, (1.0 + alpha * w[i]) * g.weight(i, j) * (1.0 + alpha * w[j]));
  return Graph(std::move(m));
}

Graph induced_subgraph(const Graph& g, const Subset& s) {
  if (s.empty()) throw Error(ErrorKind::invalid_argument, "induced subgraph of an empty subset");
  for (int v : s)
    if (static_cast<std::size_t>(v) >= g.size()) throw Error(ErrorKind::invalid_argument, "subset vertex out of range");
  return Graph(g.adjacency().principal_submatrix(s.vertices()));
}

}  // namespace qigs
