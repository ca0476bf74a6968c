#include "qigs/hafnian.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <vector>

#include "qigs/error.hpp"

namespace qigs {

namespace {

void check_cap(std::size_t dim, std::size_t cap, const char* what) {
  if (dim > cap)
    throw Error(ErrorKind::budget, std::string(what) + " supports dimension <= " + std::to_string(cap) +
                                       ", got " + std::to_string(dim));
}

// idx holds the m still-unmatched rows; row idx[0] is matched with each
// remaining partner in turn.
double expand(const double* a, std::size_t stride, const int* idx, int m) {
  if (m == 0) return 1.0;
  if (m == 2) return a[idx[0] * stride + idx[1]];
  const double* row = a + static_cast<std::size_t>(idx[0]) * stride;
  std::array<int, kHafnianMaxDim> rest{};
  double total = 0.0;
  for (int t = 1; t < m; ++t) {
    const double w = row[idx[t]];
    if (w == 0.0) continue;
    int r = 0;
    for (int u = 1; u < m; ++u)
      if (u != t) rest[r++] = idx[u];
    total += w * expand(a, stride, rest.data(), m - 2);
  }
  return total;
}

}  // namespace

double hafnian_naive(const SymMatrix& m) {
  const std::size_t dim = m.dim();
  check_cap(dim, kNaiveHafnianMaxDim, "hafnian_naive");
  if (dim == 0) return 1.0;
  if (dim % 2 == 1) return 0.0;
  const std::size_t n = dim / 2;
  std::vector<int> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  double sum = 0.0;
  do {
    double prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) prod *= m(perm[2 * i], perm[2 * i + 1]);
    sum += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  double norm = 1.0;
  for (std::size_t i = 1; i <= n; ++i) norm *= 2.0 * static_cast<double>(i);
  return sum / norm;
}

double hafnian_of_principal(const SymMatrix& m, std::span<const int> indices) {
  check_cap(indices.size(), kHafnianMaxDim, "hafnian");
  if (indices.empty()) return 1.0;
  if (indices.size() % 2 == 1) return 0.0;
  return expand(m.data(), m.dim(), indices.data(), static_cast<int>(indices.size()));
}

double hafnian(const SymMatrix& m) {
  check_cap(m.dim(), kHafnianMaxDim, "hafnian");
  std::vector<int> idx(m.dim());
  std::iota(idx.begin(), idx.end(), 0);
  return hafnian_of_principal(m, idx);
}

double hafnian_sub(const Graph& g, const Subset& s) {
  for (int v : s)
    if (static_cast<std::size_t>(v) >= g.size()) throw Error(ErrorKind::invalid_argument, "subset vertex out of range");
  return hafnian_of_principal(g.adjacency(), s.vertices());
}

double matching_count_bound(std::size_t dim) {
  if (dim % 2 == 1) return 0.0;
  double r = 1.0;
  for (std::size_t k = dim; k >= 2; k -= 2) r *= static_cast<double>(k - 1);
  return r;
}

}  // namespace qigs
