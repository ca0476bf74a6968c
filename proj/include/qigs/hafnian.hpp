#pragma once

#include <cstddef>
#include <span>

#include "qigs/graph.hpp"

namespace qigs {

inline constexpr std::size_t kNaiveHafnianMaxDim = 8;
inline constexpr std::size_t kHafnianMaxDim = 20;

/// Permutation-sum definition, (1/(2^n n!)) sum over S_{2n}. Reference
/// oracle only; dim <= 8.
double hafnian_naive(const SymMatrix& m);

/// Perfect-matching expansion on the first index; (2n-1)!! products at worst,
/// zero entries are pruned. Diagonal entries are never read. dim <= 20.
double hafnian(const SymMatrix& m);

/// Hafnian of the principal submatrix of `m` on `indices` without copying it.
double hafnian_of_principal(const SymMatrix& m, std::span<const int> indices);

/// Hafnian of the induced adjacency submatrix. Odd |s| gives 0.
double hafnian_sub(const Graph& g, const Subset& s);

/// (2n-1)!! for dim = 2n, i.e. the number of perfect matchings of K_dim.
double matching_count_bound(std::size_t dim);

}  // namespace qigs
