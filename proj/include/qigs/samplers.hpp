#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qigs/encoding.hpp"
#include "qigs/graph.hpp"
#include "qigs/rng.hpp"

namespace qigs {

/// gbs: probability ∝ haf², qi: ∝ haf, uniform: flat, ips: independent Poisson pairs.
enum class SamplerKind { gbs, qi, uniform, ips };

std::string_view to_string(SamplerKind kind);
SamplerKind parse_sampler_kind(std::string_view name);

inline constexpr std::uint64_t kDefaultMaxAttempts = 1'000'000;
inline constexpr double kDefaultMaxProducts = 1e8;

// ---------------------------------------------------------------- combinatorics

/// C(n, k) as a double (exact below 2^53).
double binomial(std::size_t n, std::size_t k);

/// Position of `s` among the k-subsets of [0, n) in lexicographic order.
std::uint64_t lex_rank(const Subset& s, std::size_t n);
Subset lex_unrank(std::uint64_t rank, std::size_t n, std::size_t k);

// ---------------------------------------------------------------- samplers

struct QiDraw {
  Subset subset;
  std::uint64_t attempts = 0;  // including the accepted one
};

/// Draws `pairs` edges i.i.d. from the model and keeps the draw only if all
/// 2*pairs endpoints are distinct. Conditioned on acceptance the subset S
/// appears with probability haf(A_S) / sum_S' haf(A_S').
/// Throws ErrorKind::rejection once max_attempts draws were all rejected.
QiDraw qi_sample(const EdgeModel& model, std::size_t pairs, std::uint64_t max_attempts, Rng& rng);

/// Uniform k-subset of [0, n) by partial Fisher-Yates.
Subset uniform_sample(std::size_t n, std::size_t k, Rng& rng);

struct OccupancyVector {
  std::vector<int> counts;

  int total() const;
  bool collision_free() const;
  /// Modes with a nonzero count. Requires collision_free().
  Subset support() const;
};

/// Independent pairs: every pair j < k emits Poisson(A_jk) photon pairs.
OccupancyVector ips_sample(const Graph& g, Rng& rng);

// ---------------------------------------------------------------- exact tables

struct EnumerationOptions {
  double max_products = kDefaultMaxProducts;
  unsigned threads = 1;
};

/// Hafnian products needed to tabulate one sector (C(n,k) for uniform).
double enumeration_cost(std::size_t n, std::size_t k, SamplerKind kind);

/// Every k-subset of the vertex set in lexicographic order with its weight and
/// sector-normalized probability.
class DistributionTable {
 public:
  DistributionTable(std::size_t n, std::size_t k, SamplerKind kind, std::vector<double> weights);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  SamplerKind kind() const { return kind_; }
  std::size_t size() const { return weights_.size(); }

  Subset subset(std::size_t index) const { return lex_unrank(index, n_, k_); }
  std::size_t index_of(const Subset& s) const { return static_cast<std::size_t>(lex_rank(s, n_)); }
  double weight(std::size_t index) const { return weights_[index]; }
  double probability(std::size_t index) const { return probs_[index]; }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> probabilities() const { return probs_; }
  std::span<const double> cumulative() const { return cdf_; }
  /// Sum of the unnormalized weights (Z_Q for gbs, Z_C for qi).
  double normalization() const { return z_; }

  std::size_t argmax() const;

 private:
  std::size_t n_;
  std::size_t k_;
  SamplerKind kind_;
  std::vector<double> weights_;
  std::vector<double> probs_;
  std::vector<double> cdf_;
  double z_ = 0.0;
};

/// Exhaustive enumeration of the collision-free k-photon sector.
/// Weights are haf² (gbs), haf (qi) or 1 (uniform). Throws on odd k for
/// gbs/qi, on an all-zero sector, and when enumeration_cost exceeds the budget.
DistributionTable exact_distribution(const Graph& g, std::size_t k, SamplerKind kind,
                                     const EnumerationOptions& options = {});

Subset sample_from_table(const DistributionTable& table, Rng& rng);

/// p_C = sqrt(p_Q) / sum sqrt(p_Q). Input must be a gbs table.
DistributionTable pc_from_pq(const DistributionTable& gbs);

struct RatioReport {
  Subset argmax;
  double p_gbs = 0.0;
  double p_qi = 0.0;
  double p_uniform = 0.0;
  double ratio_gbs_uniform = 0.0;
  double ratio_gbs_qi = 0.0;
};

/// Largest gbs probability in the k-sector compared with the qi and uniform
/// probabilities of the same outcome.
RatioReport max_probability_ratios(const Graph& g, std::size_t k, const EnumerationOptions& options = {});

}  // namespace qigs
