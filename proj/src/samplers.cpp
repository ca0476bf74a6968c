#include "qigs/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "qigs/error.hpp"
#include "qigs/hafnian.hpp"
#include "qigs/parallel.hpp"

namespace qigs {

std::string_view to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::gbs: return "gbs";
    case SamplerKind::qi: return "qi";
    case SamplerKind::uniform: return "uniform";
    case SamplerKind::ips: return "ips";
  }
  return "unknown";
}

SamplerKind parse_sampler_kind(std::string_view name) {
  if (name == "gbs") return SamplerKind::gbs;
  if (name == "qi") return SamplerKind::qi;
  if (name == "uniform") return SamplerKind::uniform;
  if (name == "ips") return SamplerKind::ips;
  throw Error(ErrorKind::invalid_argument, "unknown sampler '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- combinatorics

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(r);
}

namespace {

std::uint64_t binom_u64(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i)
    r = static_cast<std::uint64_t>(static_cast<unsigned __int128>(r) * (n - k + i) / i);  // exact at each step
  return r;
}

void require_table_size(std::size_t n) {
  if (n > 64) throw Error(ErrorKind::budget, "exact enumeration supports at most 64 vertices");
}

// Advances c (strictly increasing, values < n) to the next k-subset in
// lexicographic order. Returns false after the last one.
bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

}  // namespace

std::uint64_t lex_rank(const Subset& s, std::size_t n) {
  const std::size_t k = s.size();
  std::uint64_t rank = 0;
  int prev = -1;
  for (std::size_t i = 0; i < k; ++i) {
    if (static_cast<std::size_t>(s[i]) >= n) throw Error(ErrorKind::invalid_argument, "subset vertex out of range");
    for (int v = prev + 1; v < s[i]; ++v) rank += binom_u64(n - 1 - v, k - 1 - i);
    prev = s[i];
  }
  return rank;
}

Subset lex_unrank(std::uint64_t rank, std::size_t n, std::size_t k) {
  std::vector<int> out;
  out.reserve(k);
  int v = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (;; ++v) {
      const std::uint64_t block = binom_u64(n - 1 - v, k - 1 - i);
      if (rank < block) break;
      rank -= block;
    }
    out.push_back(v++);
  }
  return Subset(std::move(out));
}

// ---------------------------------------------------------------- samplers

QiDraw qi_sample(const EdgeModel& model, std::size_t pairs, std::uint64_t max_attempts, Rng& rng) {
  if (pairs == 0) throw Error(ErrorKind::invalid_argument, "qi sampler needs at least one pair");
  if (2 * pairs > model.vertex_count())
    throw Error(ErrorKind::invalid_argument, "cannot place " + std::to_string(2 * pairs) + " photons on " +
                                                 std::to_string(model.vertex_count()) + " vertices without collision");
  std::vector<int> picked(2 * pairs);
  const auto edges = model.edges();
  for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    for (std::size_t p = 0; p < pairs; ++p) {
      const auto& e = edges[model.draw(rng)];
      picked[2 * p] = e.i;
      picked[2 * p + 1] = e.j;
    }
    std::sort(picked.begin(), picked.end());
    if (std::adjacent_find(picked.begin(), picked.end()) == picked.end())
      return {Subset(picked), attempt};
  }
  std::ostringstream msg;
  msg << "no collision-free outcome in " << max_attempts << " attempts (acceptance rate < " << 1.0 / static_cast<double>(max_attempts)
      << ")";
  throw Error(ErrorKind::rejection, msg.str());
}

Subset uniform_sample(std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) throw Error(ErrorKind::invalid_argument, "subset size exceeds vertex count");
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return Subset::from_unsorted(std::move(pool));
}

int OccupancyVector::total() const {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

bool OccupancyVector::collision_free() const {
  return std::all_of(counts.begin(), counts.end(), [](int c) { return c <= 1; });
}

Subset OccupancyVector::support() const {
  if (!collision_free()) throw Error(ErrorKind::invalid_argument, "occupancy has collisions");
  std::vector<int> v;
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i] == 1) v.push_back(static_cast<int>(i));
  return Subset(std::move(v));
}

OccupancyVector ips_sample(const Graph& g, Rng& rng) {
  const int n = static_cast<int>(g.size());
  OccupancyVector out{std::vector<int>(static_cast<std::size_t>(n), 0)};
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const double mean = g.weight(j, k);
      if (mean <= 0.0) continue;
      std::poisson_distribution<int> pairs(mean);
      const int m = pairs(rng);
      out.counts[j] += m;
      out.counts[k] += m;
    }
  }
  return out;
}

// ---------------------------------------------------------------- exact tables

double enumeration_cost(std::size_t n, std::size_t k, SamplerKind kind) {
  const double subsets = binomial(n, k);
  if (kind == SamplerKind::uniform) return subsets;
  return subsets * std::max(1.0, matching_count_bound(k));
}

DistributionTable::DistributionTable(std::size_t n, std::size_t k, SamplerKind kind, std::vector<double> weights)
    : n_(n), k_(k), kind_(kind), weights_(std::move(weights)) {
  require_table_size(n);
  if (weights_.size() != binom_u64(n, k))
    throw Error(ErrorKind::invalid_argument, "table must list every k-subset");
  for (double w : weights_)
    if (!(w >= 0.0) || !std::isfinite(w)) throw Error(ErrorKind::invalid_argument, "table weights must be finite and nonnegative");
  z_ = pairwise_sum(weights_);
  if (!(z_ > 0.0))
    throw Error(ErrorKind::empty_sector,
                "no " + std::to_string(k) + "-vertex subset has a perfect matching (all weights are zero)");
  probs_.resize(weights_.size());
  cdf_.resize(weights_.size());
  for (std::size_t i = 0; i < weights_.size(); ++i) probs_[i] = weights_[i] / z_;
  double running = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    running += probs_[i];
    cdf_[i] = running;
  }
}

std::size_t DistributionTable::argmax() const {
  return static_cast<std::size_t>(std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
}

DistributionTable exact_distribution(const Graph& g, std::size_t k, SamplerKind kind, const EnumerationOptions& options) {
  const std::size_t n = g.size();
  if (kind == SamplerKind::ips) throw Error(ErrorKind::invalid_argument, "ips has no exact sector table");
  if (k > n) throw Error(ErrorKind::invalid_argument, "subset size exceeds vertex count");
  if (kind != SamplerKind::uniform && k % 2 == 1)
    throw Error(ErrorKind::odd_size_sector, "k=" + std::to_string(k) + " is odd; hafnian-weighted sectors need even k");
  require_table_size(n);
  const double cost = enumeration_cost(n, k, kind);
  if (cost > options.max_products) {
    std::ostringstream msg;
    msg << "enumerating C(" << n << "," << k << ") subsets costs " << cost << " products, budget is " << options.max_products;
    throw Error(ErrorKind::budget, msg.str());
  }
  const std::uint64_t count = binom_u64(n, k);
  std::vector<double> weights(count, 1.0);
  if (kind != SamplerKind::uniform) {
    const SymMatrix& adj = g.adjacency();
    parallel_for(count, options.threads, [&](std::size_t begin, std::size_t end) {
      const Subset first = lex_unrank(begin, n, k);
      std::vector<int> c(first.begin(), first.end());
      for (std::size_t r = begin; r < end; ++r) {
        const double h = hafnian_of_principal(adj, c);
        weights[r] = kind == SamplerKind::gbs ? h * h : h;
        next_combination(c, static_cast<int>(n));
      }
    });
  }
  return DistributionTable(n, k, kind, std::move(weights));
}

Subset sample_from_table(const DistributionTable& table, Rng& rng) {
  const auto cdf = table.cumulative();
  const double u = rng.uniform();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  std::size_t index = static_cast<std::size_t>(it - cdf.begin());
  if (index == cdf.size()) {
    // u landed above the rounded total; use the last outcome with mass.
    index = cdf.size() - 1;
    while (index > 0 && table.probability(index) == 0.0) --index;
  }
  return table.subset(index);
}

DistributionTable pc_from_pq(const DistributionTable& gbs) {
  if (gbs.kind() != SamplerKind::gbs) throw Error(ErrorKind::invalid_argument, "pc_from_pq expects a gbs table");
  // sqrt(p_Q) * sqrt(Z_Q) = |haf|, so the new weights are the hafnians themselves.
  const double root_z = std::sqrt(gbs.normalization());
  std::vector<double> weights(gbs.size());
  for (std::size_t i = 0; i < gbs.size(); ++i) weights[i] = std::sqrt(gbs.probability(i)) * root_z;
  return DistributionTable(gbs.n(), gbs.k(), SamplerKind::qi, std::move(weights));
}

RatioReport max_probability_ratios(const Graph& g, std::size_t k, const EnumerationOptions& options) {
  const DistributionTable gbs = exact_distribution(g, k, SamplerKind::gbs, options);
  const DistributionTable qi = exact_distribution(g, k, SamplerKind::qi, options);
  const std::size_t best = gbs.argmax();
  RatioReport report;
  report.argmax = gbs.subset(best);
  report.p_gbs = gbs.probability(best);
  report.p_qi = qi.probability(best);
  report.p_uniform = 1.0 / binomial(g.size(), k);
  report.ratio_gbs_uniform = report.p_gbs / report.p_uniform;
  report.ratio_gbs_qi = report.p_gbs / report.p_qi;
  return report;
}

}  // namespace qigs
