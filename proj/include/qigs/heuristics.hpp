#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qigs/graph.hpp"
#include "qigs/rng.hpp"
#include "qigs/samplers.hpp"

namespace qigs {

struct WeightedClique {
  Subset vertices;
  double weight = 0.0;
};

// ---------------------------------------------------------------- local search

/// Drops vertices until the set is a clique. Each step removes a vertex with
/// the most missing edges inside the set; ties go to the lowest weight, then
/// uniformly at random.
Subset shrink_to_clique(const Graph& g, const VertexWeights& w, Subset s, Rng& rng);

/// Greedily adds the heaviest vertex adjacent to every member (ties uniformly
/// at random) until the clique is maximal. Throws if `clique` is not a clique.
Subset expand_clique(const Graph& g, const VertexWeights& w, Subset clique, Rng& rng);

/// Best clique after 0..T perturb-then-expand cycles: entry t is the best
/// seen once t cycles have run. One cycle removes a uniformly random member
/// (when more than one remains) and expands again.
std::vector<WeightedClique> clique_search_trace(const Graph& g, const VertexWeights& w, const Subset& seed,
                                                std::size_t iterations, Rng& rng);

WeightedClique clique_local_search(const Graph& g, const VertexWeights& w, const Subset& seed, std::size_t iterations,
                                   Rng& rng);

inline constexpr std::size_t kExhaustiveCliqueMaxVertices = 30;

/// Branch and bound over vertices in index order. Among optimal cliques the
/// lexicographically smallest sorted vertex list wins.
WeightedClique exhaustive_max_weight_clique(const Graph& g, const VertexWeights& w);

struct PlantedInstance {
  Graph graph;
  VertexWeights weights;
  Subset planted;
};

/// G(n, p_background) with U[0,1) vertex weights; the `clique_size` heaviest
/// vertices are then joined into a clique.
PlantedInstance planted_weighted_clique(std::size_t n, double p_background, std::size_t clique_size, std::uint64_t seed);

// ---------------------------------------------------------------- densest-k experiment

struct DensestConfig {
  std::size_t n = 20;
  double p = 0.3;
  std::size_t k = 8;
  std::size_t graphs = 100;
  std::size_t samples_per_graph = 100;
  std::vector<SamplerKind> samplers{SamplerKind::gbs, SamplerKind::qi, SamplerKind::uniform};
  std::uint64_t seed = 1;
  double max_products = kDefaultMaxProducts;
  std::uint64_t max_attempts = kDefaultMaxAttempts;
  unsigned threads = 1;
};

struct DensestStats {
  SamplerKind kind;
  bool skipped = false;
  double mean_density = 0.0;
  double stderr_density = 0.0;  // over all graphs x samples
  /// max_curve[m-1]: mean over graphs of the best density among the first m samples.
  std::vector<double> max_curve;
  std::vector<double> max_curve_stderr;
  std::size_t fallback_graphs = 0;
};

struct DensestResult {
  std::vector<DensestStats> samplers;
  std::vector<std::string> warnings;
};

/// Samples k-subsets of seeded G(n, p) graphs with each sampler and records
/// their densities. Edgeless graphs have no hafnian-weighted law; gbs and qi
/// fall back to uniform draws there (every density is 0 anyway) and count
/// the graph in fallback_graphs. gbs is skipped with a warning when its
/// enumeration cost exceeds max_products.
DensestResult densest_experiment(const DensestConfig& cfg);

/// Columns: sampler,metric,samples,value,stderr
void write_densest_csv(std::ostream& out, const DensestResult& result);

// ---------------------------------------------------------------- max-weight-clique experiment

struct CliqueConfig {
  Graph graph;
  VertexWeights weights;
  double alpha = 1.0;
  std::size_t runs = 1000;
  std::vector<std::size_t> iterations{0, 2, 8};
  std::uint64_t seed = 1;
  std::vector<SamplerKind> samplers{SamplerKind::gbs, SamplerKind::qi, SamplerKind::uniform};
  /// 0 picks the even size nearest the optimum clique size (rounding up).
  std::size_t sample_size = 0;
  std::optional<WeightedClique> optimum;
  double max_products = kDefaultMaxProducts;
  std::uint64_t max_attempts = kDefaultMaxAttempts;
  unsigned threads = 1;
};

struct CliqueSamplerStats {
  SamplerKind kind;
  std::size_t exact_hits = 0;          // raw samples equal to the optimum clique
  std::vector<std::size_t> successes;  // aligned with CliqueConfig::iterations
};

struct CliqueResult {
  WeightedClique optimum;
  std::size_t sample_size = 0;
  std::size_t runs = 0;
  std::vector<std::size_t> iterations;
  std::vector<CliqueSamplerStats> samplers;
};

/// Seeds clique_search_trace with samples from each sampler and counts runs
/// whose best clique reaches the optimum weight after T cycles. gbs and qi
/// sample from the vertex-weighted graph (1 + alpha w) A (1 + alpha w).
CliqueResult clique_experiment(const CliqueConfig& cfg);

/// Columns: sampler,metric,iterations,count,runs,rate
void write_clique_csv(std::ostream& out, const CliqueResult& result);

}  // namespace qigs
