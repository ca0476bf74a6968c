#include "qigs/heuristics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "qigs/encoding.hpp"
#include "qigs/error.hpp"
#include "qigs/parallel.hpp"

namespace qigs {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
const T& pick_uniform(const std::vector<T>& options, Rng& rng) {
  return options[options.size() == 1 ? 0 : rng.below(options.size())];
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr mean_stderr(std::span<const double> xs) {
  MeanStderr out;
  if (xs.empty()) return out;
  const double n = static_cast<double>(xs.size());
  out.mean = pairwise_sum(xs) / n;
  if (xs.size() > 1) {
    std::vector<double> sq(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) sq[i] = (xs[i] - out.mean) * (xs[i] - out.mean);
    out.stderr_ = std::sqrt(pairwise_sum(sq) / (n - 1.0) / n);
  }
  return out;
}

bool reaches(double weight, double optimum) {
  return weight >= optimum - 1e-9 * std::max(1.0, std::abs(optimum));
}

}  // namespace

// ---------------------------------------------------------------- local search

Subset shrink_to_clique(const Graph& g, const VertexWeights& w, Subset s, Rng& rng) {
  for (;;) {
    std::vector<int> missing(s.size(), 0);
    int worst = 0;
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) {
        if (!g.adjacent(s[a], s[b])) {
          ++missing[a];
          ++missing[b];
        }
      }
    }
    for (int m : missing) worst = std::max(worst, m);
    if (worst == 0) return s;

    double lightest = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < s.size(); ++a)
      if (missing[a] == worst) lightest = std::min(lightest, w[s[a]]);
    std::vector<int> ties;
    for (std::size_t a = 0; a < s.size(); ++a)
      if (missing[a] == worst && w[s[a]] == lightest) ties.push_back(s[a]);
    s = s.without(pick_uniform(ties, rng));
  }
}

Subset expand_clique(const Graph& g, const VertexWeights& w, Subset clique, Rng& rng) {
  if (!is_clique(g, clique)) throw Error(ErrorKind::invalid_argument, "expand_clique needs a clique");
  const int n = static_cast<int>(g.size());
  for (;;) {
    std::vector<int> best;
    double best_weight = -1.0;
    for (int v = 0; v < n; ++v) {
      if (clique.contains(v)) continue;
      bool common = true;
      for (int u : clique)
        if (!g.adjacent(u, v)) {
          common = false;
          break;
        }
      if (!common) continue;
      if (w[v] > best_weight) {
        best_weight = w[v];
        best.assign(1, v);
      } else if (w[v] == best_weight) {
        best.push_back(v);
      }
    }
    if (best.empty()) return clique;
    clique = clique.with(pick_uniform(best, rng));
  }
}

std::vector<WeightedClique> clique_search_trace(const Graph& g, const VertexWeights& w, const Subset& seed,
                                                std::size_t iterations, Rng& rng) {
  if (w.size() != g.size()) throw Error(ErrorKind::invalid_argument, "vertex weight count does not match graph size");
  std::vector<WeightedClique> trace;
  trace.reserve(iterations + 1);
  Subset current = expand_clique(g, w, shrink_to_clique(g, w, seed, rng), rng);
  WeightedClique best{current, clique_weight(w, current)};
  trace.push_back(best);
  for (std::size_t t = 0; t < iterations; ++t) {
    if (current.size() > 1) current = current.without(current[rng.below(current.size())]);
    current = expand_clique(g, w, std::move(current), rng);
    const double weight = clique_weight(w, current);
    if (weight > best.weight) best = {current, weight};
    trace.push_back(best);
  }
  return trace;
}

WeightedClique clique_local_search(const Graph& g, const VertexWeights& w, const Subset& seed, std::size_t iterations,
                                   Rng& rng) {
  return clique_search_trace(g, w, seed, iterations, rng).back();
}

// ---------------------------------------------------------------- exhaustive oracle

namespace {

struct CliqueSearch {
  const std::vector<std::uint64_t>& adjacency;
  const VertexWeights& w;
  std::vector<int> current;
  double best_weight = -std::numeric_limits<double>::infinity();
  std::vector<int> best;

  void run(double weight, std::uint64_t candidates) {
    if (!current.empty() && weight > best_weight) {
      best_weight = weight;
      best = current;
    }
    double remaining = 0.0;
    for (std::uint64_t c = candidates; c; c &= c - 1) remaining += w[std::countr_zero(c)];
    for (std::uint64_t c = candidates; c; c &= c - 1) {
      const int v = std::countr_zero(c);
      // Equal-weight branches are still explored; only strictly better ones replace.
      if (weight + remaining < best_weight - 1e-12 * std::max(1.0, std::abs(best_weight))) return;
      current.push_back(v);
      const std::uint64_t later = v == 63 ? 0 : (~std::uint64_t{0} << (v + 1));
      run(weight + w[v], candidates & adjacency[v] & later);
      current.pop_back();
      remaining -= w[v];
    }
  }
};

}  // namespace

WeightedClique exhaustive_max_weight_clique(const Graph& g, const VertexWeights& w) {
  const std::size_t n = g.size();
  if (n > kExhaustiveCliqueMaxVertices)
    throw Error(ErrorKind::budget, "exhaustive clique search supports at most " +
                                       std::to_string(kExhaustiveCliqueMaxVertices) + " vertices");
  if (w.size() != n) throw Error(ErrorKind::invalid_argument, "vertex weight count does not match graph size");
  if (n == 0) return {};
  std::vector<std::uint64_t> adjacency(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g.adjacent(static_cast<int>(i), static_cast<int>(j))) adjacency[i] |= std::uint64_t{1} << j;
  CliqueSearch search{adjacency, w, {}, -std::numeric_limits<double>::infinity(), {}};
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  search.run(0.0, all);
  Subset best(search.best);
  return {best, clique_weight(w, best)};
}

PlantedInstance planted_weighted_clique(std::size_t n, double p_background, std::size_t clique_size, std::uint64_t seed) {
  if (clique_size > n) throw Error(ErrorKind::invalid_argument, "planted clique larger than the graph");
  Graph background = erdos_renyi(n, p_background, Rng::derive(seed, "planted/graph")());
  Rng weight_rng = Rng::derive(seed, "planted/weights");
  std::vector<double> weights(n);
  for (double& x : weights) x = weight_rng.uniform();

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return weights[a] > weights[b]; });
  order.resize(clique_size);
  Subset planted = Subset::from_unsorted(order);

  SymMatrix adj = background.adjacency();
  for (std::size_t a = 0; a < planted.size(); ++a)
    for (std::size_t b = a + 1; b < planted.size(); ++b) adj.set(planted[a], planted[b], 1.0);
  return {Graph(std::move(adj)), VertexWeights(std::move(weights)), planted};
}

// ---------------------------------------------------------------- densest-k experiment

DensestResult densest_experiment(const DensestConfig& cfg) {
  if (cfg.k < 2 || cfg.k > cfg.n) throw Error(ErrorKind::invalid_argument, "need 2 <= k <= n");
  if (cfg.graphs == 0 || cfg.samples_per_graph == 0)
    throw Error(ErrorKind::invalid_argument, "graph and sample counts must be positive");
  DensestResult result;
  std::vector<SamplerKind> active;
  for (SamplerKind kind : cfg.samplers) {
    if (kind == SamplerKind::ips) throw Error(ErrorKind::invalid_argument, "ips is not a k-subset sampler");
    if (kind != SamplerKind::uniform && cfg.k % 2 == 1)
      throw Error(ErrorKind::odd_size_sector, "k=" + std::to_string(cfg.k) + " is odd; gbs and qi need even k");
    DensestStats stats;
    stats.kind = kind;
    if (kind == SamplerKind::gbs && enumeration_cost(cfg.n, cfg.k, kind) > cfg.max_products) {
      stats.skipped = true;
      result.warnings.push_back("gbs skipped: enumeration cost " + fmt_double(enumeration_cost(cfg.n, cfg.k, kind)) +
                                " exceeds budget " + fmt_double(cfg.max_products));
    } else {
      active.push_back(kind);
    }
    result.samplers.push_back(std::move(stats));
  }

  const std::size_t samples = cfg.samples_per_graph;
  // densities[sampler][graph * samples + s]
  std::vector<std::vector<double>> densities(cfg.samplers.size(), std::vector<double>(cfg.graphs * samples));
  std::vector<std::vector<char>> fallback(cfg.samplers.size(), std::vector<char>(cfg.graphs, 0));

  parallel_for(cfg.graphs, cfg.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t gi = begin; gi < end; ++gi) {
      const Graph g = erdos_renyi(cfg.n, cfg.p, Rng::derive(cfg.seed, "densest/graph", gi)());
      const bool edgeless = g.edge_count() == 0;
      for (std::size_t si = 0; si < cfg.samplers.size(); ++si) {
        if (result.samplers[si].skipped) continue;
        const SamplerKind kind = cfg.samplers[si];
        Rng rng = Rng::derive(cfg.seed, std::string("densest/") + std::string(to_string(kind)), gi);
        double* out = densities[si].data() + gi * samples;
        if (kind == SamplerKind::uniform || edgeless) {
          fallback[si][gi] = kind != SamplerKind::uniform;
          for (std::size_t s = 0; s < samples; ++s) out[s] = density(g, uniform_sample(cfg.n, cfg.k, rng));
        } else if (kind == SamplerKind::qi) {
          const EdgeModel model = build_edge_model(g);
          for (std::size_t s = 0; s < samples; ++s)
            out[s] = density(g, qi_sample(model, cfg.k / 2, cfg.max_attempts, rng).subset);
        } else {
          const DistributionTable table =
              exact_distribution(g, cfg.k, SamplerKind::gbs, {cfg.max_products, 1});
          for (std::size_t s = 0; s < samples; ++s) out[s] = density(g, sample_from_table(table, rng));
        }
      }
    }
  });

  for (std::size_t si = 0; si < cfg.samplers.size(); ++si) {
    DensestStats& stats = result.samplers[si];
    if (stats.skipped) continue;
    const MeanStderr overall = mean_stderr(densities[si]);
    stats.mean_density = overall.mean;
    stats.stderr_density = overall.stderr_;
    stats.fallback_graphs = static_cast<std::size_t>(std::count(fallback[si].begin(), fallback[si].end(), 1));
    std::vector<double> running(cfg.graphs, -1.0);
    std::vector<double> column(cfg.graphs);
    for (std::size_t m = 0; m < samples; ++m) {
      for (std::size_t gi = 0; gi < cfg.graphs; ++gi) {
        running[gi] = std::max(running[gi], densities[si][gi * samples + m]);
        column[gi] = running[gi];
      }
      const MeanStderr curve = mean_stderr(column);
      stats.max_curve.push_back(curve.mean);
      stats.max_curve_stderr.push_back(curve.stderr_);
    }
    if (stats.fallback_graphs > 0)
      result.warnings.push_back(std::string(to_string(stats.kind)) + ": " + std::to_string(stats.fallback_graphs) +
                                " edgeless graph(s) sampled uniformly");
  }
  return result;
}

void write_densest_csv(std::ostream& out, const DensestResult& result) {
  out << "sampler,metric,samples,value,stderr\n";
  for (const DensestStats& s : result.samplers) {
    const std::string name(to_string(s.kind));
    if (s.skipped) {
      out << name << ",skipped,0,1,\n";
      continue;
    }
    const std::size_t total = s.max_curve.size();
    out << name << ",mean_density," << total << ',' << fmt_double(s.mean_density) << ','
        << fmt_double(s.stderr_density) << '\n';
    for (std::size_t m = 0; m < total; ++m)
      out << name << ",max_density," << (m + 1) << ',' << fmt_double(s.max_curve[m]) << ','
          << fmt_double(s.max_curve_stderr[m]) << '\n';
    out << name << ",fallback_graphs," << total << ',' << s.fallback_graphs << ",\n";
  }
}

// ---------------------------------------------------------------- max-weight-clique experiment

CliqueResult clique_experiment(const CliqueConfig& cfg) {
  const Graph& g = cfg.graph;
  const VertexWeights& w = cfg.weights;
  if (w.size() != g.size()) throw Error(ErrorKind::invalid_argument, "vertex weight count does not match graph size");
  if (cfg.runs == 0) throw Error(ErrorKind::invalid_argument, "run count must be positive");

  CliqueResult result;
  if (cfg.optimum) {
    result.optimum = *cfg.optimum;
  } else {
    if (g.size() > kExhaustiveCliqueMaxVertices)
      throw Error(ErrorKind::budget, "graph too large for exhaustive optimum; supply the optimum clique");
    result.optimum = exhaustive_max_weight_clique(g, w);
  }
  result.runs = cfg.runs;
  result.iterations = cfg.iterations;
  const std::size_t max_iters =
      cfg.iterations.empty() ? 0 : *std::max_element(cfg.iterations.begin(), cfg.iterations.end());

  std::size_t k = cfg.sample_size;
  if (k == 0) {
    k = result.optimum.vertices.size();
    if (k % 2 == 1) k = k + 1 <= g.size() ? k + 1 : k - 1;
    if (k == 0) k = 2;
  }
  if (k > g.size()) throw Error(ErrorKind::invalid_argument, "sample size exceeds vertex count");
  result.sample_size = k;

  const Graph weighted = apply_vertex_weights(g, w, cfg.alpha);

  for (SamplerKind kind : cfg.samplers) {
    if (kind == SamplerKind::ips) throw Error(ErrorKind::invalid_argument, "ips is not a k-subset sampler");
    if (kind != SamplerKind::uniform && k % 2 == 1)
      throw Error(ErrorKind::odd_size_sector, "sample size " + std::to_string(k) + " is odd; gbs and qi need even k");

    std::optional<EdgeModel> model;
    std::optional<DistributionTable> table;
    if (kind == SamplerKind::qi) model = build_edge_model(weighted);
    if (kind == SamplerKind::gbs)
      table = exact_distribution(weighted, k, SamplerKind::gbs, {cfg.max_products, cfg.threads});

    std::vector<char> hit(cfg.runs, 0);
    std::vector<std::vector<char>> ok(cfg.runs);
    parallel_for(cfg.runs, cfg.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t r = begin; r < end; ++r) {
        Rng rng = Rng::derive(cfg.seed, std::string("clique/") + std::string(to_string(kind)), r);
        Subset seed;
        switch (kind) {
          case SamplerKind::qi: seed = qi_sample(*model, k / 2, cfg.max_attempts, rng).subset; break;
          case SamplerKind::gbs: seed = sample_from_table(*table, rng); break;
          default: seed = uniform_sample(g.size(), k, rng); break;
        }
        hit[r] = seed == result.optimum.vertices;
        const auto trace = clique_search_trace(g, w, seed, max_iters, rng);
        ok[r].resize(cfg.iterations.size());
        for (std::size_t t = 0; t < cfg.iterations.size(); ++t)
          ok[r][t] = reaches(trace[cfg.iterations[t]].weight, result.optimum.weight);
      }
    });

    CliqueSamplerStats stats;
    stats.kind = kind;
    stats.exact_hits = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
    stats.successes.assign(cfg.iterations.size(), 0);
    for (const auto& row : ok)
      for (std::size_t t = 0; t < row.size(); ++t) stats.successes[t] += row[t];
    result.samplers.push_back(std::move(stats));
  }
  return result;
}

void write_clique_csv(std::ostream& out, const CliqueResult& result) {
  out << "sampler,metric,iterations,count,runs,rate\n";
  const double runs = static_cast<double>(result.runs);
  for (const CliqueSamplerStats& s : result.samplers) {
    const std::string name(to_string(s.kind));
    out << name << ",exact_hits,," << s.exact_hits << ',' << result.runs << ','
        << fmt_double(static_cast<double>(s.exact_hits) / runs) << '\n';
    for (std::size_t t = 0; t < result.iterations.size(); ++t)
      out << name << ",success," << result.iterations[t] << ',' << s.successes[t] << ',' << result.runs << ','
          << fmt_double(static_cast<double>(s.successes[t]) / runs) << '\n';
  }
}

}  // namespace qigs
