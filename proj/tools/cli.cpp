#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qigs/encoding.hpp"
#include "qigs/error.hpp"
#include "qigs/graph.hpp"
#include "qigs/hafnian.hpp"
#include "qigs/heuristics.hpp"
#include "qigs/parallel.hpp"
#include "qigs/samplers.hpp"

namespace qigs::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kSampleBlock = 1024;

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) items.push_back(item);
  return items;
}

std::vector<SamplerKind> parse_samplers(const std::string& list) {
  std::vector<SamplerKind> kinds;
  for (const auto& name : split_list(list)) kinds.push_back(parse_sampler_kind(name));
  if (kinds.empty()) throw Error(ErrorKind::invalid_argument, "no samplers given");
  return kinds;
}

std::vector<std::size_t> parse_iterations(const std::string& list) {
  std::vector<std::size_t> iters;
  for (const auto& item : split_list(list)) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || item.front() == '-') throw Error(ErrorKind::invalid_argument, "bad iteration count '" + item + "'");
    iters.push_back(v);
  }
  return iters;
}

/// Output sink: a file, or the caller's stream for "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw Error(ErrorKind::io, "cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

/// Canonical (key-sorted, compact) manifest line shared by every output file.
std::string manifest_line(const json& config) {
  return "# config: " + config.dump();
}

Graph load_graph_arg(const std::string& path) {
  return load_graph(path, guess_format(path));
}

SymMatrix load_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t pos = 0;
        row.push_back(std::stod(cell, &pos));
        if (cell.find_first_not_of(" \t\r", pos) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw Error(ErrorKind::parse, "line " + std::to_string(lineno) + ": bad matrix entry");
      }
    }
    rows.push_back(std::move(row));
  }
  try {
    return SymMatrix::from_rows(rows);
  } catch (const Error& e) {
    throw Error(ErrorKind::parse, e.what());
  }
}

// ---------------------------------------------------------------- executors
// Each takes the canonical config (exactly what lands in the manifest) so a
// manifest read back from an output file reproduces the run.

struct RunContext {
  std::string out_path = "-";
  unsigned threads = 1;
  std::ostream* stdout_stream = nullptr;
};

void exec_hafnian(const json& cfg, RunContext& ctx) {
  const SymMatrix m = load_matrix_csv(cfg.at("matrix").get<std::string>());
  Sink sink(ctx.out_path, *ctx.stdout_stream);
  *sink << fmt_double(hafnian(m)) << '\n';
}

void exec_encode(const json& cfg, RunContext& ctx) {
  const Graph g = load_graph_arg(cfg.at("graph").get<std::string>());
  const EdgeModel model = build_edge_model(g);
  json doc;
  doc["config"] = cfg;
  doc["vertices"] = g.size();
  doc["total_weight"] = model.total_weight();
  doc["trace_coeff"] = model.trace_coeff();
  json edges = json::array();
  for (std::size_t e = 0; e < model.edges().size(); ++e) {
    const auto& edge = model.edges()[e];
    edges.push_back({{"i", edge.i}, {"j", edge.j}, {"weight", edge.weight}, {"q", model.probability(e)}});
  }
  doc["edges"] = std::move(edges);
  if (cfg.contains("photons")) {
    const SqueezeSpec spec = calibrate_scale(takagi_singular_values(g.adjacency()), cfg["photons"].get<double>());
    doc["squeeze"] = {{"singvals", spec.singvals},
                      {"scale", spec.scale},
                      {"squeezers", spec.squeezers},
                      {"mean_photons", spec.mean_photons},
                      {"r_max", spec.max_squeezing()}};
    if (cfg.contains("eta")) {
      const double eta = cfg["eta"].get<double>();
      std::vector<double> lossy;
      for (double r : spec.squeezers) lossy.push_back(loss_compensate(r, eta));
      doc["lossy"] = {{"eta", eta},
                      {"squeezers", lossy},
                      {"r_max", lossy.empty() ? 0.0 : *std::max_element(lossy.begin(), lossy.end())}};
    }
  }
  Sink sink(ctx.out_path, *ctx.stdout_stream);
  *sink << doc.dump(2) << '\n';
}

void exec_dist(const json& cfg, RunContext& ctx) {
  const Graph g = load_graph_arg(cfg.at("graph").get<std::string>());
  const SamplerKind kind = parse_sampler_kind(cfg.at("kind").get<std::string>());
  const auto k = cfg.at("k").get<std::size_t>();
  const DistributionTable table =
      exact_distribution(g, k, kind, {cfg.at("max_enum").get<double>(), ctx.threads});
  Sink sink(ctx.out_path, *ctx.stdout_stream);
  std::ostream& out = *sink;
  out << manifest_line(cfg) << '\n';
  out << "# normalization: " << fmt_double(table.normalization()) << '\n';
  out << "vertices,weight,probability\n";
  for (std::size_t i = 0; i < table.size(); ++i)
    out << table.subset(i).to_string() << ',' << fmt_double(table.weight(i)) << ',' << fmt_double(table.probability(i))
        << '\n';
}

void exec_sample(const json& cfg, RunContext& ctx) {
  const Graph g = load_graph_arg(cfg.at("graph").get<std::string>());
  const SamplerKind kind = parse_sampler_kind(cfg.at("sampler").get<std::string>());
  const auto k = cfg.at("k").get<std::size_t>();
  const auto count = cfg.at("count").get<std::size_t>();
  const auto seed = cfg.at("seed").get<std::uint64_t>();
  const auto max_attempts = cfg.at("max_attempts").get<std::uint64_t>();
  const bool postselect = cfg.at("postselect").get<bool>();
  if (kind != SamplerKind::uniform && !(kind == SamplerKind::ips && !postselect) && k % 2 == 1)
    throw Error(ErrorKind::odd_size_sector, "k=" + std::to_string(k) + " is odd; hafnian-weighted samplers need even k");

  std::optional<EdgeModel> model;
  std::optional<DistributionTable> table;
  if (kind == SamplerKind::qi) model = build_edge_model(g);
  if (kind == SamplerKind::gbs)
    table = exact_distribution(g, k, kind, {cfg.at("max_enum").get<double>(), ctx.threads});

  // One derived stream per block of samples, so the thread count never
  // changes which stream a sample comes from.
  const std::size_t blocks = (count + kSampleBlock - 1) / kSampleBlock;
  std::vector<std::string> rows(count);
  std::vector<std::uint64_t> attempts(blocks, 0);
  parallel_for(blocks, ctx.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b) {
      Rng rng = Rng::derive(seed, "sample/" + std::string(to_string(kind)), b);
      const std::size_t last = std::min(count, (b + 1) * kSampleBlock);
      for (std::size_t i = b * kSampleBlock; i < last; ++i) {
        switch (kind) {
          case SamplerKind::qi: {
            QiDraw draw = qi_sample(*model, k / 2, max_attempts, rng);
            attempts[b] += draw.attempts;
            rows[i] = draw.subset.to_string();
            break;
          }
          case SamplerKind::gbs: rows[i] = sample_from_table(*table, rng).to_string(); break;
          case SamplerKind::uniform: rows[i] = uniform_sample(g.size(), k, rng).to_string(); break;
          case SamplerKind::ips: {
            if (!postselect) {
              const OccupancyVector occ = ips_sample(g, rng);
              std::string s;
              for (std::size_t v = 0; v < occ.counts.size(); ++v) s += (v ? ";" : "") + std::to_string(occ.counts[v]);
              rows[i] = std::move(s);
              break;
            }
            for (std::uint64_t a = 1;; ++a) {
              const OccupancyVector occ = ips_sample(g, rng);
              if (occ.collision_free() && occ.total() == static_cast<int>(k)) {
                attempts[b] += a;
                rows[i] = occ.support().to_string();
                break;
              }
              if (a == max_attempts)
                throw Error(ErrorKind::rejection, "no collision-free " + std::to_string(k) + "-photon ips outcome in " +
                                                      std::to_string(max_attempts) + " attempts");
            }
            break;
          }
        }
      }
    }
  });

  Sink sink(ctx.out_path, *ctx.stdout_stream);
  std::ostream& out = *sink;
  out << manifest_line(cfg) << '\n';
  out << "index," << (kind == SamplerKind::ips && !postselect ? "counts" : "vertices") << '\n';
  for (std::size_t i = 0; i < count; ++i) out << i << ',' << rows[i] << '\n';
  std::uint64_t total_attempts = 0;
  for (auto a : attempts) total_attempts += a;
  if (total_attempts > 0)
    out << "# acceptance: " << count << '/' << total_attempts << " = "
        << fmt_double(static_cast<double>(count) / static_cast<double>(total_attempts)) << '\n';
}

std::vector<std::string> sampler_names(const json& cfg) {
  return cfg.at("samplers").get<std::vector<std::string>>();
}

std::vector<SamplerKind> sampler_kinds(const json& cfg) {
  std::vector<SamplerKind> kinds;
  for (const auto& name : sampler_names(cfg)) kinds.push_back(parse_sampler_kind(name));
  return kinds;
}

void exec_densest(const json& cfg, RunContext& ctx, std::ostream& err) {
  DensestConfig dc;
  dc.n = cfg.at("n").get<std::size_t>();
  dc.p = cfg.at("p").get<double>();
  dc.k = cfg.at("k").get<std::size_t>();
  dc.graphs = cfg.at("graphs").get<std::size_t>();
  dc.samples_per_graph = cfg.at("samples").get<std::size_t>();
  dc.samplers = sampler_kinds(cfg);
  dc.seed = cfg.at("seed").get<std::uint64_t>();
  dc.max_products = cfg.at("max_enum").get<double>();
  dc.max_attempts = cfg.at("max_attempts").get<std::uint64_t>();
  dc.threads = ctx.threads;
  const DensestResult result = densest_experiment(dc);
  for (const auto& w : result.warnings) err << "warning: " << w << '\n';
  Sink sink(ctx.out_path, *ctx.stdout_stream);
  *sink << manifest_line(cfg) << '\n';
  write_densest_csv(*sink, result);
}

void exec_clique(const json& cfg, RunContext& ctx) {
  CliqueConfig cc;
  if (cfg.contains("planted")) {
    const json& pl = cfg["planted"];
    PlantedInstance inst = planted_weighted_clique(pl.at("n").get<std::size_t>(), pl.at("p").get<double>(),
                                                   pl.at("size").get<std::size_t>(), cfg.at("seed").get<std::uint64_t>());
    cc.graph = std::move(inst.graph);
    cc.weights = std::move(inst.weights);
  } else {
    cc.weights = load_vertex_weights(cfg.at("weights").get<std::string>());
    const std::string path = cfg.at("graph").get<std::string>();
    cc.graph = load_graph(path, guess_format(path), cc.weights.size());
  }
  cc.alpha = cfg.at("alpha").get<double>();
  cc.runs = cfg.at("samples").get<std::size_t>();
  cc.iterations = cfg.at("iters").get<std::vector<std::size_t>>();
  cc.seed = cfg.at("seed").get<std::uint64_t>();
  cc.samplers = sampler_kinds(cfg);
  cc.sample_size = cfg.at("k").get<std::size_t>();
  cc.max_products = cfg.at("max_enum").get<double>();
  cc.max_attempts = cfg.at("max_attempts").get<std::uint64_t>();
  cc.threads = ctx.threads;
  const CliqueResult result = clique_experiment(cc);
  Sink sink(ctx.out_path, *ctx.stdout_stream);
  std::ostream& out = *sink;
  out << manifest_line(cfg) << '\n';
  out << "# optimum: " << result.optimum.vertices.to_string() << " weight " << fmt_double(result.optimum.weight)
      << " sample_size " << result.sample_size << '\n';
  write_clique_csv(out, result);
}

void execute(const json& cfg, RunContext& ctx, std::ostream& err);

json read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path);
  std::string line;
  const std::string prefix = "# config: ";
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) return json::parse(line.substr(prefix.size()));
  }
  // JSON outputs (encode) carry the manifest under "config".
  in.clear();
  in.seekg(0);
  try {
    const json doc = json::parse(in);
    if (doc.contains("config")) return doc["config"];
  } catch (const json::exception&) {
  }
  throw Error(ErrorKind::parse, path + " has no embedded config manifest");
}

void execute(const json& cfg, RunContext& ctx, std::ostream& err) {
  const std::string command = cfg.at("command").get<std::string>();
  if (command == "hafnian") return exec_hafnian(cfg, ctx);
  if (command == "encode") return exec_encode(cfg, ctx);
  if (command == "dist") return exec_dist(cfg, ctx);
  if (command == "sample") return exec_sample(cfg, ctx);
  if (command == "densest") return exec_densest(cfg, ctx, err);
  if (command == "clique") return exec_clique(cfg, ctx);
  throw Error(ErrorKind::invalid_argument, "manifest names unknown command '" + command + "'");
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hafnian-weighted subgraph samplers and graph-problem experiments"};
  app.require_subcommand(1);

  RunContext ctx;
  ctx.stdout_stream = &out;
  double max_enum = kDefaultMaxProducts;
  std::uint64_t max_attempts = kDefaultMaxAttempts;
  std::uint64_t seed = 1;

  auto add_common = [&](CLI::App* sub, bool sampling) {
    sub->add_option("--out", ctx.out_path, "Output file, '-' for standard output")->capture_default_str();
    sub->add_option("--threads", ctx.threads, "Worker threads (output does not depend on it)")
        ->capture_default_str()
        ->check(CLI::Range(1u, 1024u));
    sub->add_option("--max-enum", max_enum, "Budget of hafnian products for exact enumeration")->capture_default_str();
    if (sampling) {
      sub->add_option("--max-attempts", max_attempts, "Rejection attempts per sample")->capture_default_str();
      sub->add_option("--seed", seed, "Root seed for every random stream")->capture_default_str();
    }
  };

  json cfg;

  // hafnian
  std::string matrix_path;
  auto* haf = app.add_subcommand("hafnian", "Print the hafnian of a symmetric matrix (CSV)");
  haf->add_option("matrix", matrix_path, "Matrix CSV file")->required();
  haf->add_option("--out", ctx.out_path, "Output file, '-' for standard output")->capture_default_str();

  // encode
  std::string graph_path;
  double photons = 0.0, eta = 1.0;
  auto* enc = app.add_subcommand("encode", "Print the compiled edge model and squeezing calibration as JSON");
  enc->add_option("graph", graph_path, "Graph file (edge list, or .csv adjacency matrix)")->required();
  auto* photons_opt = enc->add_option("--photons", photons, "Target mean photon number for the squeezing calibration");
  auto* eta_opt = enc->add_option("--eta", eta, "Transmission for loss-compensated squeezing")->needs(photons_opt);
  enc->add_option("--out", ctx.out_path, "Output file, '-' for standard output")->capture_default_str();

  // dist
  std::size_t k = 0;
  std::string kind = "qi";
  auto* dist = app.add_subcommand("dist", "Exact sector distribution over all k-subsets");
  dist->add_option("graph", graph_path, "Graph file")->required();
  dist->add_option("--k", k, "Subset size")->required();
  dist->add_option("--kind", kind, "gbs | qi | uniform")->capture_default_str();
  add_common(dist, false);

  // sample
  std::size_t count = 1000;
  std::string sampler = "qi";
  bool postselect = false;
  auto* smp = app.add_subcommand("sample", "Draw subsets (or ips occupancies) from one sampler");
  smp->add_option("graph", graph_path, "Graph file")->required();
  smp->add_option("--sampler", sampler, "qi | uniform | gbs | ips")->capture_default_str();
  smp->add_option("--k", k, "Subset size (photon number)")->required();
  smp->add_option("--count", count, "Number of samples")->capture_default_str();
  smp->add_flag("--postselect", postselect, "ips: keep only collision-free outcomes with k photons");
  add_common(smp, true);

  // densest
  std::size_t n = 20, graphs = 100, samples = 100;
  double p = 0.3;
  std::string samplers = "qi,uniform,gbs";
  auto* den = app.add_subcommand("densest", "Density of sampled k-subgraphs on seeded random graphs");
  den->add_option("--n", n, "Vertices per graph")->capture_default_str();
  den->add_option("--k", k, "Subset size")->required();
  den->add_option("--p", p, "Edge probability")->capture_default_str();
  den->add_option("--graphs", graphs, "Number of graphs")->capture_default_str();
  den->add_option("--samples", samples, "Samples per graph and sampler")->capture_default_str();
  den->add_option("--samplers", samplers, "Comma-separated sampler list")->capture_default_str();
  add_common(den, true);

  // clique
  std::string weights_path, iters = "0,2,8";
  double alpha = 1.0;
  std::size_t clique_samples = 1000, planted_n = 0, planted_size = 6;
  double planted_p = 0.2;
  auto* clq = app.add_subcommand("clique", "Max-weight clique search seeded by each sampler");
  auto* graph_opt = clq->add_option("--graph", graph_path, "Graph file");
  auto* weights_opt = clq->add_option("--weights", weights_path, "Vertex weight file, one value per line");
  auto* planted_opt = clq->add_option("--planted-n", planted_n, "Generate a planted instance with this many vertices");
  clq->add_option("--planted-p", planted_p, "Background edge probability of the planted instance")->capture_default_str();
  clq->add_option("--planted-size", planted_size, "Planted clique size")->capture_default_str();
  graph_opt->needs(weights_opt)->excludes(planted_opt);
  weights_opt->needs(graph_opt);
  clq->add_option("--alpha", alpha, "Vertex weighting strength in 1 + alpha*w")->capture_default_str();
  clq->add_option("--samples", clique_samples, "Seeded search runs per sampler")->capture_default_str();
  clq->add_option("--iters", iters, "Comma-separated perturb-then-expand cycle counts")->capture_default_str();
  clq->add_option("--samplers", samplers, "Comma-separated sampler list")->capture_default_str();
  clq->add_option("--k", k, "Sample size (0 = even size nearest the optimum clique)")->capture_default_str();
  add_common(clq, true);

  // replay
  std::string manifest_path;
  auto* rep = app.add_subcommand("replay", "Re-run the configuration embedded in an output file");
  rep->add_option("file", manifest_path, "Output file with a config manifest")->required();
  rep->add_option("--out", ctx.out_path, "Output file, '-' for standard output")->capture_default_str();
  rep->add_option("--threads", ctx.threads, "Worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));

  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    err << "error: usage: " << msg << '\n';
    return 2;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    const std::string version = QIGS_VERSION;
    if (*haf) {
      cfg = {{"command", "hafnian"}, {"matrix", matrix_path}, {"version", version}};
    } else if (*enc) {
      cfg = {{"command", "encode"}, {"graph", graph_path}, {"version", version}};
      if (*photons_opt) cfg["photons"] = photons;
      if (*eta_opt) cfg["eta"] = eta;
    } else if (*dist) {
      cfg = {{"command", "dist"}, {"graph", graph_path}, {"k", k},         {"kind", kind},
             {"max_enum", max_enum}, {"version", version}};
    } else if (*smp) {
      cfg = {{"command", "sample"}, {"graph", graph_path},         {"sampler", sampler},
             {"k", k},              {"count", count},              {"seed", seed},
             {"max_enum", max_enum}, {"max_attempts", max_attempts}, {"postselect", postselect},
             {"version", version}};
    } else if (*den) {
      std::vector<std::string> names;
      for (SamplerKind s : parse_samplers(samplers)) names.emplace_back(to_string(s));
      cfg = {{"command", "densest"}, {"n", n},           {"k", k},
             {"p", p},               {"graphs", graphs}, {"samples", samples},
             {"samplers", names},    {"seed", seed},     {"max_enum", max_enum},
             {"max_attempts", max_attempts}, {"version", version}};
    } else if (*clq) {
      if (!*graph_opt && !*planted_opt)
        throw Error(ErrorKind::invalid_argument, "clique needs --graph/--weights or --planted-n");
      std::vector<std::string> names;
      for (SamplerKind s : parse_samplers(samplers)) names.emplace_back(to_string(s));
      cfg = {{"command", "clique"},
             {"alpha", alpha},
             {"samples", clique_samples},
             {"iters", parse_iterations(iters)},
             {"samplers", names},
             {"seed", seed},
             {"k", k},
             {"max_enum", max_enum},
             {"max_attempts", max_attempts},
             {"iteration_unit", "perturb-then-expand cycle"},
             {"version", version}};
      if (*planted_opt) {
        cfg["planted"] = {{"n", planted_n}, {"p", planted_p}, {"size", planted_size}};
      } else {
        cfg["graph"] = graph_path;
        cfg["weights"] = weights_path;
      }
    } else if (*rep) {
      cfg = read_manifest(manifest_path);
    }
    execute(cfg, ctx, err);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return 1;
  } catch (const json::exception& e) {
    err << "error: parse: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return 1;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
  if (ctx.out_path != "-")
    err << "info: " << cfg.value("command", "") << " finished in " << fmt_double(elapsed.count()) << " s\n";
  return 0;
}

}  // namespace qigs::cli
