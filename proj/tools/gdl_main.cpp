// Command-line front end: dataset ingestion or synthesis, engine selection,
// clustering artifacts (assignments, merge trace, metrics, plot data), kernel
// scale sweeps, and size-vs-time benchmarks.
//
// Exit codes: 0 ok, 2 input parse failure, 3 invalid configuration,
// 4 target exceeds seed clusters, 5 all K-NN distances zero, 1 anything else.
// Flag misuse is reported by the option parser with its own nonzero codes.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gdl/dataset.hpp"
#include "gdl/errors.hpp"
#include "gdl/eval.hpp"
#include "gdl/io.hpp"
#include "gdl/knn_graph.hpp"
#include "gdl/linkage.hpp"
#include "gdl/outlier.hpp"
#include "gdl/partition.hpp"
#include "gdl/synth.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Options shared by run and sweep: where the data comes from and how the
// graph is built. Exactly one of input_path / synth_name is set.
struct SourceOpts {
  std::string input_path;
  std::string synth_name;
  std::string metric_name = "euclidean";
  std::string delimiter = ",";
  bool labeled = false;
  std::uint64_t seed = 1;
  double noise_sigma = 0.0;
};

gdl::Metric parse_metric(const std::string& name) {
  if (name == "euclidean") {
    return gdl::Metric::kEuclidean;
  }
  if (name == "chi2") {
    return gdl::Metric::kChiSquare;
  }
  return gdl::Metric::kPrecomputed;
}

gdl::Dataset load_dataset(const SourceOpts& src) {
  if (!src.synth_name.empty()) {
    gdl::SynthSpec spec;
    if (src.synth_name == "multiscale") {
      spec = gdl::multiscale_spec(src.seed);
    } else if (src.synth_name == "blobs") {
      spec = gdl::two_blob_spec(src.seed, 0.0);
    } else {
      spec = gdl::blobs_with_outliers_spec(src.seed);
    }
    spec.noise_sigma = src.noise_sigma;
    return gdl::generate(spec);
  }
  gdl::ReadOptions opts;
  opts.delimiter = src.delimiter[0];
  opts.labeled = src.labeled;
  opts.metric = parse_metric(src.metric_name);
  return gdl::read_dataset(src.input_path, opts);
}

gdl::MergeTrace run_engine(const std::string& engine, const gdl::KnnGraph& graph,
                           const gdl::Partition& seed, std::size_t target,
                           std::size_t kc) {
  if (engine == "gdl") {
    return gdl::gdl_cluster(graph, seed, target);
  }
  if (engine == "gdl-u") {
    return gdl::gdl_u_cluster(graph, seed, target);
  }
  if (engine == "glink") {
    return gdl::glink_cluster(graph, seed, target);
  }
  return gdl::agdl_cluster(graph, seed, target, kc);
}

// Predicted vs truth over assigned vertices only; removed outliers carry no
// predicted label and are skipped.
std::optional<gdl::LabeledResult> labeled_result(
    const gdl::Dataset& data, const std::vector<gdl::ClusterId>& compact) {
  if (!data.has_labels()) {
    return std::nullopt;
  }
  gdl::LabeledResult r;
  for (std::size_t i = 0; i < compact.size(); ++i) {
    if (compact[i] == gdl::kNoCluster) {
      continue;
    }
    r.predicted.push_back(static_cast<int>(compact[i]));
    r.truth.push_back(data.labels()[i]);
  }
  return r;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw gdl::Error("cannot write '" + path.string() + "'");
  }
  return out;
}

void finish_out(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw gdl::Error("write failed for '" + path.string() + "'");
  }
}

std::string seconds_str(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", s);
  return buf;
}

// -------------------------------------------------------------- run

struct RunOpts {
  SourceOpts src;
  std::string engine = "agdl";
  std::size_t K = 20;
  std::size_t K0 = 1;
  std::size_t Kc = 10;
  std::size_t nT = 0;
  double a = 1.0;
  bool eliminate = false;
  std::string out_dir;
};

int do_run(const RunOpts& opt) {
  const gdl::Dataset data = load_dataset(opt.src);
  const bool from_synth = !opt.src.synth_name.empty();

  const auto t_graph = Clock::now();
  const gdl::KnnGraph graph = gdl::build_knn_graph(data, opt.K, opt.a);
  const double graph_s = seconds_since(t_graph);

  const auto t_seed = Clock::now();
  const gdl::Partition seeds = gdl::seed_components(data, opt.K0);
  const double seed_s = seconds_since(t_seed);

  const auto t_merge = Clock::now();
  const gdl::MergeTrace trace =
      run_engine(opt.engine, graph, seeds, opt.nT, opt.Kc);
  const double merge_s = seconds_since(t_merge);

  gdl::Partition result = trace.final;
  std::vector<gdl::ClusterId> removed_clusters;
  std::vector<gdl::VertexId> removed_vertices;
  double outlier_s = 0.0;
  if (opt.eliminate) {
    const auto t_out = Clock::now();
    gdl::OutlierResult out = gdl::eliminate_outliers(graph, result);
    outlier_s = seconds_since(t_out);
    for (gdl::ClusterId c : out.removed) {
      for (gdl::VertexId v : result.clusters.at(c)) {
        removed_vertices.push_back(v);
      }
    }
    std::sort(removed_vertices.begin(), removed_vertices.end());
    removed_clusters = out.removed;
    result = std::move(out.kept);
  }
  const std::vector<gdl::ClusterId> compact = result.compact_labels();
  const auto metrics_input = labeled_result(data, compact);
  const double total_s = graph_s + seed_s + merge_s + outlier_s;

  double nmi_value = 0.0;
  double ce_value = 0.0;
  if (metrics_input) {
    nmi_value = gdl::nmi(*metrics_input);
    ce_value = gdl::clustering_error(*metrics_input);
  }

  // Compute is done; only now touch the disk.
  const std::filesystem::path out_dir(opt.out_dir);
  std::filesystem::create_directories(out_dir);

  if (from_synth) {
    gdl::write_dataset(data, out_dir / "dataset.csv");
  }

  {
    const auto path = out_dir / "assignments.csv";
    auto out = open_out(path);
    out << "index,cluster_id\n";
    for (std::size_t i = 0; i < compact.size(); ++i) {
      const long long label =
          compact[i] == gdl::kNoCluster ? -1LL : static_cast<long long>(compact[i]);
      out << i << ',' << label << '\n';
    }
    finish_out(out, path);
  }

  {
    const auto path = out_dir / "merge_trace.csv";
    auto out = open_out(path);
    out << "step,a,b,merged,affinity,degenerate\n";
    for (std::size_t s = 0; s < trace.steps.size(); ++s) {
      const gdl::MergeStep& step = trace.steps[s];
      out << s << ',' << step.a << ',' << step.b << ',' << step.merged << ','
          << gdl::format_double(step.affinity) << ',' << (step.degenerate ? 1 : 0)
          << '\n';
    }
    finish_out(out, path);
  }

  if (opt.eliminate) {
    const auto path = out_dir / "outliers.csv";
    auto out = open_out(path);
    out << "index,removed_cluster_id\n";
    for (gdl::VertexId v : removed_vertices) {
      out << v << ',' << trace.final.assignment[v] << '\n';
    }
    finish_out(out, path);
  }

  if (data.metric() != gdl::Metric::kPrecomputed && data.dim() == 2) {
    const auto path = out_dir / "plot_data.csv";
    auto out = open_out(path);
    out << "x,y,label\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
      const auto p = data.point(i);
      const long long label =
          compact[i] == gdl::kNoCluster ? -1LL : static_cast<long long>(compact[i]);
      out << gdl::format_double(p[0]) << ',' << gdl::format_double(p[1]) << ','
          << label << '\n';
    }
    finish_out(out, path);
  }

  nlohmann::json j;
  j["n"] = data.size();
  j["engine"] = opt.engine;
  j["K"] = opt.K;
  j["K0"] = opt.K0;
  if (opt.engine == "agdl") {
    j["Kc"] = opt.Kc;
  }
  j["a"] = opt.a;
  j["nT"] = opt.nT;
  j["sigma_sq"] = graph.sigma_sq();
  if (from_synth) {
    j["synth"] = opt.src.synth_name;
    j["seed"] = opt.src.seed;
    j["noise_sigma"] = opt.src.noise_sigma;
  }
  j["seed_clusters"] = seeds.cluster_count();
  j["final_clusters"] = result.cluster_count();
  if (opt.eliminate) {
    j["removed_cluster_ids"] = removed_clusters;
    j["removed_vertex_count"] = removed_vertices.size();
  }
  if (metrics_input) {
    j["nmi"] = nmi_value;
    j["clustering_error"] = ce_value;
  }
  j["graph_seconds"] = graph_s;
  j["seeding_seconds"] = seed_s;
  j["merge_seconds"] = merge_s;
  if (opt.eliminate) {
    j["outlier_seconds"] = outlier_s;
  }
  j["total_seconds"] = total_s;

  {
    const auto path = out_dir / "metrics.json";
    auto out = open_out(path);
    out << j.dump(2) << '\n';
    finish_out(out, path);
  }
  {
    const auto path = out_dir / "metrics.txt";
    auto out = open_out(path);
    out << "n = " << data.size() << '\n';
    out << "engine = " << opt.engine << '\n';
    out << "K = " << opt.K << '\n';
    out << "K0 = " << opt.K0 << '\n';
    if (opt.engine == "agdl") {
      out << "Kc = " << opt.Kc << '\n';
    }
    out << "a = " << gdl::format_double(opt.a) << '\n';
    out << "nT = " << opt.nT << '\n';
    out << "sigma_sq = " << gdl::format_double(graph.sigma_sq()) << '\n';
    if (from_synth) {
      out << "synth = " << opt.src.synth_name << '\n';
      out << "seed = " << opt.src.seed << '\n';
      out << "noise_sigma = " << gdl::format_double(opt.src.noise_sigma) << '\n';
    }
    out << "seed_clusters = " << seeds.cluster_count() << '\n';
    out << "final_clusters = " << result.cluster_count() << '\n';
    if (opt.eliminate) {
      out << "removed_clusters = " << removed_clusters.size() << '\n';
      out << "removed_vertices = " << removed_vertices.size() << '\n';
    }
    if (metrics_input) {
      out << "nmi = " << gdl::format_double(nmi_value) << '\n';
      out << "clustering_error = " << gdl::format_double(ce_value) << '\n';
    }
    out << "graph_seconds = " << seconds_str(graph_s) << '\n';
    out << "seeding_seconds = " << seconds_str(seed_s) << '\n';
    out << "merge_seconds = " << seconds_str(merge_s) << '\n';
    if (opt.eliminate) {
      out << "outlier_seconds = " << seconds_str(outlier_s) << '\n';
    }
    out << "total_seconds = " << seconds_str(total_s) << '\n';
    finish_out(out, path);
  }

  std::cout << "n = " << data.size() << ", engine = " << opt.engine
            << ", seed clusters = " << seeds.cluster_count()
            << ", final clusters = " << result.cluster_count() << '\n';
  if (opt.eliminate) {
    std::cout << "removed " << removed_clusters.size() << " clusters ("
              << removed_vertices.size() << " vertices) as outliers\n";
  }
  if (metrics_input) {
    std::cout << "nmi = " << gdl::format_double(nmi_value)
              << ", clustering_error = " << gdl::format_double(ce_value) << '\n';
  }
  std::cout << "graph " << seconds_str(graph_s) << "s, seeding "
            << seconds_str(seed_s) << "s, merging " << seconds_str(merge_s)
            << "s, total " << seconds_str(total_s) << "s\n";
  std::cout << "outputs in '" << opt.out_dir << "'\n";
  return 0;
}

// -------------------------------------------------------------- bench

struct BenchOpts {
  std::vector<std::size_t> sizes;
  std::vector<std::string> engines;
  std::size_t K = 20;
  std::size_t K0 = 1;
  std::size_t Kc = 10;
  std::size_t nT = 3;
  double a = 1.0;
  std::uint64_t seed = 1;
  std::string out_dir;
};

int do_bench(const BenchOpts& opt) {
  std::vector<std::size_t> sizes = opt.sizes;
  std::sort(sizes.begin(), sizes.end());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  if (sizes.size() < 2) {
    throw gdl::InvalidConfigError("bench needs at least 2 distinct sizes");
  }
  std::vector<std::string> engines;
  for (const std::string& e : opt.engines) {
    if (std::find(engines.begin(), engines.end(), e) == engines.end()) {
      engines.push_back(e);
    }
  }

  struct Row {
    std::string engine;
    std::size_t n;
    double graph_s, seed_s, merge_s;
    std::size_t clusters;
  };
  std::vector<Row> rows;
  for (std::size_t n : sizes) {
    const gdl::Dataset data = gdl::generate(gdl::multiscale_spec(opt.seed, n));

    const auto t_graph = Clock::now();
    const gdl::KnnGraph graph = gdl::build_knn_graph(data, opt.K, opt.a);
    const double graph_s = seconds_since(t_graph);

    const auto t_seed = Clock::now();
    const gdl::Partition seeds = gdl::seed_components(data, opt.K0);
    const double seed_s = seconds_since(t_seed);

    for (const std::string& engine : engines) {
      const auto t_merge = Clock::now();
      const gdl::MergeTrace trace =
          run_engine(engine, graph, seeds, opt.nT, opt.Kc);
      const double merge_s = seconds_since(t_merge);
      rows.push_back(
          {engine, n, graph_s, seed_s, merge_s, trace.final.cluster_count()});
    }
  }

  const std::filesystem::path out_dir(opt.out_dir);
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / "bench.csv";
  auto out = open_out(path);
  out << "engine,n,graph_seconds,seeding_seconds,merge_seconds,total_seconds,"
         "final_clusters\n";
  for (const Row& r : rows) {
    out << r.engine << ',' << r.n << ',' << seconds_str(r.graph_s) << ','
        << seconds_str(r.seed_s) << ',' << seconds_str(r.merge_s) << ','
        << seconds_str(r.graph_s + r.seed_s + r.merge_s) << ',' << r.clusters
        << '\n';
  }
  finish_out(out, path);

  std::printf("%-6s %8s %10s %10s %10s %10s %9s\n", "engine", "n", "graph_s",
              "seed_s", "merge_s", "total_s", "clusters");
  for (const Row& r : rows) {
    std::printf("%-6s %8zu %10.4f %10.4f %10.4f %10.4f %9zu\n",
                r.engine.c_str(), r.n, r.graph_s, r.seed_s, r.merge_s,
                r.graph_s + r.seed_s + r.merge_s, r.clusters);
  }
  std::cout << "wrote '" << path.string() << "'\n";
  return 0;
}

// -------------------------------------------------------------- sweep

struct SweepOpts {
  SourceOpts src;
  std::string engine = "agdl";
  std::size_t K = 20;
  std::size_t K0 = 1;
  std::size_t Kc = 10;
  std::size_t nT = 0;
  std::vector<double> a_values;
  std::string out_dir;
};

int do_sweep(const SweepOpts& opt) {
  const gdl::Dataset data = load_dataset(opt.src);
  if (!data.has_labels()) {
    throw gdl::InvalidConfigError(
        "sweep needs labeled data to score each kernel scale");
  }
  if (opt.a_values.empty()) {
    throw gdl::InvalidConfigError("sweep needs at least one value in --a-values");
  }

  const gdl::Partition seeds = gdl::seed_components(data, opt.K0);

  struct Row {
    double a, nmi, ce;
    std::size_t clusters;
  };
  std::vector<Row> rows;
  for (double a : opt.a_values) {
    const gdl::KnnGraph graph = gdl::build_knn_graph(data, opt.K, a);
    const gdl::MergeTrace trace =
        run_engine(opt.engine, graph, seeds, opt.nT, opt.Kc);
    const auto compact = trace.final.compact_labels();
    const auto metrics_input = labeled_result(data, compact);
    rows.push_back({a, gdl::nmi(*metrics_input),
                    gdl::clustering_error(*metrics_input),
                    trace.final.cluster_count()});
  }

  const std::filesystem::path out_dir(opt.out_dir);
  std::filesystem::create_directories(out_dir);
  const auto path = out_dir / "sweep.csv";
  auto out = open_out(path);
  out << "a,nmi,clustering_error,final_clusters\n";
  for (const Row& r : rows) {
    out << gdl::format_double(r.a) << ',' << gdl::format_double(r.nmi) << ','
        << gdl::format_double(r.ce) << ',' << r.clusters << '\n';
  }
  finish_out(out, path);

  std::size_t best = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].nmi > rows[best].nmi) {
      best = i;
    }
  }
  std::printf("%12s %10s %10s %9s\n", "a", "nmi", "ce", "clusters");
  for (const Row& r : rows) {
    std::printf("%12g %10.6f %10.6f %9zu\n", r.a, r.nmi, r.ce, r.clusters);
  }
  std::cout << "best a = " << gdl::format_double(rows[best].a)
            << " (nmi = " << gdl::format_double(rows[best].nmi) << ")\n";
  std::cout << "wrote '" << path.string() << "'\n";
  return 0;
}

// Source flags shared by run and sweep. Returns the option pointers needed
// for cross-flag constraints.
void add_source_opts(CLI::App* cmd, SourceOpts& src) {
  auto* group = cmd->add_option_group("source", "dataset source");
  auto* input = group->add_option("--input", src.input_path,
                                  "delimited text dataset (see README for format)");
  auto* synth =
      group->add_option("--synth", src.synth_name, "built-in generated dataset")
          ->check(CLI::IsMember({"multiscale", "blobs", "blobs_with_outliers"}));
  group->require_option(1);

  cmd->add_option("--metric", src.metric_name, "distance metric for --input")
      ->check(CLI::IsMember({"euclidean", "chi2", "precomputed"}))
      ->needs(input);
  cmd->add_option("--delimiter", src.delimiter, "field separator for --input")
      ->check(CLI::Validator(
          [](std::string& s) {
            return s.size() == 1 ? std::string()
                                 : std::string("delimiter must be one character");
          },
          "CHAR"))
      ->needs(input);
  cmd->add_flag("--labeled", src.labeled,
                "input rows end with an integer class label")
      ->needs(input);
  cmd->add_option("--seed", src.seed, "generator seed for --synth")->needs(synth);
  cmd->add_option("--noise-sigma", src.noise_sigma,
                  "additive Gaussian jitter for --synth")
      ->needs(synth);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agglomerative clustering on directed K-NN graphs"};
  app.require_subcommand(1);

  RunOpts run_opt;
  CLI::App* run_cmd = app.add_subcommand("run", "cluster one dataset");
  add_source_opts(run_cmd, run_opt.src);
  run_cmd->add_option("--engine", run_opt.engine, "linkage engine")
      ->check(CLI::IsMember({"gdl", "gdl-u", "agdl", "glink"}));
  run_cmd->add_option("--K", run_opt.K, "graph neighbors per vertex");
  run_cmd->add_option("--K0", run_opt.K0, "neighbors for seeding components");
  auto* run_kc =
      run_cmd->add_option("--Kc", run_opt.Kc, "tracked partners per cluster (agdl)");
  run_cmd->add_option("--nT", run_opt.nT, "target cluster count")->required();
  run_cmd->add_option("--a", run_opt.a, "kernel scale multiplier");
  run_cmd->add_flag("--eliminate-outliers", run_opt.eliminate,
                    "drop weakly connected clusters after merging");
  run_cmd->add_option("--out-dir", run_opt.out_dir, "output directory")->required();

  BenchOpts bench_opt;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "time engines across generated sizes");
  bench_cmd->add_option("--bench-sizes", bench_opt.sizes, "dataset sizes, >= 2")
      ->delimiter(',')
      ->required();
  auto* bench_engines =
      bench_cmd->add_option("--engine", bench_opt.engines, "engines to time")
          ->delimiter(',')
          ->check(CLI::IsMember({"gdl", "gdl-u", "agdl", "glink"}));
  bench_cmd->add_option("--K", bench_opt.K, "graph neighbors per vertex");
  bench_cmd->add_option("--K0", bench_opt.K0, "neighbors for seeding components");
  auto* bench_kc = bench_cmd->add_option("--Kc", bench_opt.Kc,
                                         "tracked partners per cluster (agdl)");
  bench_cmd->add_option("--nT", bench_opt.nT, "target cluster count");
  bench_cmd->add_option("--a", bench_opt.a, "kernel scale multiplier");
  bench_cmd->add_option("--seed", bench_opt.seed, "generator seed");
  bench_cmd->add_option("--out-dir", bench_opt.out_dir, "output directory")
      ->required();

  SweepOpts sweep_opt;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "score a list of kernel scales on labeled data");
  add_source_opts(sweep_cmd, sweep_opt.src);
  sweep_cmd->add_option("--engine", sweep_opt.engine, "linkage engine")
      ->check(CLI::IsMember({"gdl", "gdl-u", "agdl", "glink"}));
  sweep_cmd->add_option("--K", sweep_opt.K, "graph neighbors per vertex");
  sweep_cmd->add_option("--K0", sweep_opt.K0, "neighbors for seeding components");
  auto* sweep_kc = sweep_cmd->add_option("--Kc", sweep_opt.Kc,
                                         "tracked partners per cluster (agdl)");
  sweep_cmd->add_option("--nT", sweep_opt.nT, "target cluster count")->required();
  sweep_cmd->add_option("--a-values", sweep_opt.a_values,
                        "kernel scale multipliers to score")
      ->delimiter(',')
      ->required();
  sweep_cmd->add_option("--out-dir", sweep_opt.out_dir, "output directory")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      if (run_kc->count() > 0 && run_opt.engine != "agdl") {
        throw gdl::InvalidConfigError("--Kc applies only to the agdl engine");
      }
      return do_run(run_opt);
    }
    if (bench_cmd->parsed()) {
      if (bench_engines->count() == 0) {
        bench_opt.engines = {"agdl"};
      }
      if (bench_kc->count() > 0 &&
          std::find(bench_opt.engines.begin(), bench_opt.engines.end(), "agdl") ==
              bench_opt.engines.end()) {
        throw gdl::InvalidConfigError("--Kc applies only to the agdl engine");
      }
      return do_bench(bench_opt);
    }
    if (sweep_kc->count() > 0 && sweep_opt.engine != "agdl") {
      throw gdl::InvalidConfigError("--Kc applies only to the agdl engine");
    }
    return do_sweep(sweep_opt);
  } catch (const gdl::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const gdl::TargetExceedsSeedsError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const gdl::AllDistancesZeroError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  } catch (const gdl::InvalidConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
