#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <utility>

#include <CLI11.hpp>
#include <json.hpp>

#include "binnms/errors.hpp"
#include "binnms/ingest.hpp"
#include "binnms/kmodes.hpp"
#include "binnms/metrics.hpp"
#include "binnms/pipeline.hpp"
#include "binnms/sweep.hpp"

namespace binnms::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

char parse_delimiter(const std::string& s) {
  if (s == "tab" || s == "\\t") return '\t';
  if (s == "whitespace" || s == "space") return ' ';
  if (s.size() == 1) return s[0];
  throw ConfigError("delimiter must be one character, 'tab' or 'whitespace'");
}

Dataset load_data(const RunConfig& cfg) {
  if (cfg.data_path.empty()) throw ConfigError("--data is required");
  LoadOptions opts;
  opts.label_column = cfg.label;
  opts.header = cfg.header;
  opts.threshold = cfg.threshold;
  if (cfg.delimiter) opts.delimiter = parse_delimiter(*cfg.delimiter);
  if (!cfg.schema_path.empty()) {
    return load_categorical_csv(cfg.data_path, load_schema(cfg.schema_path), opts);
  }
  return load_binary_csv(cfg.data_path, opts);
}

json config_json(const RunConfig& cfg) {
  json j;
  j["data"] = cfg.data_path;
  if (!cfg.schema_path.empty()) j["schema"] = cfg.schema_path;
  if (cfg.label) j["label"] = *cfg.label;
  if (cfg.threshold) j["threshold"] = *cfg.threshold;
  j["algo"] = cfg.algo;
  if (cfg.algo == "binnnms") {
    j["k1"] = cfg.k1;
    j["k2"] = cfg.k2;
    j["jmax"] = cfg.j_max;
    j["epsilon_mode"] = std::string(to_string(cfg.epsilon_mode));
  } else {
    j["k"] = cfg.k;
    j["runs"] = cfg.runs;
    j["seed"] = cfg.seed;
    j["max_iter"] = cfg.max_iter;
  }
  j["threads"] = cfg.threads;
  return j;
}

std::string format_double(double v) {
  std::ostringstream ss;
  ss << std::setprecision(12) << v;
  return ss.str();
}

// Collects output files in memory and writes them once everything succeeded.
class OutputSet {
 public:
  explicit OutputSet(std::string dir) : dir_(std::move(dir)) {}

  std::ostringstream& file(const std::string& name) { return files_[name]; }

  void commit() const {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw std::runtime_error("cannot create output directory '" + dir_ + "'");
    for (const auto& [name, content] : files_) {
      const fs::path path = fs::path(dir_) / name;
      std::ofstream out(path);
      if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
      out << content.str();
    }
  }

 private:
  std::string dir_;
  std::map<std::string, std::ostringstream> files_;
};

void write_labels(std::ostream& out, std::span<const int> labels) {
  out << "index,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) out << i << ',' << labels[i] << '\n';
}

void write_prototypes(OutputSet& outputs, const Dataset& data,
                      std::span<const BinaryVector> prototypes, std::span<const std::size_t> sizes,
                      std::size_t grid_width) {
  auto& rows = outputs.file("prototypes.txt");
  for (const auto& p : prototypes) rows << p.to_string() << '\n';

  if (grid_width > 0) {
    auto& grid = outputs.file("prototypes_grid.txt");
    for (std::size_t c = 0; c < prototypes.size(); ++c) {
      grid << "# cluster " << c;
      if (c < sizes.size()) grid << " (" << sizes[c] << " points)";
      grid << '\n';
      const std::string bits = prototypes[c].to_string();
      for (std::size_t at = 0; at < bits.size(); at += grid_width) {
        grid << bits.substr(at, grid_width) << '\n';
      }
      grid << '\n';
    }
  }

  const auto& schema = data.schema();
  if (!schema) return;
  bool categorical = false;
  for (const auto& f : schema->columns) categorical |= f.kind == FeatureKind::categorical;
  if (!categorical) return;
  auto& decoded = outputs.file("prototypes_decoded.csv");
  const auto header = decode_point(*schema, prototypes.front());
  decoded << "cluster";
  for (const auto& f : header) decoded << ',' << f.name;
  decoded << '\n';
  for (std::size_t c = 0; c < prototypes.size(); ++c) {
    decoded << c;
    // Inexact decodings (not a valid codeword) are marked with a trailing '~'.
    for (const auto& f : decode_point(*schema, prototypes[c])) {
      decoded << ',' << f.value << (f.exact ? "" : "~");
    }
    decoded << '\n';
  }
}

void add_truth_scores(json& j, const Dataset& data, std::span<const int> labels) {
  if (const auto& truth = data.truth_labels()) {
    j["nmi"] = nmi(*truth, labels);
    j["arand"] = arand(*truth, labels);
  }
}

std::pair<double, double> mean_std(const std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  if (v.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(v.size() - 1))};
}

void validate_cluster_config(const RunConfig& cfg) {
  if (cfg.algo != "binnnms" && cfg.algo != "kmodes") {
    throw ConfigError("--algo must be binnnms or kmodes");
  }
  if (cfg.algo == "binnnms") {
    if (cfg.k2 == 0) throw ConfigError("--k2 must be positive");
    if (cfg.j_max == 0) throw ConfigError("--jmax must be positive");
  } else {
    if (cfg.runs == 0) throw ConfigError("--runs must be positive");
    if (cfg.max_iter == 0) throw ConfigError("--max-iter must be positive");
  }
}

}  // namespace

int cmd_cluster(const RunConfig& cfg, std::ostream& log) {
  validate_cluster_config(cfg);
  const Dataset data = load_data(cfg);
  const auto start = std::chrono::steady_clock::now();

  OutputSet outputs(cfg.out_dir);
  json metrics;
  metrics["algorithm"] = cfg.algo;
  metrics["dataset"] = {{"name", data.name()}, {"n", data.n()}, {"d", data.dim()}};
  metrics["config"] = config_json(cfg);

  if (cfg.algo == "binnnms") {
    BinnmsConfig bc{cfg.k1, cfg.k2, cfg.j_max, cfg.epsilon_mode, cfg.threads};
    const BinnmsResult r = run_binnnms(data, bc);
    const auto& lab = r.labeling;
    write_labels(outputs.file("labels.csv"), lab.labels);
    write_prototypes(outputs, data, lab.prototypes, lab.sizes, cfg.proto_width);

    metrics["num_clusters"] = lab.num_clusters;
    metrics["single_cluster"] = r.single_cluster();
    metrics["epsilon"] = r.epsilon;
    metrics["quantization_error"] = quantization_error(data, lab);
    add_truth_scores(metrics, data, lab.labels);
    std::map<std::string, std::size_t> causes;
    std::size_t max_steps = 0;
    for (const auto& t : r.trajectories) {
      ++causes[std::string(to_string(t.termination))];
      max_steps = std::max(max_steps, t.steps);
    }
    metrics["terminations"] = causes;
    metrics["max_steps"] = max_steps;
    log << "binnnms: " << lab.num_clusters << " cluster(s), epsilon "
        << format_double(r.epsilon) << '\n';
  } else {
    std::size_t k = cfg.k;
    if (k == 0) {
      if (!data.truth_labels()) throw ConfigError("--k is required without ground truth");
      k = dataset_summary(data).num_classes;
      metrics["config"]["k"] = k;
    }
    const auto runs = kmodes_repeated(data, k, cfg.runs, cfg.seed, cfg.max_iter, cfg.threads);
    std::size_t best = 0;
    for (std::size_t i = 1; i < runs.size(); ++i) {
      if (runs[i].total_inertia < runs[best].total_inertia) best = i;
    }
    const KModesResult& r = runs[best];
    write_labels(outputs.file("labels.csv"), r.labels);
    std::vector<std::size_t> sizes(r.prototypes.size(), 0);
    for (int l : r.labels) ++sizes[static_cast<std::size_t>(l)];
    write_prototypes(outputs, data, r.prototypes, sizes, cfg.proto_width);

    metrics["num_clusters"] = count_clusters(r.labels);
    metrics["single_cluster"] = count_clusters(r.labels) == 1;
    metrics["best_run_seed"] = r.seed;
    metrics["total_inertia"] = r.total_inertia;
    metrics["quantization_error"] = quantization_error(data, r);
    add_truth_scores(metrics, data, r.labels);

    json per_run = json::array();
    std::vector<double> nmis, arands;
    for (const auto& run : runs) {
      json jr;
      jr["seed"] = run.seed;
      jr["total_inertia"] = run.total_inertia;
      jr["iterations"] = run.iterations;
      jr["converged"] = run.converged;
      add_truth_scores(jr, data, run.labels);
      if (jr.contains("nmi")) {
        nmis.push_back(jr["nmi"].get<double>());
        arands.push_back(jr["arand"].get<double>());
      }
      per_run.push_back(std::move(jr));
    }
    metrics["runs"] = std::move(per_run);
    if (!nmis.empty()) {
      const auto [nm, ns] = mean_std(nmis);
      const auto [am, as] = mean_std(arands);
      metrics["nmi_mean"] = nm;
      metrics["nmi_std"] = ns;
      metrics["arand_mean"] = am;
      metrics["arand_std"] = as;
    }
    log << "kmodes: k=" << k << ", best inertia " << format_double(r.total_inertia) << '\n';
  }

  if (cfg.timing) {
    metrics["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  outputs.file("metrics.json") << metrics.dump(2) << '\n';
  outputs.commit();
  return kSuccess;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& log) {
  SweepConfig sc;
  try {
    sc.k1_values = parse_grid(cfg.k1_grid);
    sc.k2_values = parse_grid(cfg.k2_grid);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.j_max == 0) throw ConfigError("--jmax must be positive");
  sc.j_max = cfg.j_max;
  sc.epsilon_mode = cfg.epsilon_mode;
  sc.threads = cfg.threads;
  const Dataset data = load_data(cfg);
  const SweepReport report = run_sweep(data, sc);

  OutputSet outputs(cfg.out_dir);
  auto& csv = outputs.file("sweep.csv");
  csv << "k1,k2,nmi,arand,num_clusters,quant_error_final,epsilon,error\n";
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
  for (const auto& c : report.cells) {
    csv << c.k1 << ',' << c.k2 << ',' << opt(c.nmi) << ',' << opt(c.arand) << ','
        << (c.ok() ? std::to_string(c.num_clusters) : "") << ','
        << (c.ok() ? format_double(c.quant_error) : "") << ','
        << (c.ok() ? format_double(c.epsilon) : "") << ',';
    if (!c.ok()) csv << std::quoted(c.error, '"', '"');
    csv << '\n';
  }
  for (const auto& t : report.trajectories) {
    auto& tc = outputs.file("trajectory_k1=" + std::to_string(t.k1) + ".csv");
    tc << "iteration,error_vs_target,error_vs_intermediate\n";
    for (std::size_t j = 0; j < t.errors.vs_target.size(); ++j) {
      tc << j << ',' << format_double(t.errors.vs_target[j]) << ','
         << format_double(t.errors.vs_intermediate[j]) << '\n';
    }
  }

  json best;
  best["dataset"] = {{"name", data.name()}, {"n", data.n()}, {"d", data.dim()}};
  best["k1_grid"] = sc.k1_values;
  best["k2_grid"] = sc.k2_values;
  best["jmax"] = sc.j_max;
  best["epsilon_mode"] = std::string(to_string(sc.epsilon_mode));
  auto cell_json = [](const SweepCell* c) -> json {
    if (c == nullptr) return nullptr;
    return {{"k1", c->k1},       {"k2", c->k2},
            {"nmi", *c->nmi},    {"arand", *c->arand},
            {"num_clusters", c->num_clusters}, {"quant_error_final", c->quant_error}};
  };
  best["best_by_nmi"] = cell_json(report.best_by_nmi());
  best["best_by_arand"] = cell_json(report.best_by_arand());
  std::size_t failed = 0;
  for (const auto& c : report.cells) failed += c.ok() ? 0 : 1;
  best["failed_cells"] = failed;
  outputs.file("sweep_best.json") << best.dump(2) << '\n';
  outputs.commit();

  if (const auto* b = report.best_by_nmi()) {
    log << "best NMI " << format_double(*b->nmi) << " (ARAND " << format_double(*b->arand)
        << ") at k1=" << b->k1 << ", k2=" << b->k2 << '\n';
  }
  if (failed > 0) log << failed << " cell(s) failed; see the error column\n";
  return kSuccess;
}

std::vector<int> read_labels(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::vector<int> out;
  std::map<std::string, int> ids;
  std::size_t row = 0;
  for (std::string line; std::getline(in, line);) {
    ++row;
    const auto cells = split_record(line, ',');
    if (cells.empty() || (cells.size() == 1 && cells[0].empty())) continue;
    if (row == 1 && cells.back() == "label") continue;
    if (cells.size() > 2) throw DataError("expected 'label' or 'index,label'", row);
    const auto [it, inserted] = ids.try_emplace(cells.back(), static_cast<int>(ids.size()));
    out.push_back(it->second);
  }
  if (out.empty()) throw DataError("no labels in '" + path + "'");
  return out;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (cfg.truth_path.empty() || cfg.pred_path.empty()) {
    throw ConfigError("eval needs --truth and --pred");
  }
  const auto truth = read_labels(cfg.truth_path);
  const auto pred = read_labels(cfg.pred_path);
  if (truth.size() != pred.size()) {
    throw DataError("label files differ in length: " + std::to_string(truth.size()) + " vs " +
                    std::to_string(pred.size()));
  }
  json j;
  j["n"] = truth.size();
  j["nmi"] = nmi(truth, pred);
  j["arand"] = arand(truth, pred);
  j["truth_clusters"] = count_clusters(truth);
  j["pred_clusters"] = count_clusters(pred);
  if (cfg.out_path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) throw std::runtime_error("cannot write '" + cfg.out_path + "'");
    f << j.dump(2) << '\n';
    log << "wrote " << cfg.out_path << '\n';
  }
  return kSuccess;
}

int cmd_encode(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (cfg.schema_path.empty()) throw ConfigError("encode needs --schema");
  const Dataset data = load_data(cfg);
  std::ostringstream buf;
  write_binary_csv(data, buf);
  if (cfg.out_path.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) throw std::runtime_error("cannot write '" + cfg.out_path + "'");
    f << buf.str();
    log << "encoded " << data.n() << " x " << data.dim() << " into " << cfg.out_path << '\n';
  }
  return kSuccess;
}

int cmd_summary(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const Dataset data = load_data(cfg);
  const DatasetSummary s = dataset_summary(data);
  json j;
  j["name"] = s.name;
  j["n"] = s.n;
  j["d"] = s.d;
  j["num_classes"] = s.num_classes;
  j["distinct_points"] = s.distinct_points;
  j["missing_cells"] = s.missing_cells;
  json hist = json::array();
  for (const auto& c : s.class_histogram) {
    hist.push_back({{"class", c.name}, {"count", c.count}, {"proportion", c.proportion}});
  }
  j["class_histogram"] = std::move(hist);
  const std::string text = j.dump(2) + "\n";
  if (cfg.out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out_path);
    if (!f) throw std::runtime_error("cannot write '" + cfg.out_path + "'");
    f << text;
  }
  return kSuccess;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& log) {
  CLI::App app{"Nearest-neighbor median shift clustering for binary data"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file of option values; flags override it");

  RunConfig cfg;
  std::string label, delimiter, header, epsilon_mode = "mean_all";
  double threshold = 0.0;

  app.add_option("--data", cfg.data_path, "Input data file");
  app.add_option("--schema", cfg.schema_path, "Schema file for categorical/raw input");
  auto* label_opt = app.add_option("--label", label, "Label column name or index, or 'none'");
  auto* delim_opt = app.add_option("--delimiter", delimiter, "',', 'tab' or 'whitespace'");
  auto* header_opt = app.add_option("--header", header, "Whether the input has a header row")
                         ->check(CLI::IsMember({"yes", "no"}));
  auto* thresh_opt = app.add_option("--threshold", threshold, "Cutoff for threshold columns");
  app.add_option("--algo", cfg.algo, "binnnms or kmodes")
      ->check(CLI::IsMember({"binnnms", "kmodes"}));
  app.add_option("--k1", cfg.k1, "Neighbors per median-shift step");
  app.add_option("--k2", cfg.k2, "Neighbors used for the merge threshold");
  app.add_option("--jmax", cfg.j_max, "Maximum ascent steps");
  app.add_option("--epsilon-mode", epsilon_mode, "mean_all or kth_only")
      ->check(CLI::IsMember({"mean_all", "kth_only"}));
  app.add_option("--k", cfg.k, "k-modes cluster count (0: number of classes)");
  app.add_option("--runs", cfg.runs, "k-modes restarts");
  app.add_option("--max-iter", cfg.max_iter, "k-modes iteration cap");
  app.add_option("--seed", cfg.seed, "Base seed for k-modes");
  app.add_option("--threads", cfg.threads, "Worker threads (0: all cores)");
  app.add_option("--k1-list", cfg.k1_grid, "Sweep grid for k1, e.g. 0,2..30");
  app.add_option("--k2-list", cfg.k2_grid, "Sweep grid for k2, e.g. 1..20");
  app.add_option("--truth", cfg.truth_path, "Ground-truth label file (eval)");
  app.add_option("--pred", cfg.pred_path, "Predicted label file (eval)");
  app.add_option("--out-dir", cfg.out_dir, "Directory for cluster/sweep outputs");
  app.add_option("--out", cfg.out_path, "Output file for encode/eval/summary");
  app.add_option("--proto-width", cfg.proto_width, "Also write prototypes as grids this wide");
  app.add_flag("--timing", cfg.timing, "Record wall time in metrics.json");

  auto* cluster = app.add_subcommand("cluster", "Cluster a dataset");
  auto* sweep = app.add_subcommand("sweep", "Grid sweep over k1 and k2");
  auto* eval = app.add_subcommand("eval", "Compare two label files");
  auto* encode = app.add_subcommand("encode", "Encode raw records to binary CSV");
  auto* summary = app.add_subcommand("summary", "Describe a dataset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, log);
    return code == 0 ? kSuccess : kUsageError;
  }
  if (label_opt->count() > 0) cfg.label = label;
  if (delim_opt->count() > 0) cfg.delimiter = delimiter;
  if (header_opt->count() > 0) cfg.header = header == "yes";
  if (thresh_opt->count() > 0) cfg.threshold = threshold;
  cfg.epsilon_mode = parse_epsilon_mode(epsilon_mode);

  try {
    if (cluster->parsed()) return cmd_cluster(cfg, log);
    if (sweep->parsed()) return cmd_sweep(cfg, log);
    if (eval->parsed()) return cmd_eval(cfg, out, log);
    if (encode->parsed()) return cmd_encode(cfg, out, log);
    if (summary->parsed()) return cmd_summary(cfg, out, log);
  } catch (const DataError& e) {
    log << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const DimensionMismatch& e) {
    log << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kUsageError;
}

}  // namespace binnms::cli
