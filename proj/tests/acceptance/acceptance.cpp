// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Criteria 8-12 read datasets from BINNMS_DATA_DIR (see scripts/fetch_datasets.sh).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "binnms/bga.hpp"
#include "binnms/errors.hpp"
#include "binnms/ingest.hpp"
#include "binnms/kde.hpp"
#include "binnms/kmodes.hpp"
#include "binnms/knn.hpp"
#include "binnms/labeling.hpp"
#include "binnms/median.hpp"
#include "binnms/metrics.hpp"
#include "binnms/pipeline.hpp"
#include "binnms/sweep.hpp"

namespace fs = std::filesystem;
using namespace binnms;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class MissingData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

BinaryVector random_vector(std::mt19937_64& rng, std::size_t d, double p = 0.5) {
  std::bernoulli_distribution bit(p);
  BitWriter w(d);
  for (std::size_t j = 0; j < d; ++j) w.set(j, bit(rng));
  return std::move(w).build();
}

// Noisy copies of a few centers, so that equal distances and duplicates occur.
std::vector<BinaryVector> clustered(std::mt19937_64& rng, std::size_t n, std::size_t d,
                                    std::size_t centers, double flip) {
  std::vector<BinaryVector> c;
  for (std::size_t i = 0; i < centers; ++i) c.push_back(random_vector(rng, d));
  std::bernoulli_distribution f(flip);
  std::vector<BinaryVector> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& base = c[uniform(rng, 0, centers - 1)];
    BitWriter w(d);
    for (std::size_t j = 0; j < d; ++j) w.set(j, base[j] != f(rng));
    out.push_back(std::move(w).build());
  }
  return out;
}

BinaryVector from_code(std::uint64_t code, std::size_t d) {
  BitWriter w(d);
  for (std::size_t j = 0; j < d; ++j) w.set(j, (code >> j) & 1U);
  return std::move(w).build();
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Indices of the k nearest points by full sort, ties to the lower index.
std::vector<std::size_t> brute_knn(std::span<const BinaryVector> pts, const BinaryVector& q,
                                   std::size_t k) {
  std::vector<std::size_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return hamming(pts[a], q) < hamming(pts[b], q);
  });
  idx.resize(k);
  return idx;
}

Outcome median_optimality() {
  std::mt19937_64 rng(101);
  std::size_t checked = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = uniform(rng, 1, 12);
    const std::size_t d = uniform(rng, 1, 10);
    std::vector<BinaryVector> pts;
    std::vector<double> w;
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back(random_vector(rng, d));
      w.push_back(std::uniform_real_distribution<double>(0.05, 3.0)(rng));
    }
    const WeightedSample s{pts, w};
    const double best = inertia(s, median_center(s));
    for (std::uint64_t code = 0; code < (1ULL << d); ++code) {
      ++checked;
      if (best > inertia(s, from_code(code, d))) {
        return {false, "dataset " + std::to_string(t) + " beaten by candidate " +
                           std::to_string(code)};
      }
    }
  }
  return {true, "500 weighted datasets, " + std::to_string(checked) + " candidates"};
}

Outcome knn_oracle() {
  std::mt19937_64 rng(202);
  std::size_t boundary_ties = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = uniform(rng, 1, 200);
    const std::size_t d = uniform(rng, 1, 64);
    const auto pts = t % 2 ? clustered(rng, n, d, uniform(rng, 1, 4), 0.1)
                           : clustered(rng, n, d, n, 0.5);
    const Dataset data(pts);
    const auto q = t % 3 ? pts[uniform(rng, 0, n - 1)] : random_vector(rng, d);
    const std::size_t k = uniform(rng, 1, n);
    const auto got = knn_query(data, q, k);
    auto expected = brute_knn(pts, q, k);
    auto indices = got.indices;
    if (indices != expected) {
      std::sort(indices.begin(), indices.end());
      std::sort(expected.begin(), expected.end());
      if (indices != expected) return {false, "index set differs on instance " + std::to_string(t)};
    }
    std::size_t inside = 0;
    for (const auto& p : pts) inside += hamming(p, q) <= got.radius();
    if (inside > k) ++boundary_ties;
  }
  return {true, "500 instances, " + std::to_string(boundary_ties) + " with ties at the k-th distance"};
}

Outcome bga_step_oracle() {
  std::mt19937_64 rng(303);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = uniform(rng, 1, 150);
    const std::size_t d = uniform(rng, 1, 40);
    const auto pts = clustered(rng, n, d, uniform(rng, 1, 5), 0.15);
    const Dataset data(pts);
    const auto x = t % 2 ? pts[uniform(rng, 0, n - 1)] : random_vector(rng, d);
    const std::size_t k1 = uniform(rng, 1, n);
    const auto nn = brute_knn(pts, x, k1);
    BitWriter w(d);
    for (std::size_t j = 0; j < d; ++j) {
      std::size_t ones = 0;
      for (std::size_t i : nn) ones += pts[i][j];
      const std::size_t zeros = k1 - ones;
      w.set(j, ones > zeros || (ones == zeros && x[j]));
    }
    if (median_shift_step(data, x, k1) != std::move(w).build()) {
      return {false, "step differs on instance " + std::to_string(t)};
    }
  }
  return {true, "500 instances"};
}

Outcome labeling_oracle() {
  std::mt19937_64 rng(404);
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = uniform(rng, 1, 300);
    const std::size_t d = uniform(rng, 1, 48);
    const auto pts = clustered(rng, m, d, uniform(rng, 1, 8), 0.08);
    const double eps = std::uniform_real_distribution<double>(0, d / 3.0)(rng);
    const auto lab = label_clusters(pts, eps);

    std::vector<std::size_t> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
      return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        if (static_cast<double>(hamming(pts[i], pts[j])) <= eps) parent[find(i)] = find(j);
      }
    }
    // Partitions are equal when the label <-> root map is a bijection.
    std::map<int, std::size_t> to_root;
    std::map<std::size_t, int> to_label;
    for (std::size_t i = 0; i < m; ++i) {
      const auto r = find(i);
      const auto [a, ia] = to_root.emplace(lab.labels[i], r);
      const auto [b, ib] = to_label.emplace(r, lab.labels[i]);
      if (a->second != r || b->second != lab.labels[i]) {
        return {false, "partition differs on instance " + std::to_string(t)};
      }
    }
  }
  return {true, "200 point sets, m <= 300"};
}

Outcome kde_checks() {
  std::mt19937_64 rng(505);
  double worst_norm = 0.0;
  double worst_grad = 0.0;
  const std::vector<double> lambdas{0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
  for (std::size_t d = 1; d <= 12; ++d) {
    const std::size_t n = uniform(rng, 1, 10);
    std::vector<BinaryVector> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(random_vector(rng, d));
    const Dataset data(pts);
    for (double l : lambdas) {
      const AaKernelParam lambda(l);
      double total = 0.0;
      for (std::uint64_t code = 0; code < (1ULL << d); ++code) {
        total += kde_estimate(data, from_code(code, d), lambda);
      }
      worst_norm = std::max(worst_norm, std::abs(total - 1.0));

      for (int probe = 0; probe < 8; ++probe) {
        const auto x = random_vector(rng, d);
        const auto g = kde_gradient(data, x, lambda);
        std::vector<double> expected(d, 0.0);
        for (const auto& p : pts) {
          const double k = aa_kernel_mismatches(hamming(p, x), d, lambda);
          for (std::size_t j = 0; j < d; ++j) {
            expected[j] += 2.0 * (double(p[j]) - double(x[j])) * std::log(l / (1 - l)) * k;
          }
        }
        for (std::size_t j = 0; j < d; ++j) {
          worst_grad = std::max(worst_grad, std::abs(g[j] - expected[j] / static_cast<double>(n)));
        }
      }
    }
  }
  const bool ok = worst_norm <= 1e-12 && worst_grad <= 1e-12;
  return {ok, "max |sum - 1| = " + fmt(worst_norm * 1e15, 2) + "e-15, max gradient gap = " +
                  fmt(worst_grad * 1e15, 2) + "e-15"};
}

Outcome metric_oracles() {
  std::mt19937_64 rng(606);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = uniform(rng, 2, 50);
    const std::size_t ku = uniform(rng, 1, 6);
    const std::size_t kv = uniform(rng, 1, 6);
    std::vector<int> u(n), v(n);
    for (auto& x : u) x = static_cast<int>(uniform(rng, 0, ku - 1));
    for (auto& x : v) x = static_cast<int>(uniform(rng, 0, kv - 1));

    // Entropies and mutual information from frequency maps.
    std::map<int, double> pu, pv;
    std::map<std::pair<int, int>, double> puv;
    for (std::size_t i = 0; i < n; ++i) {
      pu[u[i]] += 1.0 / n;
      pv[v[i]] += 1.0 / n;
      puv[{u[i], v[i]}] += 1.0 / n;
    }
    auto h = [](const auto& m) {
      double s = 0;
      for (const auto& kv : m) s -= kv.second * std::log(kv.second);
      return s;
    };
    double nmi_oracle;
    if (pu.size() == 1 || pv.size() == 1) {
      nmi_oracle = pu.size() == 1 && pv.size() == 1 ? 1.0 : 0.0;
    } else {
      nmi_oracle = std::clamp((h(pu) + h(pv) - h(puv)) / std::sqrt(h(pu) * h(pv)), 0.0, 1.0);
    }

    // Adjusted Rand from pair agreements.
    double both = 0, su = 0, sv = 0, pairs = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        pairs += 1;
        su += u[i] == u[j];
        sv += v[i] == v[j];
        both += u[i] == u[j] && v[i] == v[j];
      }
    }
    const double expected = su * sv / pairs;
    const double max_index = (su + sv) / 2;
    const double ari_oracle = max_index == expected ? 1.0 : (both - expected) / (max_index - expected);

    const double m = nmi(u, v);
    const double r = arand(u, v);
    worst = std::max({worst, std::abs(m - nmi_oracle), std::abs(r - ari_oracle)});

    // Any relabeling of either argument leaves both scores bit-identical.
    std::vector<int> perm(std::max(ku, kv));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> u2(n), v2(n);
    for (std::size_t i = 0; i < n; ++i) {
      u2[i] = perm[u[i]] * 7 - 3;
      v2[i] = perm[v[i]] + 40;
    }
    if (nmi(u2, v) != m || nmi(u, v2) != m || arand(u2, v) != r || arand(u, v2) != r) {
      return {false, "relabeling changed a score on pair " + std::to_string(t)};
    }
  }
  return {worst <= 1e-12, "1000 label pairs, max deviation " + fmt(worst * 1e15, 2) + "e-15"};
}

Outcome kmodes_descent() {
  std::mt19937_64 rng(707);
  std::size_t converged = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = uniform(rng, 10, 300);
    const std::size_t d = uniform(rng, 2, 64);
    const Dataset data(clustered(rng, n, d, uniform(rng, 1, 10), 0.2));
    std::vector<BinaryVector> distinct(data.points().begin(), data.points().end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const std::size_t k = uniform(rng, 1, std::min<std::size_t>(12, distinct.size()));
    const auto r = kmodes_run(data, k, t, 100);
    for (std::size_t i = 1; i < r.inertia_history.size(); ++i) {
      if (r.inertia_history[i] > r.inertia_history[i - 1]) {
        return {false, "inertia rose on instance " + std::to_string(t)};
      }
    }
    converged += r.converged;
  }
  return {converged >= 95, std::to_string(converged) + "/100 runs converged before the cap"};
}

std::string data_path(const std::string& name) { return std::string(BINNMS_DATA_DIR) + "/" + name; }
std::string schema_path(const std::string& name) {
  return std::string(BINNMS_SCHEMA_DIR) + "/" + name;
}

Dataset load_uci(const std::string& file, const std::string& schema, LoadOptions opts = {}) {
  const auto path = data_path(file);
  if (!fs::exists(path)) {
    throw MissingData(path + " not found; run scripts/fetch_datasets.sh");
  }
  return load_categorical_csv(path, load_schema(schema_path(schema)), opts);
}

const Dataset& zoo() {
  static const Dataset d = load_uci("zoo.data", "zoo.schema");
  return d;
}

std::optional<SweepReport> zoo_sweep_cache;

const SweepReport& zoo_sweep() {
  if (!zoo_sweep_cache) {
    SweepConfig sc;
    sc.k1_values = parse_grid("2..30");
    sc.k2_values = parse_grid("1..20");
    zoo_sweep_cache = run_sweep(zoo(), sc);
  }
  return *zoo_sweep_cache;
}

std::string cell_name(const SweepCell& c) {
  return "NMI " + fmt(*c.nmi) + " / ARAND " + fmt(*c.arand) + " at k1=" + std::to_string(c.k1) +
         ",k2=" + std::to_string(c.k2) + " (" + std::to_string(c.num_clusters) + " clusters)";
}

// Passes when one cell reaches both thresholds; reports the best such cell,
// otherwise the best cell for each index.
Outcome sweep_gate(const SweepReport& rep, double nmi_min, double arand_min) {
  const SweepCell* joint = nullptr;
  for (const auto& c : rep.cells) {
    if (!c.ok() || !c.nmi || *c.nmi < nmi_min || *c.arand < arand_min) continue;
    if (!joint || *c.nmi > *joint->nmi) joint = &c;
  }
  if (joint) return {true, "best joint cell " + cell_name(*joint)};
  const auto* by_nmi = rep.best_by_nmi();
  const auto* by_ari = rep.best_by_arand();
  if (!by_nmi || !by_ari) return {false, "no successful sweep cell"};
  return {false, "no cell meets both; best by NMI " + cell_name(*by_nmi) + "; best by ARAND " +
                     cell_name(*by_ari)};
}

Outcome zoo_binnnms() {
  const auto& data = zoo();
  if (data.n() != 101 || data.dim() != 21) {
    return {false, "unexpected Zoo shape " + std::to_string(data.n()) + "x" + std::to_string(data.dim())};
  }
  return sweep_gate(zoo_sweep(), 0.90, 0.85);
}

Outcome zoo_kmodes() {
  const auto& data = zoo();
  const auto runs = kmodes_repeated(data, 8, 10, 1);
  std::vector<double> scores;
  for (const auto& r : runs) scores.push_back(nmi(*data.truth_labels(), r.labels));
  const double mean = std::accumulate(scores.begin(), scores.end(), 0.0) / scores.size();
  double ss = 0.0;
  for (double s : scores) ss += (s - mean) * (s - mean);
  const double sd = std::sqrt(ss / (scores.size() - 1));
  return {mean >= 0.70 && mean <= 0.87, "mean NMI " + fmt(mean) + " +/- " + fmt(sd) + " over 10 runs"};
}

// Coarse grid for the 2000-point data.
constexpr const char* kDigitsK1 = "5,10,20,30,40,50,60";
constexpr const char* kDigitsK2 = "5,10,20,40,80,120,160,200";

Outcome digits_binnnms() {
  const auto data = load_uci("digits.data", "digits.schema");
  if (data.n() != 2000 || data.dim() != 240) return {false, "unexpected Digits shape"};
  SweepConfig sc;
  sc.k1_values = parse_grid(kDigitsK1);
  sc.k2_values = parse_grid(kDigitsK2);
  return sweep_gate(run_sweep(data, sc), 0.80, 0.80);
}

Outcome car_single_cluster() {
  std::optional<Dataset> data;
  std::string source = "car.data";
  if (fs::exists(data_path("car.data"))) {
    data = load_uci("car.data", "car.schema");
  } else {
    source = "car_features.data";
    LoadOptions opts;
    opts.label_column = "none";
    data = load_uci("car_features.data", "car.schema", opts);
  }
  if (data->n() != 1728) return {false, "unexpected Car size " + std::to_string(data->n())};
  // Gated on moderate k1; the wider values are reported alongside.
  std::string detail;
  std::string wider;
  bool ok = true;
  for (std::size_t k1 : {5, 10, 15, 20, 25, 30, 40}) {
    BinnmsConfig cfg;
    cfg.k1 = k1;
    cfg.k2 = 5;
    const auto r = run_binnnms(*data, cfg);
    const bool gated = k1 >= 10 && k1 <= 25;
    if (gated) ok = ok && r.single_cluster();
    std::string& out = gated ? detail : wider;
    out += (out.empty() ? "" : ", ") + std::string("k1=") + std::to_string(k1) + ": " +
           std::to_string(r.labeling.num_clusters);
  }
  detail = "clusters at " + detail + " (ungated " + wider + ")";
  return {ok, detail + " [" + source + "]"};
}

Outcome zoo_trajectories() {
  const auto& rep = zoo_sweep();
  if (rep.trajectories.size() != 29) return {false, "expected 29 trajectories"};
  std::size_t target_ok = 0;
  std::size_t inter_ok = 0;
  std::size_t longest = 0;
  double first = 0.0;
  double last = 0.0;
  for (const auto& t : rep.trajectories) {
    const auto& e = t.errors;
    if (!t.error.empty() || e.vs_target.empty() || e.vs_target.size() > 51) {
      return {false, "trajectory for k1=" + std::to_string(t.k1) + " malformed"};
    }
    longest = std::max(longest, e.vs_target.size());
    target_ok += e.vs_target.back() <= e.vs_target.front();
    inter_ok += e.vs_intermediate.back() <= e.vs_intermediate.front();
    if (t.k1 == 10) {
      first = e.vs_intermediate.front();
      last = e.vs_intermediate.back();
    }
  }
  const bool ok = target_ok == 29 && inter_ok == 29;
  return {ok, "final <= initial for " + std::to_string(inter_ok) +
                  "/29 k1 values vs intermediate medians and " + std::to_string(target_ok) +
                  "/29 vs target medians; up to " + std::to_string(longest) +
                  " iterations; k1=10: " + fmt(first) + " -> " + fmt(last)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "median optimality", median_optimality},
      {2, "kNN oracle", knn_oracle},
      {3, "BGA step oracle", bga_step_oracle},
      {4, "labeling oracle", labeling_oracle},
      {5, "KDE normalization and gradient", kde_checks},
      {6, "metric oracles", metric_oracles},
      {7, "k-modes descent", kmodes_descent},
      {8, "Zoo BinNNMS sweep", zoo_binnnms},
      {9, "Zoo k-modes k=8", zoo_kmodes},
      {10, "Digits BinNNMS sweep", digits_binnnms},
      {11, "Car single cluster", car_single_cluster},
      {12, "Zoo quantization trajectories", zoo_trajectories},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s [%d] %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures,
              std::size(criteria));
  return failures == 0 ? 0 : 1;
}
