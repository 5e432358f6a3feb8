#include "binnms/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "binnms/errors.hpp"

namespace binnms {

namespace {

std::vector<std::size_t> compact(std::span<const int> labels, std::size_t& distinct) {
  std::map<int, std::size_t> ids;
  for (int l : labels) ids.emplace(l, 0);
  std::size_t next = 0;
  for (auto& [label, id] : ids) id = next++;
  distinct = next;
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (int l : labels) out.push_back(ids.at(l));
  return out;
}

// Sums run in sorted order so the result does not depend on label ids.
double entropy(std::vector<std::size_t> counts, double n) {
  std::sort(counts.begin(), counts.end());
  double h = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / n;
    h -= p * std::log(p);
  }
  return h;
}

double choose2(std::size_t x) {
  const double v = static_cast<double>(x);
  return v * (v - 1.0) / 2.0;
}

}  // namespace

Contingency Contingency::build(std::span<const int> truth, std::span<const int> pred) {
  if (truth.size() != pred.size()) {
    throw std::invalid_argument("label lists differ in length: " + std::to_string(truth.size()) +
                                " vs " + std::to_string(pred.size()));
  }
  if (truth.empty()) throw std::invalid_argument("label lists are empty");
  Contingency c;
  std::size_t r = 0;
  std::size_t k = 0;
  const auto tu = compact(truth, r);
  const auto pv = compact(pred, k);
  c.table.assign(r, std::vector<std::size_t>(k, 0));
  c.rows.assign(r, 0);
  c.cols.assign(k, 0);
  c.n = truth.size();
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++c.table[tu[i]][pv[i]];
    ++c.rows[tu[i]];
    ++c.cols[pv[i]];
  }
  return c;
}

NmiNormalization parse_nmi_normalization(std::string_view s) {
  if (s == "geometric") return NmiNormalization::geometric;
  if (s == "arithmetic") return NmiNormalization::arithmetic;
  if (s == "max") return NmiNormalization::max;
  throw std::invalid_argument("unknown NMI normalization '" + std::string(s) + "'");
}

double nmi(std::span<const int> truth, std::span<const int> pred, NmiNormalization norm) {
  const Contingency c = Contingency::build(truth, pred);
  const double n = static_cast<double>(c.n);
  const double hu = entropy(c.rows, n);
  const double hv = entropy(c.cols, n);
  if (c.rows.size() == 1 || c.cols.size() == 1) {
    return c.rows.size() == 1 && c.cols.size() == 1 ? 1.0 : 0.0;
  }

  std::vector<double> terms;
  for (std::size_t u = 0; u < c.rows.size(); ++u) {
    for (std::size_t v = 0; v < c.cols.size(); ++v) {
      const std::size_t nuv = c.table[u][v];
      if (nuv == 0) continue;
      const double x = static_cast<double>(nuv);
      terms.push_back(x / n * std::log(x * n / (static_cast<double>(c.rows[u]) *
                                                 static_cast<double>(c.cols[v]))));
    }
  }
  std::sort(terms.begin(), terms.end());
  double mi = 0.0;
  for (double t : terms) mi += t;
  double denom = 0.0;
  switch (norm) {
    case NmiNormalization::geometric:
      denom = std::sqrt(hu * hv);
      break;
    case NmiNormalization::arithmetic:
      denom = 0.5 * (hu + hv);
      break;
    case NmiNormalization::max:
      denom = std::max(hu, hv);
      break;
  }
  return std::clamp(mi / denom, 0.0, 1.0);
}

double arand(std::span<const int> truth, std::span<const int> pred) {
  const Contingency c = Contingency::build(truth, pred);
  double index = 0.0;
  for (const auto& row : c.table) {
    for (std::size_t x : row) index += choose2(x);
  }
  double sum_rows = 0.0;
  double sum_cols = 0.0;
  for (std::size_t x : c.rows) sum_rows += choose2(x);
  for (std::size_t x : c.cols) sum_cols += choose2(x);
  const double pairs = choose2(c.n);
  if (pairs == 0.0) return 1.0;
  const double expected = sum_rows * sum_cols / pairs;
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

double quantization_error(const Dataset& data, std::span<const int> labels,
                          std::span<const BinaryVector> prototypes) {
  if (labels.size() != data.n()) {
    throw std::invalid_argument("label count does not match number of points");
  }
  if (data.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < data.n(); ++i) {
    const int l = labels[i];
    if (l < 0 || static_cast<std::size_t>(l) >= prototypes.size()) {
      throw std::invalid_argument("cluster " + std::to_string(l) + " has no prototype");
    }
    total += static_cast<double>(hamming(data[i], prototypes[static_cast<std::size_t>(l)]));
  }
  return total / static_cast<double>(data.n());
}

double quantization_error(const Dataset& data, const ClusterLabeling& labeling) {
  return quantization_error(data, labeling.labels, labeling.prototypes);
}

double quantization_error(const Dataset& data, const KModesResult& result) {
  return quantization_error(data, result.labels, result.prototypes);
}

std::size_t count_clusters(std::span<const int> labels) {
  std::vector<int> v(labels.begin(), labels.end());
  std::sort(v.begin(), v.end());
  return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

}  // namespace binnms
