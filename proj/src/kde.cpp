#include "binnms/kde.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace binnms {

namespace {

constexpr std::size_t kLogSpaceDim = 30;

void require_data(const Dataset& data, const BinaryVector& x) {
  if (data.empty()) throw std::invalid_argument("kernel density of an empty dataset");
  data.require_dim(x);
}

// log K for m mismatches out of d; -inf when the kernel is exactly zero.
double log_kernel(std::size_t m, std::size_t d, double lambda) {
  const double agree = static_cast<double>(d - m);
  const double differ = static_cast<double>(m);
  double out = 0.0;
  if (agree > 0) out += agree * std::log(lambda);
  if (differ > 0) {
    if (lambda == 1.0) return -std::numeric_limits<double>::infinity();
    out += differ * std::log1p(-lambda);
  }
  return out;
}

// Kernel weights of every data point relative to x, scaled by exp(-shift) so
// the largest is 1 in log-space mode. Returns the shift.
double kernel_weights(const Dataset& data, const BinaryVector& x, double lambda,
                      std::vector<double>& w) {
  const std::size_t d = data.dim();
  w.resize(data.n());
  if (d <= kLogSpaceDim) {
    for (std::size_t i = 0; i < data.n(); ++i) {
      w[i] = aa_kernel_mismatches(hamming_unchecked(data[i], x), d, AaKernelParam(lambda));
    }
    return 0.0;
  }
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < data.n(); ++i) {
    w[i] = log_kernel(hamming_unchecked(data[i], x), d, lambda);
    shift = std::max(shift, w[i]);
  }
  if (std::isinf(shift)) {
    std::fill(w.begin(), w.end(), 0.0);
    return 0.0;
  }
  for (double& v : w) v = std::exp(v - shift);
  return shift;
}

}  // namespace

AaKernelParam::AaKernelParam(double lambda) : lambda_(lambda) {
  if (!(lambda >= 0.5 && lambda <= 1.0)) {
    throw std::invalid_argument("kernel parameter lambda must lie in [1/2, 1]");
  }
}

double aa_kernel_mismatches(std::size_t mismatches, std::size_t dim, AaKernelParam lambda) {
  if (mismatches > dim) throw std::invalid_argument("mismatch count exceeds dimension");
  const double l = lambda.value();
  return std::pow(l, static_cast<double>(dim - mismatches)) *
         std::pow(1.0 - l, static_cast<double>(mismatches));
}

double aa_kernel(std::span<const int> diff, AaKernelParam lambda) {
  std::size_t m = 0;
  for (int c : diff) {
    if (c < -1 || c > 1) throw std::invalid_argument("difference components must be -1, 0 or 1");
    if (c != 0) ++m;
  }
  return aa_kernel_mismatches(m, diff.size(), lambda);
}

double aa_kernel_continuous(std::span<const double> x, AaKernelParam lambda) {
  double sq = 0.0;
  for (double v : x) sq += v * v;
  const double l = lambda.value();
  return std::pow(l, static_cast<double>(x.size()) - sq) * std::pow(1.0 - l, sq);
}

std::vector<double> aa_kernel_gradient(std::span<const double> x, AaKernelParam lambda) {
  const double l = lambda.value();
  if (l == 1.0) throw std::invalid_argument("kernel gradient needs lambda < 1");
  const double k = aa_kernel_continuous(x, lambda);
  const double factor = 2.0 * std::log((1.0 - l) / l) * k;
  std::vector<double> g(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) g[j] = factor * x[j];
  return g;
}

double kde_estimate(const Dataset& data, const BinaryVector& x, AaKernelParam lambda) {
  require_data(data, x);
  std::vector<double> w;
  const double shift = kernel_weights(data, x, lambda.value(), w);
  double sum = 0.0;
  for (double v : w) sum += v;
  const double n = static_cast<double>(data.n());
  if (shift == 0.0) return sum / n;
  return std::exp(std::log(sum) + shift - std::log(n));
}

std::vector<double> kde_gradient(const Dataset& data, const BinaryVector& x, AaKernelParam lambda) {
  require_data(data, x);
  const double l = lambda.value();
  if (l == 1.0) throw std::invalid_argument("density gradient needs lambda < 1");
  std::vector<double> w;
  const double shift = kernel_weights(data, x, l, w);

  const std::size_t d = data.dim();
  std::vector<double> weighted_points(d, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < data.n(); ++i) {
    total += w[i];
    for (std::size_t j = 0; j < d; ++j) {
      if (data[i][j]) weighted_points[j] += w[i];
    }
  }
  const double scale = 2.0 * std::log(l / (1.0 - l)) / static_cast<double>(data.n()) *
                       (shift == 0.0 ? 1.0 : std::exp(shift));
  std::vector<double> g(d);
  for (std::size_t j = 0; j < d; ++j) {
    g[j] = scale * (weighted_points[j] - (x[j] ? total : 0.0));
  }
  return g;
}

}  // namespace binnms
