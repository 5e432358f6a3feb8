#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "binnms/binary_vector.hpp"
#include "binnms/dataset.hpp"

namespace binnms {

// Smoothing parameter of the Aitchison-Aitken kernel, 1/2 <= lambda <= 1.
// lambda = 1/2 spreads mass uniformly; lambda = 1 is a point mass.
class AaKernelParam {
 public:
  explicit AaKernelParam(double lambda);
  double value() const noexcept { return lambda_; }

 private:
  double lambda_;
};

// K(x) = lambda^(d - m) (1 - lambda)^m, m = number of nonzero components of a
// difference vector with entries in {-1, 0, 1}.
double aa_kernel(std::span<const int> diff, AaKernelParam lambda);
// Same kernel from the mismatch count m out of d components.
double aa_kernel_mismatches(std::size_t mismatches, std::size_t dim, AaKernelParam lambda);

// Kernel on the continuous extension, lambda^(d - x'x) (1 - lambda)^(x'x), and
// its closed-form gradient 2 x log((1 - lambda) / lambda) K(x). Used to check
// the gradient identity against finite differences.
double aa_kernel_continuous(std::span<const double> x, AaKernelParam lambda);
std::vector<double> aa_kernel_gradient(std::span<const double> x, AaKernelParam lambda);

// n^-1 sum_i K(x - X_i). Sums in log space once d exceeds 30.
// Throws std::invalid_argument on empty data.
double kde_estimate(const Dataset& data, const BinaryVector& x, AaKernelParam lambda);

// 2 log(lambda / (1 - lambda)) n^-1 [sum_i X_i K(x - X_i) - x sum_i K(x - X_i)].
// Requires lambda < 1 so the log factor is finite.
std::vector<double> kde_gradient(const Dataset& data, const BinaryVector& x, AaKernelParam lambda);

}  // namespace binnms
