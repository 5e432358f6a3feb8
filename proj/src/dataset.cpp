#include "binnms/dataset.hpp"

#include <stdexcept>
#include <utility>

#include "binnms/errors.hpp"

namespace binnms {

namespace {

DatasetInit plain(std::vector<BinaryVector> points, std::string name) {
  DatasetInit init;
  init.points = std::move(points);
  init.name = std::move(name);
  return init;
}

}  // namespace

Dataset::Dataset(std::vector<BinaryVector> points, std::string name)
    : Dataset(plain(std::move(points), std::move(name))) {}

Dataset::Dataset(DatasetInit init)
    : points_(std::move(init.points)),
      truth_(std::move(init.truth_labels)),
      class_names_(std::move(init.class_names)),
      weights_(std::move(init.weights)),
      schema_(std::move(init.schema)),
      feature_names_(std::move(init.feature_names)),
      name_(std::move(init.name)),
      missing_cells_(init.missing_cells) {
  if (!points_.empty()) dim_ = points_.front().dim();
  for (const auto& p : points_) {
    if (p.dim() != dim_) throw DimensionMismatch(dim_, p.dim());
  }
  if (truth_) {
    if (truth_->size() != points_.size()) {
      throw std::invalid_argument("truth label count does not match number of points");
    }
    for (int t : *truth_) {
      if (t < 0) throw std::invalid_argument("truth labels must be nonnegative ids");
      if (!class_names_.empty() && static_cast<std::size_t>(t) >= class_names_.size()) {
        throw std::invalid_argument("truth label id has no class name");
      }
    }
  }
  if (!weights_.empty()) {
    if (weights_.size() != points_.size()) {
      throw std::invalid_argument("weight count does not match number of points");
    }
    for (double w : weights_) {
      if (!(w > 0.0)) throw std::invalid_argument("weights must be positive");
    }
  }
  if (schema_ && !points_.empty() && schema_->encoded_dim() != dim_) {
    throw DimensionMismatch(schema_->encoded_dim(), dim_);
  }
  if (!feature_names_.empty() && !points_.empty() && feature_names_.size() != dim_) {
    throw std::invalid_argument("feature name count does not match dimension");
  }
}

void Dataset::require_dim(const BinaryVector& v) const {
  if (v.dim() != dim_) throw DimensionMismatch(dim_, v.dim());
}

}  // namespace binnms
