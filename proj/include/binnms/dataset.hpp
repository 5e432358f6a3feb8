#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "binnms/binary_vector.hpp"
#include "binnms/feature_schema.hpp"

namespace binnms {

// Everything a Dataset can be built from. Only `points` is required.
struct DatasetInit {
  std::vector<BinaryVector> points;
  std::optional<std::vector<int>> truth_labels;  // dense ids 0..M-1
  std::vector<std::string> class_names;          // class_names[id], may be empty
  std::vector<double> weights;                   // empty means unit weights
  std::optional<FeatureSchema> schema;
  std::vector<std::string> feature_names;        // one per encoded component, may be empty
  std::string name;
  std::size_t missing_cells = 0;
};

// Immutable collection of equal-width binary points.
class Dataset {
 public:
  explicit Dataset(std::vector<BinaryVector> points, std::string name = {});
  explicit Dataset(DatasetInit init);

  std::size_t n() const noexcept { return points_.size(); }
  // Zero only for an empty dataset.
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return points_.empty(); }

  std::span<const BinaryVector> points() const noexcept { return points_; }
  const BinaryVector& point(std::size_t i) const { return points_.at(i); }
  const BinaryVector& operator[](std::size_t i) const noexcept { return points_[i]; }

  bool weighted() const noexcept { return !weights_.empty(); }
  std::span<const double> weights() const noexcept { return weights_; }
  double weight(std::size_t i) const noexcept { return weights_.empty() ? 1.0 : weights_[i]; }

  const std::optional<std::vector<int>>& truth_labels() const noexcept { return truth_; }
  const std::vector<std::string>& class_names() const noexcept { return class_names_; }
  const std::optional<FeatureSchema>& schema() const noexcept { return schema_; }
  const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t missing_cells() const noexcept { return missing_cells_; }

  // Throws DimensionMismatch unless v.dim() == dim().
  void require_dim(const BinaryVector& v) const;

 private:
  std::vector<BinaryVector> points_;
  std::size_t dim_ = 0;
  std::optional<std::vector<int>> truth_;
  std::vector<std::string> class_names_;
  std::vector<double> weights_;
  std::optional<FeatureSchema> schema_;
  std::vector<std::string> feature_names_;
  std::string name_;
  std::size_t missing_cells_ = 0;
};

}  // namespace binnms
