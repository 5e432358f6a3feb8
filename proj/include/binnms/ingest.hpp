#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "binnms/dataset.hpp"
#include "binnms/feature_schema.hpp"

namespace binnms {

struct LoadOptions {
  // Field separator; ' ' splits on any run of whitespace. For categorical
  // loads, unset means "use the schema's delimiter".
  std::optional<char> delimiter;
  // Whether the first row holds column names. Unset: binary loads assume no
  // header, categorical loads use the schema.
  std::optional<bool> header;
  // Ground-truth column, by name (needs a header or schema) or 0-based index.
  // "none" means the file carries no label column even if the schema names one.
  std::optional<std::string> label_column;
  // Overrides the cutoff of every threshold column in the schema.
  std::optional<double> threshold;
  std::string name;
};

// Rows of 0/1 cells become points. Throws DataError naming the row and column
// of a non-binary cell or a ragged row, and on an empty file.
Dataset load_binary_csv(const std::string& path, const LoadOptions& options = {});
Dataset read_binary_csv(std::istream& in, const LoadOptions& options = {});

// Raw delimited records encoded column by column through the schema.
// Throws DataError with the position of any unknown level or bad cell.
Dataset load_categorical_csv(const std::string& path, const FeatureSchema& schema,
                             const LoadOptions& options = {});
Dataset read_categorical_csv(std::istream& in, const FeatureSchema& schema,
                             const LoadOptions& options = {});

// Normalized binary CSV: a header row when the dataset has feature names, one
// row of 0/1 cells per point, and a trailing label column when truth exists.
void write_binary_csv(const Dataset& data, std::ostream& out, char delimiter = ',');
void write_binary_csv(const Dataset& data, const std::string& path, char delimiter = ',');

struct ClassCount {
  std::string name;
  std::size_t count = 0;
  double proportion = 0.0;
};

struct DatasetSummary {
  std::string name;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t num_classes = 0;
  std::vector<ClassCount> class_histogram;  // in class id order
  std::size_t missing_cells = 0;
  std::size_t distinct_points = 0;
};

DatasetSummary dataset_summary(const Dataset& data);

// Splits one record. ' ' as delimiter means runs of whitespace.
std::vector<std::string> split_record(const std::string& line, char delimiter);

}  // namespace binnms
