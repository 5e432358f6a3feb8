#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "binnms/binary_vector.hpp"

namespace binnms {

// How one source column contributes to the encoded binary vector.
//   binary      - cell is "0" or "1", one bit
//   categorical - cell is one of `values`, coded into values.size() bits
//   threshold   - numeric cell, one bit set when value >= cutoff
//   ignore      - column is skipped (e.g. an identifier)
//   label       - ground-truth class column, not encoded
enum class FeatureKind { binary, categorical, threshold, ignore, label };

struct Feature {
  std::string name;
  FeatureKind kind = FeatureKind::binary;
  Coding coding = Coding::disjunctive;
  std::vector<std::string> values;  // categorical: token for level 1, 2, ...
  double cutoff = 1.0;              // threshold only

  // Encoded width: 1 for binary/threshold, levels for categorical, else 0.
  std::size_t width() const noexcept;
  int levels() const noexcept { return static_cast<int>(values.size()); }
  // 1-based level for a cell token, or nullopt when unknown.
  std::optional<int> level_of(const std::string& token) const;
};

// Column layout of a delimited source file and its binary coding.
struct FeatureSchema {
  std::string name;
  std::vector<Feature> columns;  // in file order, including ignore/label columns
  char delimiter = ',';          // ' ' means any run of whitespace
  bool header = false;
  std::string missing_token = "?";

  std::size_t encoded_dim() const noexcept;
  // Encoded offset of each column (meaningless for zero-width columns).
  std::vector<std::size_t> offsets() const;
  // Index of the label column, if the schema declares one.
  std::optional<std::size_t> label_column() const;
  // Throws std::invalid_argument when the schema is inconsistent.
  void validate() const;
};

// Reads the declarative schema text format:
//
//   name zoo
//   delimiter ,            (or "whitespace" / "tab")
//   header no
//   missing ?
//   column hair binary
//   column legs categorical disjunctive 0 2 4 5 6 8
//   column pix[240] threshold 1
//   column animal ignore
//   column type label
//
// `name[N]` expands to N columns name0 .. name{N-1}. '#' starts a comment.
FeatureSchema parse_schema(std::istream& in);
FeatureSchema load_schema(const std::string& path);

struct DecodedFeature {
  std::string name;
  std::string value;  // level token, "0"/"1" for binary-width columns
  bool exact = true;
};

// Symbolic reading of an encoded vector, one entry per encoded column.
std::vector<DecodedFeature> decode_point(const FeatureSchema& schema, const BinaryVector& v);

}  // namespace binnms
