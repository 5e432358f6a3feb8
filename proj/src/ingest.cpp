#include "binnms/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "binnms/errors.hpp"

namespace binnms {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool blank(const std::string& line) { return trim(line).empty(); }

// Assigns dense class ids in order of first appearance.
class LabelTable {
 public:
  int id(const std::string& name) {
    auto [it, inserted] = ids_.try_emplace(name, static_cast<int>(names_.size()));
    if (inserted) names_.push_back(name);
    return it->second;
  }
  std::vector<std::string> names() && { return std::move(names_); }

 private:
  std::unordered_map<std::string, int> ids_;
  std::vector<std::string> names_;
};

// Resolves a label column against a header (names) or as an index.
std::optional<std::size_t> resolve_label(const std::optional<std::string>& column,
                                         const std::vector<std::string>& names) {
  if (!column || *column == "none") return std::nullopt;
  for (std::size_t c = 0; c < names.size(); ++c) {
    if (names[c] == *column) return c;
  }
  std::size_t idx = 0;
  const auto* end = column->data() + column->size();
  if (auto [p, ec] = std::from_chars(column->data(), end, idx); ec == std::errc() && p == end) {
    return idx;
  }
  throw DataError("label column '" + *column + "' not found");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path + "'");
  return in;
}

std::string stem_of(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  if (const auto dot = base.find('.'); dot != std::string::npos && dot > 0) base.erase(dot);
  return base;
}

}  // namespace

std::vector<std::string> split_record(const std::string& line, char delimiter) {
  std::vector<std::string> out;
  if (delimiter == ' ') {
    std::istringstream ss(line);
    for (std::string tok; ss >> tok;) out.push_back(tok);
    return out;
  }
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, delimiter)) out.push_back(trim(cell));
  if (!line.empty() && line.back() == delimiter) out.emplace_back();
  return out;
}

Dataset read_binary_csv(std::istream& in, const LoadOptions& options) {
  const char delim = options.delimiter.value_or(',');
  const bool header = options.header.value_or(false);

  std::vector<std::string> names;
  std::vector<BinaryVector> points;
  std::vector<int> truth;
  LabelTable classes;
  std::optional<std::size_t> label_col;
  std::size_t width = 0;
  std::size_t row = 0;
  bool seen_first = false;

  for (std::string line; std::getline(in, line);) {
    ++row;
    if (blank(line)) continue;
    auto cells = split_record(line, delim);
    if (!seen_first) {
      seen_first = true;
      width = cells.size();
      if (header) {
        names = cells;
        label_col = resolve_label(options.label_column, names);
        if (label_col && *label_col >= width) throw DataError("label column out of range", row);
        continue;
      }
      label_col = resolve_label(options.label_column, names);
      if (label_col && *label_col >= width) throw DataError("label column out of range", row);
    }
    if (cells.size() != width) {
      throw DataError("ragged row: expected " + std::to_string(width) + " cells, found " +
                          std::to_string(cells.size()),
                      row);
    }
    const std::size_t dim = width - (label_col ? 1 : 0);
    if (dim == 0) throw DataError("no feature columns", row);
    BitWriter w(dim);
    std::size_t j = 0;
    for (std::size_t c = 0; c < width; ++c) {
      if (label_col && c == *label_col) {
        truth.push_back(classes.id(cells[c]));
        continue;
      }
      if (cells[c] == "1") {
        w.set(j);
      } else if (cells[c] != "0") {
        throw DataError("non-binary cell '" + cells[c] + "'", row, c + 1);
      }
      ++j;
    }
    points.push_back(std::move(w).build());
  }
  if (points.empty()) throw DataError("no data rows");

  DatasetInit init;
  init.points = std::move(points);
  if (label_col) {
    init.truth_labels = std::move(truth);
    init.class_names = std::move(classes).names();
  }
  if (!names.empty()) {
    for (std::size_t c = 0; c < names.size(); ++c) {
      if (!label_col || c != *label_col) init.feature_names.push_back(names[c]);
    }
  }
  init.name = options.name;
  return Dataset(std::move(init));
}

Dataset load_binary_csv(const std::string& path, const LoadOptions& options) {
  auto in = open_input(path);
  LoadOptions opts = options;
  if (opts.name.empty()) opts.name = stem_of(path);
  return read_binary_csv(in, opts);
}

Dataset read_categorical_csv(std::istream& in, const FeatureSchema& schema_in,
                             const LoadOptions& options) {
  schema_in.validate();
  FeatureSchema schema = schema_in;
  if (options.threshold) {
    for (auto& f : schema.columns) {
      if (f.kind == FeatureKind::threshold) f.cutoff = *options.threshold;
    }
  }
  const char delim = options.delimiter.value_or(schema.delimiter);
  const bool header = options.header.value_or(schema.header);

  // Which schema columns are physically present, and which column is the label.
  std::vector<std::size_t> layout;
  const std::size_t none = schema.columns.size();
  std::size_t label_col = schema.label_column().value_or(none);
  const bool no_label = options.label_column && *options.label_column == "none";
  for (std::size_t c = 0; c < schema.columns.size(); ++c) {
    if (no_label && schema.columns[c].kind == FeatureKind::label) continue;
    layout.push_back(c);
  }
  if (no_label) label_col = none;
  if (options.label_column && !no_label) {
    std::vector<std::string> names;
    for (std::size_t c : layout) names.push_back(schema.columns[c].name);
    const auto pos = resolve_label(options.label_column, names);
    if (*pos >= layout.size()) throw DataError("label column out of range");
    if (schema.columns[layout[*pos]].width() != 0 &&
        schema.columns[layout[*pos]].kind != FeatureKind::label) {
      // Promote a feature column to the label; it no longer contributes bits.
      schema.columns[layout[*pos]].kind = FeatureKind::label;
      if (label_col != none) schema.columns[label_col].kind = FeatureKind::ignore;
    }
    label_col = layout[*pos];
  }

  const std::size_t dim = schema.encoded_dim();
  if (dim == 0) throw DataError("schema encodes no features");
  const auto offsets = schema.offsets();

  std::vector<BinaryVector> points;
  std::vector<int> truth;
  LabelTable classes;
  std::size_t missing = 0;
  std::size_t row = 0;
  bool skipped_header = !header;

  for (std::string line; std::getline(in, line);) {
    ++row;
    if (blank(line)) continue;
    if (!skipped_header) {
      skipped_header = true;
      continue;
    }
    const auto cells = split_record(line, delim);
    if (cells.size() != layout.size()) {
      throw DataError("ragged row: expected " + std::to_string(layout.size()) +
                          " cells, found " + std::to_string(cells.size()),
                      row);
    }
    BitWriter w(dim);
    for (std::size_t pos = 0; pos < layout.size(); ++pos) {
      const std::size_t c = layout[pos];
      const Feature& f = schema.columns[c];
      const std::string& cell = cells[pos];
      const std::size_t col = pos + 1;
      switch (f.kind) {
        case FeatureKind::ignore:
          break;
        case FeatureKind::label:
          if (c == label_col) truth.push_back(classes.id(cell));
          break;
        case FeatureKind::binary:
          if (cell == "1") {
            w.set(offsets[c]);
          } else if (cell != "0") {
            throw DataError("non-binary cell '" + cell + "' in column '" + f.name + "'", row, col);
          }
          break;
        case FeatureKind::threshold: {
          double v = 0.0;
          const auto* end = cell.data() + cell.size();
          auto [p, ec] = std::from_chars(cell.data(), end, v);
          if (ec != std::errc() || p != end) {
            throw DataError("non-numeric cell '" + cell + "' in column '" + f.name + "'", row,
                            col);
          }
          if (v >= f.cutoff) w.set(offsets[c]);
          break;
        }
        case FeatureKind::categorical: {
          if (cell == schema.missing_token) {
            // Missing values stay an all-zero block.
            ++missing;
            if (f.coding == Coding::additive) {
              throw DataError("missing value in additive column '" + f.name + "'", row, col);
            }
            break;
          }
          const auto level = f.level_of(cell);
          if (!level) {
            throw DataError("unknown level '" + cell + "' in column '" + f.name + "'", row, col);
          }
          w.put(offsets[c], encode_categorical(*level, f.levels(), f.coding));
          break;
        }
      }
    }
    points.push_back(std::move(w).build());
  }
  if (points.empty()) throw DataError("no data rows");

  DatasetInit init;
  init.points = std::move(points);
  if (label_col != none) {
    init.truth_labels = std::move(truth);
    init.class_names = std::move(classes).names();
  }
  for (const auto& f : schema.columns) {
    if (f.kind == FeatureKind::categorical) {
      for (const auto& v : f.values) init.feature_names.push_back(f.name + "=" + v);
    } else if (f.width() == 1) {
      init.feature_names.push_back(f.name);
    }
  }
  init.missing_cells = missing;
  init.name = options.name.empty() ? schema.name : options.name;
  init.schema = std::move(schema);
  return Dataset(std::move(init));
}

Dataset load_categorical_csv(const std::string& path, const FeatureSchema& schema,
                             const LoadOptions& options) {
  auto in = open_input(path);
  LoadOptions opts = options;
  if (opts.name.empty() && schema.name.empty()) opts.name = stem_of(path);
  return read_categorical_csv(in, schema, opts);
}

void write_binary_csv(const Dataset& data, std::ostream& out, char delimiter) {
  const auto& truth = data.truth_labels();
  const auto& names = data.feature_names();
  if (!names.empty()) {
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (j) out << delimiter;
      out << names[j];
    }
    if (truth) out << delimiter << "class";
    out << '\n';
  }
  for (std::size_t i = 0; i < data.n(); ++i) {
    const auto& p = data[i];
    for (std::size_t j = 0; j < p.dim(); ++j) {
      if (j) out << delimiter;
      out << (p[j] ? '1' : '0');
    }
    if (truth) {
      const int t = (*truth)[i];
      out << delimiter;
      if (data.class_names().empty()) {
        out << t;
      } else {
        out << data.class_names()[static_cast<std::size_t>(t)];
      }
    }
    out << '\n';
  }
}

void write_binary_csv(const Dataset& data, const std::string& path, char delimiter) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path + "'");
  write_binary_csv(data, out, delimiter);
}

DatasetSummary dataset_summary(const Dataset& data) {
  DatasetSummary s;
  s.name = data.name();
  s.n = data.n();
  s.d = data.dim();
  s.missing_cells = data.missing_cells();
  std::unordered_set<BinaryVector, BinaryVectorHash> distinct(data.points().begin(),
                                                              data.points().end());
  s.distinct_points = distinct.size();
  if (const auto& truth = data.truth_labels()) {
    int max_id = -1;
    for (int t : *truth) max_id = std::max(max_id, t);
    std::vector<std::size_t> counts(static_cast<std::size_t>(max_id + 1), 0);
    for (int t : *truth) ++counts[static_cast<std::size_t>(t)];
    for (std::size_t c = 0; c < counts.size(); ++c) {
      ClassCount cc;
      cc.name = c < data.class_names().size() ? data.class_names()[c] : std::to_string(c);
      cc.count = counts[c];
      cc.proportion = static_cast<double>(counts[c]) / static_cast<double>(data.n());
      s.class_histogram.push_back(std::move(cc));
      if (counts[c] > 0) ++s.num_classes;
    }
  }
  return s;
}

}  // namespace binnms
