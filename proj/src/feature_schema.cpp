#include "binnms/feature_schema.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "binnms/errors.hpp"

namespace binnms {

std::size_t Feature::width() const noexcept {
  switch (kind) {
    case FeatureKind::binary:
    case FeatureKind::threshold:
      return 1;
    case FeatureKind::categorical:
      return values.size();
    case FeatureKind::ignore:
    case FeatureKind::label:
      return 0;
  }
  return 0;
}

std::optional<int> Feature::level_of(const std::string& token) const {
  const auto it = std::find(values.begin(), values.end(), token);
  if (it == values.end()) return std::nullopt;
  return static_cast<int>(it - values.begin()) + 1;
}

std::size_t FeatureSchema::encoded_dim() const noexcept {
  std::size_t d = 0;
  for (const auto& f : columns) d += f.width();
  return d;
}

std::vector<std::size_t> FeatureSchema::offsets() const {
  std::vector<std::size_t> out;
  out.reserve(columns.size());
  std::size_t at = 0;
  for (const auto& f : columns) {
    out.push_back(at);
    at += f.width();
  }
  return out;
}

std::optional<std::size_t> FeatureSchema::label_column() const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].kind == FeatureKind::label) return c;
  }
  return std::nullopt;
}

void FeatureSchema::validate() const {
  std::size_t labels = 0;
  std::unordered_set<std::string> names;
  for (const auto& f : columns) {
    if (!names.insert(f.name).second) {
      throw std::invalid_argument("duplicate column name '" + f.name + "'");
    }
    if (f.kind == FeatureKind::label) ++labels;
    if (f.kind == FeatureKind::categorical) {
      if (f.values.empty()) {
        throw std::invalid_argument("categorical column '" + f.name + "' has no levels");
      }
      std::unordered_set<std::string> seen(f.values.begin(), f.values.end());
      if (seen.size() != f.values.size()) {
        throw std::invalid_argument("categorical column '" + f.name + "' repeats a level");
      }
    }
  }
  if (labels > 1) throw std::invalid_argument("schema declares more than one label column");
  if (encoded_dim() == 0) throw std::invalid_argument("schema encodes no features");
}

namespace {

FeatureKind parse_kind(const std::string& s, std::size_t line) {
  if (s == "binary") return FeatureKind::binary;
  if (s == "categorical") return FeatureKind::categorical;
  if (s == "threshold") return FeatureKind::threshold;
  if (s == "ignore") return FeatureKind::ignore;
  if (s == "label") return FeatureKind::label;
  throw DataError("unknown column kind '" + s + "' in schema", line);
}

bool parse_yes_no(const std::string& s, std::size_t line) {
  if (s == "yes" || s == "true" || s == "1") return true;
  if (s == "no" || s == "false" || s == "0") return false;
  throw DataError("expected yes/no in schema, got '" + s + "'", line);
}

}  // namespace

FeatureSchema parse_schema(std::istream& in) {
  FeatureSchema schema;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream line(raw);
    std::string key;
    if (!(line >> key)) continue;

    if (key == "name") {
      line >> schema.name;
    } else if (key == "delimiter") {
      std::string d;
      if (!(line >> d)) throw DataError("delimiter needs a value", line_no);
      if (d == "whitespace" || d == "space") {
        schema.delimiter = ' ';
      } else if (d == "tab") {
        schema.delimiter = '\t';
      } else if (d.size() == 1) {
        schema.delimiter = d[0];
      } else {
        throw DataError("delimiter must be one character, 'tab' or 'whitespace'", line_no);
      }
    } else if (key == "header") {
      std::string v;
      line >> v;
      schema.header = parse_yes_no(v, line_no);
    } else if (key == "missing") {
      if (!(line >> schema.missing_token)) throw DataError("missing needs a token", line_no);
    } else if (key == "column") {
      std::string name, kind;
      if (!(line >> name >> kind)) throw DataError("column needs a name and a kind", line_no);
      Feature f;
      f.kind = parse_kind(kind, line_no);
      if (f.kind == FeatureKind::categorical) {
        std::string coding;
        line >> coding;
        if (coding == "additive") {
          f.coding = Coding::additive;
        } else if (coding == "disjunctive") {
          f.coding = Coding::disjunctive;
        } else {
          throw DataError("coding must be additive or disjunctive", line_no);
        }
        for (std::string v; line >> v;) f.values.push_back(v);
        if (f.values.empty()) throw DataError("categorical column lists no levels", line_no);
      } else if (f.kind == FeatureKind::threshold) {
        if (!(line >> f.cutoff)) throw DataError("threshold column needs a cutoff", line_no);
      }

      std::size_t repeat = 0;
      if (const auto lb = name.find('['); lb != std::string::npos) {
        const auto rb = name.find(']', lb);
        if (rb == std::string::npos || rb != name.size() - 1) {
          throw DataError("malformed repeated column name '" + name + "'", line_no);
        }
        try {
          repeat = std::stoul(name.substr(lb + 1, rb - lb - 1));
        } catch (const std::exception&) {
          throw DataError("malformed repeat count in '" + name + "'", line_no);
        }
        if (repeat == 0) throw DataError("repeat count must be positive", line_no);
        name.erase(lb);
      }
      if (repeat == 0) {
        f.name = name;
        schema.columns.push_back(std::move(f));
      } else {
        for (std::size_t r = 0; r < repeat; ++r) {
          Feature copy = f;
          copy.name = name + std::to_string(r);
          schema.columns.push_back(std::move(copy));
        }
      }
    } else {
      throw DataError("unknown schema directive '" + key + "'", line_no);
    }
  }
  try {
    schema.validate();
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("invalid schema: ") + e.what());
  }
  return schema;
}

FeatureSchema load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open schema file '" + path + "'");
  return parse_schema(in);
}

std::vector<DecodedFeature> decode_point(const FeatureSchema& schema, const BinaryVector& v) {
  if (v.dim() != schema.encoded_dim()) throw DimensionMismatch(schema.encoded_dim(), v.dim());
  std::vector<DecodedFeature> out;
  std::size_t at = 0;
  for (const auto& f : schema.columns) {
    const std::size_t w = f.width();
    if (w == 0) continue;
    if (f.kind == FeatureKind::categorical) {
      const auto dec = decode_categorical(v.slice(at, w), f.levels(), f.coding);
      out.push_back({f.name, f.values[static_cast<std::size_t>(dec.level - 1)], dec.exact});
    } else {
      out.push_back({f.name, v[at] ? "1" : "0", true});
    }
    at += w;
  }
  return out;
}

}  // namespace binnms
