#include "fairlens/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "fairlens/rng.hpp"

namespace fairlens {

namespace {

bool is_missing(const std::string& field) { return field.empty() || field == "?"; }

double parse_numeric(const std::string& raw, const std::string& column, std::size_t row) {
  try {
    std::size_t pos = 0;
    double v = std::stod(raw, &pos);
    if (pos != raw.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("row " + std::to_string(row + 2) + ": column '" + column +
                             "' is not numeric: '" + raw + "'");
  }
}

}  // namespace

std::string group_key_to_string(GroupKey key, const DatasetSchema& schema) {
  std::string out = "{";
  for (std::size_t i = 0; i < schema.sensitive.size(); ++i) {
    if (i) out += ", ";
    const auto& s = schema.sensitive[i];
    out += (key >> i) & 1u ? s.name1 : s.name0;
  }
  out += "}";
  return out;
}

GroupKey DatasetTable::group_of(Eigen::Index row) const {
  GroupKey key = 0;
  for (Eigen::Index a = 0; a < sensitive.cols(); ++a) {
    if (sensitive(row, a)) key |= (GroupKey{1} << a);
  }
  return key;
}

DatasetTable DatasetTable::subset(const std::vector<Eigen::Index>& indices) const {
  DatasetTable out;
  out.feature_names = feature_names;
  out.standardizable = standardizable;
  out.sensitive_names = sensitive_names;
  out.features.resize(static_cast<Eigen::Index>(indices.size()), features.cols());
  out.sensitive.resize(static_cast<Eigen::Index>(indices.size()), sensitive.cols());
  out.labels.resize(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    auto r = static_cast<Eigen::Index>(i);
    out.features.row(r) = features.row(indices[i]);
    out.sensitive.row(r) = sensitive.row(indices[i]);
    out.labels(r) = labels(indices[i]);
  }
  return out;
}

DatasetTable encode(const RawTable& raw, const DatasetSchema& schema, EncodeStats* stats) {
  const std::size_t label_col = raw.column_index(schema.label_column);
  std::vector<std::size_t> sensitive_cols;
  for (const auto& s : schema.sensitive) sensitive_cols.push_back(raw.column_index(s.column));
  std::vector<std::size_t> feature_cols;
  for (const auto& f : schema.features) feature_cols.push_back(raw.column_index(f.name));

  // usable rows: a missing label is an error, missing feature/sensitive
  // values drop the row
  std::vector<std::size_t> kept;
  kept.reserve(raw.rows.size());
  for (std::size_t r = 0; r < raw.rows.size(); ++r) {
    const auto& row = raw.rows[r];
    if (is_missing(row[label_col])) {
      throw std::runtime_error("row " + std::to_string(r + 2) + ": missing label value");
    }
    bool drop = false;
    for (auto c : sensitive_cols) {
      if (is_missing(row[c])) drop = true;
    }
    for (auto c : feature_cols) {
      if (is_missing(row[c])) drop = true;
    }
    if (!drop) kept.push_back(r);
  }
  if (stats) {
    stats->dropped_rows = raw.rows.size() - kept.size();
    stats->kept_rows = kept;
  }

  // categorical levels fitted over all usable rows
  std::vector<std::vector<std::string>> levels(schema.features.size());
  for (std::size_t f = 0; f < schema.features.size(); ++f) {
    if (schema.features[f].kind != FeatureKind::Categorical) continue;
    std::set<std::string> seen;
    for (auto r : kept) seen.insert(raw.rows[r][feature_cols[f]]);
    levels[f].assign(seen.begin(), seen.end());
  }

  DatasetTable table;
  for (std::size_t f = 0; f < schema.features.size(); ++f) {
    if (schema.features[f].kind == FeatureKind::Numeric) {
      table.feature_names.push_back(schema.features[f].name);
      table.standardizable.push_back(true);
    } else {
      for (const auto& level : levels[f]) {
        table.feature_names.push_back(schema.features[f].name + "=" + level);
        table.standardizable.push_back(false);
      }
    }
  }
  if (schema.include_sensitive_as_features) {
    for (const auto& s : schema.sensitive) {
      table.feature_names.push_back(s.column + "=" + s.name1);
      table.standardizable.push_back(false);
    }
  }
  for (const auto& s : schema.sensitive) table.sensitive_names.push_back(s.column);

  const auto n = static_cast<Eigen::Index>(kept.size());
  table.features.setZero(n, static_cast<Eigen::Index>(table.feature_names.size()));
  table.sensitive.resize(n, static_cast<Eigen::Index>(schema.sensitive.size()));
  table.labels.resize(n);

  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = raw.rows[kept[static_cast<std::size_t>(i)]];
    const std::size_t src_row = kept[static_cast<std::size_t>(i)];
    Eigen::Index col = 0;
    for (std::size_t f = 0; f < schema.features.size(); ++f) {
      const std::string& value = row[feature_cols[f]];
      if (schema.features[f].kind == FeatureKind::Numeric) {
        table.features(i, col++) = parse_numeric(value, schema.features[f].name, src_row);
      } else {
        auto it = std::find(levels[f].begin(), levels[f].end(), value);
        if (it == levels[f].end()) {
          throw std::runtime_error("row " + std::to_string(src_row + 2) + ": unknown level '" +
                                   value + "' for column '" + schema.features[f].name + "'");
        }
        table.features(i, col + (it - levels[f].begin())) = 1.0;
        col += static_cast<Eigen::Index>(levels[f].size());
      }
    }
    for (std::size_t a = 0; a < schema.sensitive.size(); ++a) {
      int side = schema.sensitive[a].side1.evaluate(row[sensitive_cols[a]]) ? 1 : 0;
      table.sensitive(i, static_cast<Eigen::Index>(a)) = side;
      if (schema.include_sensitive_as_features) {
        table.features(i, col + static_cast<Eigen::Index>(a)) = side;
      }
    }
    table.labels(i) = row[label_col] == schema.positive_label ? 1 : 0;
  }
  return table;
}

std::pair<DatasetTable, DatasetTable> split(const DatasetTable& data, double train_fraction,
                                            std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train_fraction must lie in (0,1)");
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(data.rows()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Rng rng(seed);
  rng.shuffle(order);
  auto cut = static_cast<std::size_t>(train_fraction * static_cast<double>(data.rows()));
  std::vector<Eigen::Index> train_idx(order.begin(), order.begin() + static_cast<long>(cut));
  std::vector<Eigen::Index> test_idx(order.begin() + static_cast<long>(cut), order.end());
  return {data.subset(train_idx), data.subset(test_idx)};
}

StandardizeStats standardize(DatasetTable& train, DatasetTable& test) {
  StandardizeStats stats;
  const auto cols = train.features.cols();
  stats.mean.assign(static_cast<std::size_t>(cols), 0.0);
  stats.scale.assign(static_cast<std::size_t>(cols), 1.0);
  const double n = static_cast<double>(train.rows());
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (!train.standardizable[static_cast<std::size_t>(c)]) continue;
    double mean = train.features.col(c).mean();
    double var = (train.features.col(c).array() - mean).square().sum() / n;
    double scale = var > 0.0 ? std::sqrt(var) : 1.0;
    stats.mean[static_cast<std::size_t>(c)] = mean;
    stats.scale[static_cast<std::size_t>(c)] = scale;
    train.features.col(c) = (train.features.col(c).array() - mean) / scale;
    test.features.col(c) = (test.features.col(c).array() - mean) / scale;
  }
  return stats;
}

std::map<GroupKey, std::vector<Eigen::Index>> partition_groups(const DatasetTable& data) {
  std::map<GroupKey, std::vector<Eigen::Index>> groups;
  for (Eigen::Index r = 0; r < data.rows(); ++r) {
    groups[data.group_of(r)].push_back(r);
  }
  return groups;
}

}  // namespace fairlens
