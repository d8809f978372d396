#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "fairlens/csv.hpp"
#include "fairlens/schema.hpp"

namespace fairlens {

// Joint assignment of all binary sensitive attributes, packed as a bitmask:
// bit i is the value of attribute i.
using GroupKey = std::uint32_t;

std::string group_key_to_string(GroupKey key, const DatasetSchema& schema);

// Fully encoded dataset split: dense features, binary sensitive columns,
// binary labels. Immutable after construction by convention.
struct DatasetTable {
  Eigen::MatrixXd features;                       // rows x encoded features
  Eigen::MatrixXi sensitive;                      // rows x attributes, entries in {0,1}
  Eigen::VectorXi labels;                         // entries in {0,1}
  std::vector<std::string> feature_names;         // encoded column names
  std::vector<bool> standardizable;               // raw numeric columns, subject to z-scoring
  std::vector<std::string> sensitive_names;       // attribute column names

  Eigen::Index rows() const { return labels.size(); }
  Eigen::Index attribute_count() const { return sensitive.cols(); }

  GroupKey group_of(Eigen::Index row) const;
  DatasetTable subset(const std::vector<Eigen::Index>& indices) const;
};

struct EncodeStats {
  std::size_t dropped_rows = 0;          // rows with missing values in used columns
  std::vector<std::size_t> kept_rows;    // raw row index per encoded row
};

// One-hot levels are fitted on the full raw table so later splits share an
// encoding. Rows with empty or "?" fields in any used column are dropped.
DatasetTable encode(const RawTable& raw, const DatasetSchema& schema, EncodeStats* stats = nullptr);

std::pair<DatasetTable, DatasetTable> split(const DatasetTable& data, double train_fraction,
                                            std::uint64_t seed);

struct StandardizeStats {
  std::vector<double> mean;  // per encoded column; 0 for untouched columns
  std::vector<double> scale; // 1 for untouched or zero-variance columns
};

// Z-scores standardizable columns using train statistics; test gets the same
// transform. Zero-variance train columns are centered only.
StandardizeStats standardize(DatasetTable& train, DatasetTable& test);

std::map<GroupKey, std::vector<Eigen::Index>> partition_groups(const DatasetTable& data);

}  // namespace fairlens
