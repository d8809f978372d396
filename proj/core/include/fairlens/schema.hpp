#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace fairlens {

// Predicate over a raw CSV value. `op` is one of:
//   equals, in  (string comparison)
//   lt, le, gt, ge  (numeric comparison against `threshold`)
// A row is assigned side 1 when the predicate holds, side 0 otherwise.
struct SidePredicate {
  std::string op;
  std::vector<std::string> values;  // for equals/in
  double threshold = 0.0;           // for lt/le/gt/ge

  bool evaluate(const std::string& raw) const;
};

struct SensitiveSpec {
  std::string column;
  SidePredicate side1;
  std::string name0;  // display name for A=0
  std::string name1;  // display name for A=1
};

enum class FeatureKind { Numeric, Categorical };

struct FeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::Numeric;
};

struct DatasetSchema {
  std::string label_column;
  std::string positive_label;
  std::vector<SensitiveSpec> sensitive;
  std::vector<FeatureSpec> features;
  bool include_sensitive_as_features = true;

  std::size_t attribute_index(const std::string& display_or_column) const;
};

DatasetSchema schema_from_json(const nlohmann::json& j);
nlohmann::json schema_to_json(const DatasetSchema& schema);
DatasetSchema load_schema(const std::string& path);

}  // namespace fairlens
