#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairlens/csv.hpp"
#include "fairlens/schema.hpp"

namespace fairlens {

// Seeded generator for tabular case-study stand-ins. Each case pins the
// sensitive-attribute marginals and the per-group label rates of a named
// benchmark; features are informative of the label and conditionally
// independent of the sensitive attributes given the label.
struct SyntheticAttribute {
  std::string column;
  bool numeric = false;       // raw value is a number (e.g. age)
  std::string raw0, raw1;     // categorical raw values
  double num_lo0 = 0, num_hi0 = 0, num_lo1 = 0, num_hi1 = 0;  // numeric ranges per side
  double p_side1 = 0.5;       // marginal P(A=1)
  double logodds_side1 = 0.0; // label log-odds shift for side 1
  SidePredicate side1;
  std::string name0, name1;
};

struct SyntheticCase {
  std::string name;
  std::size_t rows = 0;
  double base_logodds = 0.0;  // label log-odds for the all-side-0 group
  std::vector<SyntheticAttribute> attributes;
  // extra log-odds for specific joint assignments; .first is a bitmask with
  // bit a set when attribute a is on side 1
  std::vector<std::pair<std::uint32_t, double>> group_shifts;
  // emit a categorical column crossing all sensitive attributes, so linear
  // models can express per-group effects
  bool group_column = false;
  int numeric_features = 6;
  double signal = 1.0;        // mean shift of numeric features for positives
  std::string label_column = "label";
  std::string positive_label, negative_label;
};

// Built-in cases: "adult", "compas", "bank", "heart".
SyntheticCase builtin_case(const std::string& name);
std::vector<std::string> builtin_case_names();

struct SyntheticData {
  RawTable table;
  DatasetSchema schema;
};

SyntheticData generate(const SyntheticCase& spec, std::uint64_t seed);

}  // namespace fairlens
