#include "fairlens/synth.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fairlens/rng.hpp"

namespace fairlens {

namespace {

SidePredicate equals(const std::string& v) {
  SidePredicate p;
  p.op = "equals";
  p.values.push_back(v);
  return p;
}

SidePredicate numeric_pred(const std::string& op, double threshold) {
  SidePredicate p;
  p.op = op;
  p.threshold = threshold;
  return p;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

SyntheticCase builtin_case(const std::string& name) {
  SyntheticCase c;
  c.name = name;
  if (name == "adult") {
    // income prediction; sex (0=Female) and race (0=Nonwhite)
    c.rows = 48842;
    c.base_logodds = -2.6;
    c.positive_label = ">50K";
    c.negative_label = "<=50K";
    SyntheticAttribute sex{.column = "sex", .raw0 = "Female", .raw1 = "Male",
                           .p_side1 = 0.67, .logodds_side1 = 1.3,
                           .side1 = equals("Male"), .name0 = "Female", .name1 = "Male"};
    SyntheticAttribute race{.column = "race", .raw0 = "Nonwhite", .raw1 = "White",
                            .p_side1 = 0.86, .logodds_side1 = 0.55,
                            .side1 = equals("White"), .name0 = "Nonwhite", .name1 = "White"};
    c.attributes = {sex, race};
    // Damp the label-rate gaps inside the off-diagonal groups. Injection
    // promotes/demotes a fixed fraction of a side's cells, so when the two
    // cells of the favored side have very different class ratios the
    // corruption is asymmetric across the *other* attribute and shows up
    // there as spurious unfairness.
    c.group_shifts = {{0b01, -1.1},   // sex=Male, race=Nonwhite
                      {0b10, -0.3}};  // sex=Female, race=White
  } else if (name == "compas") {
    // recidivism; sex (0=Male) and race (0=Not Caucasian)
    c.rows = 7214;
    c.base_logodds = 0.1;
    c.positive_label = "Reoffended";
    c.negative_label = "No";
    SyntheticAttribute sex{.column = "sex", .raw0 = "Male", .raw1 = "Female",
                           .p_side1 = 0.19, .logodds_side1 = -0.55,
                           .side1 = equals("Female"), .name0 = "Male", .name1 = "Female"};
    SyntheticAttribute race{.column = "race", .raw0 = "Not Caucasian", .raw1 = "Caucasian",
                            .p_side1 = 0.34, .logodds_side1 = -0.35,
                            .side1 = equals("Caucasian"), .name0 = "Non-Caucasian",
                            .name1 = "Caucasian"};
    c.attributes = {sex, race};
  } else if (name == "bank") {
    // term deposit subscription; age bucket (0 = age <= 25)
    c.rows = 41188;
    c.base_logodds = -1.1;
    c.positive_label = "yes";
    c.negative_label = "no";
    SyntheticAttribute age{.column = "age", .numeric = true,
                           .num_lo0 = 18, .num_hi0 = 25, .num_lo1 = 26, .num_hi1 = 95,
                           .p_side1 = 0.96, .logodds_side1 = -1.1,
                           .side1 = numeric_pred("gt", 25), .name0 = "Young", .name1 = "Old"};
    c.attributes = {age};
  } else if (name == "heart") {
    // heart disease; age bucket (0 = age < 60)
    c.rows = 297;
    c.base_logodds = -0.5;
    c.positive_label = "disease";
    c.negative_label = "healthy";
    SyntheticAttribute age{.column = "age", .numeric = true,
                           .num_lo0 = 29, .num_hi0 = 59, .num_lo1 = 60, .num_hi1 = 77,
                           .p_side1 = 0.33, .logodds_side1 = 0.9,
                           .side1 = numeric_pred("ge", 60), .name0 = "Young", .name1 = "Old"};
    c.attributes = {age};
  } else {
    throw std::runtime_error("unknown built-in case: " + name);
  }
  return c;
}

std::vector<std::string> builtin_case_names() { return {"adult", "compas", "bank", "heart"}; }

SyntheticData generate(const SyntheticCase& spec, std::uint64_t seed) {
  Rng rng(seed);
  SyntheticData out;

  out.table.header.push_back(spec.label_column);
  for (const auto& a : spec.attributes) out.table.header.push_back(a.column);
  for (int f = 0; f < spec.numeric_features; ++f) {
    out.table.header.push_back("x" + std::to_string(f + 1));
  }
  out.table.header.push_back("segment");
  if (spec.group_column) out.table.header.push_back("stratum");

  // per-feature signal strengths, fixed pattern so features are not identical
  std::vector<double> mu(static_cast<std::size_t>(spec.numeric_features));
  for (int f = 0; f < spec.numeric_features; ++f) {
    mu[static_cast<std::size_t>(f)] = spec.signal * (0.6 + 0.15 * (f % 4));
  }
  static const char* kSegments[3] = {"s1", "s2", "s3"};

  out.table.rows.reserve(spec.rows);
  for (std::size_t r = 0; r < spec.rows; ++r) {
    std::vector<int> sides;
    double logodds = spec.base_logodds;
    std::uint32_t mask = 0;
    for (std::size_t a = 0; a < spec.attributes.size(); ++a) {
      int side = rng.bernoulli(spec.attributes[a].p_side1) ? 1 : 0;
      sides.push_back(side);
      if (side) {
        logodds += spec.attributes[a].logodds_side1;
        mask |= 1u << a;
      }
    }
    for (const auto& [group, shift] : spec.group_shifts) {
      if (group == mask) logodds += shift;
    }
    double p = 1.0 / (1.0 + std::exp(-logodds));
    int y = rng.bernoulli(p) ? 1 : 0;

    std::vector<std::string> row;
    row.push_back(y ? spec.positive_label : spec.negative_label);
    for (std::size_t a = 0; a < spec.attributes.size(); ++a) {
      const auto& attr = spec.attributes[a];
      if (attr.numeric) {
        double lo = sides[a] ? attr.num_lo1 : attr.num_lo0;
        double hi = sides[a] ? attr.num_hi1 : attr.num_hi0;
        row.push_back(format_double(std::floor(lo + rng.uniform() * (hi - lo + 1.0))));
      } else {
        row.push_back(sides[a] ? attr.raw1 : attr.raw0);
      }
    }
    for (int f = 0; f < spec.numeric_features; ++f) {
      double x = rng.normal() + (y ? mu[static_cast<std::size_t>(f)] : 0.0);
      row.push_back(format_double(x));
    }
    // weakly informative categorical
    double u = rng.uniform();
    int level = y ? (u < 0.5 ? 0 : (u < 0.8 ? 1 : 2)) : (u < 0.2 ? 0 : (u < 0.5 ? 1 : 2));
    row.push_back(kSegments[level]);
    if (spec.group_column) row.push_back("g" + std::to_string(mask));
    out.table.rows.push_back(std::move(row));
  }

  out.schema.label_column = spec.label_column;
  out.schema.positive_label = spec.positive_label;
  for (const auto& a : spec.attributes) {
    out.schema.sensitive.push_back({a.column, a.side1, a.name0, a.name1});
  }
  for (int f = 0; f < spec.numeric_features; ++f) {
    out.schema.features.push_back({"x" + std::to_string(f + 1), FeatureKind::Numeric});
  }
  out.schema.features.push_back({"segment", FeatureKind::Categorical});
  if (spec.group_column) out.schema.features.push_back({"stratum", FeatureKind::Categorical});
  out.schema.include_sensitive_as_features = true;
  return out;
}

}  // namespace fairlens
