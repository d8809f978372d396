#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fairlens/metrics.hpp"

namespace fairlens {

enum class FairnessStatus { Fair, Unfair, Indeterminate };

std::string to_string(FairnessStatus status);

struct AttributeVerdict {
  std::string attribute;
  FairnessStatus status = FairnessStatus::Fair;
  int direction = -1;        // favored side, defined only when unfair
  double magnitude = 0.0;    // max(|eod|, |aod|)
  bool ambiguous = false;    // eod and aod disagree in sign while unfair
  std::string note;
};

struct Verdict {
  double epsilon = 0.05;
  std::vector<AttributeVerdict> attributes;

  bool any_unfair() const;
};

// Unfair iff |eod| >= epsilon or |aod| >= epsilon; direction follows the
// sign of the larger-magnitude metric (positive = side 1 favored).
Verdict assess(const FairnessReport& report, double epsilon = 0.05);

nlohmann::json verdict_to_json(const Verdict& verdict);
std::string render_verdict(const Verdict& verdict);

}  // namespace fairlens
