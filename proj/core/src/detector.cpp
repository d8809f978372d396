#include "fairlens/detector.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fairlens {

std::string to_string(FairnessStatus status) {
  switch (status) {
    case FairnessStatus::Fair: return "fair";
    case FairnessStatus::Unfair: return "unfair";
    case FairnessStatus::Indeterminate: return "indeterminate";
  }
  return "?";
}

bool Verdict::any_unfair() const {
  for (const auto& a : attributes) {
    if (a.status == FairnessStatus::Unfair) return true;
  }
  return false;
}

Verdict assess(const FairnessReport& report, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  Verdict verdict;
  verdict.epsilon = epsilon;
  for (const auto& m : report.attributes) {
    AttributeVerdict v;
    v.attribute = m.name;
    if (!m.eod || !m.aod) {
      v.status = FairnessStatus::Indeterminate;
      v.note = m.undefined_reason;
      verdict.attributes.push_back(std::move(v));
      continue;
    }
    double e = *m.eod;
    double a = *m.aod;
    v.magnitude = std::max(std::abs(e), std::abs(a));
    if (v.magnitude >= epsilon) {
      v.status = FairnessStatus::Unfair;
      double dominant = std::abs(e) >= std::abs(a) ? e : a;
      v.direction = dominant > 0.0 ? 1 : 0;
      if (e * a < 0.0) {
        v.ambiguous = true;
        v.note = "eod and aod disagree in sign; direction follows the larger magnitude";
      }
    }
    verdict.attributes.push_back(std::move(v));
  }
  return verdict;
}

nlohmann::json verdict_to_json(const Verdict& verdict) {
  nlohmann::json j;
  j["epsilon"] = verdict.epsilon;
  j["attributes"] = nlohmann::json::array();
  for (const auto& v : verdict.attributes) {
    nlohmann::json a;
    a["attribute"] = v.attribute;
    a["status"] = to_string(v.status);
    a["magnitude"] = v.magnitude;
    if (v.status == FairnessStatus::Unfair) {
      a["favored_side"] = v.direction;
      a["ambiguous"] = v.ambiguous;
    }
    if (!v.note.empty()) a["note"] = v.note;
    j["attributes"].push_back(std::move(a));
  }
  return j;
}

std::string render_verdict(const Verdict& verdict) {
  std::ostringstream out;
  for (const auto& v : verdict.attributes) {
    out << v.attribute << ": " << to_string(v.status);
    if (v.status == FairnessStatus::Unfair) {
      out << " (favors side " << v.direction << ", magnitude " << v.magnitude << ", epsilon "
          << verdict.epsilon << ")";
      if (v.ambiguous) out << " [ambiguous direction]";
    } else if (v.status == FairnessStatus::Indeterminate) {
      out << " (" << v.note << ")";
    } else {
      out << " (magnitude " << v.magnitude << " < epsilon " << verdict.epsilon << ")";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace fairlens
