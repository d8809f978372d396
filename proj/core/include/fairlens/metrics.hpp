#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json_fwd.hpp>

namespace fairlens {

// A rate with an empty denominator. Silently returning 0 would fake
// fairness, so this is always an error.
class UndefinedMetricError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SideCounts {
  long tp = 0, fp = 0, tn = 0, fn = 0;
  long total() const { return tp + fp + tn + fn; }
};

// Confusion counts split by one binary sensitive attribute.
struct GroupedConfusion {
  SideCounts side0;
  SideCounts side1;
};

GroupedConfusion grouped_confusion(const Eigen::VectorXi& y_true, const Eigen::VectorXi& y_pred,
                                   const Eigen::VectorXi& attribute);

double tpr(const SideCounts& counts);
double fpr(const SideCounts& counts);

// Sign convention throughout: side 1 minus side 0.
double eod(const GroupedConfusion& gc);
double aod(const GroupedConfusion& gc);
double spd(const Eigen::VectorXi& y_pred, const Eigen::VectorXi& attribute);

double accuracy(const Eigen::VectorXi& y_true, const Eigen::VectorXi& y_pred);
double f1(const Eigen::VectorXi& y_true, const Eigen::VectorXi& y_pred);

struct AttributeMetrics {
  std::string name;
  std::optional<double> eod;
  std::optional<double> aod;
  std::optional<double> spd;
  std::string undefined_reason;  // set when any metric is missing
};

struct FairnessReport {
  std::vector<AttributeMetrics> attributes;
  double accuracy = 0.0;
  double f1 = 0.0;
};

// Undefined per-attribute rates leave that attribute's metrics empty with a
// reason instead of failing the whole report.
FairnessReport evaluate(const Eigen::VectorXi& y_true, const Eigen::VectorXi& y_pred,
                        const Eigen::MatrixXi& sensitive,
                        const std::vector<std::string>& attribute_names);

// Full precision values plus the x100-rounded presentation used in reports.
nlohmann::json report_to_json(const FairnessReport& report);

// round(100 * value), halves away from zero
long presentation_value(double value);

}  // namespace fairlens
