#include "fairlens/metrics.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace fairlens {

GroupedConfusion grouped_confusion(const Eigen::VectorXi& y_true, const Eigen::VectorXi& y_pred,
                                   const Eigen::VectorXi& attribute) {
  if (y_true.size() != y_pred.size() || y_true.size() != attribute.size()) {
    throw std::invalid_argument("grouped_confusion: length mismatch");
  }
  GroupedConfusion gc;
  for (Eigen::Index i = 0; i < y_true.size(); ++i) {
    SideCounts& side = attribute(i) ? gc.side1 : gc.side0;
    if (y_true(i)) {
      y_pred(i) ? ++side.tp : ++side.fn;
    } else {
      y_pred(i) ? ++side.fp : ++side.tn;
    }
  }
  return gc;
}

double tpr(const SideCounts& counts) {
  if (counts.tp + counts.fn == 0) {
    throw UndefinedMetricError("TPR undefined: no actual positives on this side");
  }
  return static_cast<double>(counts.tp) / static_cast<double>(counts.tp + counts.fn);
}

double fpr(const SideCounts& counts) {
  if (counts.fp + counts.tn == 0) {
    throw UndefinedMetricError("FPR undefined: no actual negatives on this side");
  }
  return static_cast<double>(counts.fp) / static_cast<double>(counts.fp + counts.tn);
}

double eod(const GroupedConfusion& gc) { return tpr(gc.side1) - tpr(gc.side0); }

double aod(const GroupedConfusion& gc) {
  return 0.5 * ((fpr(gc.side1) - fpr(gc.side0)) + (tpr(gc.side1) - tpr(gc.side0)));
}

double spd(const Eigen::VectorXi& y_pred, const Eigen::VectorXi& attribute) {
  if (y_pred.size() != attribute.size()) throw std::invalid_argument("spd: length mismatch");
  long n1 = 0, pos1 = 0, n0 = 0, pos0 = 0;
  for (Eigen::Index i = 0; i < y_pred.size(); ++i) {
    if (attribute(i)) {
      ++n1;
      pos1 += y_pred(i);
    } else {
      ++n0;
      pos0 += y_pred(i);
    }
  }
  if (n0 == 0 || n1 == 0) throw UndefinedMetricError("SPD undefined: an attribute side is empty");
  return static_cast<double>(pos1) / static_cast<double>(n1) -
         static_cast<double>(pos0) / static_cast<double>(n0);
}

double accuracy(const Eigen::VectorXi& y_true, const Eigen::VectorXi& y_pred) {
  if (y_true.size() != y_pred.size()) throw std::invalid_argument("accuracy: length mismatch");
  if (y_true.size() == 0) throw std::invalid_argument("accuracy: empty input");
  long correct = 0;
  for (Eigen::Index i = 0; i < y_true.size(); ++i) correct += y_true(i) == y_pred(i);
  return static_cast<double>(correct) / static_cast<double>(y_true.size());
}

double f1(const Eigen::VectorXi& y_true, const Eigen::VectorXi& y_pred) {
  if (y_true.size() != y_pred.size()) throw std::invalid_argument("f1: length mismatch");
  long tp = 0, fp = 0, fn = 0;
  for (Eigen::Index i = 0; i < y_true.size(); ++i) {
    if (y_true(i) && y_pred(i)) ++tp;
    if (!y_true(i) && y_pred(i)) ++fp;
    if (y_true(i) && !y_pred(i)) ++fn;
  }
  if (tp == 0 && (fp > 0 || fn > 0)) return 0.0;
  if (tp + fp + fn == 0) return 0.0;  // no positives anywhere
  double precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  double recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  return 2.0 * precision * recall / (precision + recall);
}

FairnessReport evaluate(const Eigen::VectorXi& y_true, const Eigen::VectorXi& y_pred,
                        const Eigen::MatrixXi& sensitive,
                        const std::vector<std::string>& attribute_names) {
  FairnessReport report;
  report.accuracy = accuracy(y_true, y_pred);
  report.f1 = f1(y_true, y_pred);
  for (Eigen::Index a = 0; a < sensitive.cols(); ++a) {
    AttributeMetrics m;
    m.name = attribute_names[static_cast<std::size_t>(a)];
    Eigen::VectorXi attr = sensitive.col(a);
    try {
      auto gc = grouped_confusion(y_true, y_pred, attr);
      m.eod = eod(gc);
      m.aod = aod(gc);
      m.spd = spd(y_pred, attr);
    } catch (const UndefinedMetricError& e) {
      m.eod.reset();
      m.aod.reset();
      m.spd.reset();
      m.undefined_reason = e.what();
    }
    report.attributes.push_back(std::move(m));
  }
  return report;
}

long presentation_value(double value) { return std::llround(100.0 * value); }

nlohmann::json report_to_json(const FairnessReport& report) {
  nlohmann::json j;
  j["accuracy"] = report.accuracy;
  j["f1"] = report.f1;
  j["accuracy_x100"] = presentation_value(report.accuracy);
  j["f1_x100"] = presentation_value(report.f1);
  j["attributes"] = nlohmann::json::array();
  for (const auto& m : report.attributes) {
    nlohmann::json a;
    a["name"] = m.name;
    if (m.eod) {
      a["eod"] = *m.eod;
      a["aod"] = *m.aod;
      a["spd"] = *m.spd;
      a["eod_x100"] = presentation_value(*m.eod);
      a["aod_x100"] = presentation_value(*m.aod);
      a["spd_x100"] = presentation_value(*m.spd);
    } else {
      a["undefined_reason"] = m.undefined_reason;
    }
    j["attributes"].push_back(std::move(a));
  }
  return j;
}

}  // namespace fairlens
