#include "fairlens/reweigh.hpp"

#include <map>
#include <stdexcept>

namespace fairlens {

ReweighStrategy reweigh_strategy_from_string(const std::string& name) {
  if (name == "none") return ReweighStrategy::None;
  if (name == "fairbalanceclass") return ReweighStrategy::FairBalanceClass;
  throw std::runtime_error("unknown reweigh strategy: " + name);
}

std::string to_string(ReweighStrategy strategy) {
  return strategy == ReweighStrategy::None ? "none" : "fairbalanceclass";
}

SampleWeights fair_balance_class(const DatasetTable& train) {
  std::map<std::pair<GroupKey, int>, Eigen::Index> cell_sizes;
  for (Eigen::Index r = 0; r < train.rows(); ++r) {
    ++cell_sizes[{train.group_of(r), train.labels(r)}];
  }
  SampleWeights out;
  out.weights.resize(train.rows());
  for (Eigen::Index r = 0; r < train.rows(); ++r) {
    out.weights(r) = 1.0 / static_cast<double>(cell_sizes[{train.group_of(r), train.labels(r)}]);
  }
  return out;
}

SampleWeights uniform_weights(const DatasetTable& train) {
  SampleWeights out;
  out.weights = Eigen::VectorXd::Ones(train.rows());
  return out;
}

SampleWeights compute_weights(const DatasetTable& train, ReweighStrategy strategy) {
  return strategy == ReweighStrategy::FairBalanceClass ? fair_balance_class(train)
                                                       : uniform_weights(train);
}

std::vector<std::pair<GroupKey, int>> absent_cells(const DatasetTable& train) {
  std::map<std::pair<GroupKey, int>, Eigen::Index> cell_sizes;
  for (Eigen::Index r = 0; r < train.rows(); ++r) {
    ++cell_sizes[{train.group_of(r), train.labels(r)}];
  }
  std::vector<std::pair<GroupKey, int>> missing;
  const auto k = static_cast<unsigned>(train.attribute_count());
  for (GroupKey g = 0; g < (GroupKey{1} << k); ++g) {
    for (int c = 0; c <= 1; ++c) {
      if (!cell_sizes.count({g, c})) missing.emplace_back(g, c);
    }
  }
  return missing;
}

}  // namespace fairlens
