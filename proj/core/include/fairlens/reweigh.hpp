#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "fairlens/dataset.hpp"

namespace fairlens {

// Per-row nonnegative training weights.
struct SampleWeights {
  Eigen::VectorXd weights;
};

enum class ReweighStrategy { None, FairBalanceClass };

ReweighStrategy reweigh_strategy_from_string(const std::string& name);
std::string to_string(ReweighStrategy strategy);

// Each row gets 1/|cell| for its (group, class) cell, so every occupied
// cell carries total weight 1.
SampleWeights fair_balance_class(const DatasetTable& train);

SampleWeights uniform_weights(const DatasetTable& train);

SampleWeights compute_weights(const DatasetTable& train, ReweighStrategy strategy);

// (group, class) cells absent from the training data, for 2^k * 2 expected
// cells. Callers may warn on a nonempty result.
std::vector<std::pair<GroupKey, int>> absent_cells(const DatasetTable& train);

}  // namespace fairlens
