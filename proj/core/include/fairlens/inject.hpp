#pragma once

#include <cstdint>
#include <vector>

#include "fairlens/dataset.hpp"

namespace fairlens {

// Directional label corruption: promote favored-side negatives, demote the
// other side's positives, each at `degree` of the eligible cell.
struct InjectionSpec {
  std::size_t attribute = 0;  // index into the schema's sensitive attributes
  int favored_side = 1;       // attribute value whose rows gain positives
  double degree = 0.0;        // fraction in [0,1)
  std::uint64_t seed = 0;
};

struct FlipLog {
  std::vector<Eigen::Index> promoted;  // flipped 0 -> 1, favored side
  std::vector<Eigen::Index> demoted;   // flipped 1 -> 0, disfavored side
};

std::pair<DatasetTable, FlipLog> inject_bias(const DatasetTable& train, const InjectionSpec& spec);

// Specs applied sequentially, each against the already-flipped labels.
std::pair<DatasetTable, std::vector<FlipLog>> inject_multi(const DatasetTable& train,
                                                           const std::vector<InjectionSpec>& specs);

}  // namespace fairlens
