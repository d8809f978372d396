#include "fairlens/inject.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "fairlens/rng.hpp"

namespace fairlens {

namespace {

// round half up
std::size_t flip_count(double degree, std::size_t cell_size) {
  return static_cast<std::size_t>(std::floor(degree * static_cast<double>(cell_size) + 0.5));
}

}  // namespace

std::pair<DatasetTable, FlipLog> inject_bias(const DatasetTable& train, const InjectionSpec& spec) {
  if (!(spec.degree >= 0.0 && spec.degree < 1.0)) {
    throw std::invalid_argument("injection degree must lie in [0,1)");
  }
  if (spec.attribute >= static_cast<std::size_t>(train.attribute_count())) {
    throw std::invalid_argument("injection attribute index out of range");
  }
  if (train.rows() == 0) throw std::invalid_argument("cannot inject into an empty table");

  const auto attr = static_cast<Eigen::Index>(spec.attribute);
  std::vector<Eigen::Index> promotable;  // favored side, currently negative
  std::vector<Eigen::Index> demotable;   // disfavored side, currently positive
  for (Eigen::Index r = 0; r < train.rows(); ++r) {
    if (train.sensitive(r, attr) == spec.favored_side && train.labels(r) == 0) {
      promotable.push_back(r);
    } else if (train.sensitive(r, attr) != spec.favored_side && train.labels(r) == 1) {
      demotable.push_back(r);
    }
  }

  Rng rng(spec.seed);
  FlipLog log;
  for (auto i : rng.sample_indices(promotable.size(), flip_count(spec.degree, promotable.size()))) {
    log.promoted.push_back(promotable[i]);
  }
  for (auto i : rng.sample_indices(demotable.size(), flip_count(spec.degree, demotable.size()))) {
    log.demoted.push_back(demotable[i]);
  }
  std::sort(log.promoted.begin(), log.promoted.end());
  std::sort(log.demoted.begin(), log.demoted.end());

  DatasetTable out = train;
  for (auto r : log.promoted) out.labels(r) = 1;
  for (auto r : log.demoted) out.labels(r) = 0;
  return {std::move(out), std::move(log)};
}

std::pair<DatasetTable, std::vector<FlipLog>> inject_multi(const DatasetTable& train,
                                                           const std::vector<InjectionSpec>& specs) {
  std::set<std::size_t> seen;
  for (const auto& spec : specs) {
    if (!seen.insert(spec.attribute).second) {
      throw std::invalid_argument("duplicate attribute across injection specs");
    }
  }
  DatasetTable current = train;
  std::vector<FlipLog> logs;
  for (const auto& spec : specs) {
    auto [next, log] = inject_bias(current, spec);
    current = std::move(next);
    logs.push_back(std::move(log));
  }
  return {std::move(current), std::move(logs)};
}

}  // namespace fairlens
