#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fairlens/dataset.hpp"
#include "fairlens/inject.hpp"
#include "fairlens/learner.hpp"
#include "fairlens/metrics.hpp"
#include "fairlens/reweigh.hpp"

namespace fairlens {

// One injection direction in a grid row: which attribute and which side
// gains positives. The degree comes from the row.
struct InjectionTemplate {
  std::size_t attribute = 0;
  int favored_side = 0;
};

struct ExperimentConfig {
  std::string data_path;
  std::string schema_path;
  std::vector<double> degrees = {0.1, 0.2, 0.3, 0.4};
  int repeats = 30;
  double train_fraction = 0.7;
  std::uint64_t base_seed = 1;
  double epsilon = 0.05;
  Hyperparams hyperparams;
  // Each entry is one family of grid rows (one per degree). Empty means the
  // default grid: both directions of every attribute, plus one joint row
  // favoring side 0 of every attribute when there are two or more.
  std::vector<std::vector<InjectionTemplate>> injections;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

struct RepeatMetrics {
  double accuracy = 0.0;
  double f1 = 0.0;
  std::vector<std::optional<double>> eod, aod, spd;  // per attribute
};

struct Aggregate {
  double median = 0.0;
  double iqr = 0.0;  // 75th - 25th percentile, linear interpolation
};

struct CellResult {
  std::vector<RepeatMetrics> repeats;
  Aggregate accuracy, f1;
  std::vector<Aggregate> eod, aod, spd;  // per attribute
};

struct RowSpec {
  std::string label;
  ReweighStrategy strategy = ReweighStrategy::FairBalanceClass;
  std::vector<InjectionTemplate> templates;
  double degree = 0.0;
};

struct RowResult {
  RowSpec spec;
  CellResult cell;
  bool failed = false;
  std::string error;
};

struct ResultTable {
  std::vector<std::string> attribute_names;
  std::vector<RowResult> rows;
  double epsilon = 0.05;
};

double median_of(std::vector<double> values);
double percentile_of(std::vector<double> values, double p);  // linear interpolation

// Pipeline for one (row, repeat): split -> inject train -> reweigh ->
// standardize -> fit -> predict on the untouched test split -> metrics.
// The repeat seed is base_seed + repeat_index.
RepeatMetrics run_cell(const DatasetTable& data, const ExperimentConfig& config,
                       const RowSpec& row, int repeat_index);

std::vector<RowSpec> build_grid(const ExperimentConfig& config, const DatasetSchema& schema);

ResultTable run_grid(const DatasetTable& data, const DatasetSchema& schema,
                     const ExperimentConfig& config, int jobs = 1);

enum class RenderFormat { Csv, Markdown };
std::string render(const ResultTable& table, RenderFormat format);

struct GridChecks {
  bool detection = false;   // 0.4 injections detected, clean attributes stay fair
  bool direction = false;  // opposite directions give opposite signs
  bool trend = false;  // median |eod| and |aod| non-decreasing in degree
  std::vector<std::string> detection_violations, direction_violations, trend_violations;
};

GridChecks check_grid(const ResultTable& table, double epsilon);
nlohmann::json grid_checks_to_json(const GridChecks& summary);

}  // namespace fairlens
