#include "fairlens/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

namespace fairlens {

namespace {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  return z ^ (z >> 31);
}

std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Aggregate aggregate_of(const std::vector<double>& values) {
  Aggregate a;
  if (values.empty()) {
    a.median = std::nan("");
    a.iqr = std::nan("");
    return a;
  }
  a.median = median_of(values);
  a.iqr = percentile_of(values, 0.75) - percentile_of(values, 0.25);
  return a;
}

}  // namespace

double percentile_of(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("percentile of empty set");
  std::sort(values.begin(), values.end());
  double rank = p * static_cast<double>(values.size() - 1);
  auto lo = static_cast<std::size_t>(std::floor(rank));
  auto hi = static_cast<std::size_t>(std::ceil(rank));
  double frac = rank - std::floor(rank);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

double median_of(std::vector<double> values) { return percentile_of(std::move(values), 0.5); }

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.data_path = j.at("data").get<std::string>();
  c.schema_path = j.at("schema").get<std::string>();
  if (j.contains("degrees")) c.degrees = j["degrees"].get<std::vector<double>>();
  if (j.contains("repeats")) c.repeats = j["repeats"].get<int>();
  if (j.contains("train_fraction")) c.train_fraction = j["train_fraction"].get<double>();
  if (j.contains("base_seed")) c.base_seed = j["base_seed"].get<std::uint64_t>();
  if (j.contains("epsilon")) c.epsilon = j["epsilon"].get<double>();
  if (j.contains("hyperparams")) {
    const auto& h = j["hyperparams"];
    if (h.contains("l2_strength")) c.hyperparams.l2_strength = h["l2_strength"].get<double>();
    if (h.contains("max_iterations")) c.hyperparams.max_iterations = h["max_iterations"].get<int>();
    if (h.contains("gradient_tolerance")) {
      c.hyperparams.gradient_tolerance = h["gradient_tolerance"].get<double>();
    }
    if (h.contains("decision_threshold")) {
      c.hyperparams.decision_threshold = h["decision_threshold"].get<double>();
    }
  }
  if (j.contains("injections")) {
    for (const auto& family : j["injections"]) {
      std::vector<InjectionTemplate> templates;
      for (const auto& t : family) {
        templates.push_back({t.at("attribute").get<std::size_t>(), t.at("favored_side").get<int>()});
      }
      c.injections.push_back(std::move(templates));
    }
  }
  if (c.repeats < 1) throw std::runtime_error("repeats must be >= 1");
  for (double d : c.degrees) {
    if (!(d >= 0.0 && d < 1.0)) throw std::runtime_error("degrees must lie in [0,1)");
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json j;
  in >> j;
  return config_from_json(j);
}

RepeatMetrics run_cell(const DatasetTable& data, const ExperimentConfig& config,
                       const RowSpec& row, int repeat_index) {
  const std::uint64_t repeat_seed = config.base_seed + static_cast<std::uint64_t>(repeat_index);
  auto [train, test] = split(data, config.train_fraction, repeat_seed);

  if (row.degree > 0.0 && !row.templates.empty()) {
    std::vector<InjectionSpec> specs;
    for (const auto& t : row.templates) {
      InjectionSpec spec;
      spec.attribute = t.attribute;
      spec.favored_side = t.favored_side;
      spec.degree = row.degree;
      spec.seed = mix_seed(repeat_seed, 2 * t.attribute + static_cast<std::size_t>(t.favored_side) + 1);
      specs.push_back(spec);
    }
    train = inject_multi(train, specs).first;
  }

  SampleWeights weights = compute_weights(train, row.strategy);
  standardize(train, test);
  Model model = fit(train, weights, config.hyperparams);
  Eigen::VectorXi predictions = predict(model, test.features, config.hyperparams.decision_threshold);
  FairnessReport report = evaluate(test.labels, predictions, test.sensitive, test.sensitive_names);

  RepeatMetrics m;
  m.accuracy = report.accuracy;
  m.f1 = report.f1;
  for (const auto& a : report.attributes) {
    m.eod.push_back(a.eod);
    m.aod.push_back(a.aod);
    m.spd.push_back(a.spd);
  }
  return m;
}

std::vector<RowSpec> build_grid(const ExperimentConfig& config, const DatasetSchema& schema) {
  std::vector<std::vector<InjectionTemplate>> families = config.injections;
  if (families.empty()) {
    for (std::size_t a = 0; a < schema.sensitive.size(); ++a) {
      families.push_back({{a, 0}});
      families.push_back({{a, 1}});
    }
    if (schema.sensitive.size() >= 2) {
      std::vector<InjectionTemplate> joint;
      for (std::size_t a = 0; a < schema.sensitive.size(); ++a) joint.push_back({a, 0});
      families.push_back(std::move(joint));
    }
  }

  auto favored_name = [&](const InjectionTemplate& t) {
    const auto& s = schema.sensitive[t.attribute];
    return t.favored_side ? s.name1 : s.name0;
  };

  std::vector<RowSpec> grid;
  grid.push_back({"None", ReweighStrategy::None, {}, 0.0});
  grid.push_back({"None", ReweighStrategy::FairBalanceClass, {}, 0.0});
  for (const auto& family : families) {
    for (double degree : config.degrees) {
      RowSpec row;
      row.strategy = ReweighStrategy::FairBalanceClass;
      row.templates = family;
      row.degree = degree;
      std::ostringstream label;
      for (std::size_t i = 0; i < family.size(); ++i) {
        if (i) label << ", ";
        char deg[16];
        std::snprintf(deg, sizeof(deg), "%g", degree);
        label << favored_name(family[i]) << " (" << deg << ")";
      }
      row.label = label.str();
      grid.push_back(std::move(row));
    }
  }
  return grid;
}

ResultTable run_grid(const DatasetTable& data, const DatasetSchema& schema,
                     const ExperimentConfig& config, int jobs) {
  ResultTable table;
  table.epsilon = config.epsilon;
  table.attribute_names = data.sensitive_names;

  auto grid = build_grid(config, schema);
  table.rows.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    table.rows[i].spec = grid[i];
    table.rows[i].cell.repeats.resize(static_cast<std::size_t>(config.repeats));
  }

  struct Task {
    std::size_t row;
    int repeat;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (int r = 0; r < config.repeats; ++r) tasks.push_back({i, r});
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  auto worker = [&]() {
    while (true) {
      std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) break;
      auto [row, repeat] = tasks[t];
      try {
        table.rows[row].cell.repeats[static_cast<std::size_t>(repeat)] =
            run_cell(data, config, table.rows[row].spec, repeat);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        table.rows[row].failed = true;
        if (table.rows[row].error.empty()) {
          table.rows[row].error = "row '" + table.rows[row].spec.label + "' repeat " +
                                  std::to_string(repeat) + ": " + e.what();
        }
      }
    }
  };

  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  const auto attrs = data.sensitive_names.size();
  for (auto& row : table.rows) {
    if (row.failed) continue;
    std::vector<double> acc, f1v;
    std::vector<std::vector<double>> eodv(attrs), aodv(attrs), spdv(attrs);
    for (const auto& m : row.cell.repeats) {
      acc.push_back(m.accuracy);
      f1v.push_back(m.f1);
      for (std::size_t a = 0; a < attrs; ++a) {
        if (m.eod[a]) eodv[a].push_back(*m.eod[a]);
        if (m.aod[a]) aodv[a].push_back(*m.aod[a]);
        if (m.spd[a]) spdv[a].push_back(*m.spd[a]);
      }
    }
    row.cell.accuracy = aggregate_of(acc);
    row.cell.f1 = aggregate_of(f1v);
    for (std::size_t a = 0; a < attrs; ++a) {
      row.cell.eod.push_back(aggregate_of(eodv[a]));
      row.cell.aod.push_back(aggregate_of(aodv[a]));
      row.cell.spd.push_back(aggregate_of(spdv[a]));
    }
  }
  return table;
}

std::string render(const ResultTable& table, RenderFormat format) {
  std::ostringstream out;
  const auto& attrs = table.attribute_names;
  if (format == RenderFormat::Csv) {
    out << "preprocessing,injection,degree,accuracy_median,accuracy_iqr,f1_median,f1_iqr";
    for (const auto& a : attrs) {
      out << "," << a << "_eod_median," << a << "_eod_iqr," << a << "_aod_median," << a
          << "_aod_iqr," << a << "_spd_median," << a << "_spd_iqr";
    }
    out << ",error\n";
    for (const auto& row : table.rows) {
      out << to_string(row.spec.strategy) << "," << row.spec.label << "," << fmt_full(row.spec.degree);
      if (row.failed) {
        for (std::size_t i = 0; i < 4 + 6 * attrs.size(); ++i) out << ",";
        out << "," << row.error << "\n";
        continue;
      }
      out << "," << fmt_full(row.cell.accuracy.median) << "," << fmt_full(row.cell.accuracy.iqr)
          << "," << fmt_full(row.cell.f1.median) << "," << fmt_full(row.cell.f1.iqr);
      for (std::size_t a = 0; a < attrs.size(); ++a) {
        out << "," << fmt_full(row.cell.eod[a].median) << "," << fmt_full(row.cell.eod[a].iqr)
            << "," << fmt_full(row.cell.aod[a].median) << "," << fmt_full(row.cell.aod[a].iqr)
            << "," << fmt_full(row.cell.spd[a].median) << "," << fmt_full(row.cell.spd[a].iqr);
      }
      out << ",\n";
    }
    return out.str();
  }

  // markdown, x100 presentation values; cells at or past epsilon are bolded
  auto cell = [&](const Aggregate& agg, bool flaggable) {
    if (std::isnan(agg.median)) return std::string("n/a");
    std::ostringstream s;
    bool flag = flaggable && std::abs(agg.median) >= table.epsilon;
    if (flag) s << "**";
    s << presentation_value(agg.median) << " (" << presentation_value(agg.iqr) << ")";
    if (flag) s << "**";
    return s.str();
  };
  out << "| Pre-processing | Inject Unfairness to Favor | Accuracy | F1 |";
  for (const auto& a : attrs) out << " " << a << " EOD | " << a << " AOD |";
  out << "\n|---|---|---|---|";
  for (std::size_t a = 0; a < attrs.size(); ++a) out << "---|---|";
  out << "\n";
  for (const auto& row : table.rows) {
    out << "| " << to_string(row.spec.strategy) << " | " << row.spec.label << " | ";
    if (row.failed) {
      out << "failed: " << row.error << " |\n";
      continue;
    }
    out << cell(row.cell.accuracy, false) << " | " << cell(row.cell.f1, false) << " |";
    for (std::size_t a = 0; a < attrs.size(); ++a) {
      out << " " << cell(row.cell.eod[a], true) << " | " << cell(row.cell.aod[a], true) << " |";
    }
    out << "\n";
  }
  return out.str();
}

GridChecks check_grid(const ResultTable& table, double epsilon) {
  GridChecks summary;
  const auto attrs = table.attribute_names.size();

  double max_degree = 0.0;
  for (const auto& row : table.rows) max_degree = std::max(max_degree, row.spec.degree);

  auto median_abs = [](const Aggregate& agg) { return std::abs(agg.median); };

  // detection: clean FairBalanceClass row fair everywhere; every injected attribute
  // at the highest degree detected; single-injection rows leave the other
  // attributes fair.
  for (const auto& row : table.rows) {
    if (row.failed) {
      summary.detection_violations.push_back(row.error);
      continue;
    }
    const bool clean = row.spec.templates.empty();
    const bool fbc = row.spec.strategy == ReweighStrategy::FairBalanceClass;
    if (clean && fbc) {
      for (std::size_t a = 0; a < attrs; ++a) {
        if (median_abs(row.cell.eod[a]) >= epsilon || median_abs(row.cell.aod[a]) >= epsilon) {
          summary.detection_violations.push_back("clean row: " + table.attribute_names[a] +
                                           " measured unfair");
        }
      }
    }
    if (!clean && row.spec.degree == max_degree) {
      for (const auto& t : row.spec.templates) {
        double mag = std::max(median_abs(row.cell.eod[t.attribute]),
                              median_abs(row.cell.aod[t.attribute]));
        if (mag < epsilon) {
          summary.detection_violations.push_back("row '" + row.spec.label + "': injected attribute " +
                                           table.attribute_names[t.attribute] + " not detected");
        }
      }
    }
    if (row.spec.templates.size() == 1) {
      for (std::size_t a = 0; a < attrs; ++a) {
        if (a == row.spec.templates[0].attribute) continue;
        if (median_abs(row.cell.eod[a]) >= epsilon || median_abs(row.cell.aod[a]) >= epsilon) {
          summary.detection_violations.push_back("row '" + row.spec.label + "': non-injected attribute " +
                                           table.attribute_names[a] + " measured unfair");
        }
      }
    }
  }
  summary.detection = summary.detection_violations.empty();

  // direction: at the highest degree, the two directions of each attribute give
  // opposite metric signs.
  for (std::size_t a = 0; a < attrs; ++a) {
    const RowResult* side[2] = {nullptr, nullptr};
    for (const auto& row : table.rows) {
      if (row.failed || row.spec.templates.size() != 1 || row.spec.degree != max_degree) continue;
      if (row.spec.templates[0].attribute == a) side[row.spec.templates[0].favored_side] = &row;
    }
    if (!side[0] || !side[1]) continue;
    if (side[0]->cell.eod[a].median * side[1]->cell.eod[a].median >= 0.0) {
      summary.direction_violations.push_back(table.attribute_names[a] + ": EOD signs not opposite");
    }
    if (side[0]->cell.aod[a].median * side[1]->cell.aod[a].median >= 0.0) {
      summary.direction_violations.push_back(table.attribute_names[a] + ": AOD signs not opposite");
    }
  }
  summary.direction = summary.direction_violations.empty();

  // trend: per direction, median |EOD| and |AOD| non-decreasing in degree.
  for (std::size_t a = 0; a < attrs; ++a) {
    for (int s = 0; s <= 1; ++s) {
      std::vector<std::pair<double, const RowResult*>> rows;
      for (const auto& row : table.rows) {
        if (row.failed || row.spec.templates.size() != 1) continue;
        if (row.spec.templates[0].attribute == a &&
            row.spec.templates[0].favored_side == s && row.spec.degree > 0.0) {
          rows.emplace_back(row.spec.degree, &row);
        }
      }
      std::sort(rows.begin(), rows.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      for (std::size_t i = 1; i < rows.size(); ++i) {
        if (median_abs(rows[i].second->cell.eod[a]) <
            median_abs(rows[i - 1].second->cell.eod[a]) - 1e-12) {
          summary.trend_violations.push_back(table.attribute_names[a] + " side " +
                                            std::to_string(s) + ": |EOD| decreased at degree " +
                                            std::to_string(rows[i].first));
        }
        if (median_abs(rows[i].second->cell.aod[a]) <
            median_abs(rows[i - 1].second->cell.aod[a]) - 1e-12) {
          summary.trend_violations.push_back(table.attribute_names[a] + " side " +
                                            std::to_string(s) + ": |AOD| decreased at degree " +
                                            std::to_string(rows[i].first));
        }
      }
    }
  }
  summary.trend = summary.trend_violations.empty();
  return summary;
}

nlohmann::json grid_checks_to_json(const GridChecks& summary) {
  nlohmann::json j;
  j["detection_pass"] = summary.detection;
  j["detection_violations"] = summary.detection_violations;
  j["direction_pass"] = summary.direction;
  j["direction_violations"] = summary.direction_violations;
  j["trend_pass"] = summary.trend;
  j["trend_violations"] = summary.trend_violations;
  return j;
}

}  // namespace fairlens
