#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fairlens/detector.hpp"
#include "fairlens/harness.hpp"
#include "fairlens/synth.hpp"

namespace fs = std::filesystem;
using namespace fairlens;

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int run_audit(const std::string& data_path, const std::string& schema_path, double epsilon,
              const std::string& reweigh_name, std::uint64_t seed, double train_fraction,
              const std::string& report_out, const std::string& model_out) {
  auto schema = load_schema(schema_path);
  auto raw = load_csv(data_path);
  EncodeStats stats;
  auto data = encode(raw, schema, &stats);
  if (stats.dropped_rows > 0) {
    std::cerr << "note: dropped " << stats.dropped_rows << " rows with missing values\n";
  }

  auto [train, test] = split(data, train_fraction, seed);
  auto strategy = reweigh_strategy_from_string(reweigh_name);
  if (strategy == ReweighStrategy::FairBalanceClass) {
    for (const auto& [group, cls] : absent_cells(train)) {
      std::cerr << "warning: empty training cell " << group_key_to_string(group, schema)
                << " class " << cls << "\n";
    }
  }
  auto weights = compute_weights(train, strategy);
  standardize(train, test);
  auto model = fit(train, weights);
  auto predictions = predict(model, test.features);
  auto report = evaluate(test.labels, predictions, test.sensitive, test.sensitive_names);
  auto verdict = assess(report, epsilon);

  std::cout << render_verdict(verdict);
  nlohmann::json out;
  out["report"] = report_to_json(report);
  out["verdict"] = verdict_to_json(verdict);
  if (!report_out.empty()) {
    write_text(report_out, out.dump(2) + "\n");
  } else {
    std::cout << out.dump(2) << "\n";
  }
  if (!model_out.empty()) write_text(model_out, model_to_json(model).dump(2) + "\n");
  return verdict.any_unfair() ? 1 : 0;
}

int run_inject(const std::string& data_path, const std::string& schema_path,
               const std::string& attribute, const std::string& favor, double degree,
               std::uint64_t seed, const std::string& out_path, const std::string& log_path) {
  auto schema = load_schema(schema_path);
  auto raw = load_csv(data_path);
  EncodeStats stats;
  auto data = encode(raw, schema, &stats);

  InjectionSpec spec;
  spec.attribute = schema.attribute_index(attribute);
  const auto& sens = schema.sensitive[spec.attribute];
  if (favor == "0" || favor == sens.name0) {
    spec.favored_side = 0;
  } else if (favor == "1" || favor == sens.name1) {
    spec.favored_side = 1;
  } else {
    throw std::runtime_error("--favor must be 0, 1, or a side display name");
  }
  spec.degree = degree;
  spec.seed = seed;

  auto [corrupted, log] = inject_bias(data, spec);

  // rewrite raw label strings for the flipped rows; demotions take the first
  // observed negative label value
  std::string negative_label;
  const auto label_col = raw.column_index(schema.label_column);
  for (const auto& row : raw.rows) {
    if (row[label_col] != schema.positive_label) {
      negative_label = row[label_col];
      break;
    }
  }
  RawTable out = raw;
  for (auto r : log.promoted) out.rows[stats.kept_rows[static_cast<std::size_t>(r)]][label_col] =
      schema.positive_label;
  for (auto r : log.demoted) out.rows[stats.kept_rows[static_cast<std::size_t>(r)]][label_col] =
      negative_label;
  write_csv(out_path, out);

  nlohmann::json j;
  j["attribute"] = sens.column;
  j["favored_side"] = spec.favored_side;
  j["favored_name"] = spec.favored_side ? sens.name1 : sens.name0;
  j["degree"] = degree;
  j["seed"] = seed;
  j["promoted"] = nlohmann::json::array();
  for (auto r : log.promoted) j["promoted"].push_back(stats.kept_rows[static_cast<std::size_t>(r)]);
  j["demoted"] = nlohmann::json::array();
  for (auto r : log.demoted) j["demoted"].push_back(stats.kept_rows[static_cast<std::size_t>(r)]);
  write_text(log_path.empty() ? out_path + ".fliplog.json" : log_path, j.dump(2) + "\n");

  std::cout << "flipped " << log.promoted.size() << " rows to positive, " << log.demoted.size()
            << " rows to negative\n";
  return 0;
}

int run_experiment(const std::string& config_path, const std::string& out_dir, int jobs) {
  auto config = load_config(config_path);
  auto schema = load_schema(config.schema_path);
  auto raw = load_csv(config.data_path);
  EncodeStats stats;
  auto data = encode(raw, schema, &stats);
  if (stats.dropped_rows > 0) {
    std::cerr << "note: dropped " << stats.dropped_rows << " rows with missing values\n";
  }

  auto table = run_grid(data, schema, config, jobs);
  fs::create_directories(out_dir);
  write_text((fs::path(out_dir) / "results.csv").string(), render(table, RenderFormat::Csv));
  write_text((fs::path(out_dir) / "results.md").string(), render(table, RenderFormat::Markdown));
  auto summary = check_grid(table, config.epsilon);
  write_text((fs::path(out_dir) / "checks.json").string(),
             grid_checks_to_json(summary).dump(2) + "\n");

  std::cout << "wrote results.csv, results.md, checks.json to " << out_dir << "\n";
  std::cout << "detection " << (summary.detection ? "pass" : "fail") << ", direction "
            << (summary.direction ? "pass" : "fail") << ", trend "
            << (summary.trend ? "pass" : "fail") << "\n";
  for (const auto& row : table.rows) {
    if (row.failed) std::cerr << "failed cell: " << row.error << "\n";
  }
  return 0;
}

int run_datagen(const std::string& case_name, const std::string& out_path,
                const std::string& schema_out, std::size_t rows, std::uint64_t seed) {
  auto spec = builtin_case(case_name);
  if (rows > 0) spec.rows = rows;
  auto data = generate(spec, seed);
  write_csv(out_path, data.table);
  if (!schema_out.empty()) write_text(schema_out, schema_to_json(data.schema).dump(2) + "\n");
  std::cout << "wrote " << data.table.rows.size() << " rows to " << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fairlens: detect unfairness in decision labels via model bias measurement"};
  app.require_subcommand(1);

  // audit
  std::string data_path, schema_path, report_out, model_out, reweigh_name = "fairbalanceclass";
  double epsilon = 0.05, train_fraction = 0.7;
  std::uint64_t seed = 1;
  auto* audit = app.add_subcommand("audit", "train on the labels and report a fairness verdict");
  audit->add_option("--data", data_path, "input CSV")->required();
  audit->add_option("--schema", schema_path, "schema JSON")->required();
  audit->add_option("--epsilon", epsilon, "verdict threshold on |EOD|/|AOD| (default 0.05)");
  audit->add_option("--reweigh", reweigh_name, "none | fairbalanceclass");
  audit->add_option("--seed", seed, "split seed");
  audit->add_option("--train-fraction", train_fraction, "train split fraction (default 0.7)");
  audit->add_option("--out", report_out, "write report JSON here instead of stdout");
  audit->add_option("--model-out", model_out, "write fitted model JSON");

  // inject
  std::string attribute, favor, inject_out, log_out;
  double degree = 0.0;
  auto* inject = app.add_subcommand("inject", "flip labels to synthesize directional bias");
  inject->add_option("--data", data_path, "input CSV")->required();
  inject->add_option("--schema", schema_path, "schema JSON")->required();
  inject->add_option("--attribute", attribute, "sensitive attribute (column or side name)")->required();
  inject->add_option("--favor", favor, "favored side: 0, 1, or a side display name")->required();
  inject->add_option("--degree", degree, "fraction of eligible rows to flip, [0,1)")->required();
  inject->add_option("--seed", seed, "sampling seed");
  inject->add_option("--out", inject_out, "corrupted CSV output path")->required();
  inject->add_option("--log", log_out, "flip-log JSON path (default: <out>.fliplog.json)");

  // experiment
  std::string config_path, out_dir = "results";
  int jobs = 1;
  auto* experiment = app.add_subcommand("experiment", "run the full injection grid");
  experiment->add_option("--config", config_path, "experiment config JSON")->required();
  experiment->add_option("--out", out_dir, "output directory");
  experiment->add_option("--jobs", jobs, "parallel workers (default 1)");

  // datagen
  std::string case_name, schema_out;
  std::size_t rows = 0;
  auto* datagen = app.add_subcommand("datagen", "generate a synthetic case-study dataset");
  datagen->add_option("--case", case_name, "adult | compas | bank | heart")->required();
  datagen->add_option("--out", data_path, "output CSV path")->required();
  datagen->add_option("--schema-out", schema_out, "also write the matching schema JSON");
  datagen->add_option("--rows", rows, "override the built-in row count");
  datagen->add_option("--seed", seed, "generation seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(audit)) {
      return run_audit(data_path, schema_path, epsilon, reweigh_name, seed, train_fraction,
                       report_out, model_out);
    }
    if (app.got_subcommand(inject)) {
      return run_inject(data_path, schema_path, attribute, favor, degree, seed, inject_out, log_out);
    }
    if (app.got_subcommand(experiment)) return run_experiment(config_path, out_dir, jobs);
    if (app.got_subcommand(datagen)) return run_datagen(case_name, data_path, schema_out, rows, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
