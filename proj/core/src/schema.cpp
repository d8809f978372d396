#include "fairlens/schema.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fairlens {

namespace {

double parse_number(const std::string& raw) {
  std::size_t pos = 0;
  double v = std::stod(raw, &pos);
  if (pos != raw.size()) throw std::invalid_argument("not a number: " + raw);
  return v;
}

}  // namespace

bool SidePredicate::evaluate(const std::string& raw) const {
  if (op == "equals") return !values.empty() && raw == values.front();
  if (op == "in") {
    for (const auto& v : values) {
      if (raw == v) return true;
    }
    return false;
  }
  double x = parse_number(raw);
  if (op == "lt") return x < threshold;
  if (op == "le") return x <= threshold;
  if (op == "gt") return x > threshold;
  if (op == "ge") return x >= threshold;
  throw std::runtime_error("unknown predicate op: " + op);
}

std::size_t DatasetSchema::attribute_index(const std::string& name) const {
  for (std::size_t i = 0; i < sensitive.size(); ++i) {
    const auto& s = sensitive[i];
    if (s.column == name || s.name0 == name || s.name1 == name) return i;
  }
  throw std::runtime_error("unknown sensitive attribute: " + name);
}

DatasetSchema schema_from_json(const nlohmann::json& j) {
  DatasetSchema schema;
  schema.label_column = j.at("label").get<std::string>();
  schema.positive_label = j.at("positive_label").get<std::string>();
  for (const auto& s : j.at("sensitive")) {
    SensitiveSpec spec;
    spec.column = s.at("column").get<std::string>();
    spec.name0 = s.at("name0").get<std::string>();
    spec.name1 = s.at("name1").get<std::string>();
    const auto& p = s.at("side1");
    spec.side1.op = p.at("op").get<std::string>();
    if (p.contains("value")) {
      if (p["value"].is_string()) {
        spec.side1.values.push_back(p["value"].get<std::string>());
      } else {
        spec.side1.threshold = p["value"].get<double>();
      }
    }
    if (p.contains("values")) {
      for (const auto& v : p["values"]) spec.side1.values.push_back(v.get<std::string>());
    }
    schema.sensitive.push_back(std::move(spec));
  }
  for (const auto& f : j.at("features")) {
    FeatureSpec spec;
    spec.name = f.at("name").get<std::string>();
    auto kind = f.at("kind").get<std::string>();
    if (kind == "numeric") {
      spec.kind = FeatureKind::Numeric;
    } else if (kind == "categorical") {
      spec.kind = FeatureKind::Categorical;
    } else {
      throw std::runtime_error("unknown feature kind: " + kind);
    }
    schema.features.push_back(std::move(spec));
  }
  if (j.contains("include_sensitive_as_features")) {
    schema.include_sensitive_as_features = j["include_sensitive_as_features"].get<bool>();
  }
  if (schema.sensitive.empty()) throw std::runtime_error("schema needs at least one sensitive attribute");
  return schema;
}

nlohmann::json schema_to_json(const DatasetSchema& schema) {
  nlohmann::json j;
  j["label"] = schema.label_column;
  j["positive_label"] = schema.positive_label;
  j["sensitive"] = nlohmann::json::array();
  for (const auto& s : schema.sensitive) {
    nlohmann::json p;
    p["op"] = s.side1.op;
    if (s.side1.op == "equals") {
      p["value"] = s.side1.values.empty() ? "" : s.side1.values.front();
    } else if (s.side1.op == "in") {
      p["values"] = s.side1.values;
    } else {
      p["value"] = s.side1.threshold;
    }
    j["sensitive"].push_back({{"column", s.column}, {"side1", p}, {"name0", s.name0}, {"name1", s.name1}});
  }
  j["features"] = nlohmann::json::array();
  for (const auto& f : schema.features) {
    j["features"].push_back(
        {{"name", f.name}, {"kind", f.kind == FeatureKind::Numeric ? "numeric" : "categorical"}});
  }
  j["include_sensitive_as_features"] = schema.include_sensitive_as_features;
  return j;
}

DatasetSchema load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open schema file: " + path);
  nlohmann::json j;
  in >> j;
  return schema_from_json(j);
}

}  // namespace fairlens
