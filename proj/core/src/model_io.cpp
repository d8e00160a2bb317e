// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

#include "pairsolve/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pairsolve/errors.hpp"

namespace pairsolve {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::SchemaError, path + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + "/" + key, "missing field");
  return *it;
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

std::vector<double> as_vector(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_number(j[i], path + "/" + std::to_string(i)));
  }
  return out;
}

Eigen::MatrixXd as_matrix(const json& j, std::size_t n, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of rows");
  if (j.size() != n) schema_error(path, "expected " + std::to_string(n) + " rows");
  const auto dim = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd m(dim, dim);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row_path = path + "/" + std::to_string(i);
    const auto row = as_vector(j[i], row_path);
    if (row.size() != n) schema_error(row_path, "expected " + std::to_string(n) + " columns");
    for (std::size_t k = 0; k < n; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k];
    }
  }
  return m;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

PairingModel parse_general(const json& doc) {
  const auto& n_json = require(doc, "n_levels", "");
  if (!n_json.is_number_integer() || n_json.get<long long>() < 1) {
    schema_error("/n_levels", "expected a positive integer");
  }
  const auto n = n_json.get<std::size_t>();
  const auto eps = as_vector(require(doc, "eps", ""), "/eps");
  if (eps.size() != n) schema_error("/eps", "expected " + std::to_string(n) + " entries");
  PairingModel model;
  model.eps = Eigen::Map<const Eigen::VectorXd>(eps.data(), static_cast<Eigen::Index>(n));
  model.v1 = as_matrix(require(doc, "v1", ""), n, "/v1");
  model.v2 = as_matrix(require(doc, "v2", ""), n, "/v2");
  model.validate();
  return model;
}

IntegrableSpec parse_integrable(const json& doc) {
  const auto& fam = require(doc, "family", "");
  if (!fam.is_string()) schema_error("/family", "expected a string");
  IntegrableSpec spec;
  auto family = parse_family(fam.get<std::string>());
  if (!family) schema_error("/family", "unknown family '" + fam.get<std::string>() + "'");
  spec.family = *family;
  spec.g = as_number(require(doc, "g", ""), "/g");
  spec.epsilon = as_vector(require(doc, "epsilon", ""), "/epsilon");
  spec.eta = as_vector(require(doc, "eta", ""), "/eta");
  try {
    spec.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::InvariantViolation, e.what());
  }
  return spec;
}

PairingModel parse_reduced_bcs(const json& doc) {
  const auto eps = as_vector(require(doc, "eps", ""), "/eps");
  const double strength = as_number(require(doc, "G", ""), "/G");
  try {
    return build_reduced_bcs(eps, strength);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvariantViolation, e.what());
  }
}

}  // namespace

ModelDocument load_model(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    schema_error("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) schema_error("", "expected a JSON object");
  const auto& type = require(doc, "type", "");
  if (!type.is_string()) schema_error("/type", "expected a string");
  const auto kind = type.get<std::string>();
  if (kind == "general") return parse_general(doc);
  if (kind == "integrable") return parse_integrable(doc);
  if (kind == "reduced_bcs") return parse_reduced_bcs(doc);
  schema_error("/type", "unknown model type '" + kind + "'");
}

ModelDocument load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::SchemaError, "cannot open model file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

std::string save_model(const PairingModel& model) {
  json doc;
  doc["type"] = "general";
  doc["n_levels"] = model.n_levels();
  doc["eps"] = vector_json(model.eps);
  doc["v1"] = matrix_json(model.v1);
  doc["v2"] = matrix_json(model.v2);
  return doc.dump(2) + "\n";
}

std::string save_model(const IntegrableSpec& spec) {
  json doc;
  doc["type"] = "integrable";
  doc["family"] = std::string(to_string(spec.family));
  doc["g"] = spec.g;
  doc["epsilon"] = spec.epsilon;
  doc["eta"] = spec.eta;
  return doc.dump(2) + "\n";
}

std::string save_model(const ModelDocument& doc) {
  return std::visit([](const auto& m) { return save_model(m); }, doc);
}

PairingModel expand(const ModelDocument& doc) {
  if (const auto* spec = std::get_if<IntegrableSpec>(&doc)) return build_integrable(*spec);
  return std::get<PairingModel>(doc);
}

}  // namespace pairsolve
