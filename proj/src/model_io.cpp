// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "streammt/model_io.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "streammt/errors.hpp"

namespace streammt {

namespace {

using nlohmann::json;

json read_json(const std::filesystem::path& path, const std::string& format) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot read model file: " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("malformed model file " + path.string() + ": " + e.what());
  }
  if (!j.is_object() || j.value("format", "") != format) {
    throw DataError("model file " + path.string() + " is not " + format);
  }
  return j;
}

void write_json(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write model file: " + path.string());
  }
  out << j.dump(2) << '\n';
}

}  // namespace

void save_reverse_model(const ReverseLexicalModel& model,
                        const std::filesystem::path& path) {
  json j;
  j["format"] = "reverse-lexical-v1";
  j["null_word"] = ReverseLexicalModel::kNull;
  json table = json::object();
  for (const auto& [tgt, row] : model.table) {
    json src_row = json::object();
    for (const auto& [src, p] : row) {
      src_row[src] = p;
    }
    table[tgt] = std::move(src_row);
  }
  j["table"] = std::move(table);
  write_json(j, path);
}

ReverseLexicalModel load_reverse_model(const std::filesystem::path& path) {
  const json j = read_json(path, "reverse-lexical-v1");
  ReverseLexicalModel model;
  try {
    for (const auto& [tgt, row] : j.at("table").items()) {
      for (const auto& [src, p] : row.items()) {
        const double v = p.get<double>();
        if (!(v >= 0.0) || !(v <= 1.0 + 1e-12)) {
          throw DataError("probability out of range in " + path.string());
        }
        model.table[tgt][src] = v;
      }
    }
  } catch (const json::exception& e) {
    throw DataError("malformed model file " + path.string() + ": " + e.what());
  }
  if (model.table.empty()) {
    throw DataError("reverse model table is empty: " + path.string());
  }
  return model;
}

void save_linreg(const LinRegParams& params,
                 const std::filesystem::path& path) {
  json j;
  j["format"] = "length-gaussian-v1";
  j["theta_mu"] = params.theta_mu;
  j["theta_sigma"] = params.theta_sigma;
  write_json(j, path);
}

LinRegParams load_linreg(const std::filesystem::path& path) {
  const json j = read_json(path, "length-gaussian-v1");
  LinRegParams params;
  try {
    params.theta_mu = j.at("theta_mu").get<double>();
    params.theta_sigma = j.at("theta_sigma").get<double>();
  } catch (const json::exception& e) {
    throw DataError("malformed model file " + path.string() + ": " + e.what());
  }
  if (!std::isfinite(params.theta_mu) || !(params.theta_sigma > 0.0) ||
      !std::isfinite(params.theta_sigma)) {
    throw DataError("regression parameters out of range: " + path.string());
  }
  return params;
}

void save_weights(const FeatureWeights& weights,
                  const std::vector<std::string>& feature_names,
                  const std::filesystem::path& path) {
  if (weights.lambda.size() != feature_names.size()) {
    throw ConfigError("weight count must match feature name count");
  }
  json j;
  j["format"] = "feature-weights-v1";
  j["features"] = feature_names;
  j["lambda"] = weights.lambda;
  write_json(j, path);
}

std::pair<FeatureWeights, std::vector<std::string>> load_weights(
    const std::filesystem::path& path) {
  const json j = read_json(path, "feature-weights-v1");
  FeatureWeights weights;
  std::vector<std::string> names;
  try {
    names = j.at("features").get<std::vector<std::string>>();
    weights.lambda = j.at("lambda").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw DataError("malformed model file " + path.string() + ": " + e.what());
  }
  if (names.size() != weights.lambda.size() || names.empty()) {
    throw DataError("weights and feature names disagree: " + path.string());
  }
  for (const double v : weights.lambda) {
    if (!std::isfinite(v)) {
      throw DataError("non-finite weight in " + path.string());
    }
  }
  return {std::move(weights), std::move(names)};
}

void save_naive_ratio(double ratio, const std::filesystem::path& path) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw ConfigError("length ratio must be positive and finite");
  }
  json j;
  j["format"] = "naive-offset-v1";
  j["ratio"] = ratio;
  write_json(j, path);
}

double load_naive_ratio(const std::filesystem::path& path) {
  const json j = read_json(path, "naive-offset-v1");
  double ratio = 0.0;
  try {
    ratio = j.at("ratio").get<double>();
  } catch (const json::exception& e) {
    throw DataError("malformed model file " + path.string() + ": " + e.what());
  }
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw DataError("length ratio out of range: " + path.string());
  }
  return ratio;
}

}  // namespace streammt
