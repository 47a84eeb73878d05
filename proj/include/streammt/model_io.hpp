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

#ifndef STREAMMT_MODEL_IO_HPP
#define STREAMMT_MODEL_IO_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "streammt/features.hpp"
#include "streammt/linreg.hpp"
#include "streammt/reverse_model.hpp"

namespace streammt {

// JSON model files. Each carries a "format" tag that load checks, so stale
// or foreign files fail loudly instead of decoding into garbage.

void save_reverse_model(const ReverseLexicalModel& model,
                        const std::filesystem::path& path);
ReverseLexicalModel load_reverse_model(const std::filesystem::path& path);

void save_linreg(const LinRegParams& params,
                 const std::filesystem::path& path);
LinRegParams load_linreg(const std::filesystem::path& path);

// Weights are stored with the feature names they were trained against;
// loaders can verify the order matches the feature set they assemble.
void save_weights(const FeatureWeights& weights,
                  const std::vector<std::string>& feature_names,
                  const std::filesystem::path& path);
std::pair<FeatureWeights, std::vector<std::string>> load_weights(
    const std::filesystem::path& path);

void save_naive_ratio(double ratio, const std::filesystem::path& path);
double load_naive_ratio(const std::filesystem::path& path);

}  // namespace streammt

#endif  // STREAMMT_MODEL_IO_HPP
