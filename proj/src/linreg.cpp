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

#include "streammt/linreg.hpp"

#include <cmath>
#include <numbers>

#include "streammt/errors.hpp"

namespace streammt {

LinRegParams fit_linreg(const std::vector<LengthObservation>& samples,
                        double sigma_min) {
  if (samples.size() < 2) {
    throw DataError("linear fit needs at least two observations");
  }
  double sum_ay = 0.0;
  double sum_yy = 0.0;
  for (const LengthObservation& s : samples) {
    const double y = static_cast<double>(s.target_len);
    const double a = static_cast<double>(s.boundary);
    sum_ay += a * y;
    sum_yy += y * y;
  }
  if (sum_yy == 0.0) {
    throw DataError("degenerate design: every target length is zero");
  }

  LinRegParams params;
  params.theta_mu = sum_ay / sum_yy;

  double sum_rr = 0.0;
  for (const LengthObservation& s : samples) {
    const double r = static_cast<double>(s.boundary) -
                     params.theta_mu * static_cast<double>(s.target_len);
    sum_rr += r * r;
  }
  const double sigma =
      std::sqrt(sum_rr / static_cast<double>(samples.size() - 1));
  params.theta_sigma = sigma > sigma_min ? sigma : sigma_min;
  return params;
}

double gaussian_score(const LinRegParams& params, std::size_t a,
                      std::size_t target_len) {
  const double mu = params.theta_mu * static_cast<double>(target_len);
  const double z = (static_cast<double>(a) - mu) / params.theta_sigma;
  return std::exp(-0.5 * z * z) /
         (params.theta_sigma * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace streammt
