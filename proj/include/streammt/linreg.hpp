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

#ifndef STREAMMT_LINREG_HPP
#define STREAMMT_LINREG_HPP

#include <cstddef>
#include <vector>

namespace streammt {

// Lower bound on the fitted standard deviation so degenerate (zero-residual)
// fits still yield a usable density.
inline constexpr double kSigmaMin = 0.5;

// Gaussian position prior: boundary ~ N(theta_mu * |segment|, theta_sigma^2).
struct LinRegParams {
  double theta_mu = 1.0;
  double theta_sigma = kSigmaMin;
};

// One observation: the target segment length and the true boundary position.
struct LengthObservation {
  std::size_t target_len = 0;
  std::size_t boundary = 0;
};

// Least squares through the origin: theta_mu = sum(a*y) / sum(y^2);
// theta_sigma = max(sigma_min, sqrt(sum(residual^2) / (n-1))). Needs at
// least two observations and a non-degenerate design (some target_len > 0).
LinRegParams fit_linreg(const std::vector<LengthObservation>& samples,
                        double sigma_min = kSigmaMin);

// Density N(a | theta_mu * target_len, theta_sigma^2).
double gaussian_score(const LinRegParams& params, std::size_t a,
                      std::size_t target_len);

}  // namespace streammt

#endif  // STREAMMT_LINREG_HPP
