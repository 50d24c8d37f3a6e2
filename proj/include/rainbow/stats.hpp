// Copyright 2026 The rainbow-dout Authors
//
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

#pragma once

#include <cmath>
#include <cstdint>

namespace rainbow {

inline constexpr double kZ95 = 1.959963984540054;

struct Proportion {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double rate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;

  double half_width() const { return 0.5 * (ci_hi - ci_lo); }
};

/// Wilson score interval. With zero trials the interval is [0, 1].
inline Proportion wilson(std::uint64_t successes, std::uint64_t trials, double z = kZ95) {
  Proportion out{trials, successes, 0.0, 0.0, 1.0};
  if (trials == 0) return out;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (phat + z2 / (2.0 * n)) / denom;
  const double spread = z * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  out.rate = phat;
  // Rounding otherwise leaves ~1e-17 at the all-or-nothing endpoints.
  out.ci_lo = successes == 0 ? 0.0 : std::fmax(0.0, centre - spread);
  out.ci_hi = successes == trials ? 1.0 : std::fmin(1.0, centre + spread);
  return out;
}

/// Pooled standard error of the difference of two proportions.
inline double pooled_standard_error(const Proportion& a, const Proportion& b) {
  const double n1 = static_cast<double>(a.trials);
  const double n2 = static_cast<double>(b.trials);
  const double pooled = static_cast<double>(a.successes + b.successes) / (n1 + n2);
  return std::sqrt(pooled * (1.0 - pooled) * (1.0 / n1 + 1.0 / n2));
}

}  // namespace rainbow
