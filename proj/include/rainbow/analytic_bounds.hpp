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

// Closed-form thresholds and tail bounds, evaluated in log space.
// All logarithms are natural.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rainbow::bounds {

inline double log_choose(double n, double k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// log(exp(a) + exp(b)) with -inf handled.
inline double log_add(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// ---------------------------------------------------------------------------
// Edge-probability thresholds.

struct Theorem1Terms {
  std::int64_t blocks = 0;         // floor(n / (delta^2 + 1))
  double structural = 0.0;         // (10 ln m / m)^(1/delta)
  double colour = 0.0;             // 10 eps^-2 delta ln n / n
  double p_min = 0.0;              // max of the two
  bool hypothesis_holds = true;    // (delta^2 + 1)^2 < n
  /// Same quantities with m = floor(n / delta^2) + 1, when requested.
  std::optional<double> structural_alt;
  std::optional<double> p_min_alt;
};

struct RiordanTerms {
  double value = 0.0;      // n p^gamma / delta^4
  double edges_p = 0.0;    // e(H) p
  double sqrt_slack = 0.0; // (1 - p) sqrt(n)
};

struct ThresholdReport {
  std::optional<Theorem1Terms> theorem1;
  std::optional<double> alon_furedi;
  std::optional<RiordanTerms> riordan;
};

namespace detail {

inline double structural_term(double m, double delta) {
  if (m <= 1.0) return 0.0;
  return std::pow(10.0 * std::log(m) / m, 1.0 / delta);
}

inline void check_delta(std::int64_t n, std::int64_t delta) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (delta < 1) throw std::invalid_argument("maximum degree must be positive");
}

}  // namespace detail

struct Theorem1Options {
  /// Throw std::domain_error when (delta^2 + 1)^2 >= n instead of only
  /// clearing hypothesis_holds.
  bool strict = true;
  /// Also evaluate the floor(n / delta^2) + 1 reading of the block count.
  bool both_parses = false;
};

inline Theorem1Terms theorem1_threshold(std::int64_t n, std::int64_t delta, double eps, Theorem1Options opts = {}) {
  detail::check_delta(n, delta);
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  Theorem1Terms t;
  const double side = static_cast<double>(delta * delta + 1);
  t.hypothesis_holds = side * side < static_cast<double>(n);
  if (!t.hypothesis_holds && opts.strict)
    throw std::domain_error("theorem1_threshold requires (delta^2 + 1)^2 < n");
  t.blocks = n / (delta * delta + 1);
  const double dd = static_cast<double>(delta);
  const double nn = static_cast<double>(n);
  t.structural = detail::structural_term(static_cast<double>(t.blocks), dd);
  t.colour = 10.0 / (eps * eps) * dd * std::log(nn) / nn;
  t.p_min = std::max(t.structural, t.colour);
  if (opts.both_parses) {
    const auto alt_blocks = n / (delta * delta) + 1;
    t.structural_alt = detail::structural_term(static_cast<double>(alt_blocks), dd);
    t.p_min_alt = std::max(*t.structural_alt, t.colour);
  }
  return t;
}

/// Uncoloured spanning-embedding threshold: the structural term alone.
inline double alon_furedi_threshold(std::int64_t n, std::int64_t delta) {
  detail::check_delta(n, delta);
  return detail::structural_term(static_cast<double>(n / (delta * delta + 1)), static_cast<double>(delta));
}

inline RiordanTerms riordan_condition(double n, double p, double gamma, double delta, double e_h_total) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (!(delta > 0.0)) throw std::invalid_argument("maximum degree must be positive");
  RiordanTerms r;
  r.value = n * std::pow(p, gamma) / std::pow(delta, 4.0);
  r.edges_p = e_h_total * p;
  r.sqrt_slack = (1.0 - p) * std::sqrt(n);
  return r;
}

// ---------------------------------------------------------------------------
// Minimum out-degree tail and the union bound over violating colour sets.

inline double log_chernoff_bound(double n, double p1, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
  if (!(p1 >= 0.0 && p1 <= 1.0)) throw std::invalid_argument("p1 must lie in [0, 1]");
  return std::log(n) - eps * eps * n * p1 / 2.0;
}

/// n exp(-eps^2 n p1 / 2): bound on P(min out-degree <= (1 - eps) n p1).
inline double chernoff_bound(double n, double p1, double eps) { return std::exp(log_chernoff_bound(n, p1, eps)); }

struct LParams {
  std::int64_t n = 0;
  std::int64_t d = 0;
  std::int64_t kappa = 0;
  double eps = 0.0;
  double p1 = 0.0;
};

inline std::int64_t s_lower(const LParams& q) { return q.kappa - q.d * q.n + 1; }
inline std::int64_t s_upper(const LParams& q) { return q.kappa - 1; }

/// log of 2 C(kappa, s) C(n, ceil((kappa - s)/d)) ((kappa - s)/kappa)^((kappa - s)(1 - eps) n p1 / d).
inline double log_L(const LParams& q, std::int64_t s) {
  if (q.n < 1 || q.d < 1 || q.kappa < 1) throw std::invalid_argument("log_L: n, d, kappa must be positive");
  if (s < s_lower(q) || s > s_upper(q) || s < 0)
    throw std::domain_error("log_L: s outside [kappa - d n + 1, kappa - 1]");
  const std::int64_t r = q.kappa - s;
  const std::int64_t t = (r + q.d - 1) / q.d;
  const double kappa = static_cast<double>(q.kappa);
  const double exponent = static_cast<double>(r) * (1.0 - q.eps) * static_cast<double>(q.n) * q.p1 /
                          static_cast<double>(q.d);
  // r >= 1 keeps the base positive; a zero exponent contributes 0.
  const double power = exponent == 0.0 ? 0.0 : exponent * std::log(static_cast<double>(r) / kappa);
  return std::log(2.0) + log_choose(kappa, static_cast<double>(s)) +
         log_choose(static_cast<double>(q.n), static_cast<double>(t)) + power;
}

struct BoundReport {
  double chernoff_term = 0.0;
  double log_chernoff = 0.0;
  std::int64_t s_lo = 0;
  std::int64_t s_hi = -1;
  std::vector<double> log_L;  // log_L[i] is s = s_lo + i
  double log_sum_L = -std::numeric_limits<double>::infinity();
  double log_theta = 0.0;
  double theta_raw = 0.0;     // may exceed 1, may be +inf
  double theta_clamped = 0.0; // min(theta_raw, 1)
};

inline BoundReport theta(const LParams& q) {
  if (q.kappa < q.d * q.n) throw std::domain_error("theta requires kappa >= d n");
  BoundReport rep;
  rep.log_chernoff = log_chernoff_bound(static_cast<double>(q.n), q.p1, q.eps);
  rep.chernoff_term = std::exp(rep.log_chernoff);
  rep.s_lo = s_lower(q);
  rep.s_hi = s_upper(q);
  if (rep.s_hi >= rep.s_lo) {
    rep.log_L.reserve(static_cast<std::size_t>(rep.s_hi - rep.s_lo + 1));
    double hi = -std::numeric_limits<double>::infinity();
    for (auto s = rep.s_lo; s <= rep.s_hi; ++s) {
      rep.log_L.push_back(log_L(q, s));
      hi = std::max(hi, rep.log_L.back());
    }
    double acc = 0.0;
    for (double x : rep.log_L) acc += std::exp(x - hi);
    rep.log_sum_L = hi + std::log(acc);
  }
  rep.log_theta = log_add(rep.log_chernoff, rep.log_sum_L);
  rep.theta_raw = rep.chernoff_term + std::exp(rep.log_sum_L);
  rep.theta_clamped = std::min(rep.theta_raw, 1.0);
  return rep;
}

}  // namespace rainbow::bounds
