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

#include "rainbow/analytic_bounds.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace rainbow::bounds {
namespace {

TEST(Theorem1, ReferencePoint) {
  const auto t = theorem1_threshold(10000, 2, 0.5);
  EXPECT_EQ(t.blocks, 2000);
  EXPECT_NEAR(t.structural, std::sqrt(10 * std::log(2000.0) / 2000), 1e-15);
  EXPECT_NEAR(t.structural, 0.195, 5e-4);
  EXPECT_NEAR(t.colour, 0.0737, 5e-5);
  EXPECT_EQ(t.p_min, std::max(t.structural, t.colour));
  EXPECT_TRUE(t.hypothesis_holds);
}

TEST(Theorem1, HypothesisViolation) {
  EXPECT_THROW(theorem1_threshold(25, 2, 0.5), std::domain_error);
  const auto t = theorem1_threshold(25, 2, 0.5, {.strict = false});
  EXPECT_FALSE(t.hypothesis_holds);
  EXPECT_GE(t.p_min, 0.0);
  EXPECT_THROW(theorem1_threshold(1000, 2, 0.0), std::invalid_argument);
}

TEST(Theorem1, AlternativeParse) {
  const auto t = theorem1_threshold(10000, 2, 0.5, {.both_parses = true});
  ASSERT_TRUE(t.structural_alt);
  EXPECT_NEAR(*t.structural_alt, std::sqrt(10 * std::log(2501.0) / 2501), 1e-15);
  EXPECT_EQ(*t.p_min_alt, std::max(*t.structural_alt, t.colour));
}

TEST(Theorem1, NonincreasingAlongPowersOfTwo) {
  for (int delta : {1, 2, 3}) {
    double last = std::numeric_limits<double>::infinity();
    bool started = false;
    for (int k = 8; k <= 40; ++k) {
      const auto n = std::int64_t{1} << k;
      const auto t = theorem1_threshold(n, delta, 0.5, {.strict = false});
      if (!t.hypothesis_holds) continue;
      // n0: past the first few points the sequence must only go down.
      if (started && k >= 14) {
        EXPECT_LE(t.p_min, last) << "delta=" << delta << " k=" << k;
      }
      last = t.p_min;
      started = true;
    }
  }
}

TEST(Theorem1, ColourTermVanishesAsEpsGrows) {
  const auto t = theorem1_threshold(10000, 2, 1e8);
  EXPECT_LT(t.colour, 1e-12);
  EXPECT_EQ(t.p_min, t.structural);
}

TEST(Theorem1, TermsCross) {
  bool colour_dominates = false, structural_dominates = false;
  for (int k = 5; k <= 30; ++k) {
    const auto t = theorem1_threshold(std::int64_t{1} << k, 2, 0.5);
    if (t.colour > t.structural) colour_dominates = true;
    if (t.structural > t.colour) {
      structural_dominates = true;
      EXPECT_TRUE(colour_dominates) << "colour term should dominate first";
    }
  }
  EXPECT_TRUE(colour_dominates);
  EXPECT_TRUE(structural_dominates);
}

TEST(AlonFuredi, MatchesStructuralTerm) {
  for (std::int64_t n : {30, 100, 999, 10000, 123456})
    for (std::int64_t delta : {1, 2})
      if ((delta * delta + 1) * (delta * delta + 1) < n) {
        EXPECT_EQ(alon_furedi_threshold(n, delta), theorem1_threshold(n, delta, 0.3).structural);
      }
  EXPECT_NEAR(alon_furedi_threshold(10000, 2), 0.195, 5e-4);
  const double m = 5000;
  EXPECT_NEAR(alon_furedi_threshold(10000, 1), 10 * std::log(m) / m, 1e-15);
}

TEST(Chernoff, Values) {
  EXPECT_DOUBLE_EQ(chernoff_bound(100, 0.0, 0.5), 100.0);
  EXPECT_NEAR(chernoff_bound(100, 0.1, 0.5), 100 * std::exp(-1.25), 1e-12);
  EXPECT_NEAR(chernoff_bound(100, 0.1, 0.5), 28.65, 5e-3);
  EXPECT_THROW(chernoff_bound(100, 0.1, 1.5), std::invalid_argument);
  EXPECT_THROW(chernoff_bound(100, 0.1, 0.0), std::invalid_argument);
}

TEST(Chernoff, StrictlyDecreasing) {
  for (int i = 1; i < 10; ++i) {
    EXPECT_GT(chernoff_bound(100, 0.1, i / 10.0), chernoff_bound(100, 0.1, (i + 1) / 10.0));
    EXPECT_GT(chernoff_bound(100, (i - 1) / 10.0, 0.5), chernoff_bound(100, i / 10.0, 0.5));
  }
}

TEST(LogL, TopOfRangeCollapses) {
  const LParams q{10, 2, 25, 0.5, 0.3};
  const double expected = std::log(2.0) + std::log(25.0) + std::log(10.0) + (0.5 * 10 * 0.3 / 2) * std::log(1 / 25.0);
  EXPECT_NEAR(log_L(q, 24), expected, 1e-12);
}

TEST(LogL, ReferenceTuple) {
  const LParams q{10, 1, 15, 0.5, 0.3};
  const long double direct = oracle::L_direct(10, 1, 15, 0.5L, 0.3L, 10);
  EXPECT_NEAR(std::exp(log_L(q, 10)) / static_cast<double>(direct), 1.0, 1e-9);
}

TEST(LogL, AgreesWithDirectProductOnSmallTuples) {
  int checked = 0;
  for (std::int64_t n = 1; n <= 12; ++n)
    for (std::int64_t d = 1; d <= 3; ++d)
      for (std::int64_t kappa = 1; kappa <= 30; ++kappa)
        for (double eps : {0.25, 0.5, 0.9})
          for (double p1 : {0.05, 0.3, 0.9}) {
            const LParams q{n, d, kappa, eps, p1};
            for (auto s = std::max<std::int64_t>(0, s_lower(q)); s <= s_upper(q); ++s) {
              const double got = log_L(q, s);
              ASSERT_TRUE(std::isfinite(got));
              const long double want = std::log(oracle::L_direct(n, d, kappa, eps, p1, s));
              // Relative error in L equals absolute error in log L to first order.
              ASSERT_NEAR(got, static_cast<double>(want), 1e-9) << n << " " << d << " " << kappa << " " << s;
              ++checked;
            }
          }
  EXPECT_GT(checked, 10000);
}

TEST(LogL, RejectsOutOfRange) {
  const LParams q{5, 2, 12, 0.5, 0.3};
  EXPECT_THROW(log_L(q, 2), std::domain_error);
  EXPECT_THROW(log_L(q, 12), std::domain_error);
  EXPECT_NO_THROW(log_L(q, 3));
  EXPECT_NO_THROW(log_L(q, 11));
}

TEST(Theta, EmptyRangeIsChernoffOnly) {
  const auto rep = theta({1, 1, 1, 0.5, 0.3});
  EXPECT_TRUE(rep.log_L.empty());
  EXPECT_DOUBLE_EQ(rep.theta_raw, rep.chernoff_term);
  EXPECT_THROW(theta({5, 2, 9, 0.5, 0.3}), std::domain_error);
}

TEST(Theta, MatchesDirectSummation) {
  const auto rep = theta({6, 1, 9, 0.5, 0.4});
  EXPECT_EQ(rep.s_lo, 4);
  EXPECT_EQ(rep.s_hi, 8);
  const long double want = oracle::theta_direct(6, 1, 9, 0.5L, 0.4L);
  EXPECT_NEAR(rep.theta_raw / static_cast<double>(want), 1.0, 1e-9);
  EXPECT_EQ(rep.theta_clamped, std::min(rep.theta_raw, 1.0));
}

TEST(Theta, StrictlyDecreasingAlongGrowthSequence) {
  const double eps = 0.5;
  const std::int64_t d = 2;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 10; k <= 18; ++k) {
    const std::int64_t n = std::int64_t{1} << k;
    const auto kappa = static_cast<std::int64_t>(std::ceil((1 + eps) * d * n));
    const double p1 = 5.0 * d / (eps * eps) * std::log(double(n)) / double(n);
    const auto rep = theta({n, d, kappa, eps, p1});
    EXPECT_LT(rep.log_theta, last) << "k=" << k;
    last = rep.log_theta;
  }
}

TEST(Theta, DominatesChernoffTerm) {
  for (std::int64_t n : {3, 8, 20})
    for (std::int64_t d : {1, 2})
      for (double p1 : {0.1, 0.5, 1.0}) {
        const auto rep = theta({n, d, 2 * d * n, 0.5, p1});
        EXPECT_GE(rep.theta_raw, rep.chernoff_term);
        EXPECT_GE(rep.log_theta, rep.log_chernoff);
        for (double x : rep.log_L) EXPECT_TRUE(std::isfinite(x));
      }
}

TEST(Riordan, Values) {
  const auto r = riordan_condition(1e6, 0.3, 2, 4, 1000);
  EXPECT_NEAR(r.value, 351.5625, 1e-9);
  EXPECT_DOUBLE_EQ(r.edges_p, 300.0);
  EXPECT_DOUBLE_EQ(riordan_condition(100, 1.0, 2, 4, 180).sqrt_slack, 0.0);
  EXPECT_THROW(riordan_condition(100, 0.5, 0, 4, 180), std::invalid_argument);
}

TEST(Riordan, GridGrowsAsOmegaSquared) {
  const double n = 1e6;
  for (double omega : {1.0, 4.0, 16.0}) {
    const double p = omega / std::sqrt(n);
    EXPECT_NEAR(riordan_condition(n, p, 2, 4, 2 * 1000 * 999).value, omega * omega / 256, 1e-9);
  }
}

TEST(Finiteness, ExtremeParameters) {
  const LParams q{1000000000, 3, 10000000000, 0.5, 1e-6};
  EXPECT_TRUE(std::isfinite(log_L(q, s_upper(q))));
  EXPECT_TRUE(std::isfinite(log_L(q, s_lower(q))));
  EXPECT_TRUE(std::isfinite(log_L(q, (s_lower(q) + s_upper(q)) / 2)));
  EXPECT_TRUE(std::isfinite(log_chernoff_bound(1e9, 1e-6, 0.5)));
  const auto rep = theta({1000, 2, 10000000000, 0.5, 0.01});
  EXPECT_TRUE(std::isfinite(rep.log_theta));
  const auto t = theorem1_threshold(1000000000, 30, 0.5);
  EXPECT_TRUE(std::isfinite(t.p_min));
}

}  // namespace
}  // namespace rainbow::bounds
