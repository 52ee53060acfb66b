//
// Copyright 2026 The Broadband DP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "broadband_dp/errorsim.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "broadband_dp/mechanism.h"
#include "broadband_dp/release.h"
#include "gtest/gtest.h"

namespace broadband_dp {
namespace {

Epsilon E(const char* text) { return *Epsilon::Parse(text); }
ZoneId Z(const char* code) { return *ZoneId::Parse(code); }

PrivateZipRecord Released(const char* zone, double h, double m, double o) {
  PrivateZipRecord r{Z(zone)};
  r.low_speed_devices = 1;
  r.high_speed_devices = h;
  r.services_devices = m;
  r.non_services_devices = o;
  r.epsilon_total = E("0.2");
  return r;
}

SimulationConfig Config(int64_t k, const char* eps, uint64_t seed) {
  return SimulationConfig{k, E(eps), seed};
}

TEST(SimulatedDeviationTest, ZeroNoiseGivesZeroDeviation) {
  const PrivateZipRecord r = Released("10001", 400, 900, 100);
  EXPECT_EQ(*SimulatedDeviation(r, 1000, 0, 0, 0), 0.0);
}

TEST(SimulatedDeviationTest, FirstOrderInHighSpeedNoise) {
  const PrivateZipRecord r = Released("10001", 1e6, 1e9, 0);
  const LaplaceParams params = *LaplaceParams::ForCount(0.1);
  for (uint64_t i = 1; i <= 200; ++i) {
    const double eta_h = SampleLaplace(params, NoiseSeed{3, {"10001", "H", i}});
    const double eta_m = SampleLaplace(params, NoiseSeed{3, {"10001", "M", i}});
    const double eta_o = SampleLaplace(params, NoiseSeed{3, {"10001", "O", i}});
    const double d = *SimulatedDeviation(r, 2'000'000, eta_h, eta_m, eta_o);
    // Simulated coverage is 0.5 (1 + eta_h / 1e6)(1 + o / (1e9 + eta_m))
    // with o = max(0, eta_o); the second factor is the only non-H term.
    const double o_term = (std::fabs(eta_m) + std::fabs(eta_o)) / 1e9;
    EXPECT_NEAR(d, -eta_h / 2e6,
                1e-6 * std::fabs(eta_h / 2e6) + 0.5 * 1.01 * o_term);
    const double direct = 0.5 - (1e6 + eta_h) * std::pow(
        (1e9 + eta_m) / (1e9 + eta_m + std::max(0.0, eta_o)), -1) / 2e6;
    EXPECT_NEAR(d, direct, 1e-15);
    EXPECT_EQ(d, **SimulateOnce(r, 2'000'000, E("0.1"), 3, i));
  }
}

TEST(SimulatedDeviationTest, ClampedServicesCountIsUndefined) {
  const PrivateZipRecord r = Released("10001", 2, 0.3, 4);
  EXPECT_FALSE(SimulatedDeviation(r, 10, 0.5, -1.0, 0.0).has_value());
  EXPECT_TRUE(SimulatedDeviation(r, 10, 0.5, -0.1, 0.0).has_value());
}

TEST(SimulatedDeviationTest, UndefinedReleaseHasNoDeviation) {
  const PrivateZipRecord r = Released("10001", 2, 0, 4);
  EXPECT_FALSE(SimulatedDeviation(r, 10, 0, 5, 0).has_value());
}

TEST(SimulatedDeviationTest, BothSidesAreClipped) {
  // Released coverage clips to 1; so does any re-noised value above 1.
  const PrivateZipRecord r = Released("10001", 300, 100, 100);
  EXPECT_EQ(*SimulatedDeviation(r, 200, 5, -3, 2), 0.0);
}

TEST(SimulateOnceTest, RejectsReleaseIteration) {
  const PrivateZipRecord r = Released("10001", 10, 10, 10);
  EXPECT_FALSE(SimulateOnce(r, 10, E("0.1"), 1, 0).ok());
}

TEST(NearestRankTest, HundredValues) {
  std::vector<double> d;
  for (int j = 100; j >= 1; --j) d.push_back(0.01 * j);
  EXPECT_EQ(NearestRankPercentile(d, 95), 0.01 * 95);
  EXPECT_EQ(NearestRankPercentile(d, 100), 1.0);
  EXPECT_EQ(NearestRankPercentile(d, 1), 0.01);
}

TEST(NearestRankTest, SmallSamples) {
  EXPECT_EQ(NearestRankPercentile({0.7}, 95), 0.7);
  // ceil(0.95 * 2) = 2
  EXPECT_EQ(NearestRankPercentile({0.1, 0.3}, 95), 0.3);
  // ceil(0.95 * 20) = 19
  std::vector<double> v;
  for (int i = 1; i <= 20; ++i) v.push_back(i);
  EXPECT_EQ(NearestRankPercentile(v, 95), 19.0);
}

TEST(SummarizeDeviationsTest, Singleton) {
  const ErrorStats s = *SummarizeDeviations({-0.04});
  EXPECT_EQ(s.mae, 0.04);
  EXPECT_EQ(s.msd, -0.04);
  EXPECT_EQ(s.p95, 0.04);
  EXPECT_FALSE(SummarizeDeviations({}).has_value());
}

TEST(SummarizeDeviationsTest, InvariantsOnRandomVectors) {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> noise(0.01, 0.05);
  std::uniform_int_distribution<int> size(1, 300);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> d(size(rng));
    for (double& x : d) x = noise(rng);
    const ErrorStats s = *SummarizeDeviations(d);
    EXPECT_GE(s.mae, 0);
    EXPECT_GE(s.p95, 0);
    EXPECT_LE(std::fabs(s.msd), s.mae * (1 + 1e-12));
    EXPECT_TRUE(std::any_of(d.begin(), d.end(), [&](double x) {
      return std::fabs(x) == s.p95;
    }));
  }
}

TEST(EstimateErrorRangesTest, Deterministic) {
  const PrivateZipRecord r = Released("73301", 40, 60, 20);
  const ErrorReport a = *EstimateErrorRanges(r, 80, Config(500, "0.1", 6));
  const ErrorReport b = *EstimateErrorRanges(r, 80, Config(500, "0.1", 6));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.k, 500);
  ASSERT_TRUE(a.stats.has_value());
  EXPECT_NE(a, *EstimateErrorRanges(r, 80, Config(500, "0.1", 7)));
}

TEST(EstimateErrorRangesTest, DependsOnReleasedRecordOnly) {
  // Two different raw records that happen to release identical counts are
  // indistinguishable here: the API takes no raw input at all.
  const PrivateZipRecord r = Released("73301", 40.5, 60.25, 20.125);
  PrivateZipRecord copy = r;
  EXPECT_EQ(*EstimateErrorRanges(r, 80, Config(300, "0.1", 1)),
            *EstimateErrorRanges(copy, 80, Config(300, "0.1", 1)));
}

TEST(EstimateErrorRangesTest, CountsOnlyDefinedIterations) {
  // Tiny services count: some re-noised values clamp to zero.
  const PrivateZipRecord r = Released("73301", 3, 1.5, 2);
  const ErrorReport report = *EstimateErrorRanges(r, 10, Config(2000, "0.1", 2));
  EXPECT_GT(report.defined_fraction, 0.3);
  EXPECT_LT(report.defined_fraction, 0.7);
  ASSERT_TRUE(report.stats.has_value());
}

TEST(EstimateErrorRangesTest, UndefinedReleaseReportsNoStatistics) {
  const PrivateZipRecord r = Released("73301", 3, 0, 2);
  const ErrorReport report = *EstimateErrorRanges(r, 10, Config(50, "0.1", 2));
  EXPECT_FALSE(report.stats.has_value());
  EXPECT_EQ(report.defined_fraction, 0);
}

TEST(EstimateErrorRangesTest, RejectsBadConfig) {
  const PrivateZipRecord r = Released("73301", 3, 4, 2);
  EXPECT_FALSE(EstimateErrorRanges(r, 10, Config(0, "0.1", 1)).ok());
  EXPECT_FALSE(
      EstimateErrorRanges(r, 10, SimulationConfig{10, Epsilon(), 1}).ok());
  EXPECT_FALSE(EstimateErrorRanges(r, 0, Config(10, "0.1", 1)).ok());
}

TEST(EstimateErrorRangesTest, DoublingEpsilonHalvesMae) {
  const PrivateZipRecord r = Released("73301", 5e5, 8e5, 2e5);
  const ErrorReport at_01 =
      *EstimateErrorRanges(r, 1'000'000, Config(100'000, "0.1", 21));
  const ErrorReport at_02 =
      *EstimateErrorRanges(r, 1'000'000, Config(100'000, "0.2", 22));
  EXPECT_EQ(at_01.defined_fraction, 1.0);
  EXPECT_NEAR(at_01.stats->mae / at_02.stats->mae, 2.0, 0.05 * 2.0);
}

TEST(EstimateErrorRangesTest, UnbiasedWithoutClamping) {
  const PrivateZipRecord r = Released("73301", 5e4, 8e4, 2e4);
  constexpr int64_t kK = 100'000;
  const ErrorReport report =
      *EstimateErrorRanges(r, 100'000, Config(kK, "0.1", 31));
  double sum = 0, sum_sq = 0;
  for (int64_t i = 1; i <= kK; ++i) {
    const double d =
        **SimulateOnce(r, 100'000, E("0.1"), 31, static_cast<uint64_t>(i));
    sum += d;
    sum_sq += d * d;
  }
  const double mean = sum / kK;
  const double sd = std::sqrt((sum_sq - kK * mean * mean) / (kK - 1));
  EXPECT_NEAR(report.stats->msd, mean, 1e-15);
  EXPECT_LE(std::fabs(report.stats->msd), 4 * sd / std::sqrt(kK));
}

TEST(EstimateErrorRangesTest, ClampingShiftsSignedDeviation) {
  const PrivateZipRecord r = Released("73301", 3, 4, 2);
  constexpr int64_t kK = 100'000;
  const ErrorReport report = *EstimateErrorRanges(r, 10, Config(kK, "0.1", 5));
  // Standard error of the mean is at most 1 / sqrt(n) since |d| <= 1.
  const double n = report.defined_fraction * kK;
  EXPECT_GT(std::fabs(report.stats->msd), 4 / std::sqrt(n));
}

TEST(EstimateDatasetErrorRangesTest, ScheduleIndependentAndHandlesMissing) {
  std::vector<PrivateZipRecord> released;
  HouseholdTable households;
  for (int i = 0; i < 40; ++i) {
    char zone[6];
    std::snprintf(zone, sizeof(zone), "%05d", i);
    released.push_back(Released(zone, 10.0 * i, 20.0 * i + 1, 5.0 * i));
    if (i % 7 != 3) households[Z(zone)] = 25 * i + 1;
  }
  const std::vector<ErrorReport> a =
      *EstimateDatasetErrorRanges(released, households, Config(100, "0.1", 9), 1);
  const std::vector<ErrorReport> b =
      *EstimateDatasetErrorRanges(released, households, Config(100, "0.1", 9), 4);
  ASSERT_EQ(a.size(), released.size());
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a[3].stats.has_value());
  EXPECT_EQ(a[3].defined_fraction, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].zone, released[i].zone);
    if (i % 7 != 3) {
      EXPECT_EQ(a[i], *EstimateErrorRanges(released[i],
                                           households.at(released[i].zone),
                                           Config(100, "0.1", 9)));
    }
  }
}

ZoneErrorSample Sample(const char* zone, int64_t households, double mae,
                       double msd, double p95) {
  return ZoneErrorSample{ErrorReport{Z(zone), ErrorStats{mae, msd, p95}, 10, 1},
                         households};
}

TEST(BucketByHouseholdsTest, AssignsHalfOpenBuckets) {
  const std::vector<BucketSummary> buckets =
      *BucketByHouseholds({Sample("00001", 500, 0.1, 0.0, 0.2)},
                          std::vector<int64_t>{0, 1000, 10000});
  ASSERT_EQ(buckets.size(), 3u);
  EXPECT_EQ(buckets[0].range.low, 0);
  EXPECT_EQ(buckets[0].range.high, 1000);
  EXPECT_EQ(buckets[0].zone_count, 1);
  EXPECT_EQ(buckets[1].zone_count, 0);
  EXPECT_FALSE(buckets[1].mean_mae.has_value());
  EXPECT_FALSE(buckets[2].range.high.has_value());

  const std::vector<BucketSummary> edge =
      *BucketByHouseholds({Sample("00001", 1000, 0.1, 0.0, 0.2)},
                          std::vector<int64_t>{0, 1000, 10000});
  EXPECT_EQ(edge[1].zone_count, 1);
}

TEST(BucketByHouseholdsTest, IdenticalReportsGiveIdenticalMeans) {
  std::vector<ZoneErrorSample> samples;
  const int64_t households[] = {5, 50, 70, 300, 9000, 20000, 20001, 500000};
  for (int64_t h : households) {
    samples.push_back(Sample("00001", h, 0.0123, -0.0045, 0.031));
  }
  const std::vector<BucketSummary> buckets = *BucketByHouseholds(
      samples, std::vector<int64_t>{0, 100, 1000, 10000, 100000});
  int64_t total = 0;
  for (const BucketSummary& b : buckets) {
    total += b.zone_count;
    if (b.zone_count == 0) continue;
    EXPECT_DOUBLE_EQ(*b.mean_mae, 0.0123);
    EXPECT_DOUBLE_EQ(*b.mean_msd, -0.0045);
    EXPECT_DOUBLE_EQ(*b.mean_p95, 0.031);
  }
  EXPECT_EQ(total, 8);
}

TEST(BucketByHouseholdsTest, LeadingBucketWhenFirstThresholdPositive) {
  const std::vector<BucketSummary> buckets =
      *BucketByHouseholds({Sample("00001", 3, 0.5, 0.1, 0.9)},
                          std::vector<int64_t>{10, 100});
  ASSERT_EQ(buckets.size(), 3u);
  EXPECT_EQ(buckets[0].range.low, 0);
  EXPECT_EQ(buckets[0].range.high, 10);
  EXPECT_EQ(buckets[0].zone_count, 1);
}

TEST(BucketByHouseholdsTest, SkipsReportsWithoutStatistics) {
  ZoneErrorSample empty{ErrorReport{Z("00002"), std::nullopt, 10, 0}, 50};
  const std::vector<BucketSummary> buckets = *BucketByHouseholds(
      {empty, Sample("00001", 60, 0.5, 0.1, 0.9)}, std::vector<int64_t>{0});
  ASSERT_EQ(buckets.size(), 1u);
  EXPECT_EQ(buckets[0].zone_count, 1);
  EXPECT_EQ(*buckets[0].mean_mae, 0.5);
}

TEST(BucketByHouseholdsTest, RejectsBadThresholds) {
  EXPECT_FALSE(BucketByHouseholds({}, std::vector<int64_t>{0, 100, 50}).ok());
  EXPECT_FALSE(BucketByHouseholds({}, std::vector<int64_t>{0, 100, 100}).ok());
  EXPECT_FALSE(BucketByHouseholds({}, std::vector<int64_t>{}).ok());
  EXPECT_FALSE(BucketByHouseholds({}, std::vector<int64_t>{-5, 10}).ok());
}

}  // namespace
}  // namespace broadband_dp
