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

#include "broadband_dp/release.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "absl/strings/str_format.h"
#include "broadband_dp/accountant.h"
#include "broadband_dp/mechanism.h"
#include "gtest/gtest.h"

namespace broadband_dp {
namespace {

Epsilon E(const char* text) { return *Epsilon::Parse(text); }
ZoneId Z(const char* code) { return *ZoneId::Parse(code); }

RawZipRecord Raw(const char* zone, int64_t l, int64_t h, int64_t m,
                 int64_t o) {
  RawZipRecord r{Z(zone)};
  r.low_speed_devices = l;
  r.high_speed_devices = h;
  r.services_devices = m;
  r.non_services_devices = o;
  return r;
}

// Coverage written the way it is usually stated: H * (M / (M + O))^-1 / HUD.
double DirectCoverage(double h, double m, double o, double households) {
  return h * std::pow(m / (m + o), -1.0) * (1.0 / households);
}

TEST(ZoneIdTest, AcceptsFiveDigitsOnly) {
  EXPECT_EQ(Z("00501").str(), "00501");
  for (const char* bad : {"501", "005010", "0050a", "", " 0050"}) {
    EXPECT_FALSE(ZoneId::Parse(bad).ok()) << bad;
  }
}

TEST(ComputeBceTest, HandEvaluatedValues) {
  // 80 * (500 / 400) / 125
  EXPECT_DOUBLE_EQ(*ComputeBce(80, 400, 100, 125), 0.8);
  // No non-services devices: the ratio term is 1.
  EXPECT_DOUBLE_EQ(*ComputeBce(50, 200, 0, 100), 0.5);
  EXPECT_EQ(*ComputeBce(0, 7, 3, 10), 0.0);
  EXPECT_EQ(*ComputeBce(0, 0.5, 1e6, 1), 0.0);
}

TEST(ComputeBceTest, DegenerateAndInvalidInputs) {
  EXPECT_EQ(ComputeBce(5, 0, 3, 10).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_EQ(ComputeBce(5, 1, 3, 0).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(ComputeBce(-1, 1, 3, 10).ok());
  EXPECT_FALSE(ComputeBce(1, 1, NAN, 10).ok());
}

TEST(ComputeBceTest, AgreesWithDirectFormula) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> count(0, 1e6);
  std::uniform_real_distribution<double> positive(1e-3, 1e6);
  std::uniform_int_distribution<int64_t> hh(1, 1'000'000);
  for (int i = 0; i < 10000; ++i) {
    const double h = count(rng), m = positive(rng), o = count(rng);
    const int64_t households = hh(rng);
    const double expected = DirectCoverage(h, m, o, households);
    EXPECT_NEAR(*ComputeBce(h, m, o, households), expected,
                8 * std::numeric_limits<double>::epsilon() * expected);
  }
}

TEST(ClipTest, ClipsAndIsIdempotent) {
  for (double v : {-3.0, -0.0, 0.0, 0.3, 1.0, 1.7, 1e300}) {
    const double once = ClipToUnitInterval(v);
    EXPECT_GE(once, 0.0);
    EXPECT_LE(once, 1.0);
    EXPECT_EQ(ClipToUnitInterval(once), once);
  }
  EXPECT_EQ(ClipToUnitInterval(1.7), 1.0);
}

TEST(EstimateCoverageTest, UndefinedWithoutServicesOrHouseholds) {
  const CoverageEstimate no_services =
      EstimateCoverage(Z("10001"), 5, 0, 3, 10);
  EXPECT_FALSE(no_services.defined());
  EXPECT_FALSE(no_services.raw_bce.has_value());
  EXPECT_FALSE(EstimateCoverage(Z("10001"), 5, 1, 3, std::nullopt).defined());
}

TEST(EstimateCoverageTest, KeepsRawValueAboveOne) {
  const CoverageEstimate c = EstimateCoverage(Z("10001"), 300, 100, 100, 200);
  ASSERT_TRUE(c.defined());
  EXPECT_DOUBLE_EQ(*c.raw_bce, 3.0);
  EXPECT_EQ(*c.bce, 1.0);
  EXPECT_GE(*c.raw_bce, *c.bce);
}

TEST(HouseholdTableTest, RejectsDuplicatesAndZero) {
  EXPECT_TRUE(MakeHouseholdTable({{Z("00001"), 5}, {Z("00002"), 1}}).ok());
  EXPECT_FALSE(MakeHouseholdTable({{Z("00001"), 5}, {Z("00001"), 6}}).ok());
  EXPECT_FALSE(MakeHouseholdTable({{Z("00001"), 0}}).ok());
}

TEST(PrivatizeRecordTest, CarriesPlanTotal) {
  absl::StatusOr<PrivateZipRecord> r =
      PrivatizeRecord(Raw("02139", 10, 20, 30, 40), E("0.1"), 9);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->epsilon_total, E("0.2"));
  EXPECT_EQ(r->epsilon_total, *TotalEpsilon(CoverageReleasePlan(E("0.1"))));
  EXPECT_EQ(PrivatizeRecord(Raw("02139", 1, 1, 1, 1), E("0.25"), 9)
                ->epsilon_total,
            E("0.5"));
}

TEST(PrivatizeRecordTest, ZeroCountsStayNonnegative) {
  for (uint64_t seed = 0; seed < 500; ++seed) {
    const PrivateZipRecord r =
        *PrivatizeRecord(Raw("00000", 0, 0, 0, 0), E("0.1"), seed);
    EXPECT_GE(r.low_speed_devices, 0);
    EXPECT_GE(r.high_speed_devices, 0);
    EXPECT_GE(r.services_devices, 0);
    EXPECT_GE(r.non_services_devices, 0);
  }
}

TEST(PrivatizeRecordTest, DeterministicForFixedSeed) {
  const RawZipRecord raw = Raw("60601", 120, 880, 700, 300);
  EXPECT_EQ(*PrivatizeRecord(raw, E("0.1"), 77),
            *PrivatizeRecord(raw, E("0.1"), 77));
  EXPECT_NE(*PrivatizeRecord(raw, E("0.1"), 77),
            *PrivatizeRecord(raw, E("0.1"), 78));
}

TEST(PrivatizeRecordTest, RejectsNegativeCounts) {
  EXPECT_FALSE(PrivatizeRecord(Raw("60601", -1, 0, 0, 0), E("0.1"), 1).ok());
}

TEST(ReleaseDatasetTest, EmptyInputGivesEmptyOutput) {
  absl::StatusOr<std::vector<ReleasedZone>> out =
      ReleaseDataset({}, {}, E("0.1"), 1);
  ASSERT_TRUE(out.ok());
  EXPECT_TRUE(out->empty());
}

TEST(ReleaseDatasetTest, MatchesHandChainedSteps) {
  const RawZipRecord raw = Raw("94105", 1, 3, 2, 1);
  const HouseholdTable households = {{Z("94105"), 1'000'000}};
  const uint64_t seed = 2024;
  const ReleasedZone out =
      ReleaseDataset({raw}, households, E("0.1"), seed)->front();

  const LaplaceParams params = *LaplaceParams::ForCount(0.1);
  auto noisy = [&](double count, const char* query) {
    const double noise =
        SampleLaplace(params, NoiseSeed{seed, {"94105", query, 0}});
    return std::max(0.0, count + noise);
  };
  const double l = noisy(1, "L"), h = noisy(3, "H"), m = noisy(2, "M"),
               o = noisy(1, "O");
  EXPECT_EQ(out.counts.low_speed_devices, l);
  EXPECT_EQ(out.counts.high_speed_devices, h);
  EXPECT_EQ(out.counts.services_devices, m);
  EXPECT_EQ(out.counts.non_services_devices, o);
  if (m > 0) {
    const double raw_bce = h * (m + o) / (m * 1'000'000.0);
    EXPECT_EQ(*out.coverage.raw_bce, raw_bce);
    EXPECT_EQ(*out.coverage.bce, std::clamp(raw_bce, 0.0, 1.0));
  } else {
    EXPECT_FALSE(out.coverage.defined());
  }
}

TEST(ReleaseDatasetTest, RejectsDuplicateZones) {
  const std::vector<RawZipRecord> records = {Raw("00001", 1, 1, 1, 1),
                                             Raw("00001", 2, 2, 2, 2)};
  EXPECT_EQ(ReleaseDataset(records, {}, E("0.1"), 1).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(ReleaseDatasetTest, MissingHouseholdsAreUndefinedNotFatal) {
  const std::vector<RawZipRecord> records = {Raw("00001", 10, 900, 800, 200),
                                             Raw("00002", 10, 900, 800, 200)};
  const HouseholdTable households = {{Z("00002"), 1000}};
  std::vector<ReleasedZone> out =
      *ReleaseDataset(records, households, E("0.1"), 1);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_FALSE(out[0].coverage.defined());
  EXPECT_TRUE(out[1].coverage.defined());
}

std::vector<RawZipRecord> SomeRecords(int n) {
  std::vector<RawZipRecord> out;
  for (int i = 0; i < n; ++i) {
    const std::string zone = absl::StrFormat("%05d", 100 + i);
    out.push_back(Raw(zone.c_str(), i % 7, 3 * i, 2 * i + 1, i % 5));
  }
  return out;
}

HouseholdTable HouseholdsFor(const std::vector<RawZipRecord>& records) {
  HouseholdTable table;
  for (const RawZipRecord& r : records) {
    table[r.zone] = 1 + r.high_speed_devices;
  }
  return table;
}

TEST(ReleaseDatasetTest, PreservesOrderAndIsScheduleIndependent) {
  const std::vector<RawZipRecord> records = SomeRecords(257);
  const HouseholdTable households = HouseholdsFor(records);
  ReleaseOptions serial, parallel;
  parallel.threads = 4;
  std::vector<ReleasedZone> a =
      *ReleaseDataset(records, households, E("0.1"), 5, serial);
  std::vector<ReleasedZone> b =
      *ReleaseDataset(records, households, E("0.1"), 5, parallel);
  ASSERT_EQ(a.size(), records.size());
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].counts.zone, records[i].zone);
    EXPECT_EQ(a[i].counts, b[i].counts);
    EXPECT_EQ(a[i].coverage.raw_bce, b[i].coverage.raw_bce);
  }
}

TEST(ReleaseDatasetTest, ZoneOutputIgnoresOtherRecords) {
  std::vector<RawZipRecord> records = SomeRecords(50);
  const HouseholdTable households = HouseholdsFor(records);
  const std::vector<ReleasedZone> before =
      *ReleaseDataset(records, households, E("0.1"), 3);
  std::mt19937_64 rng(1);
  std::vector<size_t> order(records.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<RawZipRecord> shuffled;
  for (size_t i : order) shuffled.push_back(records[i]);
  const std::vector<ReleasedZone> after =
      *ReleaseDataset(shuffled, households, E("0.1"), 3);
  for (size_t j = 0; j < order.size(); ++j) {
    EXPECT_EQ(after[j].counts, before[order[j]].counts);
    EXPECT_EQ(after[j].coverage.bce, before[order[j]].coverage.bce);
  }
}

TEST(ReleaseDatasetTest, LowSpeedCountNeverReachesCoverage) {
  const HouseholdTable households = {{Z("30301"), 500}};
  const ReleasedZone a =
      ReleaseDataset({Raw("30301", 0, 400, 450, 50)}, households, E("0.1"), 8)
          ->front();
  const ReleasedZone b = ReleaseDataset({Raw("30301", 99999, 400, 450, 50)},
                                        households, E("0.1"), 8)
                             ->front();
  EXPECT_NE(a.counts.low_speed_devices, b.counts.low_speed_devices);
  EXPECT_EQ(a.coverage.raw_bce, b.coverage.raw_bce);
  EXPECT_EQ(a.coverage.bce, b.coverage.bce);
  EXPECT_EQ(a.coverage.bce, EstimateCoverage(a.counts, 500).bce);
}

TEST(ReleaseDatasetTest, RoundCountsIsPostProcessing) {
  const std::vector<RawZipRecord> records = SomeRecords(20);
  const HouseholdTable households = HouseholdsFor(records);
  ReleaseOptions rounded;
  rounded.round_counts = true;
  const std::vector<ReleasedZone> plain =
      *ReleaseDataset(records, households, E("0.1"), 4);
  const std::vector<ReleasedZone> out =
      *ReleaseDataset(records, households, E("0.1"), 4, rounded);
  for (size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i].counts.high_speed_devices,
              std::round(plain[i].counts.high_speed_devices));
    EXPECT_EQ(out[i].counts.services_devices,
              std::round(out[i].counts.services_devices));
    EXPECT_EQ(out[i].counts.epsilon_total, E("0.2"));
  }
}

}  // namespace
}  // namespace broadband_dp
