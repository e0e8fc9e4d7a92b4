// Copyright 2026 The votefw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "votefw/health.h"

#include <gtest/gtest.h>

#include <random>

#include "oracles.h"

namespace votefw {
namespace {

HealthRecord Contacted() {
  HealthRecord r;
  r.ever_contacted = true;
  return r;
}

HealthRecord Feed(HealthRecord r, const std::string& verdicts, const HealthParams& p) {
  CycleIndex c = 0;
  for (char v : verdicts) {
    r = record_cycle_verdict(r, v == 'g' ? Verdict::kGood : Verdict::kBad, p, c++);
  }
  return r;
}

TEST(Health, ThreeBadGoesBad) {
  auto r = Feed(Contacted(), "bbb", {3, 5, 3});
  EXPECT_EQ(r.state, HealthState::kBad);
  EXPECT_EQ(r.bad_episodes, 1u);
  EXPECT_EQ(r.last_transition_cycle, 2u);
}

TEST(Health, Rehabilitation) {
  HealthParams p{3, 5, 3};
  auto r = Feed(Contacted(), "bbb", p);
  r = Feed(r, "gggg", p);
  EXPECT_EQ(r.state, HealthState::kBad);
  r = record_cycle_verdict(r, Verdict::kGood, p, 99);
  EXPECT_EQ(r.state, HealthState::kGood);
  EXPECT_EQ(r.consecutive_good, 0u);
  EXPECT_EQ(r.consecutive_bad, 0u);
  EXPECT_EQ(r.last_transition_cycle, 99u);
}

TEST(Health, SecondEpisodeUnusable) {
  auto r = Feed(Contacted(), "bbggbb", {2, 2, 2});
  EXPECT_EQ(r.state, HealthState::kUnusable);
  EXPECT_EQ(r.bad_episodes, 2u);
}

TEST(Health, UnusableIsFrozen) {
  auto r = Feed(Contacted(), "b", {1, 1, 1});
  ASSERT_EQ(r.state, HealthState::kUnusable);
  try {
    record_cycle_verdict(r, Verdict::kGood, {1, 1, 1}, 5);
    FAIL();
  } catch (const HealthError& e) {
    EXPECT_EQ(e.code(), HealthErrorCode::kFrozenRecord);
  }
}

TEST(Health, Maintenance) {
  auto r = acknowledge_maintenance(Feed(Contacted(), "b", {1, 1, 1}));
  EXPECT_EQ(r.state, HealthState::kGood);
  EXPECT_EQ(r.bad_episodes, 0u);
  EXPECT_EQ(r.consecutive_bad, 0u);
  try {
    acknowledge_maintenance(HealthRecord{});
    FAIL();
  } catch (const HealthError& e) {
    EXPECT_EQ(e.code(), HealthErrorCode::kNotUnusable);
  }
}

TEST(Health, NeverContactedGrace) {
  HealthParams p{2, 3, 1};
  auto r = Feed(HealthRecord{}, "bbbbbbbbbb", p);
  EXPECT_EQ(r.state, HealthState::kBad);
  EXPECT_EQ(r.bad_episodes, 0u);
  r.ever_contacted = true;
  r = Feed(r, "ggg", p);
  EXPECT_EQ(r.state, HealthState::kGood);
  r = Feed(r, "bb", p);
  EXPECT_EQ(r.state, HealthState::kUnusable);
}

TEST(Health, SnapshotIsACopy) {
  VoteProfile p(testing::PrototypeProfile());
  auto a = health_snapshot(p);
  EXPECT_EQ(a, health_snapshot(p));
  for (const auto& [id, rec] : a) EXPECT_EQ(rec.state, HealthState::kGood);
  p.mutable_health(SensorId{2}).state = HealthState::kBad;
  EXPECT_EQ(a.at(SensorId{2}).state, HealthState::kGood);
}

TEST(Health, ExhaustiveModelCheck) {
  for (int bt = 1; bt <= 3; ++bt) {
    for (int rt = 1; rt <= 3; ++rt) {
      for (int ut = 1; ut <= 3; ++ut) {
        const HealthParams params{static_cast<std::uint32_t>(bt), static_cast<std::uint32_t>(rt),
                                  static_cast<std::uint32_t>(ut)};
        for (int len = 0; len <= 12; ++len) {
          for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
            HealthRecord r = Contacted();
            testing::RefHealth ref;
            for (int i = 0; i < len; ++i) {
              if (r.state == HealthState::kUnusable) break;
              const bool good = bits & (1u << i);
              r = record_cycle_verdict(r, good ? Verdict::kGood : Verdict::kBad, params, i);
              ref = testing::RefStep(ref, good, bt, rt, ut);
              ASSERT_EQ(r.state, testing::ToHealthState(ref.state));
              ASSERT_EQ(r.bad_episodes, static_cast<std::uint32_t>(ref.episodes));
              if (r.state != HealthState::kUnusable) {
                ASSERT_EQ(r.consecutive_good, static_cast<std::uint32_t>(ref.good_run));
                ASSERT_EQ(r.consecutive_bad, static_cast<std::uint32_t>(ref.bad_run));
              }
            }
          }
        }
      }
    }
  }
}

TEST(Health, InvariantsUnderRandomWalks) {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 2000; ++iter) {
    HealthParams p{1 + static_cast<std::uint32_t>(rng() % 4), 1 + static_cast<std::uint32_t>(rng() % 4),
                   1 + static_cast<std::uint32_t>(rng() % 4)};
    HealthRecord r;
    std::uint32_t episodes = 0;
    for (CycleIndex c = 0; c < 60; ++c) {
      if (rng() % 5 == 0) r.ever_contacted = true;
      if (r.state == HealthState::kUnusable) {
        ASSERT_GE(r.bad_episodes, p.unusable_threshold);
        if (rng() % 4 == 0) {
          r = acknowledge_maintenance(r);
          episodes = 0;
        }
        continue;
      }
      r = record_cycle_verdict(r, rng() % 2 ? Verdict::kGood : Verdict::kBad, p, c);
      ASSERT_EQ(r.consecutive_good * r.consecutive_bad, 0u);
      ASSERT_GE(r.bad_episodes, episodes);
      episodes = r.bad_episodes;
    }
  }
}

}  // namespace
}  // namespace votefw
