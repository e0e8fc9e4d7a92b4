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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.h"
#include "mutations.h"
#include "oracles.h"
#include "votefw/health.h"
#include "votefw/pipeline.h"
#include "votefw/sim/scenario.h"
#include "votefw/voters.h"

namespace votefw {
namespace {

using Clock = std::chrono::steady_clock;

struct CriterionResult {
  bool pass = true;
  std::string detail;
};

double SecondsSince(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string Scenario(const std::string& name) {
  return std::string(VOTEFW_SOURCE_DIR) + "/scenarios/" + name + ".json";
}

// 1. Both clustering voters equal the subset-enumeration oracle.
CriterionResult VoterOracleEquivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(20260101);
  const double epsilons[] = {0, 1, 5};
  int sets = 0, mismatches = 0;
  for (int i = 0; i < 12000; ++i) {
    const double eps = epsilons[i % 3];
    const std::size_t count = 1 + rng() % 6;
    auto ballots = testing::RandomBallots(rng, count, 15, 3);
    if (std::all_of(ballots.begin(), ballots.end(), [](const Ballot& b) { return b.weight == 0; })) {
      ballots[0].weight = 1;
    }
    const auto n = static_cast<std::uint32_t>(count + rng() % (7 - count));
    const auto m = 1 + static_cast<std::uint32_t>(rng() % n);
    if (!testing::Matches(moon_bounded_median(ballots, m, n, eps),
                          testing::BruteForceMoon(ballots, m, eps))) {
      ++mismatches;
    }
    if (!testing::Matches(weighted_cluster_vote(ballots, eps),
                          testing::BruteForceWeighted(ballots, eps))) {
      ++mismatches;
    }
    ++sets;
  }
  const double secs = SecondsSince(t0);
  std::ostringstream os;
  os << sets << " ballot sets x 2 voters, " << mismatches << " mismatches, " << secs << " s";
  return {mismatches == 0 && sets >= 10000 && secs < 10.0, os.str()};
}

// 2. One wild sensor out of three never disturbs a 2oo3 vote.
CriterionResult TmrMasking() {
  std::mt19937_64 rng(42);
  const auto cfg = testing::PrototypeProfile();
  const double eps = cfg.algorithm.epsilon;
  std::uniform_real_distribution<double> base(200, 700), near(0, eps), gap(10 * eps + 1e-6, 150);
  int failures = 0, exceptions = 0;
  for (int i = 0; i < 1000; ++i) {
    const double a = base(rng), b = a + near(rng);
    const double lo = std::min(a, b), hi = std::max(a, b);
    const double wild = (rng() & 1) ? hi + gap(rng) : lo - gap(rng);
    std::vector<double> values = {a, b, wild};
    std::shuffle(values.begin(), values.end(), rng);
    try {
      VoteProfile p(cfg);
      std::vector<SensorSample> samples;
      for (std::uint16_t s = 0; s < 3; ++s) {
        samples.push_back(testing::Sample(s + 1, 1, Micros{1000}, values[s]));
      }
      auto outcome = voting_manager(MakeCycleContext(p, 0, Micros{0}, samples), p);
      if (outcome.status != OutcomeStatus::kValid || !outcome.value || *outcome.value < lo ||
          *outcome.value > hi) {
        ++failures;
      }
    } catch (const std::exception&) {
      ++exceptions;
    }
  }
  std::ostringstream os;
  os << "1000 triples, " << failures << " unmasked, " << exceptions << " exceptions";
  return {failures == 0 && exceptions == 0, os.str()};
}

// 3. Health state machine vs reference interpreter, exhaustively.
CriterionResult HealthModelCheck() {
  const auto t0 = Clock::now();
  long strings = 0, mismatches = 0;
  for (int bt = 1; bt <= 3; ++bt) {
    for (int rt = 1; rt <= 3; ++rt) {
      for (int ut = 1; ut <= 3; ++ut) {
        const HealthParams params{static_cast<std::uint32_t>(bt), static_cast<std::uint32_t>(rt),
                                  static_cast<std::uint32_t>(ut)};
        for (int len = 0; len <= 12; ++len) {
          for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
            ++strings;
            HealthRecord r;
            r.ever_contacted = true;
            testing::RefHealth ref;
            bool ok = true;
            for (int i = 0; i < len && r.state != HealthState::kUnusable; ++i) {
              const bool good = bits & (1u << i);
              r = record_cycle_verdict(r, good ? Verdict::kGood : Verdict::kBad,
                                       params, i);
              ref = testing::RefStep(ref, good, bt, rt, ut);
              ok = ok && r.state == testing::ToHealthState(ref.state) &&
                   r.bad_episodes == static_cast<std::uint32_t>(ref.episodes);
            }
            if (!ok) ++mismatches;
          }
        }
      }
    }
  }
  const double secs = SecondsSince(t0);
  std::ostringstream os;
  os << strings << " verdict strings over 27 threshold sets, " << mismatches << " mismatches, "
     << secs << " s";
  return {mismatches == 0 && secs < 5.0, os.str()};
}

// 4. voting_manager is exactly the four stages composed.
CriterionResult StageComposition() {
  std::mt19937_64 rng(4);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    VoteProfile p = testing::RandomProfile(rng);
    auto ctx = testing::RandomCycle(rng, p);
    auto composed = testing::ComposeStages(ctx, p);
    auto managed = voting_manager(ctx, p);
    if (!(managed == composed) || managed.rejections != composed.rejections) ++mismatches;
  }
  std::ostringstream os;
  os << "1000 randomized cycles, " << mismatches << " mismatches";
  return {mismatches == 0, os.str()};
}

// 5. A babbling sensor is quarantined on schedule while the vote holds.
CriterionResult BabbleQuarantine() {
  auto spec = sim::LoadScenarioFile(Scenario("babble"));
  const auto trace = sim::run_scenario(spec);
  const CycleIndex expected = 10 + spec.profile.health.bad_threshold - 1;
  std::optional<CycleIndex> bad_at;
  bool value_throughout = true;
  for (const auto& r : trace.records) {
    for (const auto& t : r.health_transitions) {
      if (t.sensor_id == SensorId{3} && t.to == HealthState::kBad && !bad_at) bad_at = r.cycle;
    }
    const bool ok_status = r.status == OutcomeStatus::kValid || r.status == OutcomeStatus::kDegraded;
    value_throughout = value_throughout && ok_status && r.value.has_value();
  }
  std::ostringstream os;
  os << "BAD at cycle " << (bad_at ? std::to_string(*bad_at) : "never") << " (expected "
     << expected << "), value every cycle: " << (value_throughout ? "yes" : "no");
  return {bad_at == expected && value_throughout, os.str()};
}

// 6. Before / with / after power-up orderings all converge.
CriterionResult PowerUpOrdering() {
  bool pass = true;
  std::ostringstream os;
  for (const char* name : {"powerup_before", "powerup_with", "powerup_after"}) {
    auto spec = sim::LoadScenarioFile(Scenario(name));
    const auto trace = sim::run_scenario(spec);
    CycleIndex last_start = 0;
    for (const auto& [id, script] : spec.sensors) last_start = std::max(last_start, script.start_cycle);
    const CycleIndex deadline =
        last_start + spec.profile.acceptability.stale_limit + spec.profile.health.rehab_threshold;

    std::optional<CycleIndex> converged;
    for (const auto& r : trace.records) {
      if (r.status != OutcomeStatus::kValid) {
        converged.reset();
      } else if (!converged) {
        converged = r.cycle;
      }
    }
    // Re-drive the recorded samples to inspect final health records.
    VoteProfile profile(trace.header->profile);
    for (const auto& r : trace.records) {
      auto ctx = MakeCycleContext(profile, r.cycle,
                                  Micros{static_cast<std::int64_t>(r.cycle) * profile.config().cycle_time.count()},
                                  r.samples);
      voting_manager(ctx, profile);
    }
    std::uint32_t late_episodes = 0;
    for (const auto& [id, script] : spec.sensors) {
      if (script.start_cycle > 0) late_episodes += profile.health(id).bad_episodes;
    }
    const bool ok = converged && *converged <= deadline && late_episodes == 0;
    pass = pass && ok;
    os << name << ": VALID from " << (converged ? std::to_string(*converged) : "never") << " (<= "
       << deadline << "), late badEpisodes " << late_episodes << "; ";
  }
  return {pass, os.str()};
}

// 7. Equal seeds give byte-identical traces; clock mode does not matter.
CriterionResult Determinism() {
  bool pass = true;
  int scenarios = 0;
  for (const char* name : {"nominal", "silent", "babble", "powerup_before", "powerup_with",
                           "powerup_after", "epsilon_write", "noisy_faults"}) {
    auto spec = sim::LoadScenarioFile(Scenario(name));
    const std::string first = EncodeTrace(sim::run_scenario(spec));
    const std::string second = EncodeTrace(sim::run_scenario(spec));
    spec.clock = sim::ClockMode::kReal;
    const std::string real = EncodeTrace(sim::run_scenario(spec));
    pass = pass && first == second && first == real && !first.empty();
    ++scenarios;
  }
  std::ostringstream os;
  os << scenarios << " bundled scenarios: repeat and VIRTUAL/REAL traces "
     << (pass ? "byte-identical" : "DIFFER");
  return {pass, os.str()};
}

// 8. Desk-scale throughput and real-time pacing.
CriterionResult Throughput() {
  sim::ScenarioSpec spec;
  spec.profile = testing::PrototypeProfile();
  for (std::uint16_t i = 4; i <= 5; ++i) {
    SensorDescriptor s = spec.profile.sensors[0];
    s.id = SensorId{i};
    spec.profile.sensors.push_back(s);
  }
  spec.profile.max_devices = 5;
  spec.profile.algorithm = {AlgorithmKind::kMoonBoundedMedian, 3, 5, 5.0};
  for (const auto& s : spec.profile.sensors) {
    spec.sensors[s.id].waveform = {sim::WaveformKind::kNoisyConstant, 300, 0, 1, 2, s.id.value};
  }
  spec.sensors[SensorId{5}].faults = {{sim::FaultKind::kBabble, 5000, 5100, 9},
                                      {sim::FaultKind::kOffset, 7000, std::nullopt, 80}};
  spec.total_cycles = 10000;
  spec.master_seed = 8;
  auto t0 = Clock::now();
  const auto trace = sim::run_scenario(spec);
  const double virtual_secs = SecondsSince(t0);

  auto real = sim::LoadScenarioFile(Scenario("nominal"));
  real.clock = sim::ClockMode::kReal;
  t0 = Clock::now();
  sim::run_scenario(real);
  const double real_secs = SecondsSince(t0);

  std::ostringstream os;
  os << trace.records.size() << " virtual cycles x 5 sensors in " << virtual_secs
     << " s; REAL 100 cycles in " << real_secs << " s";
  return {trace.records.size() == 10000 && virtual_secs < 10.0 && std::fabs(real_secs - 2.0) <= 0.1,
          os.str()};
}

// 9. The prototype passes the gate; every single-constraint mutation fails it.
CriterionResult ConfigGate() {
  bool proto_ok = true;
  try {
    load_config(testing::PrototypeDocument());
  } catch (const ConfigError&) {
    proto_ok = false;
  }
  int caught = 0, total = 0;
  std::string missed;
  for (const auto& m : testing::PrototypeMutations()) {
    ++total;
    auto r = testing::RunMutation(m);
    if (r.rejected && r.field_named) {
      ++caught;
    } else {
      missed += " [" + m.name + ": " + r.findings + "]";
    }
  }
  std::ostringstream os;
  os << "prototype " << (proto_ok ? "valid" : "INVALID") << "; " << caught << "/" << total
     << " mutations rejected naming the field" << missed;
  return {proto_ok && total == 20 && caught == 20, os.str()};
}

}  // namespace
}  // namespace votefw

int main() {
  using votefw::CriterionResult;
  const std::vector<std::pair<const char*, std::function<CriterionResult()>>> criteria = {
      {"1 voter oracle equivalence", votefw::VoterOracleEquivalence},
      {"2 TMR masking", votefw::TmrMasking},
      {"3 health model check", votefw::HealthModelCheck},
      {"4 stage composition", votefw::StageComposition},
      {"5 babble quarantine", votefw::BabbleQuarantine},
      {"6 power-up ordering", votefw::PowerUpOrdering},
      {"7 determinism", votefw::Determinism},
      {"8 desk-scale throughput", votefw::Throughput},
      {"9 config gate", votefw::ConfigGate},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    CriterionResult v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  criterion " << name << " -- " << v.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
