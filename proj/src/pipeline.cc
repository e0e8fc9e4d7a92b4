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

#include "votefw/pipeline.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "votefw/voters.h"

namespace votefw {

namespace {

std::vector<SensorId> ConfiguredIds(const VoteProfileConfig& cfg) {
  std::vector<SensorId> ids;
  for (const auto& s : cfg.sensors) ids.push_back(s.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

Rejection Reject(SensorId id, RejectReason reason, CycleIndex cycle, std::string detail) {
  return Rejection{id, reason, cycle, std::move(detail)};
}

void SortBySensor(std::vector<Rejection>& rejections) {
  std::stable_sort(rejections.begin(), rejections.end(),
                   [](const Rejection& a, const Rejection& b) { return a.sensor_id < b.sensor_id; });
}

std::string Num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

CycleContext MakeCycleContext(const VoteProfile& profile, CycleIndex cycle, Micros cycle_start,
                              std::vector<SensorSample> samples) {
  CycleContext ctx;
  ctx.cycle = cycle;
  ctx.cycle_start = cycle_start;
  ctx.samples = std::move(samples);
  for (const auto& [id, track] : profile.tracks()) ctx.missed_by[id] = track.consecutive_missed;
  return ctx;
}

StagePartition input_data(const CycleContext& ctx, const VoteProfile& profile) {
  const VoteProfileConfig& cfg = profile.config();
  const AcceptabilityParams& acc = cfg.acceptability;
  const Micros window_end = ctx.cycle_start + acc.response_timeout;

  StagePartition out;
  out.cycle = ctx.cycle;
  for (SensorId id : ConfiguredIds(cfg)) {
    if (profile.health(id).state == HealthState::kUnusable) {
      out.bad.push_back(Reject(id, RejectReason::kUnusableSensor, ctx.cycle, "awaiting maintenance"));
      continue;
    }

    std::uint32_t frames = 0;
    const SensorSample* latest = nullptr;
    for (const auto& s : ctx.samples) {
      if (s.sensor_id != id) continue;
      ++frames;
      if (s.receive_time < ctx.cycle_start || s.receive_time > window_end) continue;
      if (latest == nullptr || s.receive_time >= latest->receive_time) latest = &s;
    }

    if (latest == nullptr) {
      auto it = ctx.missed_by.find(id);
      const std::uint32_t missed = (it == ctx.missed_by.end() ? 0 : it->second) + 1;
      if (missed >= acc.stale_limit) {
        out.bad.push_back(Reject(id, RejectReason::kStale, ctx.cycle,
                                 "missed " + std::to_string(missed) + " consecutive cycles"));
      } else {
        out.bad.push_back(Reject(id, RejectReason::kTimeout, ctx.cycle,
                                 frames == 0 ? "no frame" : "no frame within response timeout"));
      }
      continue;
    }
    if (frames > acc.max_frames_per_cycle) {
      out.bad.push_back(Reject(id, RejectReason::kBabble, ctx.cycle,
                               std::to_string(frames) + " frames > " +
                                   std::to_string(acc.max_frames_per_cycle)));
      continue;
    }
    const auto& last_seq = profile.track(id).last_accepted_seq;
    if (last_seq && latest->seq <= *last_seq) {
      out.bad.push_back(Reject(id, RejectReason::kBadSequence, ctx.cycle,
                               "seq " + std::to_string(latest->seq) + " after " +
                                   std::to_string(*last_seq)));
      continue;
    }
    SensorSample accepted = *latest;
    accepted.frame_count_this_cycle = frames;
    out.good.push_back(accepted);
  }
  return out;
}

std::optional<Rejection> RangeCheck(const SensorSample& sample, const SensorDescriptor& sensor,
                                    const SensorTrack&, CycleIndex cycle) {
  const auto& ch = sensor.characteristics;
  if (sample.eng_value >= ch.plausible_min && sample.eng_value <= ch.plausible_max) {
    return std::nullopt;
  }
  return Reject(sample.sensor_id, RejectReason::kOutOfRange, cycle,
                Num(sample.eng_value) + " outside [" + Num(ch.plausible_min) + ", " +
                    Num(ch.plausible_max) + "]");
}

std::optional<Rejection> RateCheck(const SensorSample& sample, const SensorDescriptor& sensor,
                                   const SensorTrack& track, CycleIndex cycle) {
  if (!track.last_plausible_value) return std::nullopt;
  const CycleIndex elapsed = cycle > track.last_plausible_cycle ? cycle - track.last_plausible_cycle : 1;
  const double delta = std::fabs(sample.eng_value - *track.last_plausible_value);
  const double allowed = sensor.characteristics.max_delta_per_cycle * static_cast<double>(elapsed);
  if (delta <= allowed) return std::nullopt;
  return Reject(sample.sensor_id, RejectReason::kRateExceeded, cycle,
                "|delta| " + Num(delta) + " > " + Num(allowed) + " over " +
                    std::to_string(elapsed) + " cycle(s)");
}

const std::vector<PlausibilityCheck>& DefaultPlausibilityChecks() {
  static const std::vector<PlausibilityCheck> checks = {RangeCheck, RateCheck};
  return checks;
}

StagePartition input_vote(const StagePartition& partition, const VoteProfile& profile) {
  return input_vote(partition, profile, DefaultPlausibilityChecks());
}

StagePartition input_vote(const StagePartition& partition, const VoteProfile& profile,
                          const std::vector<PlausibilityCheck>& checks) {
  const VoteProfileConfig& cfg = profile.config();
  StagePartition out;
  out.cycle = partition.cycle;
  out.bad = partition.bad;
  for (const auto& sample : partition.good) {
    const SensorDescriptor* sensor = cfg.FindSensor(sample.sensor_id);
    std::optional<Rejection> rejection;
    for (const auto& check : checks) {
      rejection = check(sample, *sensor, profile.track(sample.sensor_id), partition.cycle);
      if (rejection) break;
    }
    if (rejection) {
      out.bad.push_back(std::move(*rejection));
    } else {
      out.good.push_back(sample);
    }
  }
  SortBySensor(out.bad);
  return out;
}

VoteOutcome output_vote(const StagePartition& partition, const VoteProfile& profile) {
  const VoteProfileConfig& cfg = profile.config();
  const AlgorithmSpec& alg = cfg.algorithm;

  VoteOutcome outcome;
  outcome.cycle = partition.cycle;
  outcome.rejections = partition.bad;

  if (partition.good.size() < alg.m) {
    outcome.status = OutcomeStatus::kInsufficientSensors;
    outcome.detail = std::to_string(partition.good.size()) + " usable sample(s), quorum " +
                     std::to_string(alg.m);
    return outcome;
  }

  std::vector<Ballot> ballots;
  ballots.reserve(partition.good.size());
  for (const auto& s : partition.good) {
    ballots.push_back({s.sensor_id, s.eng_value, cfg.FindSensor(s.sensor_id)->weight});
  }

  VoterResult result;
  try {
    switch (alg.kind) {
      case AlgorithmKind::kMedian:
        result = median_vote(ballots);
        break;
      case AlgorithmKind::kMoonBoundedMedian:
        result = moon_bounded_median(ballots, alg.m, alg.n, alg.epsilon);
        break;
      case AlgorithmKind::kWeightedCluster:
        result = weighted_cluster_vote(ballots, alg.epsilon);
        break;
      case AlgorithmKind::kExactMajority:
        result = exact_majority(ballots);
        break;
    }
  } catch (const VoterError& e) {
    outcome.status = OutcomeStatus::kNoConsensus;
    outcome.detail = e.what();
    return outcome;
  }

  if (!result.valid) {
    outcome.status = OutcomeStatus::kNoConsensus;
    outcome.detail = result.reason;
    return outcome;
  }
  // Being outvoted is not a rejection; only stage-1/2 losses degrade.
  outcome.status = partition.bad.empty() ? OutcomeStatus::kValid : OutcomeStatus::kDegraded;
  outcome.value = result.value;
  outcome.contributors = std::move(result.cluster);
  return outcome;
}

VoteOutcome output_data(VoteOutcome outcome, const VoteProfile& profile) {
  const VoteProfileConfig& cfg = profile.config();
  if (!outcome.value) return outcome;
  const double v = *outcome.value;
  if (v >= cfg.output_plausible_min && v <= cfg.output_plausible_max) return outcome;
  outcome.status = OutcomeStatus::kImplausibleOutput;
  outcome.detail = "voted value " + Num(v) + " outside [" + Num(cfg.output_plausible_min) +
                   ", " + Num(cfg.output_plausible_max) + "]";
  outcome.value.reset();
  outcome.contributors.clear();
  return outcome;
}

std::map<SensorId, Verdict> CycleVerdicts(const StagePartition& after_plausibility,
                                          const VoteProfile& profile) {
  std::map<SensorId, Verdict> verdicts;
  for (const auto& s : profile.config().sensors) verdicts[s.id] = Verdict::kBad;
  for (const auto& s : after_plausibility.good) verdicts[s.sensor_id] = Verdict::kGood;
  return verdicts;
}

void CommitCycle(const CycleContext& ctx, const StagePartition& after_acceptability,
                 const StagePartition& after_plausibility, const VoteOutcome& outcome,
                 VoteProfile& profile, ErrorSink* sink) {
  const VoteProfileConfig cfg = profile.config();

  for (const auto& s : cfg.sensors) {
    HealthRecord& record = profile.mutable_health(s.id);
    if (record.state == HealthState::kUnusable) continue;
    SensorTrack& track = profile.mutable_track(s.id);
    const bool contacted = std::any_of(ctx.samples.begin(), ctx.samples.end(),
                                       [&](const SensorSample& x) { return x.sensor_id == s.id; });
    if (contacted) record.ever_contacted = true;

    bool missed = false;
    for (const auto& r : after_acceptability.bad) {
      if (r.sensor_id == s.id &&
          (r.reason == RejectReason::kTimeout || r.reason == RejectReason::kStale)) {
        missed = true;
      }
    }
    track.consecutive_missed = missed ? track.consecutive_missed + 1 : 0;
  }
  for (const auto& sample : after_acceptability.good) {
    profile.mutable_track(sample.sensor_id).last_accepted_seq = sample.seq;
  }
  for (const auto& sample : after_plausibility.good) {
    SensorTrack& track = profile.mutable_track(sample.sensor_id);
    track.last_plausible_value = sample.eng_value;
    track.last_plausible_cycle = ctx.cycle;
  }

  for (const auto& [id, verdict] : CycleVerdicts(after_plausibility, profile)) {
    HealthRecord& record = profile.mutable_health(id);
    if (record.state == HealthState::kUnusable) continue;
    record = record_cycle_verdict(record, verdict, cfg.health, ctx.cycle);
  }

  if (sink != nullptr) {
    for (const auto& r : outcome.rejections) sink->Report(ctx.cycle, cfg.profile_id, r);
  }
  profile.SetOutcome(outcome);
}

VoteOutcome voting_manager(const CycleContext& ctx, VoteProfile& profile, ErrorSink* sink) {
  StagePartition accepted = input_data(ctx, profile);
  StagePartition plausible = input_vote(accepted, profile);
  VoteOutcome outcome = output_data(output_vote(plausible, profile), profile);
  CommitCycle(ctx, accepted, plausible, outcome, profile, sink);
  return outcome;
}

}  // namespace votefw
