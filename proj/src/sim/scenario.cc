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

#include "votefw/sim/scenario.h"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "votefw/health.h"
#include "votefw/pipeline.h"
#include "votefw/sim/transport.h"
#include "votefw/sim/wire.h"

namespace votefw::sim {

using json = nlohmann::json;

namespace {

[[noreturn]] void Mismatch(const std::string& msg) {
  throw ScenarioError(ScenarioErrorCode::kConfigMismatch, msg);
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Mismatch("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SensorId ParseSensorKey(const std::string& key, const char* section) {
  try {
    std::size_t used = 0;
    unsigned long v = std::stoul(key, &used);
    if (used == key.size() && v <= 0xFFFF) return SensorId{static_cast<std::uint16_t>(v)};
  } catch (const std::exception&) {
  }
  Mismatch(std::string(section) + ": '" + key + "' is not a sensor id");
}

double OptNumber(const json& obj, const char* key, double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) Mismatch(std::string("'") + key + "' must be a number");
  return it->get<double>();
}

std::uint64_t OptUnsigned(const json& obj, const char* key, std::uint64_t fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_unsigned()) Mismatch(std::string("'") + key + "' must be a non-negative integer");
  return it->get<std::uint64_t>();
}

WaveformSpec ParseWaveform(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    Mismatch("waveform needs a string 'kind'");
  }
  auto kind = ParseWaveformKind(j["kind"].get<std::string>());
  if (!kind) Mismatch("unknown waveform kind '" + j["kind"].get<std::string>() + "'");
  WaveformSpec w;
  w.kind = *kind;
  w.offset = OptNumber(j, "offset", 0.0);
  w.amplitude = OptNumber(j, "amplitude", 0.0);
  w.period = OptNumber(j, "period", 1.0);
  w.noise_range = OptNumber(j, "noiseRange", 0.0);
  w.seed = OptUnsigned(j, "seed", 0);
  return w;
}

FaultSpec ParseFault(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    Mismatch("fault needs a string 'kind'");
  }
  auto kind = ParseFaultKind(j["kind"].get<std::string>());
  if (!kind) Mismatch("unknown fault kind '" + j["kind"].get<std::string>() + "'");
  FaultSpec f;
  f.kind = *kind;
  f.start_cycle = OptUnsigned(j, "startCycle", 0);
  if (auto it = j.find("endCycle"); it != j.end() && !it->is_null()) {
    if (!it->is_number_unsigned()) Mismatch("'endCycle' must be a cycle index or null");
    f.end_cycle = it->get<std::uint64_t>();
  }
  f.magnitude = OptNumber(j, "magnitude", 0.0);
  return f;
}

std::uint16_t ParseObjectIndex(const json& j) {
  if (j.is_number_unsigned() && j.get<std::uint64_t>() <= 0xFFFF) return j.get<std::uint16_t>();
  if (j.is_string()) {
    try {
      std::size_t used = 0;
      unsigned long v = std::stoul(j.get<std::string>(), &used, 0);
      if (used == j.get<std::string>().size() && v <= 0xFFFF) return static_cast<std::uint16_t>(v);
    } catch (const std::exception&) {
    }
  }
  Mismatch("object index must be a 16-bit integer or hex string");
}

std::vector<SensorSample> CollectSamples(const ScenarioSpec& s, const VoteProfile& profile,
                                         std::map<SensorId, SensorEndpoint>& endpoints,
                                         Transport& transport, CycleIndex cycle, Micros start,
                                         RunStats& stats) {
  const VoteProfileConfig& cfg = profile.config();
  std::vector<SensorSample> samples;
  for (auto& [id, endpoint] : endpoints) {
    if (profile.health(id).state == HealthState::kUnusable) continue;
    const SensorDescriptor* desc = cfg.FindSensor(id);
    PollFrame poll{cfg.profile_id, id.value, static_cast<std::uint32_t>(cycle + 1)};
    const auto bytes = EncodePoll(poll);
    std::vector<ResponseFrame> frames;
    try {
      frames = transport.Exchange(endpoint, bytes, cycle);
    } catch (const TransportError& e) {
      throw ScenarioError(ScenarioErrorCode::kTransportFailure, e.what());
    }
    const std::size_t first = samples.size();
    for (const auto& f : frames) {
      auto data = DecodeData(f.bytes);
      if (!data || data->profile_id != cfg.profile_id || data->sensor_id != id.value ||
          data->status != DataStatus::kOk ||
          data->bit_size != static_cast<std::uint8_t>(desc->characteristics.bit_size)) {
        ++stats.malformed_frames;
        continue;
      }
      const Micros receive = start + s.response_latency + f.delay;
      if (receive >= start + cfg.cycle_time) {
        ++stats.late_frames;
        continue;
      }
      SensorSample sample;
      sample.sensor_id = id;
      sample.seq = data->seq;
      sample.receive_time = receive;
      sample.raw_value = data->raw_value;
      sample.eng_value = static_cast<double>(data->raw_value) * desc->characteristics.scale;
      samples.push_back(sample);
    }
    const auto count = static_cast<std::uint32_t>(samples.size() - first);
    for (std::size_t i = first; i < samples.size(); ++i) samples[i].frame_count_this_cycle = count;
  }
  return samples;
}

TraceRecord MakeRecord(const VoteOutcome& outcome, std::uint16_t profile_id,
                       std::vector<HealthTransition> transitions, std::vector<SensorSample> samples,
                       std::vector<AppliedWrite> writes) {
  TraceRecord rec;
  rec.cycle = outcome.cycle;
  rec.profile_id = profile_id;
  rec.status = outcome.status;
  rec.value = outcome.value;
  rec.contributors = outcome.contributors;
  rec.rejections = outcome.rejections;
  rec.health_transitions = std::move(transitions);
  rec.samples = std::move(samples);
  rec.writes = std::move(writes);
  return rec;
}

}  // namespace

ScenarioSpec ParseScenario(std::string_view document, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    Mismatch(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) Mismatch("scenario must be an object");

  // Profile: inline document or a path to one.
  std::vector<VoteProfileConfig> configs;
  auto cfg_it = root.find("config");
  if (cfg_it == root.end()) Mismatch("scenario needs a 'config'");
  if (cfg_it->is_string()) {
    configs = load_config(ReadFile(base_dir / cfg_it->get<std::string>()));
  } else if (cfg_it->is_object()) {
    configs = load_config(cfg_it->dump());
  } else {
    Mismatch("'config' must be a path or a configuration object");
  }

  ScenarioSpec s;
  if (auto it = root.find("profileId"); it != root.end()) {
    if (!it->is_number_unsigned()) Mismatch("'profileId' must be an integer");
    auto wanted = it->get<std::uint64_t>();
    auto match = std::find_if(configs.begin(), configs.end(),
                              [&](const VoteProfileConfig& c) { return c.profile_id == wanted; });
    if (match == configs.end()) Mismatch("profile " + std::to_string(wanted) + " not in config");
    s.profile = *match;
  } else {
    if (configs.size() != 1) Mismatch("'profileId' required when the config has several profiles");
    s.profile = configs.front();
  }

  s.total_cycles = OptUnsigned(root, "totalCycles", 0);
  s.master_seed = OptUnsigned(root, "masterSeed", 0);
  s.response_latency = Micros{static_cast<std::int64_t>(OptUnsigned(root, "responseLatencyMicros", 1000))};
  if (auto it = root.find("clock"); it != root.end()) {
    if (*it == "virtual") {
      s.clock = ClockMode::kVirtual;
    } else if (*it == "real") {
      s.clock = ClockMode::kReal;
    } else {
      Mismatch("'clock' must be \"virtual\" or \"real\"");
    }
  }
  if (auto it = root.find("transport"); it != root.end()) {
    if (!it->is_string()) Mismatch("'transport' must be a string");
    s.transport = it->get<std::string>();
  }

  if (auto it = root.find("waveforms"); it != root.end()) {
    if (!it->is_object()) Mismatch("'waveforms' must map sensor ids to waveforms");
    for (const auto& [key, value] : it->items()) {
      s.sensors[ParseSensorKey(key, "waveforms")].waveform = ParseWaveform(value);
    }
  }
  std::map<SensorId, bool> has_waveform;
  for (const auto& [id, script] : s.sensors) has_waveform[id] = true;

  if (auto it = root.find("faults"); it != root.end()) {
    if (!it->is_object()) Mismatch("'faults' must map sensor ids to fault lists");
    for (const auto& [key, value] : it->items()) {
      if (!value.is_array()) Mismatch("faults for sensor " + key + " must be a list");
      SensorId id = ParseSensorKey(key, "faults");
      if (!has_waveform.count(id)) Mismatch("faults for sensor " + key + " without a waveform");
      for (const auto& f : value) s.sensors[id].faults.push_back(ParseFault(f));
    }
  }
  if (auto it = root.find("startCycles"); it != root.end()) {
    if (!it->is_object()) Mismatch("'startCycles' must map sensor ids to cycles");
    for (const auto& [key, value] : it->items()) {
      SensorId id = ParseSensorKey(key, "startCycles");
      if (!has_waveform.count(id)) Mismatch("start cycle for sensor " + key + " without a waveform");
      if (!value.is_number_unsigned()) Mismatch("start cycle must be a non-negative integer");
      s.sensors[id].start_cycle = value.get<std::uint64_t>();
    }
  }
  if (auto it = root.find("writes"); it != root.end()) {
    if (!it->is_array()) Mismatch("'writes' must be a list");
    for (const auto& w : *it) {
      if (!w.is_object() || !w.contains("index") || !w.contains("value")) {
        Mismatch("each write needs 'cycle', 'index' and 'value'");
      }
      ScheduledWrite sw;
      sw.cycle = OptUnsigned(w, "cycle", 0);
      sw.index = ParseObjectIndex(w["index"]);
      const json& v = w["value"];
      if (v.is_number_integer()) {
        sw.value = ObjectValue::Int(v.get<std::int64_t>());
      } else if (v.is_number()) {
        sw.value = ObjectValue::Real(v.get<double>());
      } else {
        Mismatch("write value must be a number");
      }
      s.writes.push_back(sw);
    }
  }
  ValidateScenario(s);
  return s;
}

ScenarioSpec LoadScenarioFile(const std::filesystem::path& path) {
  return ParseScenario(ReadFile(path), path.parent_path());
}

void ValidateScenario(const ScenarioSpec& s) {
  const VoteProfileConfig& cfg = s.profile;
  if (auto findings = ValidateProfile(cfg, ProfileLabel(cfg.profile_id)); !findings.empty()) {
    throw ConfigError(std::move(findings));
  }
  if (s.total_cycles < 1) Mismatch("totalCycles must be at least 1");
  if (s.transport != "loopback" && s.transport != "udp") {
    Mismatch("unknown transport '" + s.transport + "'");
  }
  if (s.response_latency.count() < 0 || s.response_latency >= cfg.cycle_time) {
    Mismatch("responseLatencyMicros must lie in [0, cycleTime)");
  }
  for (const auto& sensor : cfg.sensors) {
    if (!s.sensors.count(sensor.id)) {
      Mismatch("no waveform for configured sensor " + std::to_string(sensor.id.value));
    }
  }
  for (const auto& [id, script] : s.sensors) {
    if (cfg.FindSensor(id) == nullptr) {
      Mismatch("sensor " + std::to_string(id.value) + " is not in profile " +
               std::to_string(cfg.profile_id));
    }
    if (script.waveform.kind == WaveformKind::kSine && script.waveform.period == 0) {
      Mismatch("sensor " + std::to_string(id.value) + ": sine period must be non-zero");
    }
    std::vector<FaultSpec> faults = script.faults;
    std::sort(faults.begin(), faults.end(),
              [](const FaultSpec& a, const FaultSpec& b) { return a.start_cycle < b.start_cycle; });
    for (std::size_t i = 0; i < faults.size(); ++i) {
      const auto& f = faults[i];
      if (f.end_cycle && *f.end_cycle < f.start_cycle) {
        Mismatch("sensor " + std::to_string(id.value) + ": fault ends before it starts");
      }
      if (f.magnitude < 0 && (f.kind == FaultKind::kDelay || f.kind == FaultKind::kBabble)) {
        Mismatch("sensor " + std::to_string(id.value) + ": negative " +
                 std::string(ToString(f.kind)) + " magnitude");
      }
      if (i > 0) {
        const auto& prev = faults[i - 1];
        if (!prev.end_cycle || *prev.end_cycle >= f.start_cycle) {
          Mismatch("sensor " + std::to_string(id.value) + ": overlapping fault windows");
        }
      }
    }
  }
  for (const auto& w : s.writes) {
    if (!IsWritableObject(w.index)) {
      Mismatch("write to non-writable object " + std::to_string(w.index));
    }
    if (w.cycle >= s.total_cycles) Mismatch("write scheduled after the last cycle");
  }
}

Trace run_scenario(const ScenarioSpec& s, RunStats* stats_out) {
  ValidateScenario(s);
  RunStats stats;

  VoteProfile profile(s.profile);
  std::map<SensorId, SensorEndpoint> endpoints;
  std::vector<SensorId> ids;
  for (const auto& [id, script] : s.sensors) {
    endpoints.emplace(id, SensorEndpoint(s.profile.profile_id, *s.profile.FindSensor(id),
                                         script.waveform, script.faults, script.start_cycle,
                                         SensorSeed(s.master_seed, id, script.waveform.seed)));
    ids.push_back(id);
  }

  std::unique_ptr<Transport> transport;
  try {
    transport = MakeTransport(s.transport, ids);
  } catch (const BindFailure& e) {
    throw ScenarioError(ScenarioErrorCode::kBindFailure, e.what());
  } catch (const TransportError& e) {
    throw ScenarioError(ScenarioErrorCode::kTransportFailure, e.what());
  }

  Trace trace;
  trace.header = TraceHeader{s.profile, s.master_seed, s.total_cycles};
  trace.records.reserve(s.total_cycles);

  const Micros cycle_time = s.profile.cycle_time;
  const auto wall_start = std::chrono::steady_clock::now();
  for (CycleIndex cycle = 0; cycle < s.total_cycles; ++cycle) {
    if (s.clock == ClockMode::kReal) {
      std::this_thread::sleep_until(wall_start + cycle_time * static_cast<std::int64_t>(cycle));
    }
    const Micros start = cycle_time * static_cast<std::int64_t>(cycle);
    profile.LatchPendingWrites();

    std::vector<AppliedWrite> writes;
    for (const auto& w : s.writes) {
      if (w.cycle != cycle) continue;
      try {
        object_write(profile, w.index, w.value);
      } catch (const ObjectAccessError& e) {
        Mismatch(std::string("scripted write rejected at cycle ") + std::to_string(cycle) + ": " +
                 e.what());
      }
      writes.push_back({w.index, w.value});
    }

    std::vector<SensorSample> samples =
        CollectSamples(s, profile, endpoints, *transport, cycle, start, stats);
    const auto before = health_snapshot(profile);
    CycleContext ctx = MakeCycleContext(profile, cycle, start, samples);
    VoteOutcome outcome = voting_manager(ctx, profile);
    trace.records.push_back(MakeRecord(outcome, profile.id(),
                                       DiffHealth(before, health_snapshot(profile)),
                                       std::move(samples), std::move(writes)));
  }
  if (s.clock == ClockMode::kReal) {
    std::this_thread::sleep_until(wall_start + cycle_time * static_cast<std::int64_t>(s.total_cycles));
  }
  for (const auto& [id, endpoint] : endpoints) stats.malformed_polls += endpoint.malformed_polls();
  if (stats_out != nullptr) *stats_out = stats;
  return trace;
}

std::vector<TraceRecord> ReplayTrace(const Trace& trace) {
  std::vector<TraceRecord> out;
  if (!trace.header) return out;
  VoteProfile profile(trace.header->profile);
  const Micros cycle_time = trace.header->profile.cycle_time;
  for (const auto& rec : trace.records) {
    profile.LatchPendingWrites();
    for (const auto& w : rec.writes) object_write(profile, w.index, w.value);
    const auto before = health_snapshot(profile);
    CycleContext ctx = MakeCycleContext(profile, rec.cycle,
                                        cycle_time * static_cast<std::int64_t>(rec.cycle), rec.samples);
    VoteOutcome outcome = voting_manager(ctx, profile);
    out.push_back(MakeRecord(outcome, profile.id(), DiffHealth(before, health_snapshot(profile)),
                             rec.samples, rec.writes));
  }
  return out;
}

}  // namespace votefw::sim
