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

#include "votefw/trace.h"

#include <algorithm>
#include <array>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"

namespace votefw {

using json = nlohmann::json;

namespace {

constexpr std::array<OutcomeStatus, 5> kAllStatuses = {
    OutcomeStatus::kValid, OutcomeStatus::kDegraded, OutcomeStatus::kNoConsensus,
    OutcomeStatus::kInsufficientSensors, OutcomeStatus::kImplausibleOutput};

json ValueToJson(const ObjectValue& v) {
  if (v.is_int()) return v.as_int();
  if (v.is_real()) return v.as_real();
  return nullptr;
}

// Strict accessors: any mismatch is reported against the current line.
class LineReader {
 public:
  explicit LineReader(std::size_t line) : line_(line) {}

  [[noreturn]] void Fail(const std::string& msg) const { throw TraceFormatError(line_, msg); }

  const json& Get(const json& obj, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) Fail(std::string("missing field '") + key + "'");
    return *it;
  }
  template <typename T>
  T UInt(const json& obj, const char* key) const {
    const json& v = Get(obj, key);
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() > std::numeric_limits<T>::max()) {
      Fail(std::string("field '") + key + "' must be an unsigned integer");
    }
    return v.get<T>();
  }
  std::int64_t Int(const json& obj, const char* key) const {
    const json& v = Get(obj, key);
    if (!v.is_number_integer()) Fail(std::string("field '") + key + "' must be an integer");
    return v.get<std::int64_t>();
  }
  double Real(const json& obj, const char* key) const {
    const json& v = Get(obj, key);
    if (!v.is_number()) Fail(std::string("field '") + key + "' must be a number");
    return v.get<double>();
  }
  std::string Str(const json& obj, const char* key) const {
    const json& v = Get(obj, key);
    if (!v.is_string()) Fail(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
  }
  const json& Arr(const json& obj, const char* key) const {
    const json& v = Get(obj, key);
    if (!v.is_array()) Fail(std::string("field '") + key + "' must be an array");
    return v;
  }
  SensorId Sensor(const json& obj, const char* key) const {
    return SensorId{UInt<std::uint16_t>(obj, key)};
  }
  HealthState Health(const json& obj, const char* key) const {
    auto s = ParseHealthState(Str(obj, key));
    if (!s) Fail(std::string("bad health state in '") + key + "'");
    return *s;
  }

 private:
  std::size_t line_;
};

TraceHeader DecodeHeader(const json& j, const LineReader& r) {
  TraceHeader h;
  if (r.Str(j, "format") != kTraceFormat) r.Fail("not a votefw trace");
  if (r.Int(j, "version") != kTraceVersion) r.Fail("unsupported trace version");
  h.seed = r.UInt<std::uint64_t>(j, "seed");
  h.total_cycles = r.UInt<std::uint64_t>(j, "totalCycles");
  const json& profile = r.Get(j, "profile");
  try {
    auto configs = load_config(json{{"profiles", json::array({profile})}}.dump());
    h.profile = configs.front();
  } catch (const ConfigError& e) {
    r.Fail(std::string("embedded profile invalid: ") + e.what());
  }
  return h;
}

TraceRecord DecodeRecord(const json& j, const LineReader& r) {
  TraceRecord rec;
  rec.cycle = r.UInt<std::uint64_t>(j, "cycle");
  rec.profile_id = r.UInt<std::uint16_t>(j, "profile");
  auto status = ParseOutcomeStatus(r.Str(j, "status"));
  if (!status) r.Fail("unknown status");
  rec.status = *status;
  const json& value = r.Get(j, "value");
  if (value.is_number()) {
    rec.value = value.get<double>();
  } else if (!value.is_null()) {
    r.Fail("field 'value' must be a number or null");
  }
  if (rec.value.has_value() != StatusCarriesValue(rec.status)) {
    r.Fail("value presence disagrees with status");
  }
  for (const json& c : r.Arr(j, "contributors")) {
    if (!c.is_number_unsigned() || c.get<std::uint64_t>() > 0xFFFF) r.Fail("bad contributor id");
    rec.contributors.push_back(SensorId{c.get<std::uint16_t>()});
  }
  for (const json& x : r.Arr(j, "rejections")) {
    Rejection rej;
    rej.sensor_id = r.Sensor(x, "sensor");
    auto reason = ParseRejectReason(r.Str(x, "reason"));
    if (!reason) r.Fail("unknown rejection reason");
    rej.reason = *reason;
    rej.detail = r.Str(x, "detail");
    rej.cycle = rec.cycle;
    rec.rejections.push_back(std::move(rej));
  }
  for (const json& x : r.Arr(j, "health")) {
    rec.health_transitions.push_back(
        {r.Sensor(x, "sensor"), r.Health(x, "from"), r.Health(x, "to")});
  }
  for (const json& x : r.Arr(j, "samples")) {
    SensorSample s;
    s.sensor_id = r.Sensor(x, "sensor");
    s.seq = r.UInt<std::uint32_t>(x, "seq");
    s.receive_time = Micros{r.Int(x, "t")};
    std::int64_t raw = r.Int(x, "raw");
    if (raw < std::numeric_limits<std::int32_t>::min() ||
        raw > std::numeric_limits<std::int32_t>::max()) {
      r.Fail("raw value out of range");
    }
    s.raw_value = static_cast<std::int32_t>(raw);
    s.eng_value = r.Real(x, "eng");
    s.frame_count_this_cycle = r.UInt<std::uint32_t>(x, "frames");
    rec.samples.push_back(s);
  }
  for (const json& x : r.Arr(j, "writes")) {
    AppliedWrite w;
    w.index = r.UInt<std::uint16_t>(x, "index");
    const json& v = r.Get(x, "value");
    if (v.is_number_integer()) {
      w.value = ObjectValue::Int(v.get<std::int64_t>());
    } else if (v.is_number()) {
      w.value = ObjectValue::Real(v.get<double>());
    } else if (!v.is_null()) {
      r.Fail("write value must be a number or null");
    }
    rec.writes.push_back(w);
  }
  return rec;
}

std::string Fixed(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

// Replays transitions to find each sensor's state after the last cycle.
std::map<SensorId, HealthState> FinalStates(const Trace& trace) {
  std::map<SensorId, HealthState> states;
  if (trace.header) {
    for (const auto& s : trace.header->profile.sensors) states[s.id] = HealthState::kGood;
  }
  for (const auto& rec : trace.records) {
    for (const auto& t : rec.health_transitions) states[t.sensor_id] = t.to;
  }
  return states;
}

}  // namespace

TraceFormatError::TraceFormatError(std::size_t line, const std::string& message)
    : std::runtime_error("trace line " + std::to_string(line) + ": " + message), line_(line) {}

std::string EncodeHeader(const TraceHeader& header) {
  json profile = json::parse(serialize_config({header.profile}))["profiles"][0];
  json j = {{"type", "header"},
            {"format", kTraceFormat},
            {"version", kTraceVersion},
            {"seed", header.seed},
            {"totalCycles", header.total_cycles},
            {"profile", std::move(profile)}};
  return j.dump();
}

std::string EncodeRecord(const TraceRecord& rec) {
  json contributors = json::array();
  for (SensorId id : rec.contributors) contributors.push_back(id.value);
  json rejections = json::array();
  for (const auto& r : rec.rejections) {
    rejections.push_back({{"sensor", r.sensor_id.value},
                          {"reason", std::string(ToString(r.reason))},
                          {"detail", r.detail}});
  }
  json health = json::array();
  for (const auto& t : rec.health_transitions) {
    health.push_back({{"sensor", t.sensor_id.value},
                      {"from", std::string(ToString(t.from))},
                      {"to", std::string(ToString(t.to))}});
  }
  json samples = json::array();
  for (const auto& s : rec.samples) {
    samples.push_back({{"sensor", s.sensor_id.value},
                       {"seq", s.seq},
                       {"t", s.receive_time.count()},
                       {"raw", s.raw_value},
                       {"eng", s.eng_value},
                       {"frames", s.frame_count_this_cycle}});
  }
  json writes = json::array();
  for (const auto& w : rec.writes) {
    writes.push_back({{"index", w.index}, {"value", ValueToJson(w.value)}});
  }
  json j = {{"type", "cycle"},
            {"cycle", rec.cycle},
            {"profile", rec.profile_id},
            {"status", std::string(ToString(rec.status))},
            {"value", rec.value ? json(*rec.value) : json(nullptr)},
            {"contributors", std::move(contributors)},
            {"rejections", std::move(rejections)},
            {"health", std::move(health)},
            {"samples", std::move(samples)},
            {"writes", std::move(writes)}};
  return j.dump();
}

std::string EncodeTrace(const Trace& trace) {
  std::string out;
  if (trace.header) out += EncodeHeader(*trace.header) + "\n";
  for (const auto& r : trace.records) out += EncodeRecord(r) + "\n";
  return out;
}

Trace ParseTrace(std::istream& in) {
  Trace trace;
  std::string line;
  std::size_t line_no = 0;
  std::optional<CycleIndex> last_cycle;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    LineReader r(line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      r.Fail(std::string("not JSON: ") + e.what());
    }
    if (!j.is_object()) r.Fail("record must be an object");
    const std::string type = r.Str(j, "type");
    if (type == "header") {
      if (trace.header || !trace.records.empty()) r.Fail("header must be the first record");
      trace.header = DecodeHeader(j, r);
    } else if (type == "cycle") {
      if (!trace.header) r.Fail("cycle record before header");
      TraceRecord rec = DecodeRecord(j, r);
      if (rec.profile_id != trace.header->profile.profile_id) r.Fail("profile id mismatch");
      if (last_cycle && rec.cycle <= *last_cycle) r.Fail("cycles out of order");
      last_cycle = rec.cycle;
      trace.records.push_back(std::move(rec));
    } else {
      r.Fail("unknown record type '" + type + "'");
    }
  }
  return trace;
}

Trace ParseTrace(const std::string& text) {
  std::istringstream in(text);
  return ParseTrace(in);
}

std::vector<HealthTransition> DiffHealth(const std::map<SensorId, HealthRecord>& before,
                                         const std::map<SensorId, HealthRecord>& after) {
  std::vector<HealthTransition> out;
  for (const auto& [id, rec] : after) {
    auto it = before.find(id);
    if (it != before.end() && it->second.state != rec.state) {
      out.push_back({id, it->second.state, rec.state});
    }
  }
  return out;
}

std::string SummarizeTrace(const Trace& trace) {
  std::map<OutcomeStatus, std::size_t> statuses;
  std::map<RejectReason, std::size_t> reasons;
  std::size_t transitions = 0;
  for (const auto& rec : trace.records) {
    ++statuses[rec.status];
    for (const auto& r : rec.rejections) ++reasons[r.reason];
    transitions += rec.health_transitions.size();
  }

  std::ostringstream os;
  os << "cycles: " << trace.records.size() << "\n";
  os << "outcomes: ";
  for (std::size_t i = 0; i < kAllStatuses.size(); ++i) {
    os << (i ? ", " : "") << ToString(kAllStatuses[i]) << ": " << statuses[kAllStatuses[i]];
  }
  os << "\nrejections:";
  if (reasons.empty()) os << " none";
  for (const auto& [reason, count] : reasons) os << " " << ToString(reason) << "=" << count;
  os << "\nhealth transitions: " << transitions << "\n";
  for (const auto& rec : trace.records) {
    for (const auto& t : rec.health_transitions) {
      os << "  cycle " << rec.cycle << " " << t.sensor_id << " " << ToString(t.from) << " -> "
         << ToString(t.to) << "\n";
    }
  }
  os << "final health:";
  for (const auto& [id, state] : FinalStates(trace)) os << " " << id << "=" << ToString(state);
  os << "\n";
  return os.str();
}

std::string ReportTrace(const Trace& trace) {
  std::ostringstream os;
  if (!trace.header) {
    os << "empty trace: 0 cycles\n";
    return os.str();
  }
  const VoteProfileConfig& cfg = trace.header->profile;

  std::map<OutcomeStatus, std::size_t> statuses;
  std::optional<double> lo, hi;
  double sum = 0.0;
  std::size_t valued = 0;
  for (const auto& rec : trace.records) {
    ++statuses[rec.status];
    if (rec.value) {
      lo = lo ? std::min(*lo, *rec.value) : *rec.value;
      hi = hi ? std::max(*hi, *rec.value) : *rec.value;
      sum += *rec.value;
      ++valued;
    }
  }

  os << "profile " << cfg.profile_id << " (" << ToString(cfg.algorithm.kind) << " "
     << cfg.algorithm.m << "oo" << cfg.algorithm.n << ", epsilon " << Fixed(cfg.algorithm.epsilon)
     << ")\n";
  os << "  cycles: " << trace.records.size() << "\n";
  for (OutcomeStatus s : kAllStatuses) {
    os << "  " << std::left << std::setw(22) << ToString(s) << statuses[s] << "\n";
  }
  if (valued > 0) {
    os << "  voted value: min " << Fixed(*lo) << ", max " << Fixed(*hi) << ", mean "
       << Fixed(sum / static_cast<double>(valued)) << "\n";
  }

  const auto finals = FinalStates(trace);
  for (const auto& sensor : cfg.sensors) {
    std::map<RejectReason, std::size_t> reasons;
    for (const auto& rec : trace.records) {
      for (const auto& r : rec.rejections) {
        if (r.sensor_id == sensor.id) ++reasons[r.reason];
      }
    }
    os << "sensor " << sensor.id.value;
    if (!sensor.name.empty()) os << " (" << sensor.name << ")";
    const HealthState final_state = finals.at(sensor.id);
    os << ": final " << ToString(final_state);
    if (final_state == HealthState::kUnusable) os << " -- maintenance required";
    os << "\n  rejections:";
    if (reasons.empty()) os << " none";
    for (const auto& [reason, count] : reasons) os << " " << ToString(reason) << "=" << count;
    os << "\n  timeline:";
    bool any = false;
    for (const auto& rec : trace.records) {
      for (const auto& t : rec.health_transitions) {
        if (t.sensor_id != sensor.id) continue;
        any = true;
        std::string cause = t.to == HealthState::kGood ? "rehabilitated" : "unknown";
        for (const auto& r : rec.rejections) {
          if (r.sensor_id == sensor.id) cause = std::string(ToString(r.reason));
        }
        os << "\n    cycle " << rec.cycle << ": " << ToString(t.from) << " -> " << ToString(t.to)
           << " (" << cause << ")";
      }
    }
    if (!any) os << " no transitions";
    os << "\n";
  }
  return os.str();
}

}  // namespace votefw
