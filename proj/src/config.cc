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

#include "votefw/config.h"

#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "json.hpp"

namespace votefw {

using json = nlohmann::json;

namespace {

std::string JoinMessages(const std::vector<ConfigFinding>& findings) {
  std::ostringstream os;
  os << "invalid configuration (" << findings.size() << " finding"
     << (findings.size() == 1 ? "" : "s") << ")";
  for (const auto& f : findings) os << "\n  " << f.ToString();
  return os.str();
}

std::string FormatNumber(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Pulls typed fields out of one JSON object, recording schema findings
// instead of throwing so that a single pass reports every problem.
class FieldReader {
 public:
  FieldReader(std::vector<ConfigFinding>& findings, std::string profile)
      : findings_(findings), profile_(std::move(profile)) {}

  const json* Object(const json& parent, const std::string& key, const std::string& path) {
    const json* node = Find(parent, key, path);
    if (node == nullptr) return nullptr;
    if (!node->is_object()) {
      Schema(path, "expected an object");
      return nullptr;
    }
    return node;
  }

  const json* Array(const json& parent, const std::string& key, const std::string& path) {
    const json* node = Find(parent, key, path);
    if (node == nullptr) return nullptr;
    if (!node->is_array()) {
      Schema(path, "expected an array");
      return nullptr;
    }
    return node;
  }

  template <typename T>
  void Integer(const json& parent, const std::string& key, const std::string& path, T& out) {
    const json* node = Find(parent, key, path);
    if (node == nullptr) return;
    if (!node->is_number_integer()) {
      Schema(path, "expected an integer");
      return;
    }
    // Out-of-range integers are constraint violations, not schema errors.
    if (node->is_number_unsigned()) {
      auto v = node->get<std::uint64_t>();
      if (v > static_cast<std::uint64_t>(std::numeric_limits<T>::max())) {
        Constraint(path, "value " + std::to_string(v) + " out of range");
        return;
      }
      out = static_cast<T>(v);
    } else {
      auto v = node->get<std::int64_t>();
      if (v < static_cast<std::int64_t>(std::numeric_limits<T>::min()) ||
          (v > 0 && static_cast<std::uint64_t>(v) >
                        static_cast<std::uint64_t>(std::numeric_limits<T>::max()))) {
        Constraint(path, "value " + std::to_string(v) + " out of range");
        return;
      }
      out = static_cast<T>(v);
    }
  }

  void Number(const json& parent, const std::string& key, const std::string& path, double& out,
              bool required = true) {
    const json* node = required ? Find(parent, key, path) : FindOptional(parent, key);
    if (node == nullptr) return;
    if (!node->is_number()) {
      Schema(path, "expected a number");
      return;
    }
    out = node->get<double>();
  }

  void String(const json& parent, const std::string& key, const std::string& path,
              std::string& out, bool required = true) {
    const json* node = required ? Find(parent, key, path) : FindOptional(parent, key);
    if (node == nullptr) return;
    if (!node->is_string()) {
      Schema(path, "expected a string");
      return;
    }
    out = node->get<std::string>();
  }

  void Micro(const json& parent, const std::string& key, const std::string& path, Micros& out) {
    std::int64_t v = 0;
    std::size_t before = findings_.size();
    Integer(parent, key, path, v);
    if (findings_.size() == before) out = Micros{v};
  }

  void Schema(const std::string& path, std::string message) {
    findings_.push_back({ConfigErrorCode::kSchemaError, profile_, path, std::move(message)});
  }
  void Constraint(const std::string& path, std::string message) {
    findings_.push_back({ConfigErrorCode::kConstraintError, profile_, path, std::move(message)});
  }

  void set_profile(std::string profile) { profile_ = std::move(profile); }

 private:
  const json* Find(const json& parent, const std::string& key, const std::string& path) {
    auto it = parent.find(key);
    if (it == parent.end()) {
      Schema(path, "missing required field");
      return nullptr;
    }
    return &*it;
  }
  static const json* FindOptional(const json& parent, const std::string& key) {
    auto it = parent.find(key);
    return it == parent.end() ? nullptr : &*it;
  }

  std::vector<ConfigFinding>& findings_;
  std::string profile_;
};

VoteProfileConfig ReadProfile(const json& node, FieldReader& r) {
  VoteProfileConfig cfg;
  r.Integer(node, "id", "id", cfg.profile_id);
  r.Integer(node, "maxDevices", "maxDevices", cfg.max_devices);
  r.Micro(node, "cycleTimeMicros", "cycleTimeMicros", cfg.cycle_time);
  r.Micro(node, "votingOffsetMicros", "votingOffsetMicros", cfg.voting_offset);

  if (const json* alg = r.Object(node, "algorithm", "algorithm")) {
    std::string kind;
    r.String(*alg, "kind", "algorithm.kind", kind);
    if (alg->contains("kind") && (*alg)["kind"].is_string()) {
      if (auto k = ParseAlgorithmKind(kind)) {
        cfg.algorithm.kind = *k;
      } else {
        r.Schema("algorithm.kind", "unknown algorithm '" + kind + "'");
      }
    }
    r.Integer(*alg, "m", "algorithm.m", cfg.algorithm.m);
    r.Integer(*alg, "n", "algorithm.n", cfg.algorithm.n);
    r.Number(*alg, "epsilon", "algorithm.epsilon", cfg.algorithm.epsilon);
  }
  if (const json* acc = r.Object(node, "acceptability", "acceptability")) {
    r.Micro(*acc, "responseTimeoutMicros", "acceptability.responseTimeoutMicros",
            cfg.acceptability.response_timeout);
    r.Integer(*acc, "maxFramesPerCycle", "acceptability.maxFramesPerCycle",
              cfg.acceptability.max_frames_per_cycle);
    r.Integer(*acc, "staleLimit", "acceptability.staleLimit", cfg.acceptability.stale_limit);
  }
  if (const json* h = r.Object(node, "health", "health")) {
    r.Integer(*h, "badThreshold", "health.badThreshold", cfg.health.bad_threshold);
    r.Integer(*h, "rehabThreshold", "health.rehabThreshold", cfg.health.rehab_threshold);
    r.Integer(*h, "unusableThreshold", "health.unusableThreshold",
              cfg.health.unusable_threshold);
  }
  if (const json* out = r.Object(node, "output", "output")) {
    r.Number(*out, "plausibleMin", "output.plausibleMin", cfg.output_plausible_min);
    r.Number(*out, "plausibleMax", "output.plausibleMax", cfg.output_plausible_max);
  }
  if (const json* sensors = r.Array(node, "sensors", "sensors")) {
    for (std::size_t i = 0; i < sensors->size(); ++i) {
      const json& s = (*sensors)[i];
      const std::string base = "sensors[" + std::to_string(i) + "]";
      if (!s.is_object()) {
        r.Schema(base, "expected an object");
        continue;
      }
      SensorDescriptor d;
      r.Integer(s, "id", base + ".id", d.id.value);
      r.String(s, "name", base + ".name", d.name, /*required=*/false);
      r.Number(s, "weight", base + ".weight", d.weight, /*required=*/false);
      int bits = 0;
      r.Integer(s, "bitSize", base + ".bitSize", bits);
      if (bits == 8 || bits == 16 || bits == 32) {
        d.characteristics.bit_size = static_cast<BitSize>(bits);
      } else if (s.contains("bitSize") && s["bitSize"].is_number_integer()) {
        r.Constraint(base + ".bitSize", "bitSize must be 8, 16 or 32, got " +
                                            std::to_string(bits));
      }
      r.Number(s, "scale", base + ".scale", d.characteristics.scale);
      r.String(s, "unitLabel", base + ".unitLabel", d.characteristics.unit_label);
      r.Number(s, "plausibleMin", base + ".plausibleMin", d.characteristics.plausible_min);
      r.Number(s, "plausibleMax", base + ".plausibleMax", d.characteristics.plausible_max);
      r.Number(s, "maxDeltaPerCycle", base + ".maxDeltaPerCycle",
               d.characteristics.max_delta_per_cycle);
      cfg.sensors.push_back(std::move(d));
    }
  }
  return cfg;
}

json WriteProfile(const VoteProfileConfig& cfg) {
  json sensors = json::array();
  for (const auto& s : cfg.sensors) {
    sensors.push_back({
        {"id", s.id.value},
        {"name", s.name},
        {"weight", s.weight},
        {"bitSize", static_cast<int>(s.characteristics.bit_size)},
        {"scale", s.characteristics.scale},
        {"unitLabel", s.characteristics.unit_label},
        {"plausibleMin", s.characteristics.plausible_min},
        {"plausibleMax", s.characteristics.plausible_max},
        {"maxDeltaPerCycle", s.characteristics.max_delta_per_cycle},
    });
  }
  return {
      {"id", cfg.profile_id},
      {"maxDevices", cfg.max_devices},
      {"cycleTimeMicros", cfg.cycle_time.count()},
      {"votingOffsetMicros", cfg.voting_offset.count()},
      {"algorithm",
       {{"kind", std::string(ToString(cfg.algorithm.kind))},
        {"m", cfg.algorithm.m},
        {"n", cfg.algorithm.n},
        {"epsilon", cfg.algorithm.epsilon}}},
      {"acceptability",
       {{"responseTimeoutMicros", cfg.acceptability.response_timeout.count()},
        {"maxFramesPerCycle", cfg.acceptability.max_frames_per_cycle},
        {"staleLimit", cfg.acceptability.stale_limit}}},
      {"health",
       {{"badThreshold", cfg.health.bad_threshold},
        {"rehabThreshold", cfg.health.rehab_threshold},
        {"unusableThreshold", cfg.health.unusable_threshold}}},
      {"output",
       {{"plausibleMin", cfg.output_plausible_min}, {"plausibleMax", cfg.output_plausible_max}}},
      {"sensors", std::move(sensors)},
  };
}

}  // namespace

std::string ConfigFinding::ToString() const {
  std::string out = profile;
  if (!field.empty()) out += (out.empty() ? "" : ".") + field;
  return out + ": " + message;
}

ConfigError::ConfigError(std::vector<ConfigFinding> findings)
    : std::runtime_error(JoinMessages(findings)), findings_(std::move(findings)) {}

ConfigErrorCode ConfigError::code() const {
  for (const auto& f : findings_) {
    if (f.code == ConfigErrorCode::kSchemaError) return ConfigErrorCode::kSchemaError;
  }
  return ConfigErrorCode::kConstraintError;
}

const SensorDescriptor* VoteProfileConfig::FindSensor(SensorId id) const {
  for (const auto& s : sensors) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::string ProfileLabel(std::uint16_t profile_id) {
  return "profile[" + std::to_string(profile_id) + "]";
}

std::vector<ConfigFinding> ValidateProfile(const VoteProfileConfig& c,
                                           const std::string& label) {
  std::vector<ConfigFinding> out;
  auto bad = [&](const std::string& field, std::string message) {
    out.push_back({ConfigErrorCode::kConstraintError, label, field, std::move(message)});
  };
  const auto sensor_count = static_cast<std::uint32_t>(c.sensors.size());

  if (c.max_devices < 1) bad("maxDevices", "maxDevices must be at least 1");
  if (c.max_devices > kMaxDevicesLimit) {
    bad("maxDevices", "maxDevices exceeds " + std::to_string(kMaxDevicesLimit));
  }
  if (sensor_count < 1) bad("sensors", "a profile needs at least one sensor");
  if (sensor_count > c.max_devices) {
    bad("sensors", std::to_string(sensor_count) + " sensors exceed maxDevices (" +
                       std::to_string(c.max_devices) + ")");
  }
  if (c.cycle_time.count() <= 0) bad("cycleTimeMicros", "cycle time must be positive");
  if (c.voting_offset.count() < 0 || c.voting_offset >= c.cycle_time) {
    bad("votingOffsetMicros", "voting offset must lie in [0, cycleTime)");
  }

  const auto& alg = c.algorithm;
  if (alg.m < 1) bad("algorithm.m", "m must be at least 1");
  if (alg.m > alg.n) {
    bad("algorithm.m",
        "m (" + std::to_string(alg.m) + ") exceeds n (" + std::to_string(alg.n) + ")");
  }
  if (alg.n < 1) bad("algorithm.n", "n must be at least 1");
  if (alg.n > sensor_count) {
    bad("algorithm.n", "n (" + std::to_string(alg.n) + ") exceeds the sensor count (" +
                           std::to_string(sensor_count) + ")");
  }
  if (!std::isfinite(alg.epsilon) || alg.epsilon < 0) {
    bad("algorithm.epsilon", "epsilon must be finite and >= 0");
  }

  const auto& acc = c.acceptability;
  if (acc.response_timeout.count() < 0 || acc.response_timeout >= c.cycle_time) {
    bad("acceptability.responseTimeoutMicros", "response timeout must lie in [0, cycleTime)");
  }
  if (acc.max_frames_per_cycle < 1) {
    bad("acceptability.maxFramesPerCycle", "maxFramesPerCycle must be at least 1");
  }
  if (acc.stale_limit < 1) bad("acceptability.staleLimit", "staleLimit must be at least 1");

  if (c.health.bad_threshold < 1) bad("health.badThreshold", "must be at least 1");
  if (c.health.rehab_threshold < 1) bad("health.rehabThreshold", "must be at least 1");
  if (c.health.unusable_threshold < 1) bad("health.unusableThreshold", "must be at least 1");

  if (!std::isfinite(c.output_plausible_min) || !std::isfinite(c.output_plausible_max) ||
      !(c.output_plausible_min < c.output_plausible_max)) {
    bad("output.plausibleMin", "output plausibleMin must be below plausibleMax");
  }

  std::set<SensorId> ids;
  bool any_positive_weight = false;
  for (std::size_t i = 0; i < c.sensors.size(); ++i) {
    const auto& s = c.sensors[i];
    const auto& ch = s.characteristics;
    const std::string base = "sensors[" + std::to_string(i) + "]";
    if (!ids.insert(s.id).second) {
      bad(base + ".id", "duplicate sensor id " + std::to_string(s.id.value));
    }
    if (!std::isfinite(s.weight) || s.weight < 0) {
      bad(base + ".weight", "weight must be finite and >= 0, got " + FormatNumber(s.weight));
    } else if (s.weight > 0) {
      any_positive_weight = true;
    }
    if (ch.bit_size != BitSize::k8 && ch.bit_size != BitSize::k16 &&
        ch.bit_size != BitSize::k32) {
      bad(base + ".bitSize", "bitSize must be 8, 16 or 32");
    }
    if (!std::isfinite(ch.scale) || ch.scale == 0) {
      bad(base + ".scale", "scale must be finite and non-zero");
    }
    if (!std::isfinite(ch.plausible_min) || !std::isfinite(ch.plausible_max) ||
        !(ch.plausible_min < ch.plausible_max)) {
      bad(base + ".plausibleMin", "plausibleMin must be below plausibleMax");
    }
    if (!std::isfinite(ch.max_delta_per_cycle) || ch.max_delta_per_cycle < 0) {
      bad(base + ".maxDeltaPerCycle", "maxDeltaPerCycle must be finite and >= 0");
    }
    if (i > 0 && ch.unit_label != c.sensors[0].characteristics.unit_label) {
      bad(base + ".unitLabel", "unit '" + ch.unit_label + "' differs from '" +
                                   c.sensors[0].characteristics.unit_label + "'");
    }
  }
  if (!c.sensors.empty() && !any_positive_weight) {
    bad("sensors", "at least one sensor needs a positive weight");
  }
  return out;
}

std::vector<VoteProfileConfig> load_config(std::string_view document) {
  std::vector<ConfigFinding> findings;
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ConfigError({{ConfigErrorCode::kSchemaError, "", "document", e.what()}});
  }
  if (!root.is_object()) {
    throw ConfigError({{ConfigErrorCode::kSchemaError, "", "document", "expected an object"}});
  }
  FieldReader top(findings, "");
  const json* profiles = top.Array(root, "profiles", "profiles");
  if (profiles == nullptr) throw ConfigError(std::move(findings));

  std::vector<VoteProfileConfig> configs;
  std::set<std::uint16_t> seen_ids;
  for (std::size_t i = 0; i < profiles->size(); ++i) {
    const json& node = (*profiles)[i];
    std::string label = "profiles[" + std::to_string(i) + "]";
    if (!node.is_object()) {
      findings.push_back({ConfigErrorCode::kSchemaError, label, "", "expected an object"});
      continue;
    }
    // Name findings after the profile id whenever it is readable.
    if (auto it = node.find("id"); it != node.end() && it->is_number_unsigned() &&
                                   it->get<std::uint64_t>() <= 0xFFFF) {
      label = ProfileLabel(it->get<std::uint16_t>());
    }
    const std::size_t before = findings.size();
    FieldReader reader(findings, label);
    VoteProfileConfig cfg = ReadProfile(node, reader);
    if (findings.size() != before) continue;

    if (!seen_ids.insert(cfg.profile_id).second) {
      findings.push_back({ConfigErrorCode::kConstraintError, label, "id",
                          "duplicate profile id " + std::to_string(cfg.profile_id)});
    }
    auto more = ValidateProfile(cfg, label);
    findings.insert(findings.end(), more.begin(), more.end());
    configs.push_back(std::move(cfg));
  }
  if (!findings.empty()) throw ConfigError(std::move(findings));
  return configs;
}

std::string serialize_config(const std::vector<VoteProfileConfig>& configs) {
  json profiles = json::array();
  for (const auto& c : configs) profiles.push_back(WriteProfile(c));
  return json{{"profiles", std::move(profiles)}}.dump(2) + "\n";
}

}  // namespace votefw
