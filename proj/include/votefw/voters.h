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

// Stateless voting algorithms over weighted scalar ballots.
//
// Every voter canonicalises its input (ascending value, then sensor id), so
// results do not depend on ballot order. Agreement clusters are built with
// the sorted-window construction: after sorting, each maximal run of ballots
// whose max - min <= epsilon is a candidate. Ties between candidates are
// broken by
//   1. the voter's primary score (size, or weight then size),
//   2. the smaller cluster median,
//   3. the lexicographically smaller ascending list of sensor ids,
// which leaves no choice unspecified.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "votefw/types.h"

namespace votefw {

struct Ballot {
  SensorId sensor_id;
  double value = 0.0;
  double weight = 1.0;
};

struct VoterResult {
  bool valid = false;
  std::optional<double> value;
  std::vector<SensorId> cluster;  // ascending
  std::string reason;             // "NO_CLUSTER" when invalid

  friend bool operator==(const VoterResult&, const VoterResult&) = default;
};

enum class VoterErrorCode { kEmptyInput, kBadParams, kZeroWeight };

class VoterError : public std::invalid_argument {
 public:
  VoterError(VoterErrorCode code, const std::string& message)
      : std::invalid_argument(message), code_(code) {}
  VoterErrorCode code() const { return code_; }

 private:
  VoterErrorCode code_;
};

// Plain median, weights ignored. Even counts average the two middle values.
VoterResult median_vote(std::span<const Ballot> ballots);

// Largest epsilon-agreement cluster; valid when it holds at least m ballots.
// The value is the median of that cluster only.
VoterResult moon_bounded_median(std::span<const Ballot> ballots, std::uint32_t m,
                                std::uint32_t n, double epsilon);

// Heaviest epsilon-agreement cluster carrying a strict majority (> W/2) of
// the total weight W. Value is the weighted median of the cluster.
VoterResult weighted_cluster_vote(std::span<const Ballot> ballots, double epsilon);

// Bit-exact majority: a value shared by more than half of the ballots.
VoterResult exact_majority(std::span<const Ballot> ballots);

// Helpers shared with the pipeline and tests.
double MedianOfSorted(std::span<const double> sorted);
// Smallest v with cumulative weight of values <= v reaching half the total.
// `sorted` must be ascending by value.
double WeightedMedianOfSorted(std::span<const Ballot> sorted);

}  // namespace votefw
