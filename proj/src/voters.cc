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

#include "votefw/voters.h"

#include <algorithm>
#include <cmath>
#include <set>

namespace votefw {

namespace {

constexpr const char* kNoCluster = "NO_CLUSTER";

// Sorted copy after basic input checks.
std::vector<Ballot> Canonical(std::span<const Ballot> ballots) {
  if (ballots.empty()) throw VoterError(VoterErrorCode::kEmptyInput, "no ballots");
  std::set<SensorId> seen;
  for (const auto& b : ballots) {
    if (!seen.insert(b.sensor_id).second) {
      throw VoterError(VoterErrorCode::kBadParams, "duplicate ballot for sensor " +
                                                       std::to_string(b.sensor_id.value));
    }
    if (!std::isfinite(b.value) || !std::isfinite(b.weight) || b.weight < 0) {
      throw VoterError(VoterErrorCode::kBadParams, "non-finite value or invalid weight");
    }
  }
  std::vector<Ballot> sorted(ballots.begin(), ballots.end());
  std::sort(sorted.begin(), sorted.end(), [](const Ballot& a, const Ballot& b) {
    return a.value != b.value ? a.value < b.value : a.sensor_id < b.sensor_id;
  });
  return sorted;
}

std::vector<SensorId> IdsOf(std::span<const Ballot> ballots) {
  std::vector<SensorId> ids;
  ids.reserve(ballots.size());
  for (const auto& b : ballots) ids.push_back(b.sensor_id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

double PlainMedian(std::span<const Ballot> sorted) {
  std::vector<double> values;
  values.reserve(sorted.size());
  for (const auto& b : sorted) values.push_back(b.value);
  return MedianOfSorted(values);
}

struct Window {
  std::size_t begin;
  std::size_t end;  // exclusive
};

// Maximal runs of the sorted ballots with max - min <= epsilon.
std::vector<Window> MaximalWindows(std::span<const Ballot> sorted, double epsilon) {
  std::vector<Window> windows;
  std::size_t j = 0;
  std::size_t prev_end = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (j < i + 1) j = i + 1;
    while (j < sorted.size() && sorted[j].value - sorted[i].value <= epsilon) ++j;
    if (i == 0 || j > prev_end) windows.push_back({i, j});
    prev_end = j;
  }
  return windows;
}

struct Candidate {
  Window window;
  double weight = 0.0;
  double median = 0.0;
  std::vector<SensorId> ids;
};

// Returns true when `a` beats `b` on the median / id tie-breaks.
bool WinsTieBreak(const Candidate& a, const Candidate& b) {
  if (a.median != b.median) return a.median < b.median;
  return a.ids < b.ids;
}

VoterResult Invalid() {
  VoterResult r;
  r.reason = kNoCluster;
  return r;
}

}  // namespace

double MedianOfSorted(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0;
}

double WeightedMedianOfSorted(std::span<const Ballot> sorted) {
  double total = 0.0;
  for (const auto& b : sorted) total += b.weight;
  double cumulative = 0.0;
  for (const auto& b : sorted) {
    cumulative += b.weight;
    if (2.0 * cumulative >= total) return b.value;
  }
  return sorted.back().value;
}

VoterResult median_vote(std::span<const Ballot> ballots) {
  auto sorted = Canonical(ballots);
  VoterResult r;
  r.valid = true;
  r.value = PlainMedian(sorted);
  r.cluster = IdsOf(sorted);
  return r;
}

VoterResult moon_bounded_median(std::span<const Ballot> ballots, std::uint32_t m,
                                std::uint32_t n, double epsilon) {
  if (m < 1 || m > n) {
    throw VoterError(VoterErrorCode::kBadParams, "require 1 <= m <= n");
  }
  if (!std::isfinite(epsilon) || epsilon < 0) {
    throw VoterError(VoterErrorCode::kBadParams, "epsilon must be finite and >= 0");
  }
  auto sorted = Canonical(ballots);
  if (sorted.size() > n) {
    throw VoterError(VoterErrorCode::kBadParams,
                     std::to_string(sorted.size()) + " ballots exceed n = " + std::to_string(n));
  }

  std::optional<Candidate> best;
  for (const Window& w : MaximalWindows(sorted, epsilon)) {
    std::span<const Ballot> members(sorted.data() + w.begin, w.end - w.begin);
    Candidate c{w, 0.0, PlainMedian(members), IdsOf(members)};
    const std::size_t size = w.end - w.begin;
    const std::size_t best_size = best ? best->window.end - best->window.begin : 0;
    if (!best || size > best_size || (size == best_size && WinsTieBreak(c, *best))) {
      best = std::move(c);
    }
  }
  if (best->ids.size() < m) return Invalid();
  VoterResult r;
  r.valid = true;
  r.value = best->median;
  r.cluster = std::move(best->ids);
  return r;
}

VoterResult weighted_cluster_vote(std::span<const Ballot> ballots, double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 0) {
    throw VoterError(VoterErrorCode::kBadParams, "epsilon must be finite and >= 0");
  }
  auto sorted = Canonical(ballots);
  double total = 0.0;
  for (const auto& b : sorted) total += b.weight;
  if (!(total > 0)) throw VoterError(VoterErrorCode::kZeroWeight, "total weight is zero");

  std::optional<Candidate> best;
  for (const Window& w : MaximalWindows(sorted, epsilon)) {
    std::span<const Ballot> members(sorted.data() + w.begin, w.end - w.begin);
    double weight = 0.0;
    for (const auto& b : members) weight += b.weight;
    if (!(2.0 * weight > total)) continue;
    Candidate c{w, weight, WeightedMedianOfSorted(members), IdsOf(members)};
    bool better = !best;
    if (best) {
      if (c.weight != best->weight) {
        better = c.weight > best->weight;
      } else if (c.ids.size() != best->ids.size()) {
        better = c.ids.size() > best->ids.size();
      } else {
        better = WinsTieBreak(c, *best);
      }
    }
    if (better) best = std::move(c);
  }
  if (!best) return Invalid();
  VoterResult r;
  r.valid = true;
  r.value = best->median;
  r.cluster = std::move(best->ids);
  return r;
}

VoterResult exact_majority(std::span<const Ballot> ballots) {
  auto sorted = Canonical(ballots);
  // Equal values are adjacent after sorting.
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].value == sorted[i].value) ++j;
    if (2 * (j - i) > sorted.size()) {
      VoterResult r;
      r.valid = true;
      r.value = sorted[i].value;
      r.cluster = IdsOf(std::span<const Ballot>(sorted.data() + i, j - i));
      return r;
    }
    i = j;
  }
  return Invalid();
}

}  // namespace votefw
