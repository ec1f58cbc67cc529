// Copyright 2026 The dpfreq Authors
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

#include "dpfreq/stream.hpp"

#include <stdexcept>

namespace dpfreq {

void EventStream::Add(int t, int item, long long count) {
  if (count == 0) return;
  auto& step = entries[t];
  long long& c = step[item];
  c += count;
  if (c == 0) {
    step.erase(item);
    if (step.empty()) entries.erase(t);
  }
}

long long EventStream::Count(int t, int item) const {
  auto it = entries.find(t);
  if (it == entries.end()) return 0;
  auto jt = it->second.find(item);
  return jt == it->second.end() ? 0 : jt->second;
}

long long EventStream::TotalEvents() const {
  long long total = 0;
  for (const auto& [t, step] : entries)
    for (const auto& [u, c] : step) total += c;
  return total;
}

std::optional<std::string> ValidateStream(const EventStream& stream) {
  if (stream.horizon < 1) return "horizon must be >= 1";
  if (stream.universe < 1) return "universe size must be >= 1";
  for (const auto& [t, step] : stream.entries) {
    if (t < 1 || t > stream.horizon)
      return "time step " + std::to_string(t) + " outside [1, T]";
    long long step_total = 0;
    for (const auto& [u, c] : step) {
      if (u < 1 || u > stream.universe)
        return "item " + std::to_string(u) + " at t=" + std::to_string(t) +
               " outside [1, U]";
      if (c < 1)
        return "nonpositive count at (t=" + std::to_string(t) +
               ", u=" + std::to_string(u) + ")";
      step_total += c;
    }
    if (stream.regime == Regime::kSingleton && step_total > 1)
      return "singleton violation at t=" + std::to_string(t) + ": " +
             std::to_string(step_total) + " occurrences";
  }
  return std::nullopt;
}

EventStream CompressTime(const EventStream& stream, int block_length) {
  if (block_length < 1)
    throw std::invalid_argument("block length must be >= 1");
  EventStream out;
  out.horizon = (stream.horizon + block_length - 1) / block_length;
  out.universe = stream.universe;
  out.regime = Regime::kBundle;
  for (const auto& [t, step] : stream.entries) {
    const int block = CompressedIndex(t, block_length);
    for (const auto& [u, c] : step) out.Add(block, u, c);
  }
  return out;
}

int CompressedIndex(int t, int block_length) {
  return (t + block_length - 1) / block_length;
}

std::pair<int, int> CompressedWindow(int t1, int t2, int block_length) {
  const int tp = block_length;
  const int left_offset = (t1 - 1) % tp;
  int b1 = (t1 - 1) / tp + 1;
  if (2 * left_offset > tp) ++b1;  // truncating loses fewer steps
  const int right_offset = tp * CompressedIndex(t2, tp) - t2;
  int b2 = CompressedIndex(t2, tp);
  if (2 * right_offset > tp) --b2;
  return {b1, b2};
}

}  // namespace dpfreq
