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

#ifndef DPFREQ_STREAM_HPP_
#define DPFREQ_STREAM_HPP_

#include <map>
#include <optional>
#include <string>

namespace dpfreq {

enum class Regime { kBundle, kSingleton };

// A time-indexed event stream: per-step sparse multisets of item occurrences.
// Time steps are 1..horizon, items are 1..universe. Zero counts are never
// stored. Immutable once constructed (mutation only through Add during
// construction).
struct EventStream {
  int horizon = 0;   // T
  int universe = 0;  // U
  Regime regime = Regime::kBundle;
  // t -> (item -> count >= 1)
  std::map<int, std::map<int, long long>> entries;

  // Adds `count` occurrences of `item` at step `t` (erases on net zero).
  void Add(int t, int item, long long count = 1);
  long long Count(int t, int item) const;
  long long TotalEvents() const;
};

// Returns std::nullopt when all invariants hold, otherwise a description of
// the first violating (t, u) pair. Singleton streams must have at most one
// occurrence in total per step.
std::optional<std::string> ValidateStream(const EventStream& stream);

// Sums consecutive disjoint blocks of `block_length` steps into single steps
// of a bundle stream with horizon ceil(T / block_length). The last block may
// be shorter.
EventStream CompressTime(const EventStream& stream, int block_length);

// Maps a time step to its block index under CompressTime, always rounding
// outward: step t lives in block ceil(t / block_length).
int CompressedIndex(int t, int block_length);

// Maps a window [t1, t2] onto compressed blocks by rounding each endpoint to
// the NEAREST block boundary, so each endpoint contributes at most
// floor(block_length / 2) steps of symmetric difference. May return an empty
// window (first > second) when a short window rounds away entirely.
std::pair<int, int> CompressedWindow(int t1, int t2, int block_length);

}  // namespace dpfreq

#endif  // DPFREQ_STREAM_HPP_
