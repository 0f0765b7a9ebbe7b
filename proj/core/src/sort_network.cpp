// Copyright 2026 The fermisim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fermisim/sort_network.hpp"

#include <algorithm>
#include <string>

#include "fermisim/errors.hpp"

namespace fermisim {

namespace {

int sift_levels(int start, int heap_size) {
  int levels = 0;
  for (int j = start; 2 * j + 1 < heap_size; j = 2 * j + 1) ++levels;
  return levels;
}

bool record_bit(Bits record, int slot) { return ((record >> slot) & 1U) != 0; }

}  // namespace

SortTranscript SortSchedule::transcript(std::span<const Bits> keys) const {
  std::vector<Bits> copy(keys.begin(), keys.end());
  return sort(copy);
}

HeapSortSchedule::HeapSortSchedule(int size) : size_(size) {
  if (size < 1) throw InvalidInput("sort schedule needs at least one element");
  auto add = [&](int start, int heap_size, int fixed_end) {
    const int levels = sift_levels(start, heap_size);
    sifts_.push_back(Sift{start, heap_size, levels, 2 * total_levels_, fixed_end});
    total_levels_ += levels;
  };
  for (int i = size / 2 - 1; i >= 0; --i) add(i, size, -1);
  for (int end = size - 1; end >= 1; --end) add(0, end, end);
  if (record_bits() > kMaxQubits) throw InvalidInput("heap sort record exceeds 64 bits");
}

SortTranscript HeapSortSchedule::sort(std::span<Bits> keys) const {
  if (static_cast<int>(keys.size()) != size_) {
    throw InvalidInput("key count does not match sort schedule size");
  }
  SortTranscript t;
  for (const Sift& sift : sifts_) {
    if (sift.fixed_swap_end >= 0) {
      std::swap(keys[0], keys[static_cast<std::size_t>(sift.fixed_swap_end)]);
      t.exchanges.emplace_back(0, sift.fixed_swap_end);
    }
    int node = sift.start;
    for (int level = 0; level < sift.levels; ++level) {
      const int left = 2 * node + 1;
      const int right = left + 1;
      if (left >= sift.heap_size) break;
      int largest = node;
      if (keys[left] > keys[largest]) largest = left;
      if (right < sift.heap_size && keys[right] > keys[largest]) largest = right;
      if (largest == node) break;
      std::swap(keys[node], keys[largest]);
      t.exchanges.emplace_back(node, largest);
      t.record |= Bits{1} << (sift.slot_offset + 2 * level + (largest == right ? 1 : 0));
      node = largest;
    }
  }
  return t;
}

std::vector<Exchange> HeapSortSchedule::replay(Bits record) const {
  if ((record & ~low_mask(record_bits())) != 0) {
    throw InvariantViolation("heap sort record has bits beyond its slots");
  }
  std::vector<Exchange> exchanges;
  for (const Sift& sift : sifts_) {
    if (sift.fixed_swap_end >= 0) exchanges.emplace_back(0, sift.fixed_swap_end);
    int node = sift.start;
    bool stopped = false;
    for (int level = 0; level < sift.levels; ++level) {
      const int slot = sift.slot_offset + 2 * level;
      const bool went_left = record_bit(record, slot);
      const bool went_right = record_bit(record, slot + 1);
      if (stopped || (!went_left && !went_right)) {
        if (went_left || went_right) {
          throw InvariantViolation("heap sort record continues after a stopped sift");
        }
        stopped = true;
        continue;
      }
      if (went_left && went_right) {
        throw InvariantViolation("heap sort record exchanges with both children");
      }
      const int child = 2 * node + (went_left ? 1 : 2);
      if (child >= sift.heap_size) {
        throw InvariantViolation("heap sort record names a child outside the heap");
      }
      exchanges.emplace_back(node, child);
      node = child;
    }
  }
  return exchanges;
}

OddEvenSchedule::OddEvenSchedule(int size) : size_(size) {
  if (size < 1) throw InvalidInput("sort schedule needs at least one element");
  for (int round = 0; round < size; ++round) {
    for (int i = round % 2; i + 1 < size; i += 2) comparators_.emplace_back(i, i + 1);
  }
  if (record_bits() > kMaxQubits) throw InvalidInput("odd-even record exceeds 64 bits");
}

SortTranscript OddEvenSchedule::sort(std::span<Bits> keys) const {
  if (static_cast<int>(keys.size()) != size_) {
    throw InvalidInput("key count does not match sort schedule size");
  }
  SortTranscript t;
  for (std::size_t slot = 0; slot < comparators_.size(); ++slot) {
    const auto [i, j] = comparators_[slot];
    if (keys[i] > keys[j]) {
      std::swap(keys[i], keys[j]);
      t.exchanges.emplace_back(i, j);
      t.record |= Bits{1} << slot;
    }
  }
  return t;
}

std::vector<Exchange> OddEvenSchedule::replay(Bits record) const {
  if ((record & ~low_mask(record_bits())) != 0) {
    throw InvariantViolation("odd-even record has bits beyond its slots");
  }
  std::vector<Exchange> exchanges;
  for (std::size_t slot = 0; slot < comparators_.size(); ++slot) {
    if (record_bit(record, static_cast<int>(slot))) exchanges.push_back(comparators_[slot]);
  }
  return exchanges;
}

std::unique_ptr<SortSchedule> make_sort_schedule(SortAlgorithm algorithm, int size) {
  if (algorithm == SortAlgorithm::kHeap) return std::make_unique<HeapSortSchedule>(size);
  return std::make_unique<OddEvenSchedule>(size);
}

}  // namespace fermisim
