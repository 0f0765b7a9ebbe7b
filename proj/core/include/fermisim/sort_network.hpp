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

// Comparison sorts made reversible by recording every compare-exchange
// decision. A schedule is a fixed sequence of record slots; the slot
// contents for a given key array form its transcript. The transcript alone
// reproduces the executed exchange sequence, which is what lets a sort be
// undone on registers other than the key.

#ifndef FERMISIM_SORT_NETWORK_HPP_
#define FERMISIM_SORT_NETWORK_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "fermisim/state.hpp"

namespace fermisim {

enum class SortAlgorithm { kHeap, kOddEven };

/// Positions exchanged by one executed transposition.
using Exchange = std::pair<int, int>;

struct SortTranscript {
  Bits record = 0;                  ///< one bit per record slot
  std::vector<Exchange> exchanges;  ///< executed exchanges in order
  int parity() const { return static_cast<int>(exchanges.size() % 2); }
};

class SortSchedule {
 public:
  virtual ~SortSchedule() = default;

  virtual int size() const = 0;
  virtual int record_bits() const = 0;

  /// Sorts `keys` ascending in place and returns the transcript.
  virtual SortTranscript sort(std::span<Bits> keys) const = 0;

  /// Rebuilds the executed exchange sequence from a record. Throws
  /// InvariantViolation if the record is not a valid transcript.
  virtual std::vector<Exchange> replay(Bits record) const = 0;

  /// Transcript of sorting a copy of `keys`, leaving `keys` untouched.
  SortTranscript transcript(std::span<const Bits> keys) const;
};

/// Heap sort: build a max-heap, then repeatedly swap the root to the end and
/// sift down. Each sift level owns two slots (exchanged with the left child,
/// exchanged with the right child); the root-to-end swaps are unconditional
/// and need no slot.
class HeapSortSchedule final : public SortSchedule {
 public:
  explicit HeapSortSchedule(int size);

  int size() const override { return size_; }
  int record_bits() const override { return 2 * total_levels_; }
  SortTranscript sort(std::span<Bits> keys) const override;
  std::vector<Exchange> replay(Bits record) const override;

 private:
  struct Sift {
    int start;           // node the sift begins at
    int heap_size;       // heap extent during the sift
    int levels;          // maximum number of levels
    int slot_offset;     // first record bit
    int fixed_swap_end;  // position swapped with the root first, or -1
  };

  int size_;
  int total_levels_ = 0;
  std::vector<Sift> sifts_;
};

/// Odd-even transposition network: n rounds of compare-exchange on
/// alternating neighbour pairs, one slot per comparator.
class OddEvenSchedule final : public SortSchedule {
 public:
  explicit OddEvenSchedule(int size);

  int size() const override { return size_; }
  int record_bits() const override { return static_cast<int>(comparators_.size()); }
  SortTranscript sort(std::span<Bits> keys) const override;
  std::vector<Exchange> replay(Bits record) const override;

 private:
  int size_;
  std::vector<Exchange> comparators_;
};

std::unique_ptr<SortSchedule> make_sort_schedule(SortAlgorithm algorithm, int size);

}  // namespace fermisim

#endif  // FERMISIM_SORT_NETWORK_HPP_
