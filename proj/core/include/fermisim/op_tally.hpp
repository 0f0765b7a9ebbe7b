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

#ifndef FERMISIM_OP_TALLY_HPP_
#define FERMISIM_OP_TALLY_HPP_

#include <cstdint>
#include <map>
#include <string>

namespace fermisim {

/// Elementary-operation counts keyed by operation kind.
struct OpTally {
  std::map<std::string, std::uint64_t> by_kind;

  void add(const std::string& kind, std::uint64_t count) { by_kind[kind] += count; }

  std::uint64_t total() const {
    std::uint64_t sum = 0;
    for (const auto& [kind, count] : by_kind) sum += count;
    return sum;
  }

  std::uint64_t count(const std::string& kind) const {
    auto it = by_kind.find(kind);
    return it == by_kind.end() ? 0 : it->second;
  }

  OpTally& operator*=(std::uint64_t factor) {
    for (auto& [kind, count] : by_kind) count *= factor;
    return *this;
  }

  friend bool operator==(const OpTally&, const OpTally&) = default;
};

}  // namespace fermisim

#endif  // FERMISIM_OP_TALLY_HPP_
