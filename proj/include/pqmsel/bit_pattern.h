// Copyright 2026 The pqmsel Authors
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

#ifndef PQMSEL_BIT_PATTERN_H
#define PQMSEL_BIT_PATTERN_H

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pqmsel {

/// Fixed-length bit-string. Character i of the textual form is bit i.
class BitPattern {
   public:
    BitPattern() = default;
    explicit BitPattern(std::size_t length);

    /// Parses a string of '0'/'1'. Throws ArgumentError on any other character.
    static BitPattern from_string(std::string_view text);
    static BitPattern all_ones(std::size_t length);

    std::size_t size() const noexcept { return length_; }
    bool empty() const noexcept { return length_ == 0; }

    bool test(std::size_t i) const;
    void set(std::size_t i, bool value = true);

    std::size_t count_ones() const noexcept;
    BitPattern complement() const;
    std::string to_string() const;

    friend std::size_t hamming(const BitPattern &a, const BitPattern &b);

    bool operator==(const BitPattern &) const = default;
    std::strong_ordering operator<=>(const BitPattern &) const = default;

   private:
    std::size_t length_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Number of differing positions. Throws ArgumentError on length mismatch.
std::size_t hamming(const BitPattern &a, const BitPattern &b);

}  // namespace pqmsel

#endif  // PQMSEL_BIT_PATTERN_H
