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

#include "pqmsel/bit_pattern.h"

#include <bit>

#include "pqmsel/errors.h"

namespace pqmsel {

namespace {
constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }
}  // namespace

BitPattern::BitPattern(std::size_t length) : length_(length), words_(words_for(length), 0) {}

BitPattern BitPattern::from_string(std::string_view text) {
    BitPattern out(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            out.set(i);
        } else if (text[i] != '0') {
            throw ArgumentError("malformed bit-string '" + std::string(text) + "': position " +
                                std::to_string(i) + " is not 0 or 1");
        }
    }
    return out;
}

BitPattern BitPattern::all_ones(std::size_t length) {
    BitPattern out(length);
    for (std::size_t i = 0; i < length; ++i) out.set(i);
    return out;
}

bool BitPattern::test(std::size_t i) const {
    if (i >= length_) throw ArgumentError("bit index " + std::to_string(i) + " out of range");
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
}

void BitPattern::set(std::size_t i, bool value) {
    if (i >= length_) throw ArgumentError("bit index " + std::to_string(i) + " out of range");
    const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
    if (value) {
        words_[i / kWordBits] |= mask;
    } else {
        words_[i / kWordBits] &= ~mask;
    }
}

std::size_t BitPattern::count_ones() const noexcept {
    std::size_t total = 0;
    for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

BitPattern BitPattern::complement() const {
    BitPattern out(length_);
    for (std::size_t i = 0; i < length_; ++i) out.set(i, !test(i));
    return out;
}

std::string BitPattern::to_string() const {
    std::string s(length_, '0');
    for (std::size_t i = 0; i < length_; ++i) {
        if (test(i)) s[i] = '1';
    }
    return s;
}

std::size_t hamming(const BitPattern &a, const BitPattern &b) {
    if (a.length_ != b.length_) {
        throw ArgumentError("hamming: length mismatch (" + std::to_string(a.length_) + " vs " +
                            std::to_string(b.length_) + ")");
    }
    std::size_t total = 0;
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
        total += static_cast<std::size_t>(std::popcount(a.words_[w] ^ b.words_[w]));
    }
    return total;
}

}  // namespace pqmsel
