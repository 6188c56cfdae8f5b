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

#ifndef PQMSEL_SEED_H
#define PQMSEL_SEED_H

#include <cstdint>
#include <random>

namespace pqmsel {

/// Random stream type used everywhere a seed is consumed.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Stable seed for a task identified by (master, a, b). Each coordinate is
/// folded in with its own SplitMix64 round, so the result does not depend on
/// the order in which tasks are scheduled.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) noexcept;

}  // namespace pqmsel

#endif  // PQMSEL_SEED_H
