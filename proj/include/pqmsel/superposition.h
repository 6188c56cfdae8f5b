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

#ifndef PQMSEL_SUPERPOSITION_H
#define PQMSEL_SUPERPOSITION_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pqmsel/bit_pattern.h"
#include "pqmsel/crossval.h"
#include "pqmsel/data.h"
#include "pqmsel/mlp.h"
#include "pqmsel/pqm.h"

namespace pqmsel::superposition {

inline constexpr std::size_t kDefaultBranchCap = std::size_t{1} << 16;

/// b-bit codes mapped affinely onto 2^b evenly spaced levels in [lo, hi].
/// The grid drives the first `weight_count` connection weights of a model
/// (W1 row-major, then W2); any others start at zero, as do all biases.
struct WeightGrid {
    int bits_per_weight = 1;
    double lo = -1.0;
    double hi = 1.0;
    std::size_t weight_count = 0;

    std::size_t levels() const { return std::size_t{1} << bits_per_weight; }
    double level(std::size_t index) const;
    std::size_t code_length() const { return static_cast<std::size_t>(bits_per_weight) * weight_count; }

    /// Weight values of a code. Each weight reads its b characters most
    /// significant first.
    std::vector<double> decode(const BitPattern &code) const;

    void validate() const;
};

std::size_t connection_weight_count(std::size_t features, std::size_t hidden, std::size_t classes);

/// Initial model for a code; throws ArgumentError if the grid covers more
/// weights than the model has.
mlp::MlpModel decode_model(const WeightGrid &grid, const BitPattern &code, std::size_t features,
                           std::size_t hidden, std::size_t classes);

struct BranchInput {
    std::size_t test_fold = 0;
    BitPattern code;

    bool operator==(const BranchInput &) const = default;
};

/// kappa * 2^(b * weight_count); throws CapacityError naming the count when
/// it exceeds `cap`.
std::size_t branch_count(const WeightGrid &grid, std::size_t kappa, std::size_t cap = kDefaultBranchCap);

/// All (fold, code) pairs ordered by fold, then lexicographically by code.
std::vector<BranchInput> enumerate_branches(const WeightGrid &grid, std::size_t kappa,
                                            std::size_t cap = kDefaultBranchCap);

struct BranchState {
    std::size_t test_fold = 0;
    BitPattern initial_code;
    mlp::MlpModel trained_model;
    crossval::PerformanceVector performance;

    bool operator==(const BranchState &) const = default;
};

/// Trains the decoded model on every fold but the branch's test fold with
/// shuffling disabled, so the result depends only on the inputs.
BranchState run_branch(const BranchInput &branch, const WeightGrid &grid, const data::Dataset &dataset,
                       const crossval::FoldAssignment &folds, const mlp::MlpConfig &config);

/// run_branch over every input, in input order. `jobs` as in train_ensemble.
std::vector<BranchState> run_branches(std::span<const BranchInput> branches, const WeightGrid &grid,
                                      const data::Dataset &dataset, const crossval::FoldAssignment &folds,
                                      const mlp::MlpConfig &config, int jobs = 0);

/// All-ones query of a memory holding every branch's performance vector once.
pqm::RetrievalDistribution evaluate_superposition(std::span<const BranchState> branches, int control_qubits);

/// The same distribution summed branch by branch in linear space, with no
/// grouping or log-domain arithmetic.
std::vector<double> mixture_oracle(std::span<const BranchState> branches, int control_qubits);

std::vector<crossval::VectorRecord> export_records(std::span<const BranchState> branches);

/// Seeded XOR-style set: four gaussian clusters at (+-1, +-1), label is 1
/// when the signs differ.
data::Dataset xor_toy(std::size_t n, std::uint64_t seed);

}  // namespace pqmsel::superposition

#endif  // PQMSEL_SUPERPOSITION_H
