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

#ifndef PQMSEL_CROSSVAL_H
#define PQMSEL_CROSSVAL_H

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pqmsel/bit_pattern.h"
#include "pqmsel/data.h"
#include "pqmsel/mlp.h"

namespace pqmsel::crossval {

/// kappa equal folds over a seeded shuffle of 0..N-1. The last N mod kappa
/// shuffled indices are dropped so every fold has floor(N/kappa) members.
struct FoldAssignment {
    std::size_t kappa = 0;
    std::size_t fold_size = 0;
    std::vector<std::vector<std::size_t>> fold_members;
    std::vector<std::size_t> dropped;

    /// Members of every fold except `test_fold`, in fold order.
    std::vector<std::size_t> training_rows(std::size_t test_fold) const;

    bool operator==(const FoldAssignment &) const = default;
};

/// Throws ArgumentError unless N >= kappa >= 2.
FoldAssignment make_folds(std::size_t n, std::size_t kappa, std::uint64_t seed);

/// Seed of replicate `replicate` on fold `fold_id`; a pure function of its
/// arguments so serial and parallel runs agree.
std::uint64_t task_seed(std::uint64_t master_seed, std::size_t fold_id, std::size_t replicate);

struct EnsembleMember {
    std::size_t fold_id = 0;
    std::size_t replicate = 0;
    std::uint64_t seed = 0;
    mlp::MlpModel model;
    mlp::TrainReport report;
};

struct Ensemble {
    /// Ordered by (fold_id, replicate).
    std::vector<EnsembleMember> members;
    /// Number of mlp::train invocations performed.
    std::size_t training_calls = 0;
};

/// Trains seeds_per_fold networks per fold, each on every fold but its own.
/// `jobs` is the number of worker threads (0 = OpenMP default). The result is
/// independent of `jobs`. Training failures are rethrown as TrainingError
/// naming the (fold, seed) of the first failing task.
Ensemble train_ensemble(const data::Dataset &dataset, const FoldAssignment &folds, std::size_t hidden_neurons,
                        std::size_t seeds_per_fold, std::uint64_t master_seed, const mlp::MlpConfig &base = {},
                        int jobs = 0);

/// Bit i is 1 iff the model classifies member i of fold `fold_id` correctly.
struct PerformanceVector {
    std::size_t fold_id = 0;
    std::uint64_t seed = 0;
    BitPattern bits;

    bool operator==(const PerformanceVector &) const = default;
};

PerformanceVector performance_vector(const mlp::MlpModel &model, const data::Dataset &dataset,
                                     const FoldAssignment &folds, std::size_t fold_id, std::uint64_t seed = 0);

/// One line per vector: `fold_id,seed,bits`, or `fold_id,seed,bits,code` when
/// a weight-grid code is attached. Lines starting with '#' are comments.
struct VectorRecord {
    PerformanceVector vector;
    std::optional<BitPattern> code;
};

void write_vectors(std::ostream &out, std::span<const VectorRecord> records);
std::vector<VectorRecord> read_vectors(std::istream &in, const std::string &source = "<vectors>");

}  // namespace pqmsel::crossval

#endif  // PQMSEL_CROSSVAL_H
