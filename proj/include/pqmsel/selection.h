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

#ifndef PQMSEL_SELECTION_H
#define PQMSEL_SELECTION_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pqmsel/crossval.h"
#include "pqmsel/data.h"
#include "pqmsel/mlp.h"
#include "pqmsel/pqm.h"

namespace pqmsel::selection {

enum class Mode { expect, sample };

std::string to_string(Mode mode);
/// Throws ArgumentError on anything but "expect" or "sample".
Mode parse_mode(const std::string &text);

struct SelectionConfig {
    std::size_t kappa = 10;
    std::size_t seeds_per_fold = 100;
    int control_qubits = 100;
    std::size_t hidden_min = 1;
    std::size_t hidden_max = 20;
    Mode mode = Mode::expect;
    std::uint64_t master_seed = 0;
    /// Draws per architecture in sample mode; the criterion is their mean.
    std::size_t sample_repeats = 1;
    /// Worker threads for ensemble training (0 = OpenMP default).
    int jobs = 0;
    mlp::MlpConfig mlp;

    void validate() const;
};

struct FoldSummary {
    std::size_t fold_id = 0;
    double mean_accuracy = 0.0;
    double expected_ones = 0.0;
};

struct ArchitectureResult {
    std::size_t hidden_neurons = 0;
    double mean_accuracy = 0.0;
    double expected_ones = 0.0;
    /// Draws of the number of ones; empty in expect mode.
    std::vector<int> samples;
    pqm::RetrievalDistribution distribution;
    std::size_t training_calls = 0;
    std::vector<FoldSummary> folds;
    /// Performance vectors behind the memory; not persisted in reports.
    std::vector<crossval::PerformanceVector> vectors;

    /// Mean of `samples`, or nullopt in expect mode.
    std::optional<double> sampled_ones() const;
};

/// Seed of the fold shuffle shared by all architectures of a run.
std::uint64_t fold_seed(std::uint64_t master_seed);
/// Master seed of the ensemble trained for one architecture.
std::uint64_t architecture_seed(std::uint64_t master_seed, std::size_t hidden_neurons);

/// Pools the vectors into one memory, queries it with the all-ones probe and
/// records E(X), the distribution and, in sample mode, the draws.
ArchitectureResult summarize(std::size_t hidden_neurons, std::span<const crossval::PerformanceVector> vectors,
                             std::size_t kappa, const SelectionConfig &config);

ArchitectureResult evaluate_architecture(const data::Dataset &dataset, const crossval::FoldAssignment &folds,
                                         std::size_t hidden_neurons, const SelectionConfig &config);

/// Index of the result minimizing the mode's criterion; exact ties go to the
/// fewest hidden neurons.
std::size_t choose(std::span<const ArchitectureResult> results, Mode mode);

struct SelectionRun {
    SelectionConfig config;
    std::size_t example_count = 0;
    std::size_t fold_size = 0;
    std::size_t chosen_hidden = 0;
    std::vector<ArchitectureResult> results;
};

SelectionRun select(const data::Dataset &dataset, const SelectionConfig &config);

}  // namespace pqmsel::selection

#endif  // PQMSEL_SELECTION_H
