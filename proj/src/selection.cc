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

#include "pqmsel/selection.h"

#include <algorithm>
#include <numeric>

#include "pqmsel/errors.h"
#include "pqmsel/seed.h"

namespace pqmsel::selection {

namespace {

constexpr std::uint64_t kFoldStream = 0x666f6c6473ull;
constexpr std::uint64_t kEnsembleStream = 1;
constexpr std::uint64_t kSampleStream = 2;

// Correct predictions over all predictions, as one exact ratio so equal
// counts give equal accuracies.
double pooled_accuracy(std::size_t correct, std::size_t vectors, std::size_t k) {
    return static_cast<double>(correct) / (static_cast<double>(vectors) * static_cast<double>(k));
}

}  // namespace

std::string to_string(Mode mode) { return mode == Mode::expect ? "expect" : "sample"; }

Mode parse_mode(const std::string &text) {
    if (text == "expect") return Mode::expect;
    if (text == "sample") return Mode::sample;
    throw ArgumentError("unknown mode '" + text + "' (expected expect or sample)");
}

void SelectionConfig::validate() const {
    if (kappa < 2) throw ArgumentError("folds must be >= 2");
    if (seeds_per_fold < 1) throw ArgumentError("seeds-per-fold must be >= 1");
    if (control_qubits < 1) throw ArgumentError("control-qubits must be >= 1");
    if (hidden_min < 1 || hidden_max < hidden_min) throw ArgumentError("hidden range must satisfy 1 <= min <= max");
    if (mode == Mode::sample && sample_repeats < 1) throw ArgumentError("sample repeats must be >= 1");
    if (jobs < 0) throw ArgumentError("jobs must be >= 0");
    mlp.validate();
}

std::optional<double> ArchitectureResult::sampled_ones() const {
    if (samples.empty()) return std::nullopt;
    const double sum = std::accumulate(samples.begin(), samples.end(), 0.0);
    return sum / static_cast<double>(samples.size());
}

std::uint64_t fold_seed(std::uint64_t master_seed) { return derive_seed(master_seed, kFoldStream); }

std::uint64_t architecture_seed(std::uint64_t master_seed, std::size_t hidden_neurons) {
    return derive_seed(master_seed, kEnsembleStream, hidden_neurons);
}

ArchitectureResult summarize(std::size_t hidden_neurons, std::span<const crossval::PerformanceVector> vectors,
                             std::size_t kappa, const SelectionConfig &config) {
    if (vectors.empty()) throw ArgumentError("no performance vectors");
    const std::size_t k = vectors.front().bits.size();
    const BitPattern probe = BitPattern::all_ones(k);

    ArchitectureResult result;
    result.hidden_neurons = hidden_neurons;

    pqm::PqmMemory pooled(k);
    std::vector<std::vector<const crossval::PerformanceVector *>> by_fold(kappa);
    std::size_t correct = 0;
    for (const auto &v : vectors) {
        if (v.fold_id >= kappa) throw ArgumentError("fold id " + std::to_string(v.fold_id) + " out of range");
        if (v.bits.size() != k) throw ArgumentError("performance vectors differ in length");
        pooled.add(v.bits);
        by_fold[v.fold_id].push_back(&v);
        correct += v.bits.count_ones();
    }
    result.mean_accuracy = pooled_accuracy(correct, vectors.size(), k);
    result.distribution = pqm::retrieve_analytic(pooled, probe, config.control_qubits);
    result.expected_ones = pqm::expected_ones(result.distribution);

    for (std::size_t f = 0; f < kappa; ++f) {
        if (by_fold[f].empty()) continue;
        pqm::PqmMemory memory(k);
        std::size_t fold_correct = 0;
        for (const auto *v : by_fold[f]) {
            memory.add(v->bits);
            fold_correct += v->bits.count_ones();
        }
        result.folds.push_back({f, pooled_accuracy(fold_correct, by_fold[f].size(), k),
                                pqm::expected_ones_closed_form(memory, probe, config.control_qubits)});
    }

    if (config.mode == Mode::sample) {
        Rng rng(derive_seed(config.master_seed, kSampleStream, hidden_neurons));
        for (std::size_t r = 0; r < config.sample_repeats; ++r) {
            result.samples.push_back(pqm::sample_ones(pooled, probe, config.control_qubits, rng));
        }
    }
    return result;
}

ArchitectureResult evaluate_architecture(const data::Dataset &dataset, const crossval::FoldAssignment &folds,
                                         std::size_t hidden_neurons, const SelectionConfig &config) {
    const auto ensemble =
        crossval::train_ensemble(dataset, folds, hidden_neurons, config.seeds_per_fold,
                                 architecture_seed(config.master_seed, hidden_neurons), config.mlp, config.jobs);
    std::vector<crossval::PerformanceVector> vectors;
    vectors.reserve(ensemble.members.size());
    for (const auto &m : ensemble.members) {
        vectors.push_back(crossval::performance_vector(m.model, dataset, folds, m.fold_id, m.seed));
    }
    auto result = summarize(hidden_neurons, vectors, folds.kappa, config);
    result.training_calls = ensemble.training_calls;
    result.vectors = std::move(vectors);
    return result;
}

std::size_t choose(std::span<const ArchitectureResult> results, Mode mode) {
    if (results.empty()) throw ArgumentError("no architectures to choose from");
    auto criterion = [mode](const ArchitectureResult &r) {
        if (mode == Mode::expect) return r.expected_ones;
        const auto s = r.sampled_ones();
        if (!s) throw ArgumentError("sample mode requires sampled results");
        return *s;
    };
    std::vector<double> values;
    for (const auto &r : results) values.push_back(criterion(r));
    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i) {
        if (values[i] < values[best] ||
            (values[i] == values[best] && results[i].hidden_neurons < results[best].hidden_neurons)) {
            best = i;
        }
    }
    return best;
}

SelectionRun select(const data::Dataset &dataset, const SelectionConfig &config) {
    config.validate();
    if (dataset.class_count < 2) throw ArgumentError("dataset needs at least 2 classes");
    const auto folds = crossval::make_folds(dataset.size(), config.kappa, fold_seed(config.master_seed));

    SelectionRun run;
    run.config = config;
    run.example_count = dataset.size();
    run.fold_size = folds.fold_size;
    for (std::size_t h = config.hidden_min; h <= config.hidden_max; ++h) {
        run.results.push_back(evaluate_architecture(dataset, folds, h, config));
    }
    run.chosen_hidden = run.results[choose(run.results, config.mode)].hidden_neurons;
    return run;
}

}  // namespace pqmsel::selection
