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

#include "pqmsel/superposition.h"

#include <omp.h>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "pqmsel/errors.h"
#include "pqmsel/seed.h"

namespace pqmsel::superposition {

double WeightGrid::level(std::size_t index) const {
    if (index >= levels()) throw ArgumentError("level index out of range");
    return lo + (hi - lo) * static_cast<double>(index) / static_cast<double>(levels() - 1);
}

std::vector<double> WeightGrid::decode(const BitPattern &code) const {
    if (code.size() != code_length()) {
        throw ArgumentError("code has " + std::to_string(code.size()) + " bits, grid expects " +
                            std::to_string(code_length()));
    }
    std::vector<double> values(weight_count);
    for (std::size_t w = 0; w < weight_count; ++w) {
        std::size_t index = 0;
        for (int b = 0; b < bits_per_weight; ++b) {
            index = (index << 1) | (code.test(w * bits_per_weight + b) ? 1u : 0u);
        }
        values[w] = level(index);
    }
    return values;
}

void WeightGrid::validate() const {
    if (bits_per_weight < 1 || bits_per_weight > 16) throw ArgumentError("bits per weight must be in [1, 16]");
    if (weight_count < 1) throw ArgumentError("weight count must be >= 1");
    if (!(lo < hi)) throw ArgumentError("grid range must satisfy lo < hi");
}

std::size_t connection_weight_count(std::size_t features, std::size_t hidden, std::size_t classes) {
    return hidden * features + classes * hidden;
}

mlp::MlpModel decode_model(const WeightGrid &grid, const BitPattern &code, std::size_t features,
                           std::size_t hidden, std::size_t classes) {
    const std::size_t available = connection_weight_count(features, hidden, classes);
    if (grid.weight_count > available) {
        throw ArgumentError("grid covers " + std::to_string(grid.weight_count) + " weights but the model has " +
                            std::to_string(available));
    }
    const auto values = grid.decode(code);
    mlp::MlpModel model(features, hidden, classes);
    auto w1 = model.w1();
    auto w2 = model.w2();
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i < w1.size()) {
            w1[i] = values[i];
        } else {
            w2[i - w1.size()] = values[i];
        }
    }
    return model;
}

std::size_t branch_count(const WeightGrid &grid, std::size_t kappa, std::size_t cap) {
    grid.validate();
    if (kappa < 1) throw ArgumentError("need at least 1 fold");
    const std::size_t bits = grid.code_length();
    const std::string count = std::to_string(kappa) + " x 2^" + std::to_string(bits);
    if (bits >= 48) throw CapacityError("branch count " + count + " exceeds cap " + std::to_string(cap));
    const std::size_t total = kappa << bits;
    if (total > cap || (total >> bits) != kappa) {
        throw CapacityError("branch count " + count + " = " + std::to_string(total) + " exceeds cap " +
                            std::to_string(cap));
    }
    return total;
}

std::vector<BranchInput> enumerate_branches(const WeightGrid &grid, std::size_t kappa, std::size_t cap) {
    const std::size_t total = branch_count(grid, kappa, cap);
    const std::size_t bits = grid.code_length();
    const std::size_t codes = std::size_t{1} << bits;
    std::vector<BranchInput> out;
    out.reserve(total);
    for (std::size_t f = 0; f < kappa; ++f) {
        for (std::size_t c = 0; c < codes; ++c) {
            BitPattern code(bits);
            for (std::size_t i = 0; i < bits; ++i) code.set(i, (c >> (bits - 1 - i)) & 1u);
            out.push_back({f, std::move(code)});
        }
    }
    return out;
}

BranchState run_branch(const BranchInput &branch, const WeightGrid &grid, const data::Dataset &dataset,
                       const crossval::FoldAssignment &folds, const mlp::MlpConfig &config) {
    mlp::MlpConfig cfg = config;
    cfg.shuffle = false;
    cfg.validate();
    auto model = decode_model(grid, branch.code, dataset.feature_count, cfg.hidden_neurons, dataset.class_count);
    const auto rows = folds.training_rows(branch.test_fold);
    auto trained = mlp::train(std::move(model), {&dataset, rows}, cfg, 0);
    BranchState state;
    state.test_fold = branch.test_fold;
    state.initial_code = branch.code;
    state.performance = crossval::performance_vector(trained.model, dataset, folds, branch.test_fold);
    state.trained_model = std::move(trained.model);
    return state;
}

std::vector<BranchState> run_branches(std::span<const BranchInput> branches, const WeightGrid &grid,
                                      const data::Dataset &dataset, const crossval::FoldAssignment &folds,
                                      const mlp::MlpConfig &config, int jobs) {
    std::vector<BranchState> out(branches.size());
    std::vector<std::string> failures(branches.size());
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();
    const auto n = static_cast<std::int64_t>(branches.size());

#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            out[i] = run_branch(branches[i], grid, dataset, folds, config);
        } catch (const std::exception &e) {
            failures[i] = e.what();
        }
    }
    for (std::size_t i = 0; i < failures.size(); ++i) {
        if (!failures[i].empty()) {
            throw TrainingError("branch fold " + std::to_string(branches[i].test_fold) + ", code " +
                                branches[i].code.to_string() + ": " + failures[i]);
        }
    }
    return out;
}

pqm::RetrievalDistribution evaluate_superposition(std::span<const BranchState> branches, int control_qubits) {
    if (branches.empty()) throw ArgumentError("no branches to evaluate");
    const std::size_t k = branches.front().performance.bits.size();
    pqm::PqmMemory memory(k);
    for (const auto &b : branches) memory.add(b.performance.bits);
    return pqm::retrieve_analytic(memory, BitPattern::all_ones(k), control_qubits);
}

std::vector<double> mixture_oracle(std::span<const BranchState> branches, int control_qubits) {
    if (branches.empty()) throw ArgumentError("no branches to evaluate");
    if (control_qubits < 1) throw ArgumentError("control qubit count must be >= 1");
    const int d = control_qubits;
    std::vector<double> out(d + 1, 0.0);
    for (const auto &b : branches) {
        const auto k = static_cast<double>(b.performance.bits.size());
        const auto errors = k - static_cast<double>(b.performance.bits.count_ones());
        const double s = std::sin(std::numbers::pi * errors / (2.0 * k));
        const double p = s * s;
        double coeff = 1.0;
        for (int K = 0; K <= d; ++K) {
            if (K > 0) coeff = coeff * (d - K + 1) / K;
            out[K] += coeff * std::pow(p, K) * std::pow(1.0 - p, d - K);
        }
    }
    for (auto &v : out) v /= static_cast<double>(branches.size());
    return out;
}

std::vector<crossval::VectorRecord> export_records(std::span<const BranchState> branches) {
    std::vector<crossval::VectorRecord> out;
    out.reserve(branches.size());
    for (const auto &b : branches) out.push_back({b.performance, b.initial_code});
    return out;
}

data::Dataset xor_toy(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::normal_distribution<double> noise(0.0, 0.3);
    data::Dataset ds;
    ds.name = "xor_toy";
    ds.feature_count = 2;
    ds.class_count = 2;
    for (std::size_t i = 0; i < n; ++i) {
        const double sx = (i & 1u) ? 1.0 : -1.0;
        const double sy = (i & 2u) ? 1.0 : -1.0;
        ds.features.push_back(sx + noise(rng));
        ds.features.push_back(sy + noise(rng));
        ds.labels.push_back(sx != sy ? 1 : 0);
    }
    return ds;
}

}  // namespace pqmsel::superposition
