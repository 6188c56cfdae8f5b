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

#include "pqmsel/crossval.h"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "pqmsel/errors.h"
#include "pqmsel/seed.h"

namespace pqmsel::crossval {

std::vector<std::size_t> FoldAssignment::training_rows(std::size_t test_fold) const {
    if (test_fold >= kappa) throw ArgumentError("fold id " + std::to_string(test_fold) + " out of range");
    std::vector<std::size_t> rows;
    rows.reserve((kappa - 1) * fold_size);
    for (std::size_t f = 0; f < kappa; ++f) {
        if (f == test_fold) continue;
        rows.insert(rows.end(), fold_members[f].begin(), fold_members[f].end());
    }
    return rows;
}

FoldAssignment make_folds(std::size_t n, std::size_t kappa, std::uint64_t seed) {
    if (kappa < 2) throw ArgumentError("need at least 2 folds");
    if (kappa > n) {
        throw ArgumentError("cannot split " + std::to_string(n) + " examples into " + std::to_string(kappa) + " folds");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    FoldAssignment folds;
    folds.kappa = kappa;
    folds.fold_size = n / kappa;
    folds.fold_members.resize(kappa);
    for (std::size_t f = 0; f < kappa; ++f) {
        const auto first = order.begin() + static_cast<long>(f * folds.fold_size);
        folds.fold_members[f].assign(first, first + static_cast<long>(folds.fold_size));
    }
    folds.dropped.assign(order.begin() + static_cast<long>(kappa * folds.fold_size), order.end());
    return folds;
}

std::uint64_t task_seed(std::uint64_t master_seed, std::size_t fold_id, std::size_t replicate) {
    return derive_seed(master_seed, fold_id, replicate);
}

Ensemble train_ensemble(const data::Dataset &dataset, const FoldAssignment &folds, std::size_t hidden_neurons,
                        std::size_t seeds_per_fold, std::uint64_t master_seed, const mlp::MlpConfig &base, int jobs) {
    if (seeds_per_fold < 1) throw ArgumentError("seeds_per_fold must be >= 1");
    if (folds.kappa < 2 || folds.fold_members.size() != folds.kappa) throw ArgumentError("invalid fold assignment");
    mlp::MlpConfig config = base;
    config.hidden_neurons = hidden_neurons;
    config.validate();

    std::vector<std::vector<std::size_t>> training(folds.kappa);
    for (std::size_t f = 0; f < folds.kappa; ++f) training[f] = folds.training_rows(f);

    const auto tasks = static_cast<std::int64_t>(folds.kappa * seeds_per_fold);
    Ensemble ensemble;
    ensemble.members.resize(static_cast<std::size_t>(tasks));
    std::vector<std::string> failures(static_cast<std::size_t>(tasks));
    std::atomic<std::size_t> calls{0};
    const int threads = jobs > 0 ? jobs : omp_get_max_threads();

#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t t = 0; t < tasks; ++t) {
        const auto task = static_cast<std::size_t>(t);
        EnsembleMember &member = ensemble.members[task];
        member.fold_id = task / seeds_per_fold;
        member.replicate = task % seeds_per_fold;
        member.seed = task_seed(master_seed, member.fold_id, member.replicate);
        try {
            auto init = mlp::init_weights(config, dataset.feature_count, dataset.class_count, member.seed);
            calls.fetch_add(1, std::memory_order_relaxed);
            auto trained = mlp::train(std::move(init), {&dataset, training[member.fold_id]}, config,
                                      splitmix64(member.seed));
            member.model = std::move(trained.model);
            member.report = std::move(trained.report);
        } catch (const std::exception &e) {
            failures[task] = e.what();
        }
    }

    for (std::size_t task = 0; task < failures.size(); ++task) {
        if (!failures[task].empty()) {
            const auto &m = ensemble.members[task];
            throw TrainingError("fold " + std::to_string(m.fold_id) + ", seed " + std::to_string(m.seed) + ": " +
                                failures[task]);
        }
    }
    ensemble.training_calls = calls.load();
    return ensemble;
}

PerformanceVector performance_vector(const mlp::MlpModel &model, const data::Dataset &dataset,
                                     const FoldAssignment &folds, std::size_t fold_id, std::uint64_t seed) {
    if (fold_id >= folds.kappa) throw ArgumentError("fold id " + std::to_string(fold_id) + " out of range");
    const auto &members = folds.fold_members[fold_id];
    PerformanceVector out{fold_id, seed, BitPattern(members.size())};
    for (std::size_t i = 0; i < members.size(); ++i) {
        const std::size_t row = members[i];
        out.bits.set(i, mlp::predict(model, dataset.row(row)) == dataset.labels[row]);
    }
    return out;
}

void write_vectors(std::ostream &out, std::span<const VectorRecord> records) {
    for (const auto &r : records) {
        out << r.vector.fold_id << ',' << r.vector.seed << ',' << r.vector.bits.to_string();
        if (r.code) out << ',' << r.code->to_string();
        out << '\n';
    }
}

std::vector<VectorRecord> read_vectors(std::istream &in, const std::string &source) {
    std::vector<VectorRecord> records;
    std::string line;
    std::size_t line_no = 0;
    auto parse_uint = [&](const std::string &field, const char *what) {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc() || ptr != field.data() + field.size()) {
            throw ParseError(source, line_no, std::string("invalid ") + what + " '" + field + "'");
        }
        return v;
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 3 && fields.size() != 4) {
            throw ParseError(source, line_no, "expected fold_id,seed,bits[,code]");
        }
        VectorRecord rec;
        rec.vector.fold_id = static_cast<std::size_t>(parse_uint(fields[0], "fold_id"));
        rec.vector.seed = parse_uint(fields[1], "seed");
        try {
            rec.vector.bits = BitPattern::from_string(fields[2]);
            if (fields.size() == 4) rec.code = BitPattern::from_string(fields[3]);
        } catch (const ArgumentError &e) {
            throw ParseError(source, line_no, e.what());
        }
        if (rec.vector.bits.empty()) throw ParseError(source, line_no, "empty performance vector");
        if (!records.empty() && records.front().vector.bits.size() != rec.vector.bits.size()) {
            throw ParseError(source, line_no, "performance vectors differ in length");
        }
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace pqmsel::crossval
