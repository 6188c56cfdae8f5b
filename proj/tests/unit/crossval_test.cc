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

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "pqmsel/errors.h"
#include "pqmsel/seed.h"

using namespace pqmsel;
using namespace pqmsel::crossval;

namespace {

// Two gaussian blobs in 2-D, labels alternate.
data::Dataset blobs(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 0.6);
    data::Dataset ds;
    ds.name = "blobs";
    ds.feature_count = 2;
    ds.class_count = 2;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t label = i % 2;
        const double c = label ? 1.0 : -1.0;
        ds.features.push_back(c + g(rng));
        ds.features.push_back(c + g(rng));
        ds.labels.push_back(label);
    }
    return ds;
}

}  // namespace

TEST(Folds, partition_and_drop) {
    for (std::size_t n : {10u, 23u, 699u}) {
        for (std::size_t kappa : {2u, 3u, 10u}) {
            const auto folds = make_folds(n, kappa, 42);
            EXPECT_EQ(folds.kappa, kappa);
            EXPECT_EQ(folds.fold_size, n / kappa);
            EXPECT_EQ(folds.dropped.size(), n % kappa);
            std::set<std::size_t> seen(folds.dropped.begin(), folds.dropped.end());
            for (const auto &fold : folds.fold_members) {
                EXPECT_EQ(fold.size(), n / kappa);
                for (std::size_t i : fold) EXPECT_TRUE(seen.insert(i).second);
            }
            EXPECT_EQ(seen.size(), n);
            EXPECT_EQ(*seen.rbegin(), n - 1);
        }
    }
}

TEST(Folds, seed_determinism) {
    EXPECT_EQ(make_folds(100, 10, 7), make_folds(100, 10, 7));
    EXPECT_NE(make_folds(100, 10, 7), make_folds(100, 10, 8));
}

TEST(Folds, training_rows_exclude_test_fold) {
    const auto folds = make_folds(30, 3, 1);
    const auto rows = folds.training_rows(1);
    EXPECT_EQ(rows.size(), 20u);
    std::set<std::size_t> test(folds.fold_members[1].begin(), folds.fold_members[1].end());
    for (std::size_t r : rows) EXPECT_EQ(test.count(r), 0u);
    EXPECT_THROW(folds.training_rows(3), ArgumentError);
}

TEST(Folds, errors) {
    EXPECT_THROW(make_folds(5, 1, 0), ArgumentError);
    EXPECT_THROW(make_folds(5, 6, 0), ArgumentError);
    EXPECT_NO_THROW(make_folds(5, 5, 0));
}

TEST(Ensemble, call_count_and_order) {
    const auto ds = blobs(60, 3);
    const auto folds = make_folds(ds.size(), 4, 11);
    mlp::MlpConfig cfg;
    cfg.max_iter = 5;
    const auto ens = train_ensemble(ds, folds, 2, 3, 99, cfg, 1);
    EXPECT_EQ(ens.training_calls, 12u);
    ASSERT_EQ(ens.members.size(), 12u);
    for (std::size_t i = 0; i < ens.members.size(); ++i) {
        EXPECT_EQ(ens.members[i].fold_id, i / 3);
        EXPECT_EQ(ens.members[i].replicate, i % 3);
        EXPECT_EQ(ens.members[i].seed, task_seed(99, i / 3, i % 3));
        EXPECT_EQ(ens.members[i].model.hidden(), 2u);
    }
}

TEST(Ensemble, independent_of_jobs) {
    const auto ds = blobs(80, 5);
    const auto folds = make_folds(ds.size(), 5, 2);
    mlp::MlpConfig cfg;
    cfg.max_iter = 20;
    const auto a = train_ensemble(ds, folds, 3, 4, 1234, cfg, 1);
    const auto b = train_ensemble(ds, folds, 3, 4, 1234, cfg, 3);
    ASSERT_EQ(a.members.size(), b.members.size());
    for (std::size_t i = 0; i < a.members.size(); ++i) {
        EXPECT_EQ(a.members[i].model, b.members[i].model);
        EXPECT_EQ(a.members[i].report.loss_curve, b.members[i].report.loss_curve);
    }
}

TEST(Ensemble, matches_direct_training) {
    const auto ds = blobs(40, 9);
    const auto folds = make_folds(ds.size(), 2, 4);
    mlp::MlpConfig cfg;
    cfg.max_iter = 10;
    const auto ens = train_ensemble(ds, folds, 1, 2, 77, cfg, 2);
    cfg.hidden_neurons = 1;
    const std::uint64_t seed = task_seed(77, 1, 1);
    const auto rows = folds.training_rows(1);
    auto direct = mlp::train(mlp::init_weights(cfg, 2, 2, seed), {&ds, rows}, cfg, splitmix64(seed));
    EXPECT_EQ(ens.members[3].model, direct.model);
}

TEST(Ensemble, failure_names_fold_and_seed) {
    // Every label identical: single-class training view fails.
    auto ds = blobs(20, 1);
    for (auto &l : ds.labels) l = 0;
    const auto folds = make_folds(ds.size(), 2, 0);
    try {
        train_ensemble(ds, folds, 1, 1, 5, {}, 1);
        FAIL() << "expected TrainingError";
    } catch (const TrainingError &e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("fold 0"), std::string::npos) << msg;
        EXPECT_NE(msg.find(std::to_string(task_seed(5, 0, 0))), std::string::npos) << msg;
    }
}

TEST(PerformanceVectors, matches_predictions) {
    const auto ds = blobs(50, 8);
    const auto folds = make_folds(ds.size(), 5, 3);
    mlp::MlpConfig cfg;
    cfg.max_iter = 50;
    cfg.learning_rate_init = 1e-2;
    const auto ens = train_ensemble(ds, folds, 2, 1, 1, cfg, 1);
    for (const auto &m : ens.members) {
        const auto pv = performance_vector(m.model, ds, folds, m.fold_id, m.seed);
        ASSERT_EQ(pv.bits.size(), folds.fold_size);
        for (std::size_t i = 0; i < pv.bits.size(); ++i) {
            const std::size_t row = folds.fold_members[m.fold_id][i];
            EXPECT_EQ(pv.bits.test(i), mlp::predict(m.model, ds.row(row)) == ds.labels[row]);
        }
    }
}

TEST(VectorIo, round_trip) {
    std::vector<VectorRecord> recs = {
        {{0, 18446744073709551615ull, BitPattern::from_string("1011")}, std::nullopt},
        {{3, 7, BitPattern::from_string("0000")}, BitPattern::from_string("01")},
    };
    std::stringstream ss;
    write_vectors(ss, recs);
    EXPECT_EQ(ss.str(), "0,18446744073709551615,1011\n3,7,0000,01\n");
    std::stringstream in("# comment\n" + ss.str() + "\n");
    const auto back = read_vectors(in);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0].vector, recs[0].vector);
    EXPECT_FALSE(back[0].code);
    EXPECT_EQ(back[1].vector, recs[1].vector);
    EXPECT_EQ(*back[1].code, *recs[1].code);
}

TEST(VectorIo, errors) {
    auto parse = [](const std::string &text) {
        std::stringstream ss(text);
        return read_vectors(ss, "v.txt");
    };
    EXPECT_THROW(parse("0,1\n"), ParseError);
    EXPECT_THROW(parse("x,1,01\n"), ParseError);
    EXPECT_THROW(parse("0,1,012\n"), ParseError);
    EXPECT_THROW(parse("0,1,01\n0,1,011\n"), ParseError);
    try {
        parse("0,1,01\n\n0,-1,01\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 3u);
    }
}
