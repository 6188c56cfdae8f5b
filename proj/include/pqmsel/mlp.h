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

#ifndef PQMSEL_MLP_H
#define PQMSEL_MLP_H

// One-hidden-layer ReLU classifier with a softmax output, trained by Adam on
// mean cross-entropy plus an L2 penalty (alpha/2)*||W||^2 over the two weight
// matrices (biases are not penalized).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pqmsel/data.h"

namespace pqmsel::mlp {

struct MlpConfig {
    std::size_t hidden_neurons = 1;
    double alpha = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    int max_iter = 100;
    double learning_rate_init = 1e-3;
    double tol = 1e-4;
    int n_iter_no_change = 10;
    /// Minibatch size is min(max_batch_size, training rows).
    std::size_t max_batch_size = 200;
    /// Reshuffle rows every epoch. Off means rows are visited in view order.
    bool shuffle = true;

    /// Throws ArgumentError when a field is out of range.
    void validate() const;
};

/// Parameters in one flat buffer: W1 (hidden x features, row-major), b1,
/// W2 (classes x hidden, row-major), b2. Also used as the gradient shape.
class MlpModel {
   public:
    MlpModel() = default;
    MlpModel(std::size_t features, std::size_t hidden, std::size_t classes);

    std::size_t features() const noexcept { return features_; }
    std::size_t hidden() const noexcept { return hidden_; }
    std::size_t classes() const noexcept { return classes_; }

    std::span<double> params() noexcept { return params_; }
    std::span<const double> params() const noexcept { return params_; }

    std::span<double> w1() noexcept { return {params_.data(), hidden_ * features_}; }
    std::span<double> b1() noexcept { return {params_.data() + b1_offset(), hidden_}; }
    std::span<double> w2() noexcept { return {params_.data() + w2_offset(), classes_ * hidden_}; }
    std::span<double> b2() noexcept { return {params_.data() + b2_offset(), classes_}; }
    std::span<const double> w1() const noexcept { return {params_.data(), hidden_ * features_}; }
    std::span<const double> b1() const noexcept { return {params_.data() + b1_offset(), hidden_}; }
    std::span<const double> w2() const noexcept { return {params_.data() + w2_offset(), classes_ * hidden_}; }
    std::span<const double> b2() const noexcept { return {params_.data() + b2_offset(), classes_}; }

    /// Sum of squares of W1 and W2.
    double weight_norm_squared() const;

    bool operator==(const MlpModel &) const = default;

   private:
    std::size_t b1_offset() const noexcept { return hidden_ * features_; }
    std::size_t w2_offset() const noexcept { return b1_offset() + hidden_; }
    std::size_t b2_offset() const noexcept { return w2_offset() + classes_ * hidden_; }

    std::size_t features_ = 0;
    std::size_t hidden_ = 0;
    std::size_t classes_ = 0;
    std::vector<double> params_;
};

enum class StopReason { max_iter, no_improvement };

struct TrainReport {
    int epochs_run = 0;
    std::vector<double> loss_curve;
    StopReason stop_reason = StopReason::max_iter;
};

struct TrainResult {
    MlpModel model;
    TrainReport report;
};

/// Half-width of the uniform initialization range: sqrt(6 / (fan_in + fan_out)).
double init_bound(std::size_t fan_in, std::size_t fan_out);

/// Weights uniform in +-init_bound per layer, biases zero. Deterministic in `seed`.
MlpModel init_weights(const MlpConfig &config, std::size_t features, std::size_t classes, std::uint64_t seed);

/// Softmax class probabilities.
std::vector<double> forward(const MlpModel &model, std::span<const double> x);

/// Argmax of forward(); ties go to the lowest class index.
std::size_t predict(const MlpModel &model, std::span<const double> x);

/// Regularized loss over `rows` of `dataset`. When `gradient` is non-null it
/// is overwritten with d(loss)/d(params).
double loss_and_gradient(const MlpModel &model, const data::Dataset &dataset, std::span<const std::size_t> rows,
                         double alpha, MlpModel *gradient);

/// Adam with bias-corrected moments:
///   m <- b1 m + (1-b1) g,  v <- b2 v + (1-b2) g^2,
///   w <- w - lr * (m / (1-b1^t)) / (sqrt(v / (1-b2^t)) + eps).
class Adam {
   public:
    Adam(double learning_rate, double beta1, double beta2, double epsilon, std::size_t size);

    void step(std::span<double> params, std::span<const double> grads);
    int steps_taken() const noexcept { return t_; }

   private:
    double lr_, beta1_, beta2_, eps_;
    int t_ = 0;
    std::vector<double> m_, v_;
};

/// Trains `model` on `view`. Deterministic in (model, view, config, seed).
/// Throws TrainingError when the view is empty or holds a single class.
TrainResult train(MlpModel model, const data::DatasetView &view, const MlpConfig &config, std::uint64_t seed);

}  // namespace pqmsel::mlp

#endif  // PQMSEL_MLP_H
