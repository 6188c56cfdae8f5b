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

#include "pqmsel/mlp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "pqmsel/errors.h"
#include "pqmsel/seed.h"

namespace pqmsel::mlp {

namespace {

void check_input(const MlpModel &model, std::span<const double> x) {
    if (x.size() != model.features()) {
        throw ArgumentError("feature vector has " + std::to_string(x.size()) + " entries, model expects " +
                            std::to_string(model.features()));
    }
}

// hidden = relu(W1 x + b1); out = softmax(W2 hidden + b2). `pre` keeps the
// hidden pre-activations for backprop.
void forward_into(const MlpModel &model, const double *x, double *pre, double *hidden, double *out) {
    const std::size_t f = model.features(), h = model.hidden(), c = model.classes();
    const auto w1 = model.w1(), b1 = model.b1(), w2 = model.w2(), b2 = model.b2();
    for (std::size_t j = 0; j < h; ++j) {
        double s = b1[j];
        const double *row = w1.data() + j * f;
        for (std::size_t i = 0; i < f; ++i) s += row[i] * x[i];
        pre[j] = s;
        hidden[j] = s > 0.0 ? s : 0.0;
    }
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < c; ++k) {
        double s = b2[k];
        const double *row = w2.data() + k * h;
        for (std::size_t j = 0; j < h; ++j) s += row[j] * hidden[j];
        out[k] = s;
        peak = std::max(peak, s);
    }
    double total = 0.0;
    for (std::size_t k = 0; k < c; ++k) {
        out[k] = std::exp(out[k] - peak);
        total += out[k];
    }
    for (std::size_t k = 0; k < c; ++k) out[k] /= total;
}

}  // namespace

void MlpConfig::validate() const {
    if (hidden_neurons < 1) throw ArgumentError("hidden_neurons must be >= 1");
    if (!(alpha >= 0.0)) throw ArgumentError("alpha must be non-negative");
    if (!(beta1 > 0.0 && beta1 < 1.0) || !(beta2 > 0.0 && beta2 < 1.0)) {
        throw ArgumentError("beta1 and beta2 must lie in (0, 1)");
    }
    if (!(epsilon > 0.0)) throw ArgumentError("epsilon must be positive");
    if (max_iter < 0) throw ArgumentError("max_iter must be non-negative");
    if (!(learning_rate_init > 0.0)) throw ArgumentError("learning_rate_init must be positive");
    if (!(tol >= 0.0)) throw ArgumentError("tol must be non-negative");
    if (n_iter_no_change < 1) throw ArgumentError("n_iter_no_change must be >= 1");
    if (max_batch_size < 1) throw ArgumentError("max_batch_size must be >= 1");
}

MlpModel::MlpModel(std::size_t features, std::size_t hidden, std::size_t classes)
    : features_(features), hidden_(hidden), classes_(classes),
      params_(hidden * features + hidden + classes * hidden + classes, 0.0) {
    if (features == 0 || hidden == 0 || classes == 0) {
        throw ArgumentError("model dimensions must all be positive");
    }
}

double MlpModel::weight_norm_squared() const {
    double total = 0.0;
    for (double w : w1()) total += w * w;
    for (double w : w2()) total += w * w;
    return total;
}

double init_bound(std::size_t fan_in, std::size_t fan_out) {
    return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

MlpModel init_weights(const MlpConfig &config, std::size_t features, std::size_t classes, std::uint64_t seed) {
    MlpModel model(features, config.hidden_neurons, classes);
    Rng rng(seed);
    const double bound1 = init_bound(features, config.hidden_neurons);
    const double bound2 = init_bound(config.hidden_neurons, classes);
    std::uniform_real_distribution<double> u1(-bound1, bound1);
    for (double &w : model.w1()) w = u1(rng);
    std::uniform_real_distribution<double> u2(-bound2, bound2);
    for (double &w : model.w2()) w = u2(rng);
    return model;
}

std::vector<double> forward(const MlpModel &model, std::span<const double> x) {
    check_input(model, x);
    std::vector<double> pre(model.hidden()), hidden(model.hidden()), out(model.classes());
    forward_into(model, x.data(), pre.data(), hidden.data(), out.data());
    return out;
}

std::size_t predict(const MlpModel &model, std::span<const double> x) {
    const auto probs = forward(model, x);
    return static_cast<std::size_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
}

double loss_and_gradient(const MlpModel &model, const data::Dataset &dataset, std::span<const std::size_t> rows,
                         double alpha, MlpModel *gradient) {
    if (rows.empty()) throw ArgumentError("loss over an empty batch");
    if (dataset.feature_count != model.features()) throw ArgumentError("dataset and model feature counts differ");
    const std::size_t f = model.features(), h = model.hidden(), c = model.classes();
    std::vector<double> pre(h), hidden(h), out(c), delta_hidden(h);
    if (gradient != nullptr) {
        if (gradient->features() != f || gradient->hidden() != h || gradient->classes() != c) {
            *gradient = MlpModel(f, h, c);
        }
        std::fill(gradient->params().begin(), gradient->params().end(), 0.0);
    }
    const double inv_batch = 1.0 / static_cast<double>(rows.size());
    double loss = 0.0;
    for (std::size_t r : rows) {
        const double *x = dataset.features.data() + r * f;
        const std::size_t label = dataset.labels[r];
        forward_into(model, x, pre.data(), hidden.data(), out.data());
        // Clamp so that an exactly-zero probability still yields a finite loss.
        loss -= std::log(std::max(out[label], std::numeric_limits<double>::min()));
        if (gradient == nullptr) continue;

        auto gw1 = gradient->w1(), gb1 = gradient->b1(), gw2 = gradient->w2(), gb2 = gradient->b2();
        const auto w2 = model.w2();
        std::fill(delta_hidden.begin(), delta_hidden.end(), 0.0);
        for (std::size_t k = 0; k < c; ++k) {
            const double dz = (out[k] - (k == label ? 1.0 : 0.0)) * inv_batch;
            gb2[k] += dz;
            double *grow = gw2.data() + k * h;
            const double *wrow = w2.data() + k * h;
            for (std::size_t j = 0; j < h; ++j) {
                grow[j] += dz * hidden[j];
                delta_hidden[j] += dz * wrow[j];
            }
        }
        for (std::size_t j = 0; j < h; ++j) {
            if (pre[j] <= 0.0) continue;
            const double dj = delta_hidden[j];
            gb1[j] += dj;
            double *grow = gw1.data() + j * f;
            for (std::size_t i = 0; i < f; ++i) grow[i] += dj * x[i];
        }
    }
    loss = loss * inv_batch + 0.5 * alpha * model.weight_norm_squared();
    if (gradient != nullptr && alpha != 0.0) {
        auto gw1 = gradient->w1(), gw2 = gradient->w2();
        const auto w1 = model.w1(), w2 = model.w2();
        for (std::size_t i = 0; i < w1.size(); ++i) gw1[i] += alpha * w1[i];
        for (std::size_t i = 0; i < w2.size(); ++i) gw2[i] += alpha * w2[i];
    }
    return loss;
}

Adam::Adam(double learning_rate, double beta1, double beta2, double epsilon, std::size_t size)
    : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(epsilon), m_(size, 0.0), v_(size, 0.0) {}

void Adam::step(std::span<double> params, std::span<const double> grads) {
    if (params.size() != m_.size() || grads.size() != m_.size()) throw ArgumentError("adam: size mismatch");
    ++t_;
    const double correction1 = 1.0 - std::pow(beta1_, t_);
    const double correction2 = 1.0 - std::pow(beta2_, t_);
    for (std::size_t i = 0; i < params.size(); ++i) {
        m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grads[i];
        v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grads[i] * grads[i];
        const double m_hat = m_[i] / correction1;
        const double v_hat = v_[i] / correction2;
        params[i] -= lr_ * m_hat / (std::sqrt(v_hat) + eps_);
    }
}

TrainResult train(MlpModel model, const data::DatasetView &view, const MlpConfig &config, std::uint64_t seed) {
    config.validate();
    if (view.dataset == nullptr || view.rows.empty()) throw TrainingError("empty training view");
    const data::Dataset &ds = *view.dataset;
    if (ds.feature_count != model.features()) throw ArgumentError("dataset and model feature counts differ");
    {
        const std::size_t first = ds.labels[view.rows.front()];
        const bool single = std::all_of(view.rows.begin(), view.rows.end(),
                                        [&](std::size_t r) { return ds.labels[r] == first; });
        if (single) throw TrainingError("training view contains a single class");
    }

    TrainResult result{std::move(model), {}};
    MlpModel &m = result.model;
    TrainReport &report = result.report;
    std::vector<std::size_t> order(view.rows.begin(), view.rows.end());
    const std::size_t n = order.size();
    const std::size_t batch = std::min(config.max_batch_size, n);
    Adam adam(config.learning_rate_init, config.beta1, config.beta2, config.epsilon, m.params().size());
    MlpModel grad(m.features(), m.hidden(), m.classes());
    Rng rng(seed);

    double best = std::numeric_limits<double>::infinity();
    int stalled = 0;
    for (int epoch = 0; epoch < config.max_iter; ++epoch) {
        if (config.shuffle) std::shuffle(order.begin(), order.end(), rng);
        double epoch_loss = 0.0;
        for (std::size_t start = 0; start < n; start += batch) {
            const std::size_t len = std::min(batch, n - start);
            const std::span<const std::size_t> rows(order.data() + start, len);
            epoch_loss += loss_and_gradient(m, ds, rows, config.alpha, &grad) * static_cast<double>(len);
            adam.step(m.params(), grad.params());
        }
        epoch_loss /= static_cast<double>(n);
        report.loss_curve.push_back(epoch_loss);
        report.epochs_run = epoch + 1;

        stalled = epoch_loss > best - config.tol ? stalled + 1 : 0;
        best = std::min(best, epoch_loss);
        if (stalled >= config.n_iter_no_change) {
            report.stop_reason = StopReason::no_improvement;
            break;
        }
    }
    for (double p : m.params()) {
        if (!std::isfinite(p)) throw TrainingError("training diverged to a non-finite weight");
    }
    return result;
}

}  // namespace pqmsel::mlp
