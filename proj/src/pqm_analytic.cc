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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "pqmsel/errors.h"
#include "pqmsel/pqm.h"

namespace pqmsel::pqm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_probe(const PqmMemory &memory, const BitPattern &probe, int control_qubits) {
    if (probe.size() != memory.pattern_length()) {
        throw ArgumentError("probe length " + std::to_string(probe.size()) + " does not match memory pattern length " +
                            std::to_string(memory.pattern_length()));
    }
    if (control_qubits < 1) throw ArgumentError("retrieval needs at least one control qubit");
}

double log_choose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// log P(K | h) for one stored pattern at distance h.
double log_binomial_term(int d, int ones, std::size_t h, std::size_t k) {
    if (h == 0) return ones == 0 ? 0.0 : kNegInf;
    if (h == k) return ones == d ? 0.0 : kNegInf;
    const double angle = retrieval_angle(h, k);
    return log_choose(d, ones) + 2.0 * (d - ones) * std::log(std::cos(angle)) + 2.0 * ones * std::log(std::sin(angle));
}

// One output bin: sum_h weights[h] * P(K | h), accumulated with log-sum-exp.
double mixture_bin(std::span<const double> weights, std::size_t k, int d, int ones) {
    double peak = kNegInf;
    for (std::size_t h = 0; h < weights.size(); ++h) {
        if (weights[h] <= 0.0) continue;
        peak = std::max(peak, std::log(weights[h]) + log_binomial_term(d, ones, h, k));
    }
    if (peak == kNegInf) return 0.0;
    double scaled = 0.0;
    for (std::size_t h = 0; h < weights.size(); ++h) {
        if (weights[h] <= 0.0) continue;
        const double term = std::log(weights[h]) + log_binomial_term(d, ones, h, k);
        if (term != kNegInf) scaled += std::exp(term - peak);
    }
    return std::exp(peak) * scaled;
}

std::vector<double> distance_weights(const PqmMemory &memory, const BitPattern &probe) {
    const auto hist = memory.distance_histogram(probe);
    std::vector<double> weights(hist.size());
    const double n = static_cast<double>(memory.total_count());
    for (std::size_t h = 0; h < hist.size(); ++h) weights[h] = static_cast<double>(hist[h]) / n;
    return weights;
}

double success_probability(std::size_t h, std::size_t k) {
    if (h == 0) return 0.0;
    if (h == k) return 1.0;
    const double s = std::sin(retrieval_angle(h, k));
    return s * s;
}

}  // namespace

PqmMemory::PqmMemory(std::size_t pattern_length) : k_(pattern_length) {
    if (pattern_length == 0) throw ArgumentError("memory pattern length must be positive");
}

PqmMemory PqmMemory::from_patterns(std::span<const BitPattern> patterns) {
    if (patterns.empty()) throw ArgumentError("cannot build a memory from an empty pattern list");
    PqmMemory memory(patterns.front().size());
    for (const auto &p : patterns) memory.add(p);
    return memory;
}

void PqmMemory::add(const BitPattern &pattern, std::size_t multiplicity) {
    if (pattern.size() != k_) {
        throw ArgumentError("pattern length " + std::to_string(pattern.size()) + " does not match memory length " +
                            std::to_string(k_));
    }
    if (multiplicity == 0) throw ArgumentError("pattern multiplicity must be positive");
    auto it = std::lower_bound(entries_.begin(), entries_.end(), pattern,
                               [](const MemoryEntry &e, const BitPattern &p) { return e.pattern < p; });
    if (it != entries_.end() && it->pattern == pattern) {
        it->multiplicity += multiplicity;
    } else {
        entries_.insert(it, MemoryEntry{pattern, multiplicity});
    }
    n_ += multiplicity;
}

std::vector<std::size_t> PqmMemory::distance_histogram(const BitPattern &probe) const {
    std::vector<std::size_t> hist(k_ + 1, 0);
    for (const auto &e : entries_) hist[hamming(probe, e.pattern)] += e.multiplicity;
    return hist;
}

double RetrievalDistribution::cumulative(int k) const {
    double total = 0.0;
    for (int i = 0; i <= k && i < static_cast<int>(probs.size()); ++i) total += probs[static_cast<std::size_t>(i)];
    return total;
}

double retrieval_angle(std::size_t distance, std::size_t pattern_length) {
    return std::numbers::pi * static_cast<double>(distance) / (2.0 * static_cast<double>(pattern_length));
}

namespace serial {
std::vector<double> binomial_mixture(std::span<const double> weights, std::size_t pattern_length,
                                     int control_qubits) {
    std::vector<double> probs(static_cast<std::size_t>(control_qubits) + 1);
    for (int ones = 0; ones <= control_qubits; ++ones) {
        probs[static_cast<std::size_t>(ones)] = mixture_bin(weights, pattern_length, control_qubits, ones);
    }
    return probs;
}
}  // namespace serial

namespace omp {
std::vector<double> binomial_mixture(std::span<const double> weights, std::size_t pattern_length,
                                     int control_qubits) {
    std::vector<double> probs(static_cast<std::size_t>(control_qubits) + 1);
    // Each bin is independent, so the result does not depend on scheduling.
    const bool worthwhile = static_cast<std::size_t>(control_qubits) * weights.size() >= 4096;
#pragma omp parallel for schedule(static) if (worthwhile)
    for (int ones = 0; ones <= control_qubits; ++ones) {
        probs[static_cast<std::size_t>(ones)] = mixture_bin(weights, pattern_length, control_qubits, ones);
    }
    return probs;
}
}  // namespace omp

RetrievalDistribution retrieve_analytic(const PqmMemory &memory, const BitPattern &probe, int control_qubits) {
    check_probe(memory, probe, control_qubits);
    const auto weights = distance_weights(memory, probe);
    return {control_qubits, omp::binomial_mixture(weights, memory.pattern_length(), control_qubits)};
}

double expected_ones(const RetrievalDistribution &dist) {
    double total = 0.0;
    for (std::size_t k = 0; k < dist.probs.size(); ++k) total += static_cast<double>(k) * dist.probs[k];
    return total;
}

double expected_ones_closed_form(const PqmMemory &memory, const BitPattern &probe, int control_qubits) {
    check_probe(memory, probe, control_qubits);
    const auto hist = memory.distance_histogram(probe);
    double total = 0.0;
    for (std::size_t h = 0; h < hist.size(); ++h) {
        total += static_cast<double>(hist[h]) * success_probability(h, memory.pattern_length());
    }
    return control_qubits * total / static_cast<double>(memory.total_count());
}

int sample_ones(const PqmMemory &memory, const BitPattern &probe, int control_qubits, Rng &rng) {
    check_probe(memory, probe, control_qubits);
    std::uniform_int_distribution<std::size_t> pick(0, memory.total_count() - 1);
    std::size_t ticket = pick(rng);
    const MemoryEntry *chosen = &memory.entries().back();
    for (const auto &e : memory.entries()) {
        if (ticket < e.multiplicity) {
            chosen = &e;
            break;
        }
        ticket -= e.multiplicity;
    }
    const double p = success_probability(hamming(probe, chosen->pattern), memory.pattern_length());
    std::binomial_distribution<int> draw(control_qubits, p);
    return draw(rng);
}

}  // namespace pqmsel::pqm
