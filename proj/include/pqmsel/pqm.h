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

#ifndef PQMSEL_PQM_H
#define PQMSEL_PQM_H

// Probabilistic quantum memory: storage of binary patterns in uniform
// superposition and Hamming-distance-driven probabilistic retrieval.
//
// Two interchangeable retrieval backends:
//   * retrieve_circuit  - gate-level simulation on a StateVector (small sizes)
//   * retrieve_analytic - closed-form binomial mixture in log space (any size)
// For d control qubits and a memory of n patterns p^j of length k, the
// probability of observing K ones in the control register is
//   (1/n) sum_j C(d,K) cos^{2(d-K)}(pi h_j / 2k) sin^{2K}(pi h_j / 2k),
// where h_j is the Hamming distance between the probe and p^j.

#include <cstddef>
#include <span>
#include <vector>

#include "pqmsel/bit_pattern.h"
#include "pqmsel/seed.h"
#include "pqmsel/statevector.h"

namespace pqmsel::pqm {

struct MemoryEntry {
    BitPattern pattern;
    std::size_t multiplicity;
};

/// Multiset of equal-length patterns. Repeated patterns are merged into one
/// entry with a multiplicity; entries stay sorted by pattern.
class PqmMemory {
   public:
    explicit PqmMemory(std::size_t pattern_length);

    static PqmMemory from_patterns(std::span<const BitPattern> patterns);

    void add(const BitPattern &pattern, std::size_t multiplicity = 1);

    std::size_t pattern_length() const noexcept { return k_; }
    /// n: number of stored patterns counting repetitions.
    std::size_t total_count() const noexcept { return n_; }
    std::span<const MemoryEntry> entries() const noexcept { return entries_; }

    /// Total multiplicity at each Hamming distance 0..k from `probe`.
    std::vector<std::size_t> distance_histogram(const BitPattern &probe) const;

   private:
    std::size_t k_;
    std::size_t n_ = 0;
    std::vector<MemoryEntry> entries_;
};

/// Distribution of the number of ones measured on d control qubits.
struct RetrievalDistribution {
    int control_qubits = 0;
    std::vector<double> probs;  ///< probs[K] = P(y = K), K = 0..d

    /// P(y <= K).
    double cumulative(int k) const;
};

/// Phase pi * distance / (2k) shared by every retrieval formula.
double retrieval_angle(std::size_t distance, std::size_t pattern_length);

/// Closed-form retrieval (log-space accumulation, exact limits at h = 0 and
/// h = k). Throws ArgumentError on probe length mismatch or d < 1.
RetrievalDistribution retrieve_analytic(const PqmMemory &memory, const BitPattern &probe, int control_qubits);

/// Sum of K * P(y = K).
double expected_ones(const RetrievalDistribution &dist);

/// (d / n) sum_j mult_j sin^2(pi h_j / 2k): the mixture mean without
/// building the distribution.
double expected_ones_closed_form(const PqmMemory &memory, const BitPattern &probe, int control_qubits);

/// One retrieval outcome: pick a stored pattern with probability mult/n, then
/// draw Binomial(d, sin^2(pi h / 2k)).
int sample_ones(const PqmMemory &memory, const BitPattern &probe, int control_qubits, Rng &rng);

/// Mixture kernel over distances: weights[h] is the probability mass at
/// Hamming distance h (h = 0..k). Exposed for the serial/parallel cross-check.
namespace serial {
std::vector<double> binomial_mixture(std::span<const double> weights, std::size_t pattern_length,
                                     int control_qubits);
}
namespace omp {
std::vector<double> binomial_mixture(std::span<const double> weights, std::size_t pattern_length,
                                     int control_qubits);
}

// ---------------------------------------------------------------------------
// Circuit backend

struct RegisterRange {
    int first = 0;
    int count = 0;

    int operator[](int i) const { return first + i; }
    std::vector<int> qubits() const;
};

/// Qubit layout of a stored memory: input (k), utility (2), memory (k) and,
/// once retrieval starts, control (d).
struct RegisterLayout {
    RegisterRange input;
    RegisterRange utility;
    RegisterRange memory;
    RegisterRange control;
};

/// A memory prepared on a StateVector. Move-only: retrieval consumes it, so a
/// second retrieval needs a fresh store_circuit call.
class StoredMemory {
   public:
    StoredMemory(StateVector state, RegisterLayout layout, std::size_t pattern_count)
        : state_(std::move(state)), layout_(layout), pattern_count_(pattern_count) {}
    StoredMemory(const StoredMemory &) = delete;
    StoredMemory &operator=(const StoredMemory &) = delete;
    StoredMemory(StoredMemory &&) = default;
    StoredMemory &operator=(StoredMemory &&) = default;

    const StateVector &state() const noexcept { return state_; }
    const RegisterLayout &layout() const noexcept { return layout_; }
    std::size_t pattern_count() const noexcept { return pattern_count_; }

    StateVector release() && { return std::move(state_); }

   private:
    StateVector state_;
    RegisterLayout layout_;
    std::size_t pattern_count_;
};

/// Runs the storage circuit once per pattern. Patterns must be distinct and of
/// equal length. Throws CapacityError if 2k+2 qubits exceed `qubit_cap`.
StoredMemory store_circuit(std::span<const BitPattern> patterns, int qubit_cap = StateVector::kDefaultQubitCap);

/// Gate-level retrieval; returns the exact control-register count
/// distribution (no sampling).
RetrievalDistribution retrieve_circuit(StoredMemory &&memory, const BitPattern &probe, int control_qubits);

}  // namespace pqmsel::pqm

#endif  // PQMSEL_PQM_H
