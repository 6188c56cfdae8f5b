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

#ifndef PQMSEL_STATEVECTOR_H
#define PQMSEL_STATEVECTOR_H

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string_view>
#include <vector>

#include "pqmsel/kernels.h"
#include "pqmsel/seed.h"

namespace pqmsel {

using Amplitude = std::complex<double>;

/// Exact dense state of `num_qubits` qubits. Qubit 0 is the least
/// significant bit of the basis index.
///
/// A StateVector has a single mutator at a time; distinct instances are
/// independent. Gate methods validate indices and throw ArgumentError.
class StateVector {
   public:
    static constexpr int kDefaultQubitCap = 24;

    /// |0...0> on `num_qubits` qubits.
    explicit StateVector(int num_qubits, int qubit_cap = kDefaultQubitCap);

    /// Basis state; bits[i] is the value of qubit i.
    static StateVector basis(int num_qubits, std::string_view bits, int qubit_cap = kDefaultQubitCap);

    /// Takes ownership of `amplitudes` (length must be a power of two and the
    /// vector normalized within 1e-10).
    static StateVector from_amplitudes(std::vector<Amplitude> amplitudes,
                                       int qubit_cap = kDefaultQubitCap);

    int num_qubits() const noexcept { return num_qubits_; }
    int qubit_cap() const noexcept { return qubit_cap_; }
    std::size_t size() const noexcept { return amps_.size(); }
    std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
    Amplitude amplitude(std::uint64_t index) const { return amps_.at(index); }

    void apply_x(int target);
    void apply_h(int target);
    void apply_cnot(int control, int target);
    void apply_toffoli(int control0, int control1, int target);
    void apply_mcx(std::span<const int> controls, int target);
    void apply_mcx(std::initializer_list<int> controls, int target) {
        apply_mcx(std::span<const int>(controls.begin(), controls.size()), target);
    }

    /// Controlled CS^j: on the control=1 subspace the target pair (|0>,|1>)
    /// is rotated by [[sqrt((j-1)/j), 1/sqrt(j)], [-1/sqrt(j), sqrt((j-1)/j)]].
    void apply_cs(int control, int target, unsigned j);

    /// diag(e^{i theta}, 1) on the target.
    void apply_phase(int target, double theta);
    /// diag(e^{i theta}, 1) on the target where `control` is 1.
    void apply_cphase(int control, int target, double theta);

    /// Arbitrary 2x2 matrix on `target`, conditioned on all `controls` being 1.
    void apply_matrix(std::span<const int> controls, int target, const kernels::Mat2 &m);

    /// This state tensored with |0...0> on `extra` new qubits, which take the
    /// indices num_qubits() .. num_qubits()+extra-1.
    StateVector extended(int extra) const;

    double norm_squared() const;

   private:
    StateVector() = default;
    std::uint64_t control_mask(std::span<const int> controls, int target) const;
    void check_index(int q) const;

    int num_qubits_ = 0;
    int qubit_cap_ = kDefaultQubitCap;
    std::vector<Amplitude> amps_;
};

/// Exact outcome distribution of the listed qubits; outcome bit i is the
/// value of qubits[i]. Sums to 1 within round-off.
std::vector<double> exact_marginal(const StateVector &state, std::span<const int> qubits);

struct Measurement {
    std::uint64_t outcome;  ///< bit i = measured value of qubits[i]
    StateVector collapsed;
};

/// Projective measurement of `qubits`, drawing from exact_marginal.
Measurement measure(const StateVector &state, std::span<const int> qubits, Rng &rng);

}  // namespace pqmsel

#endif  // PQMSEL_STATEVECTOR_H
