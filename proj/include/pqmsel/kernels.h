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

#ifndef PQMSEL_KERNELS_H
#define PQMSEL_KERNELS_H

// Dense state-vector kernels. Every kernel exists twice: a plain serial
// reference in kernels::serial, and an OpenMP version in kernels::omp that is
// used by StateVector. Tests hold the two against each other and the
// benchmark target compares their throughput.
//
// Basis index convention: bit q of the index is the value of qubit q.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace pqmsel::kernels {

using cplx = std::complex<double>;

/// 2x2 matrix acting on (|0>, |1>) of the target qubit: row-major.
struct Mat2 {
    cplx m00, m01, m10, m11;

    Mat2 adjoint() const { return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)}; }
};

namespace serial {

void apply_mat2(std::span<cplx> amps, std::uint64_t control_mask, int target, const Mat2 &m);
void apply_mcx(std::span<cplx> amps, std::uint64_t control_mask, int target);
/// Multiplies the target=|0> amplitude by `phase` wherever all controls are 1.
void apply_phase0(std::span<cplx> amps, std::uint64_t control_mask, int target, cplx phase);
double norm_squared(std::span<const cplx> amps);
/// Probability of each outcome of `qubits`; outcome bit i is qubits[i].
std::vector<double> marginal(std::span<const cplx> amps, std::span<const int> qubits);

}  // namespace serial

namespace omp {

/// Below 2^kThresholdQubits amplitudes the kernels stay single-threaded.
inline constexpr int kThresholdQubits = 14;

void apply_mat2(std::span<cplx> amps, std::uint64_t control_mask, int target, const Mat2 &m);
void apply_mcx(std::span<cplx> amps, std::uint64_t control_mask, int target);
void apply_phase0(std::span<cplx> amps, std::uint64_t control_mask, int target, cplx phase);
/// Reductions use a fixed chunking independent of the thread count, so the
/// result is bit-identical for any number of threads.
double norm_squared(std::span<const cplx> amps);
std::vector<double> marginal(std::span<const cplx> amps, std::span<const int> qubits);

}  // namespace omp

}  // namespace pqmsel::kernels

#endif  // PQMSEL_KERNELS_H
