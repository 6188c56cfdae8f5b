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

#include "pqmsel/kernels.h"

namespace pqmsel::kernels::serial {

namespace {
inline std::uint64_t insert_zero(std::uint64_t i, int bit) {
    const std::uint64_t low = i & ((std::uint64_t{1} << bit) - 1);
    return ((i >> bit) << (bit + 1)) | low;
}
}  // namespace

void apply_mat2(std::span<cplx> amps, std::uint64_t control_mask, int target, const Mat2 &m) {
    const std::uint64_t half = amps.size() / 2;
    const std::uint64_t tbit = std::uint64_t{1} << target;
    for (std::uint64_t i = 0; i < half; ++i) {
        const std::uint64_t i0 = insert_zero(i, target);
        if ((i0 & control_mask) != control_mask) continue;
        const std::uint64_t i1 = i0 | tbit;
        const cplx a0 = amps[i0];
        const cplx a1 = amps[i1];
        amps[i0] = m.m00 * a0 + m.m01 * a1;
        amps[i1] = m.m10 * a0 + m.m11 * a1;
    }
}

void apply_mcx(std::span<cplx> amps, std::uint64_t control_mask, int target) {
    const std::uint64_t half = amps.size() / 2;
    const std::uint64_t tbit = std::uint64_t{1} << target;
    for (std::uint64_t i = 0; i < half; ++i) {
        const std::uint64_t i0 = insert_zero(i, target);
        if ((i0 & control_mask) != control_mask) continue;
        std::swap(amps[i0], amps[i0 | tbit]);
    }
}

void apply_phase0(std::span<cplx> amps, std::uint64_t control_mask, int target, cplx phase) {
    const std::uint64_t half = amps.size() / 2;
    for (std::uint64_t i = 0; i < half; ++i) {
        const std::uint64_t i0 = insert_zero(i, target);
        if ((i0 & control_mask) != control_mask) continue;
        amps[i0] *= phase;
    }
}

double norm_squared(std::span<const cplx> amps) {
    double total = 0.0;
    for (const auto &a : amps) total += std::norm(a);
    return total;
}

std::vector<double> marginal(std::span<const cplx> amps, std::span<const int> qubits) {
    std::vector<double> probs(std::size_t{1} << qubits.size(), 0.0);
    for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
        std::uint64_t outcome = 0;
        for (std::size_t b = 0; b < qubits.size(); ++b) {
            outcome |= ((idx >> qubits[b]) & 1u) << b;
        }
        probs[outcome] += std::norm(amps[idx]);
    }
    return probs;
}

}  // namespace pqmsel::kernels::serial
