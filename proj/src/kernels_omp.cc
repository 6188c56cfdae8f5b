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
#include <cstddef>

#include "pqmsel/kernels.h"

namespace pqmsel::kernels::omp {

namespace {

inline std::uint64_t insert_zero(std::uint64_t i, int bit) {
    const std::uint64_t low = i & ((std::uint64_t{1} << bit) - 1);
    return ((i >> bit) << (bit + 1)) | low;
}

inline bool parallel_worthwhile(std::size_t n) { return n >= (std::size_t{1} << kThresholdQubits); }

// Fixed reduction chunk count; keeps sums independent of OMP_NUM_THREADS.
constexpr std::int64_t kReductionChunks = 64;

}  // namespace

void apply_mat2(std::span<cplx> amps, std::uint64_t control_mask, int target, const Mat2 &m) {
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const std::uint64_t tbit = std::uint64_t{1} << target;
    cplx *data = amps.data();
#pragma omp parallel for schedule(static) if (parallel_worthwhile(amps.size()))
    for (std::int64_t i = 0; i < half; ++i) {
        const std::uint64_t i0 = insert_zero(static_cast<std::uint64_t>(i), target);
        if ((i0 & control_mask) != control_mask) continue;
        const std::uint64_t i1 = i0 | tbit;
        const cplx a0 = data[i0];
        const cplx a1 = data[i1];
        data[i0] = m.m00 * a0 + m.m01 * a1;
        data[i1] = m.m10 * a0 + m.m11 * a1;
    }
}

void apply_mcx(std::span<cplx> amps, std::uint64_t control_mask, int target) {
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    const std::uint64_t tbit = std::uint64_t{1} << target;
    cplx *data = amps.data();
#pragma omp parallel for schedule(static) if (parallel_worthwhile(amps.size()))
    for (std::int64_t i = 0; i < half; ++i) {
        const std::uint64_t i0 = insert_zero(static_cast<std::uint64_t>(i), target);
        if ((i0 & control_mask) != control_mask) continue;
        std::swap(data[i0], data[i0 | tbit]);
    }
}

void apply_phase0(std::span<cplx> amps, std::uint64_t control_mask, int target, cplx phase) {
    const auto half = static_cast<std::int64_t>(amps.size() / 2);
    cplx *data = amps.data();
#pragma omp parallel for schedule(static) if (parallel_worthwhile(amps.size()))
    for (std::int64_t i = 0; i < half; ++i) {
        const std::uint64_t i0 = insert_zero(static_cast<std::uint64_t>(i), target);
        if ((i0 & control_mask) != control_mask) continue;
        data[i0] *= phase;
    }
}

double norm_squared(std::span<const cplx> amps) {
    const auto n = static_cast<std::int64_t>(amps.size());
    const std::int64_t chunks = std::min<std::int64_t>(kReductionChunks, n);
    std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(static) if (parallel_worthwhile(amps.size()))
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::int64_t lo = n * c / chunks;
        const std::int64_t hi = n * (c + 1) / chunks;
        double s = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) s += std::norm(amps[static_cast<std::size_t>(i)]);
        partial[static_cast<std::size_t>(c)] = s;
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

std::vector<double> marginal(std::span<const cplx> amps, std::span<const int> qubits) {
    const std::size_t outcomes = std::size_t{1} << qubits.size();
    const auto n = static_cast<std::int64_t>(amps.size());
    // Partial tables cost chunks * outcomes; never exceed the state size.
    const std::int64_t chunks =
        std::clamp<std::int64_t>(n / static_cast<std::int64_t>(outcomes), 1, kReductionChunks);
    std::vector<double> partial(static_cast<std::size_t>(chunks) * outcomes, 0.0);
#pragma omp parallel for schedule(static) if (parallel_worthwhile(amps.size()))
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::int64_t lo = n * c / chunks;
        const std::int64_t hi = n * (c + 1) / chunks;
        double *row = partial.data() + static_cast<std::size_t>(c) * outcomes;
        for (std::int64_t i = lo; i < hi; ++i) {
            const auto idx = static_cast<std::uint64_t>(i);
            std::uint64_t outcome = 0;
            for (std::size_t b = 0; b < qubits.size(); ++b) {
                outcome |= ((idx >> qubits[b]) & 1u) << b;
            }
            row[outcome] += std::norm(amps[idx]);
        }
    }
    std::vector<double> probs(outcomes, 0.0);
    for (std::int64_t c = 0; c < chunks; ++c) {
        const double *row = partial.data() + static_cast<std::size_t>(c) * outcomes;
        for (std::size_t o = 0; o < outcomes; ++o) probs[o] += row[o];
    }
    return probs;
}

}  // namespace pqmsel::kernels::omp
