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

#include "pqmsel/statevector.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "pqmsel/errors.h"

namespace pqmsel {

namespace {

constexpr int kAbsoluteQubitLimit = 40;

void check_qubit_count(int num_qubits, int qubit_cap) {
    if (qubit_cap < 1 || qubit_cap > kAbsoluteQubitLimit) {
        throw ArgumentError("qubit cap must be in [1, " + std::to_string(kAbsoluteQubitLimit) + "]");
    }
    if (num_qubits < 1) throw ArgumentError("a state needs at least one qubit");
    if (num_qubits > qubit_cap) {
        throw CapacityError("state of " + std::to_string(num_qubits) + " qubits exceeds the cap of " +
                            std::to_string(qubit_cap));
    }
}

}  // namespace

StateVector::StateVector(int num_qubits, int qubit_cap) : num_qubits_(num_qubits), qubit_cap_(qubit_cap) {
    check_qubit_count(num_qubits, qubit_cap);
    amps_.assign(std::size_t{1} << num_qubits, Amplitude{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::basis(int num_qubits, std::string_view bits, int qubit_cap) {
    check_qubit_count(num_qubits, qubit_cap);
    if (bits.size() != static_cast<std::size_t>(num_qubits)) {
        throw ArgumentError("basis bit-string has length " + std::to_string(bits.size()) + ", expected " +
                            std::to_string(num_qubits));
    }
    std::uint64_t index = 0;
    for (std::size_t q = 0; q < bits.size(); ++q) {
        if (bits[q] == '1') {
            index |= std::uint64_t{1} << q;
        } else if (bits[q] != '0') {
            throw ArgumentError("malformed basis bit-string '" + std::string(bits) + "'");
        }
    }
    StateVector s(num_qubits, qubit_cap);
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes, int qubit_cap) {
    const std::size_t n = amplitudes.size();
    if (n < 2 || (n & (n - 1)) != 0) throw ArgumentError("amplitude count must be a power of two >= 2");
    const int q = std::countr_zero(n);
    check_qubit_count(q, qubit_cap);
    double norm = 0.0;
    for (const auto &a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw ArgumentError("non-finite amplitude");
        norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > 1e-10) throw ArgumentError("amplitudes are not normalized");
    StateVector s;
    s.num_qubits_ = q;
    s.qubit_cap_ = qubit_cap;
    s.amps_ = std::move(amplitudes);
    return s;
}

void StateVector::check_index(int q) const {
    if (q < 0 || q >= num_qubits_) {
        throw ArgumentError("qubit index " + std::to_string(q) + " out of range for " +
                            std::to_string(num_qubits_) + " qubits");
    }
}

std::uint64_t StateVector::control_mask(std::span<const int> controls, int target) const {
    check_index(target);
    std::uint64_t mask = 0;
    for (int c : controls) {
        check_index(c);
        const std::uint64_t bit = std::uint64_t{1} << c;
        if (c == target || (mask & bit) != 0) {
            throw ArgumentError("duplicate qubit index " + std::to_string(c) + " in gate");
        }
        mask |= bit;
    }
    return mask;
}

void StateVector::apply_x(int target) { apply_mcx(std::span<const int>{}, target); }

void StateVector::apply_h(int target) {
    const double r = std::numbers::sqrt2 / 2.0;
    apply_matrix({}, target, {r, r, r, -r});
}

void StateVector::apply_cnot(int control, int target) { apply_mcx({control}, target); }

void StateVector::apply_toffoli(int control0, int control1, int target) {
    apply_mcx({control0, control1}, target);
}

void StateVector::apply_mcx(std::span<const int> controls, int target) {
    kernels::omp::apply_mcx(amps_, control_mask(controls, target), target);
}

void StateVector::apply_cs(int control, int target, unsigned j) {
    if (j == 0) throw ArgumentError("CS^j requires j >= 1");
    const double jd = static_cast<double>(j);
    const double diag = std::sqrt((jd - 1.0) / jd);
    const double off = 1.0 / std::sqrt(jd);
    const int controls[] = {control};
    apply_matrix(controls, target, {diag, off, -off, diag});
}

void StateVector::apply_phase(int target, double theta) {
    if (!std::isfinite(theta)) throw ArgumentError("gate angle must be finite");
    kernels::omp::apply_phase0(amps_, control_mask({}, target), target, std::polar(1.0, theta));
}

void StateVector::apply_cphase(int control, int target, double theta) {
    if (!std::isfinite(theta)) throw ArgumentError("gate angle must be finite");
    const int controls[] = {control};
    kernels::omp::apply_phase0(amps_, control_mask(controls, target), target, std::polar(1.0, theta));
}

void StateVector::apply_matrix(std::span<const int> controls, int target, const kernels::Mat2 &m) {
    kernels::omp::apply_mat2(amps_, control_mask(controls, target), target, m);
}

StateVector StateVector::extended(int extra) const {
    if (extra < 0) throw ArgumentError("cannot extend by a negative qubit count");
    check_qubit_count(num_qubits_ + extra, qubit_cap_);
    StateVector s;
    s.num_qubits_ = num_qubits_ + extra;
    s.qubit_cap_ = qubit_cap_;
    s.amps_.assign(std::size_t{1} << s.num_qubits_, Amplitude{0.0, 0.0});
    std::copy(amps_.begin(), amps_.end(), s.amps_.begin());
    return s;
}

double StateVector::norm_squared() const { return kernels::omp::norm_squared(amps_); }

std::vector<double> exact_marginal(const StateVector &state, std::span<const int> qubits) {
    std::uint64_t seen = 0;
    for (int q : qubits) {
        if (q < 0 || q >= state.num_qubits()) throw ArgumentError("marginal qubit index out of range");
        const std::uint64_t bit = std::uint64_t{1} << q;
        if (seen & bit) throw ArgumentError("duplicate qubit index in marginal");
        seen |= bit;
    }
    return kernels::omp::marginal(state.amplitudes(), qubits);
}

Measurement measure(const StateVector &state, std::span<const int> qubits, Rng &rng) {
    const std::vector<double> probs = exact_marginal(state, qubits);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng);
    std::uint64_t outcome = 0;
    std::uint64_t last_nonzero = 0;
    double cumulative = 0.0;
    bool found = false;
    for (std::uint64_t o = 0; o < probs.size(); ++o) {
        if (probs[o] <= 0.0) continue;
        last_nonzero = o;
        cumulative += probs[o];
        if (u < cumulative) {
            outcome = o;
            found = true;
            break;
        }
    }
    // Round-off can leave u just above the running total.
    if (!found) outcome = last_nonzero;

    std::vector<Amplitude> amps(state.amplitudes().begin(), state.amplitudes().end());
    const double scale = 1.0 / std::sqrt(probs[outcome]);
    for (std::uint64_t idx = 0; idx < amps.size(); ++idx) {
        std::uint64_t o = 0;
        for (std::size_t b = 0; b < qubits.size(); ++b) o |= ((idx >> qubits[b]) & 1u) << b;
        if (o == outcome) {
            amps[idx] *= scale;
        } else {
            amps[idx] = 0.0;
        }
    }
    // Renormalize exactly; rescaling alone can drift past the 1e-10 check.
    double norm = 0.0;
    for (const auto &a : amps) norm += std::norm(a);
    const double fix = 1.0 / std::sqrt(norm);
    for (auto &a : amps) a *= fix;
    return {outcome, StateVector::from_amplitudes(std::move(amps), state.qubit_cap())};
}

}  // namespace pqmsel
