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
#include <bit>
#include <string>

#include "pqmsel/errors.h"
#include "pqmsel/pqm.h"

namespace pqmsel::pqm {

namespace {

// Sets the (unentangled) input register to `pattern`, flipping only the bits
// that differ from its current basis value.
void load_register(StateVector &state, const RegisterRange &reg, const BitPattern &pattern) {
    const auto qubits = reg.qubits();
    const auto probs = exact_marginal(state, qubits);
    const auto current = static_cast<std::uint64_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
    if (std::abs(probs[current] - 1.0) > 1e-9) {
        throw ArgumentError("input register is not in a basis state");
    }
    for (int b = 0; b < reg.count; ++b) {
        const bool have = (current >> b) & 1u;
        if (have != pattern.test(static_cast<std::size_t>(b))) state.apply_x(reg[b]);
    }
}

// m_b <- NOT(i_b XOR m_b) for every bit.
void xnor_into(StateVector &state, const RegisterRange &from, const RegisterRange &into) {
    for (int b = 0; b < from.count; ++b) {
        state.apply_cnot(from[b], into[b]);
        state.apply_x(into[b]);
    }
}

void undo_xnor(StateVector &state, const RegisterRange &from, const RegisterRange &into) {
    for (int b = from.count - 1; b >= 0; --b) {
        state.apply_x(into[b]);
        state.apply_cnot(from[b], into[b]);
    }
}

}  // namespace

std::vector<int> RegisterRange::qubits() const {
    std::vector<int> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = first + i;
    return out;
}

StoredMemory store_circuit(std::span<const BitPattern> patterns, int qubit_cap) {
    if (patterns.empty()) throw ArgumentError("store_circuit: empty pattern list");
    const std::size_t k = patterns.front().size();
    if (k == 0) throw ArgumentError("store_circuit: patterns must be non-empty");
    for (const auto &p : patterns) {
        if (p.size() != k) throw ArgumentError("store_circuit: patterns differ in length");
    }
    {
        std::vector<BitPattern> sorted(patterns.begin(), patterns.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw ArgumentError("store_circuit: the circuit backend requires distinct patterns");
        }
    }
    const int kq = static_cast<int>(k);
    const int total = 2 * kq + 2;
    if (total > qubit_cap) {
        throw CapacityError("storing " + std::to_string(k) + "-bit patterns needs " + std::to_string(total) +
                            " qubits, cap is " + std::to_string(qubit_cap));
    }

    RegisterLayout layout;
    layout.input = {0, kq};
    layout.utility = {kq, 2};
    layout.memory = {kq + 2, kq};
    layout.control = {total, 0};
    const int u1 = layout.utility[0];
    const int u2 = layout.utility[1];
    const auto &in = layout.input;
    const auto &mem = layout.memory;

    // |p^1; 01; 0...0>: u1 = 0, u2 = 1 marks the processing branch.
    std::string init(static_cast<std::size_t>(total), '0');
    const std::string first = patterns.front().to_string();
    std::copy(first.begin(), first.end(), init.begin());
    init[static_cast<std::size_t>(u2)] = '1';
    StateVector state = StateVector::basis(total, init, qubit_cap);

    const auto mem_qubits = mem.qubits();
    const std::size_t n = patterns.size();
    for (std::size_t iter = 1; iter <= n; ++iter) {
        const auto &pattern = patterns[iter - 1];
        if (iter > 1) load_register(state, in, pattern);

        // Copy the pattern into the memory register of the processing branch.
        for (int b = 0; b < kq; ++b) state.apply_toffoli(in[b], u2, mem[b]);
        xnor_into(state, in, mem);
        // u1 flags the branch whose memory register equals the pattern.
        state.apply_mcx(mem_qubits, u1);
        state.apply_cs(u1, u2, static_cast<unsigned>(n + 1 - iter));
        state.apply_mcx(mem_qubits, u1);
        undo_xnor(state, in, mem);
        for (int b = kq - 1; b >= 0; --b) state.apply_toffoli(in[b], u2, mem[b]);
    }
    return StoredMemory(std::move(state), layout, n);
}

RetrievalDistribution retrieve_circuit(StoredMemory &&memory, const BitPattern &probe, int control_qubits) {
    if (control_qubits < 1) throw ArgumentError("retrieval needs at least one control qubit");
    RegisterLayout layout = memory.layout();
    const int k = layout.memory.count;
    if (probe.size() != static_cast<std::size_t>(k)) {
        throw ArgumentError("probe length " + std::to_string(probe.size()) + " does not match stored length " +
                            std::to_string(k));
    }
    const StateVector &stored = memory.state();
    const int total = stored.num_qubits() + control_qubits;
    if (total > stored.qubit_cap()) {
        throw CapacityError("retrieval with " + std::to_string(control_qubits) + " control qubits needs " +
                            std::to_string(total) + " qubits, cap is " + std::to_string(stored.qubit_cap()));
    }
    StateVector state = std::move(memory).release().extended(control_qubits);
    layout.control = {total - control_qubits, control_qubits};

    load_register(state, layout.input, probe);

    const double theta = retrieval_angle(1, static_cast<std::size_t>(k));
    const auto &in = layout.input;
    const auto &mem = layout.memory;
    for (int l = 0; l < control_qubits; ++l) {
        const int c = layout.control[l];
        state.apply_h(c);
        xnor_into(state, in, mem);
        // V on every memory qubit, then CV^{-2} controlled by c_l: a stored
        // pattern at distance h picks up e^{+i h theta} (c=0) or e^{-i h theta} (c=1).
        for (int b = 0; b < k; ++b) state.apply_phase(mem[b], theta);
        for (int b = 0; b < k; ++b) state.apply_cphase(c, mem[b], -2.0 * theta);
        undo_xnor(state, in, mem);
        state.apply_h(c);
    }

    const auto outcome_probs = exact_marginal(state, layout.control.qubits());
    RetrievalDistribution dist{control_qubits, std::vector<double>(static_cast<std::size_t>(control_qubits) + 1, 0.0)};
    for (std::uint64_t o = 0; o < outcome_probs.size(); ++o) {
        dist.probs[static_cast<std::size_t>(std::popcount(o))] += outcome_probs[o];
    }
    return dist;
}

}  // namespace pqmsel::pqm
