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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pqmsel/errors.h"
#include "pqmsel/kernels.h"
#include "test_util.h"

using namespace pqmsel;
using pqmsel::testing::max_abs_diff;
using pqmsel::testing::random_state;

namespace {
constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
}

TEST(StateVector, basis_states) {
    auto s = StateVector::basis(2, "01");
    ASSERT_EQ(s.size(), 4u);
    EXPECT_EQ(s.amplitude(0), Amplitude(0));
    EXPECT_EQ(s.amplitude(1), Amplitude(0));
    EXPECT_EQ(s.amplitude(2), Amplitude(1));
    EXPECT_EQ(s.amplitude(3), Amplitude(0));

    auto one = StateVector::basis(1, "0");
    EXPECT_EQ(one.amplitude(0), Amplitude(1));
    EXPECT_EQ(one.amplitude(1), Amplitude(0));

    EXPECT_EQ(StateVector::basis(3, "111").amplitude(7), Amplitude(1));
}

TEST(StateVector, basis_errors) {
    EXPECT_THROW(StateVector::basis(25, std::string(25, '0')), CapacityError);
    EXPECT_THROW(StateVector::basis(3, "01"), ArgumentError);
    EXPECT_NO_THROW(StateVector::basis(5, "00000", 5));
    EXPECT_THROW(StateVector::basis(6, "000000", 5), CapacityError);
}

TEST(StateVector, single_qubit_gates) {
    StateVector s(1);
    s.apply_h(0);
    EXPECT_NEAR(s.amplitude(0).real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(s.amplitude(1).real(), kInvSqrt2, 1e-15);

    StateVector x(1);
    x.apply_x(0);
    EXPECT_EQ(x.amplitude(1), Amplitude(1));

    std::mt19937_64 rng(3);
    auto r = random_state(5, rng);
    auto before = std::vector<Amplitude>(r.amplitudes().begin(), r.amplitudes().end());
    r.apply_h(2);
    r.apply_h(2);
    EXPECT_LT(max_abs_diff(before, r.amplitudes()), 1e-12);
}

TEST(StateVector, controlled_not_family) {
    auto s = StateVector::basis(2, "10");  // control q0 = 1, target q1 = 0
    s.apply_cnot(0, 1);
    EXPECT_EQ(s.amplitude(3), Amplitude(1));

    auto t = StateVector::basis(3, "110");
    t.apply_toffoli(0, 1, 2);
    EXPECT_EQ(t.amplitude(7), Amplitude(1));

    auto m = StateVector::basis(3, "000");
    m.apply_mcx({}, 1);
    EXPECT_EQ(m.amplitude(2), Amplitude(1));
}

TEST(StateVector, gate_index_errors) {
    StateVector s(3);
    EXPECT_THROW(s.apply_x(3), ArgumentError);
    EXPECT_THROW(s.apply_h(-1), ArgumentError);
    EXPECT_THROW(s.apply_cnot(1, 1), ArgumentError);
    EXPECT_THROW(s.apply_toffoli(0, 0, 2), ArgumentError);
    EXPECT_THROW(s.apply_mcx({0, 5}, 2), ArgumentError);
    EXPECT_THROW(s.apply_cs(0, 1, 0), ArgumentError);
    EXPECT_THROW(s.apply_phase(0, std::nan("")), ArgumentError);
}

TEST(StateVector, cs_gate_blocks) {
    // j = 1: block [[0, 1], [-1, 0]], so |0> -> -|1> on the target.
    auto s = StateVector::basis(2, "10");
    s.apply_cs(0, 1, 1);
    EXPECT_NEAR(s.amplitude(1).real(), 0.0, 1e-15);
    EXPECT_NEAR(s.amplitude(3).real(), -1.0, 1e-15);

    // j = 2 entries are +-1/sqrt(2).
    auto a = StateVector::basis(2, "10");
    a.apply_cs(0, 1, 2);
    EXPECT_NEAR(a.amplitude(1).real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(a.amplitude(3).real(), -kInvSqrt2, 1e-15);
    auto b = StateVector::basis(2, "11");
    b.apply_cs(0, 1, 2);
    EXPECT_NEAR(b.amplitude(1).real(), kInvSqrt2, 1e-15);
    EXPECT_NEAR(b.amplitude(3).real(), kInvSqrt2, 1e-15);

    // Control = 0 leaves the state untouched for any j.
    std::mt19937_64 rng(11);
    for (unsigned j : {1u, 2u, 7u}) {
        auto r = random_state(3, rng);
        auto before = std::vector<Amplitude>(r.amplitudes().begin(), r.amplitudes().end());
        r.apply_cs(0, 1, j);
        for (std::uint64_t i = 0; i < r.size(); ++i) {
            if ((i & 1u) == 0) EXPECT_EQ(r.amplitude(i), before[i]);
        }
    }
}

TEST(StateVector, cs_preserves_pair_norm) {
    std::mt19937_64 rng(17);
    for (unsigned j = 1; j <= 12; ++j) {
        auto r = random_state(2, rng);
        const double pair_before = std::norm(r.amplitude(1)) + std::norm(r.amplitude(3));
        r.apply_cs(0, 1, j);
        const double pair_after = std::norm(r.amplitude(1)) + std::norm(r.amplitude(3));
        EXPECT_NEAR(pair_before, pair_after, 1e-15);
    }
}

TEST(StateVector, phase_gates) {
    std::mt19937_64 rng(5);
    auto r = random_state(3, rng);
    auto before = std::vector<Amplitude>(r.amplitudes().begin(), r.amplitudes().end());
    r.apply_phase(1, 0.0);
    EXPECT_LT(max_abs_diff(before, r.amplitudes()), 1e-15);

    // Diagonal gates compose by adding angles; e^{i theta} sits on |0>.
    const double theta = std::numbers::pi / 6.0;
    auto twice = r;
    twice.apply_phase(1, theta);
    twice.apply_phase(1, theta);
    auto doubled = r;
    doubled.apply_phase(1, 2 * theta);
    EXPECT_LT(max_abs_diff(twice.amplitudes(), doubled.amplitudes()), 1e-14);
    EXPECT_NEAR(std::arg(doubled.amplitude(0) / r.amplitude(0)), 2 * theta, 1e-12);
    EXPECT_EQ(doubled.amplitude(2), r.amplitude(2));

    auto c = StateVector::basis(2, "00");
    c.apply_cphase(0, 1, -std::numbers::pi / 3.0);
    EXPECT_EQ(c.amplitude(0), Amplitude(1));
}

TEST(StateVector, marginals) {
    auto basis = StateVector::basis(3, "101");
    const int all[] = {0, 1, 2};
    auto full = exact_marginal(basis, all);
    EXPECT_EQ(full[5], 1.0);

    StateVector bell(2);
    bell.apply_h(0);
    bell.apply_cnot(0, 1);
    const int q0[] = {0};
    auto m = exact_marginal(bell, q0);
    EXPECT_NEAR(m[0], 0.5, 1e-15);
    EXPECT_NEAR(m[1], 0.5, 1e-15);

    const int dup[] = {0, 0};
    EXPECT_THROW(exact_marginal(bell, dup), ArgumentError);
}

TEST(StateVector, marginal_factorizes_on_product_states) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        // Brute-force product of four random single-qubit states.
        std::vector<std::array<Amplitude, 2>> factors(4);
        for (auto &f : factors) {
            auto a = pqmsel::testing::random_amplitudes(1, rng);
            f = {a[0], a[1]};
        }
        std::vector<Amplitude> amps(16);
        for (std::uint64_t i = 0; i < 16; ++i) {
            amps[i] = 1.0;
            for (int q = 0; q < 4; ++q) amps[i] *= factors[q][(i >> q) & 1u];
        }
        auto s = StateVector::from_amplitudes(amps);
        const int sub[] = {3, 1};
        auto m = exact_marginal(s, sub);
        for (std::uint64_t o = 0; o < 4; ++o) {
            const double expect = std::norm(factors[3][o & 1u]) * std::norm(factors[1][(o >> 1) & 1u]);
            EXPECT_NEAR(m[o], expect, 1e-14);
        }
    }
}

TEST(StateVector, measure_basis_and_reproducibility) {
    auto s = StateVector::basis(3, "011");
    Rng rng(1);
    const int qs[] = {0, 1, 2};
    auto out = measure(s, qs, rng);
    EXPECT_EQ(out.outcome, 6u);

    std::mt19937_64 g(9);
    auto r = random_state(4, g);
    const int sub[] = {1, 3};
    auto first = measure(r, sub, rng);
    for (int i = 0; i < 10; ++i) {
        auto again = measure(first.collapsed, sub, rng);
        EXPECT_EQ(again.outcome, first.outcome);
    }
    EXPECT_NEAR(first.collapsed.norm_squared(), 1.0, 1e-12);
}

TEST(StateVector, measure_frequencies_match_marginal) {
    std::mt19937_64 g(31);
    auto r = random_state(3, g);
    const int sub[] = {0, 2};
    const auto probs = exact_marginal(r, sub);
    Rng rng(77);
    constexpr int kDraws = 100000;
    std::vector<int> counts(4, 0);
    for (int i = 0; i < kDraws; ++i) counts[measure(r, sub, rng).outcome]++;
    for (std::size_t o = 0; o < 4; ++o) {
        const double sigma = std::sqrt(kDraws * probs[o] * (1 - probs[o]));
        EXPECT_LE(std::abs(counts[o] - kDraws * probs[o]), 3 * sigma + 1) << "outcome " << o;
    }
}

TEST(StateVector, norm_survives_random_circuits) {
    std::mt19937_64 rng(101);
    auto s = random_state(6, rng);
    std::uniform_int_distribution<int> gate(0, 6), qubit(0, 5);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    for (int step = 0; step < 1000; ++step) {
        int a = qubit(rng), b = qubit(rng), c = qubit(rng);
        while (b == a) b = qubit(rng);
        while (c == a || c == b) c = qubit(rng);
        switch (gate(rng)) {
            case 0: s.apply_x(a); break;
            case 1: s.apply_h(a); break;
            case 2: s.apply_cnot(a, b); break;
            case 3: s.apply_toffoli(a, b, c); break;
            case 4: s.apply_cs(a, b, 1 + static_cast<unsigned>(rng() % 9)); break;
            case 5: s.apply_phase(a, angle(rng)); break;
            default: s.apply_cphase(a, b, angle(rng)); break;
        }
    }
    EXPECT_LT(std::abs(s.norm_squared() - 1.0), 1e-9);
}

TEST(StateVector, gates_followed_by_inverse_restore_state) {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 50; ++trial) {
        auto s = random_state(4, rng);
        auto before = std::vector<Amplitude>(s.amplitudes().begin(), s.amplitudes().end());
        const double theta = std::uniform_real_distribution<double>(-3, 3)(rng);
        const unsigned j = 1 + static_cast<unsigned>(rng() % 6);
        switch (trial % 6) {
            case 0: s.apply_h(1); s.apply_h(1); break;
            case 1: s.apply_x(2); s.apply_x(2); break;
            case 2: s.apply_toffoli(0, 3, 1); s.apply_toffoli(0, 3, 1); break;
            case 3: {
                s.apply_cs(2, 0, j);
                const double d = std::sqrt((j - 1.0) / j), o = 1.0 / std::sqrt(static_cast<double>(j));
                const int ctl[] = {2};
                s.apply_matrix(ctl, 0, kernels::Mat2{d, o, -o, d}.adjoint());
                break;
            }
            case 4: s.apply_phase(3, theta); s.apply_phase(3, -theta); break;
            default: s.apply_cphase(1, 2, theta); s.apply_cphase(1, 2, -theta); break;
        }
        EXPECT_LT(max_abs_diff(before, s.amplitudes()), 1e-10);
    }
}

TEST(StateVector, extended_appends_zero_qubits) {
    auto s = StateVector::basis(2, "11");
    auto e = s.extended(2);
    EXPECT_EQ(e.num_qubits(), 4);
    EXPECT_EQ(e.amplitude(3), Amplitude(1));
    EXPECT_THROW(StateVector(20).extended(5), CapacityError);
}

// Serial reference kernels vs the OpenMP kernels the class uses, on a state
// large enough to cross the threading threshold.
TEST(Kernels, omp_matches_serial_reference) {
    std::mt19937_64 rng(8);
    const int q = kernels::omp::kThresholdQubits + 2;
    auto base = pqmsel::testing::random_amplitudes(q, rng);
    const kernels::Mat2 m{0.6, 0.8, -0.8, 0.6};
    const std::uint64_t mask = (1u << 3) | (1u << 9);

    auto a = base, b = base;
    kernels::serial::apply_mat2(a, mask, 5, m);
    kernels::omp::apply_mat2(b, mask, 5, m);
    EXPECT_EQ(a, b);

    kernels::serial::apply_mcx(a, mask, 0);
    kernels::omp::apply_mcx(b, mask, 0);
    EXPECT_EQ(a, b);

    kernels::serial::apply_phase0(a, 1u << 2, 7, std::polar(1.0, 0.3));
    kernels::omp::apply_phase0(b, 1u << 2, 7, std::polar(1.0, 0.3));
    EXPECT_EQ(a, b);

    EXPECT_NEAR(kernels::serial::norm_squared(a), kernels::omp::norm_squared(b), 1e-12);
    const int qs[] = {1, 4, 12};
    EXPECT_LT(max_abs_diff(kernels::serial::marginal(a, qs), kernels::omp::marginal(b, qs)), 1e-14);
}

TEST(Kernels, marginals_sum_to_one) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = random_state(5, rng);
        std::vector<int> qs;
        for (int q = 0; q < 5; ++q) {
            if (rng() & 1u) qs.push_back(q);
        }
        double total = 0.0;
        for (double p : exact_marginal(s, qs)) total += p;
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}
