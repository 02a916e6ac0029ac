// Copyright 2026 The qis-cluster Authors
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

#include <bit>
#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "qis/cluster.h"

namespace qis {
namespace {

// Builds the product form by peeling one factor at a time, starting from |+> on the
// last wire: psi_a = (|0> (x) Z_1 psi_{a+1} + |1> (x) psi_{a+1}) / sqrt(2).
std::vector<complex_t> product_oracle(size_t n) {
    std::vector<complex_t> tail = {M_SQRT1_2, M_SQRT1_2};
    for (size_t width = 1; width < n; width++) {
        size_t half = tail.size();
        std::vector<complex_t> next(2 * half);
        for (size_t k = 0; k < half; k++) {
            bool first_set = k & (half >> 1);
            next[k] = (first_set ? -tail[k] : tail[k]) * M_SQRT1_2;
            next[half + k] = tail[k] * M_SQRT1_2;
        }
        tail = std::move(next);
    }
    return tail;
}

// (-1)^{sum_a x_a x_{a+1}} / 2^{N/2}, straight from the bit pattern.
complex_t circuit_closed_form(size_t n, uint64_t k) {
    int parity = std::popcount(k & (k >> 1)) & 1;
    return (parity ? -1.0 : 1.0) / std::sqrt(double(uint64_t{1} << n));
}

TEST(ProductForm, TwoQubitsExact) {
    StateVector s = build_product_form(2);
    // 1/2 (|00> + |01> ... ) with the (1 - x1) x2 sign: only |01> is negative.
    EXPECT_EQ(s[0], complex_t(0.5));
    EXPECT_EQ(s[1], complex_t(-0.5));
    EXPECT_EQ(s[2], complex_t(0.5));
    EXPECT_EQ(s[3], complex_t(0.5));
}

TEST(ProductForm, MatchesRecursiveOracle) {
    for (size_t n = 3; n <= 12; n++) {
        StateVector s = build_product_form(n);
        std::vector<complex_t> want = product_oracle(n);
        ASSERT_EQ(s.dimension(), want.size());
        double worst = 0;
        for (size_t k = 0; k < want.size(); k++) {
            worst = std::max(worst, std::abs(s[k] - want[k]));
        }
        EXPECT_LE(worst, 1e-12) << "N = " << n;
    }
}

TEST(CircuitForm, MatchesClosedForm) {
    for (size_t n = 2; n <= 10; n++) {
        StateVector s = build_circuit_form(n);
        double worst = 0;
        for (uint64_t k = 0; k < s.dimension(); k++) {
            worst = std::max(worst, std::abs(s[k] - circuit_closed_form(n, k)));
        }
        EXPECT_LE(worst, 1e-12) << "N = " << n;
    }
}

TEST(CircuitForm, GateListShape) {
    auto gates = generation_circuit(4);
    ASSERT_EQ(gates.size(), 7u);
    for (size_t i = 0; i < 4; i++) {
        EXPECT_EQ(gates[i], (GateSpec{GateName::H, {i + 1}}));
    }
    EXPECT_EQ(gates[4], (GateSpec{GateName::CZ, {1, 2}}));
    EXPECT_EQ(gates[6], (GateSpec{GateName::CZ, {3, 4}}));
}

TEST(ReferenceStates, C5Kets) {
    StateVector s = reference_state(ReferenceState::C5);
    EXPECT_EQ(s.amplitude("00101"), complex_t(0.5));
    EXPECT_EQ(s.amplitude("00010"), complex_t(-0.5));
    EXPECT_EQ(s.amplitude("11001"), complex_t(-0.5));
    EXPECT_EQ(s.amplitude("11110"), complex_t(0.5));
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
}

TEST(ReferenceStates, C5PrimeKets) {
    StateVector s = reference_state(ReferenceState::C5_prime);
    EXPECT_EQ(s.amplitude("00010"), complex_t(0.5));
    EXPECT_EQ(s.amplitude("01101"), complex_t(0.5));
    EXPECT_EQ(s.amplitude("10100"), complex_t(-0.5));
    EXPECT_EQ(s.amplitude("11011"), complex_t(-0.5));
    EXPECT_NEAR(s.norm_squared(), 1.0, 1e-15);
}

TEST(ReferenceStates, C6PrimeKets) {
    StateVector s = reference_state(ReferenceState::C6_prime);
    const double w = 1.0 / (2.0 * std::sqrt(2.0));
    const std::pair<const char *, double> terms[] = {
        {"010101", w},  {"010010", -w}, {"001001", -w}, {"001110", w},
        {"100101", w},  {"100010", -w}, {"111001", -w}, {"111110", -w},
    };
    size_t nonzero = 0;
    for (size_t k = 0; k < s.dimension(); k++) {
        nonzero += std::abs(s[k]) > 0;
    }
    EXPECT_EQ(nonzero, 8u);
    for (const auto &[label, amp] : terms) {
        EXPECT_NEAR(s.amplitude(label).real(), amp, 1e-15) << label;
        EXPECT_EQ(s.amplitude(label).imag(), 0.0);
    }
}

TEST(Schedules, KnownSizes) {
    EXPECT_EQ(swap_schedule(5).swaps, (std::vector<SwapPair>{{1, 3}, {3, 5}}));
    EXPECT_EQ(swap_schedule(6).swaps, (std::vector<SwapPair>{{1, 4}, {3, 6}}));
    EXPECT_EQ(swap_schedule(7).swaps, (std::vector<SwapPair>{{1, 3}, {3, 5}, {5, 7}}));
    EXPECT_EQ(swap_schedule(8).swaps, (std::vector<SwapPair>{{1, 5}, {4, 8}}));
}

TEST(Schedules, RedistributeIsInvertible) {
    for (size_t n = 5; n <= 9; n++) {
        StateVector s = build_circuit_form(n);
        SwapSchedule forward = swap_schedule(n);
        SwapSchedule back{{forward.swaps.rbegin(), forward.swaps.rend()}};
        EXPECT_EQ(redistribute(redistribute(s, forward), back), s) << "N = " << n;
    }
}

TEST(Schedules, RejectsBadPairs) {
    StateVector s = build_circuit_form(5);
    EXPECT_THROW(redistribute(s, SwapSchedule{{{2, 2}}}), std::invalid_argument);
    EXPECT_THROW(redistribute(s, SwapSchedule{{{0, 1}}}), std::invalid_argument);
    EXPECT_THROW(redistribute(s, SwapSchedule{{{1, 6}}}), std::invalid_argument);
    EXPECT_THROW(swap_schedule(4), std::invalid_argument);
}

TEST(Channel, RangeErrors) {
    EXPECT_THROW(build_product_form(1), std::invalid_argument);
    EXPECT_THROW(build_circuit_form(kMaxChannelQubits + 1), std::invalid_argument);
    EXPECT_THROW(channel_state(7, ChannelSource::reference), std::invalid_argument);
    EXPECT_THROW(channel_state(5, ChannelSource::circuit_form, {{3, 3}}), std::invalid_argument);
    EXPECT_THROW(parse_channel_source("bogus"), std::invalid_argument);
}

TEST(Channel, ExtraSwapsApplyAfterSchedule) {
    StateVector base = channel_state(7, ChannelSource::circuit_form);
    StateVector moved = channel_state(7, ChannelSource::circuit_form, {{2, 5}});
    apply_swap(base, 2, 5);
    EXPECT_EQ(moved, base);
}

TEST(Channel, ReferenceIsAlreadyRedistributed) {
    EXPECT_EQ(channel_state(5, ChannelSource::reference), reference_state(ReferenceState::C5_prime));
    EXPECT_EQ(channel_state(6, ChannelSource::reference), reference_state(ReferenceState::C6_prime));
}

TEST(Channel, SourceNamesRoundTrip) {
    for (auto src : {ChannelSource::reference, ChannelSource::circuit_form, ChannelSource::product_form}) {
        EXPECT_EQ(parse_channel_source(channel_source_str(src)), src);
    }
}

}  // namespace
}  // namespace qis
