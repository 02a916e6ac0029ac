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

#include "qis/cluster.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qis {

namespace {

void check_width(size_t n) {
    if (n < kMinChannelQubits || n > kMaxChannelQubits) {
        throw std::invalid_argument(
            "channel size " + std::to_string(n) + " outside " + std::to_string(kMinChannelQubits) + ".." +
            std::to_string(kMaxChannelQubits));
    }
}

}  // namespace

std::string_view channel_source_str(ChannelSource source) {
    switch (source) {
        case ChannelSource::reference:
            return "reference";
        case ChannelSource::circuit_form:
            return "circuit";
        case ChannelSource::product_form:
            return "product";
    }
    throw std::logic_error("unhandled channel source");
}

ChannelSource parse_channel_source(std::string_view text) {
    if (text == "reference") {
        return ChannelSource::reference;
    }
    if (text == "circuit" || text == "circuit_form") {
        return ChannelSource::circuit_form;
    }
    if (text == "product" || text == "product_form") {
        return ChannelSource::product_form;
    }
    throw std::invalid_argument("unknown channel source '" + std::string(text) + "'");
}

StateVector build_product_form(size_t n) {
    check_width(n);
    // Factor a contributes |0>_a Z_{a+1} + |1>_a. The Z acts on the ket of factor a+1,
    // so amplitude(x) picks up -1 whenever x_a = 0 and x_{a+1} = 1.
    const double weight = std::pow(2.0, -double(n) / 2);
    StateVector state = StateVector::zeros(n);
    for (size_t k = 0; k < state.dimension(); k++) {
        int sign = 1;
        for (size_t a = 1; a < n; a++) {
            bool xa = k & state.qubit_mask(a);
            bool xb = k & state.qubit_mask(a + 1);
            if (!xa && xb) {
                sign = -sign;
            }
        }
        state[k] = sign * weight;
    }
    return state;
}

std::vector<GateSpec> generation_circuit(size_t n) {
    check_width(n);
    std::vector<GateSpec> gates;
    for (size_t q = 1; q <= n; q++) {
        gates.push_back({GateName::H, {q}});
    }
    for (size_t a = 1; a < n; a++) {
        gates.push_back({GateName::CZ, {a, a + 1}});
    }
    return gates;
}

StateVector build_circuit_form(size_t n) {
    StateVector state = basis_state(n, std::string(n, '0'));
    for (const auto &gate : generation_circuit(n)) {
        state = apply_gate(std::move(state), gate);
    }
    return state;
}

std::string_view reference_state_str(ReferenceState name) {
    switch (name) {
        case ReferenceState::C5:
            return "C5";
        case ReferenceState::C5_prime:
            return "C5_prime";
        case ReferenceState::C6_prime:
            return "C6_prime";
    }
    throw std::logic_error("unhandled reference state");
}

ReferenceState parse_reference_state(std::string_view text) {
    for (auto r : {ReferenceState::C5, ReferenceState::C5_prime, ReferenceState::C6_prime}) {
        if (reference_state_str(r) == text) {
            return r;
        }
    }
    throw std::invalid_argument("unknown reference state '" + std::string(text) + "'");
}

std::vector<SignedKet> reference_terms(ReferenceState name) {
    switch (name) {
        case ReferenceState::C5:
            return {{+1, "00101"}, {-1, "00010"}, {-1, "11001"}, {+1, "11110"}};
        case ReferenceState::C5_prime:
            return {{+1, "00010"}, {+1, "01101"}, {-1, "10100"}, {-1, "11011"}};
        case ReferenceState::C6_prime:
            // The last sign breaks the +/- pattern of the other pairs; kept as given.
            return {{+1, "010101"}, {-1, "010010"}, {-1, "001001"}, {+1, "001110"},
                    {+1, "100101"}, {-1, "100010"}, {-1, "111001"}, {-1, "111110"}};
    }
    throw std::logic_error("unhandled reference state");
}

StateVector reference_state(ReferenceState name) {
    auto terms = reference_terms(name);
    size_t n = std::string_view(terms[0].label).size();
    const double weight = 1.0 / std::sqrt(double(terms.size()));
    StateVector state = StateVector::zeros(n);
    for (const auto &t : terms) {
        StateVector ket = basis_state(n, t.label);
        for (size_t k = 0; k < state.dimension(); k++) {
            state[k] += double(t.sign) * weight * ket[k];
        }
    }
    return state;
}

std::string SwapSchedule::str() const {
    std::stringstream out;
    out << "[";
    for (size_t i = 0; i < swaps.size(); i++) {
        out << (i ? "," : "") << "(" << swaps[i].first << "," << swaps[i].second << ")";
    }
    out << "]";
    return out.str();
}

SwapSchedule swap_schedule(size_t n) {
    if (n < 5) {
        throw std::invalid_argument("swap schedules are defined for N >= 5, got " + std::to_string(n));
    }
    SwapSchedule schedule;
    if (n % 2 == 1) {
        for (size_t i = 1; i + 2 <= n; i += 2) {
            schedule.swaps.push_back({i, i + 2});
        }
    } else {
        schedule.swaps.push_back({1, n / 2 + 1});
        schedule.swaps.push_back({n / 2, n});
    }
    return schedule;
}

StateVector redistribute(StateVector state, const SwapSchedule &schedule) {
    for (const auto &[i, j] : schedule.swaps) {
        if (i == j) {
            throw std::invalid_argument("swap pair (" + std::to_string(i) + "," + std::to_string(j) + ") is degenerate");
        }
        apply_swap(state, i, j);
    }
    return state;
}

StateVector channel_state(size_t n, ChannelSource source, const std::vector<SwapPair> &extra_swaps) {
    StateVector channel;
    switch (source) {
        case ChannelSource::reference:
            if (n == 5) {
                channel = reference_state(ReferenceState::C5_prime);
            } else if (n == 6) {
                channel = reference_state(ReferenceState::C6_prime);
            } else {
                throw std::invalid_argument("reference channel exists only for N = 5 and N = 6");
            }
            break;
        case ChannelSource::circuit_form:
            channel = redistribute(build_circuit_form(n), swap_schedule(n));
            break;
        case ChannelSource::product_form:
            channel = redistribute(build_product_form(n), swap_schedule(n));
            break;
    }
    return redistribute(std::move(channel), SwapSchedule{extra_swaps});
}

}  // namespace qis
