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

#ifndef QIS_CLUSTER_H
#define QIS_CLUSTER_H

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qis/state_vector.h"

namespace qis {

constexpr size_t kMinChannelQubits = 2;
constexpr size_t kMaxChannelQubits = 16;

/// Which construction yields the linear cluster channel.
enum class ChannelSource {
    /// Hard-coded literal kets for N = 5 and N = 6 (already redistributed for N = 6).
    reference,
    /// Hadamard on every wire followed by the CZ chain.
    circuit_form,
    /// Expansion of the operator-ordered product (|0>_a Z_{a+1} + |1>_a).
    product_form,
};

std::string_view channel_source_str(ChannelSource source);
ChannelSource parse_channel_source(std::string_view text);

/// Amplitudes 2^{-N/2} prod_a (-1)^{(1 - x_a) x_{a+1}}.
StateVector build_product_form(size_t n);

/// Amplitudes 2^{-N/2} (-1)^{sum_a x_a x_{a+1}}, produced by simulating the gate list.
StateVector build_circuit_form(size_t n);

/// The gate list that prepares the cluster from |0...0>: H on every wire, then CZ(a, a+1).
std::vector<GateSpec> generation_circuit(size_t n);

enum class ReferenceState { C5, C5_prime, C6_prime };

std::string_view reference_state_str(ReferenceState name);
ReferenceState parse_reference_state(std::string_view text);

/// One signed basis ket of a reference state; the coefficient is sign * weight.
struct SignedKet {
    int sign;
    const char *label;
};

/// Literal term table of a reference state (sign and label per ket).
std::vector<SignedKet> reference_terms(ReferenceState name);
StateVector reference_state(ReferenceState name);

using SwapPair = std::pair<size_t, size_t>;

/// Ordered 1-based swaps, applied first to last.
struct SwapSchedule {
    std::vector<SwapPair> swaps;

    bool operator==(const SwapSchedule &other) const = default;
    std::string str() const;
};

/// Pre-distribution schedule for an N-qubit channel (N >= 5).
///
/// Odd N: (1,3), (3,5), ..., (N-2,N). Even N: (1, N/2+1), (N/2, N), which is
/// (1,4), (3,6) for N = 6.
SwapSchedule swap_schedule(size_t n);

/// Applies the schedule's swaps in order. Rejects pairs with i == j or out of range.
StateVector redistribute(StateVector state, const SwapSchedule &schedule);

/// The channel as held by the parties: the chosen construction, redistributed.
///
/// The reference source returns C5_prime for N = 5 and C6_prime for N = 6 unchanged
/// (they are already the redistributed states) and throws for any other N.
/// `extra_swaps` are applied after the standard schedule.
StateVector channel_state(size_t n, ChannelSource source, const std::vector<SwapPair> &extra_swaps = {});

}  // namespace qis

#endif
