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

#ifndef QIS_PROTOCOL_H
#define QIS_PROTOCOL_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qis/cluster.h"
#include "qis/gate_sequence.h"
#include "qis/state_vector.h"

namespace qis {

/// Two-qubit secret alpha|00> + mu|10> + gamma|01> + beta|11>.
struct SecretState {
    complex_t alpha;
    complex_t mu;
    complex_t gamma;
    complex_t beta;

    /// Throws std::invalid_argument unless the squared norm is 1 within 1e-9.
    void validate() const;
    /// Standard-basis 2-qubit state; amplitudes (alpha, gamma, mu, beta) for |00>,|01>,|10>,|11>.
    StateVector state() const;
    static SecretState from_state(const StateVector &state);
};

/// Wire layout of the joint (N + 2)-qubit register.
///
/// Wires 1, 2 are the secret qubits, wires 3..N+2 are channel qubits c1..cN.
struct PartyAssignment {
    size_t n = 0;
    std::vector<size_t> alice;
    std::vector<size_t> bob1;
    /// One wire per middle Bob (Bob_2 .. Bob_{N-5}).
    std::vector<size_t> mid_bobs;
    std::vector<size_t> charlie;

    /// Number of parties, N - 3.
    size_t party_count() const {
        return 3 + mid_bobs.size();
    }
};

PartyAssignment assign_parties(size_t n);

/// Where Alice's Hadamards sit after her two CNOTs.
enum class AliceHadamards {
    /// On the CNOT targets (wires 2 and 4): the written locking step and the general circuits.
    targets,
    /// On the c1 control (wire 3): together with h_on_psi1 this is the N = 5 and N = 6 circuits.
    controls,
};

enum class Bob1Style { cnot, cnot_then_hadamards, cz_then_hadamards };

std::string_view alice_hadamards_str(AliceHadamards h);
AliceHadamards parse_alice_hadamards(std::string_view text);
std::string_view bob1_style_str(Bob1Style style);
Bob1Style parse_bob1_style(std::string_view text);

struct LockingVariant {
    bool h_on_psi1 = false;
    AliceHadamards alice_h = AliceHadamards::targets;
    /// Ignored for N = 5, where Bob1 makes a single Hadamard measurement.
    Bob1Style bob1_style = Bob1Style::cnot;

    bool operator==(const LockingVariant &other) const = default;
    std::string str() const;
};

/// A full protocol configuration: channel construction, variant and any swaps
/// appended to the standard redistribution schedule.
struct ProtocolConfig {
    size_t n = 5;
    ChannelSource source = ChannelSource::reference;
    LockingVariant variant;
    std::vector<SwapPair> extra_swaps;

    bool operator==(const ProtocolConfig &other) const = default;
    std::string str() const;
    StateVector channel() const {
        return channel_state(n, source, extra_swaps);
    }
};

/// Bits a1a2a3a4 (wires 1..4), Bob1's bit(s) and one bit per middle Bob.
struct ClassicalTranscript {
    std::array<uint8_t, 4> alice{};
    std::vector<uint8_t> bob1;
    std::vector<uint8_t> mid;

    /// "a1a2a3a4|b..|m..".
    std::string str() const;
    static ClassicalTranscript parse(std::string_view text);
    /// Checks bit counts for an N-qubit channel; throws std::invalid_argument.
    void validate(size_t n) const;

    /// Bits concatenated in wire order, read as a binary number.
    uint64_t index() const;
    static ClassicalTranscript from_index(size_t n, uint64_t index);

    bool operator==(const ClassicalTranscript &other) const = default;
};

/// 4 + (1 if N = 5 else 2) + max(0, N - 6).
size_t transcript_bits(size_t n);

/// secret (x) channel, with the secret on wires 1 and 2.
StateVector prepare_joint_state(const SecretState &secret, const StateVector &channel);

/// Alice's locking circuit followed by the 16-way measurement of wires 1..4.
/// Each branch's outcome is a1a2a3a4; its post-state holds c3..cN as wires 1..N-2.
std::vector<MeasurementBranch> lock(const StateVector &joint, const LockingVariant &variant);

/// Bob1's unlocking measurement on wire 1 (N = 5) or wires 1, 2 (N >= 6) of a post-lock state.
std::vector<MeasurementBranch> unlock_bob1(const StateVector &branch_state, size_t n, const LockingVariant &variant);

/// Hadamard then computational measurement of one middle Bob wire.
std::vector<MeasurementBranch> unlock_bob_mid(const StateVector &branch_state, size_t wire);

/// Boolean selector values of the two bracketed sums of a closed-form decoder,
/// in the order the terms are printed.
struct DecoderSelectors {
    std::array<int, 4> left{};
    std::array<int, 4> right{};
};

DecoderSelectors eq6_selectors(const ClassicalTranscript &t);
DecoderSelectors eq8_selectors(const ClassicalTranscript &t);

/// Every unitary of the protocol applied to the joint register with all measurements
/// deferred. Amplitude index = (transcript bits, Charlie's two bits) in wire order.
StateVector deferred_measurement_state(const ProtocolConfig &config, const StateVector &joint);

/// Closed-form correction for N = 5: [PauliA, CNOT21, SWAP, PauliB].
GateSequence decode_n5(const ClassicalTranscript &t);
/// Closed-form correction for N = 6: [PauliA, CNOT21, PauliB].
GateSequence decode_n6(const ClassicalTranscript &t);

enum class DecoderKind { eq6, eq8, table };

std::string_view decoder_kind_str(DecoderKind kind);
DecoderKind parse_decoder_kind(std::string_view text);

/// One leaf of the protocol's outcome tree.
struct ProtocolBranch {
    ClassicalTranscript transcript;
    double probability = 0;
    /// Empty for zero-probability leaves.
    std::optional<double> fidelity;
    /// Charlie's state after correction (zeros for zero-probability leaves).
    StateVector charlie_output;
};

/// Maps a transcript to Charlie's correction. Indexed by ClassicalTranscript::index().
using CorrectionLookup = std::vector<GateSequence>;

/// Walks lock x Bob1 x middle Bobs over every outcome, corrects, and scores each leaf
/// against the secret. `table` is required for DecoderKind::table.
std::vector<ProtocolBranch> enumerate_protocol_branches(
    const ProtocolConfig &config,
    const SecretState &secret,
    DecoderKind decoder,
    const CorrectionLookup *table = nullptr);

/// Charlie's renormalized 2-qubit state at the end of one outcome path, plus the path probability.
struct PathResult {
    double probability = 0;
    StateVector charlie;
};

/// Follows the transcript's outcomes through lock and unlock stages.
PathResult follow_path(const ProtocolConfig &config, const StateVector &joint, const ClassicalTranscript &t);

}  // namespace qis

#endif
