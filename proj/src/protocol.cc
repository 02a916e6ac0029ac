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

#include "qis/protocol.h"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace qis {

namespace {

const Eigen::Matrix2cd &hadamard() {
    static const Eigen::Matrix2cd h = gate_matrix(GateName::H);
    return h;
}

const Eigen::Matrix4cd &cnot() {
    static const Eigen::Matrix4cd m = gate_matrix(GateName::CNOT);
    return m;
}

const Eigen::Matrix4cd &cz() {
    static const Eigen::Matrix4cd m = gate_matrix(GateName::CZ);
    return m;
}

size_t mid_bob_count(size_t n) {
    return n > 6 ? n - 6 : 0;
}

size_t bob1_bits(size_t n) {
    return n == 5 ? 1 : 2;
}

}  // namespace

void SecretState::validate() const {
    double n2 = std::norm(alpha) + std::norm(mu) + std::norm(gamma) + std::norm(beta);
    if (std::abs(n2 - 1) > 1e-9) {
        throw std::invalid_argument("secret is not normalized (norm^2 = " + std::to_string(n2) + ")");
    }
}

StateVector SecretState::state() const {
    return StateVector(2, {alpha, gamma, mu, beta});
}

SecretState SecretState::from_state(const StateVector &state) {
    if (state.num_qubits() != 2) {
        throw std::invalid_argument("secret must be a 2-qubit state");
    }
    return SecretState{state[0], state[2], state[1], state[3]};
}

PartyAssignment assign_parties(size_t n) {
    if (n < 5) {
        throw std::invalid_argument("the protocol needs N >= 5, got " + std::to_string(n));
    }
    PartyAssignment p;
    p.n = n;
    p.alice = {1, 2, 3, 4};
    p.bob1 = n == 5 ? std::vector<size_t>{5} : std::vector<size_t>{5, 6};
    for (size_t w = 7; w <= n; w++) {
        p.mid_bobs.push_back(w);
    }
    p.charlie = {n + 1, n + 2};
    return p;
}

std::string_view alice_hadamards_str(AliceHadamards h) {
    return h == AliceHadamards::targets ? "targets" : "controls";
}

AliceHadamards parse_alice_hadamards(std::string_view text) {
    if (text == "targets") {
        return AliceHadamards::targets;
    }
    if (text == "controls") {
        return AliceHadamards::controls;
    }
    throw std::invalid_argument("unknown Hadamard placement '" + std::string(text) + "'");
}

std::string_view bob1_style_str(Bob1Style style) {
    switch (style) {
        case Bob1Style::cnot:
            return "cnot";
        case Bob1Style::cnot_then_hadamards:
            return "cnot-h";
        case Bob1Style::cz_then_hadamards:
            return "cz-h";
    }
    throw std::logic_error("unhandled Bob1 style");
}

Bob1Style parse_bob1_style(std::string_view text) {
    for (auto s : {Bob1Style::cnot, Bob1Style::cnot_then_hadamards, Bob1Style::cz_then_hadamards}) {
        if (bob1_style_str(s) == text) {
            return s;
        }
    }
    throw std::invalid_argument("unknown Bob1 style '" + std::string(text) + "'");
}

std::string LockingVariant::str() const {
    std::stringstream out;
    out << "h_psi1=" << (h_on_psi1 ? "on" : "off") << ",alice_h=" << alice_hadamards_str(alice_h)
        << ",bob1=" << bob1_style_str(bob1_style);
    return out.str();
}

std::string ProtocolConfig::str() const {
    std::stringstream out;
    out << "n=" << n << " source=" << channel_source_str(source) << " " << variant.str();
    if (!extra_swaps.empty()) {
        out << " extra_swaps=" << SwapSchedule{extra_swaps}.str();
    }
    return out.str();
}

size_t transcript_bits(size_t n) {
    if (n < 5) {
        throw std::invalid_argument("the protocol needs N >= 5, got " + std::to_string(n));
    }
    return 4 + bob1_bits(n) + mid_bob_count(n);
}

std::string ClassicalTranscript::str() const {
    std::string s;
    for (auto b : alice) {
        s.push_back(b ? '1' : '0');
    }
    s.push_back('|');
    for (auto b : bob1) {
        s.push_back(b ? '1' : '0');
    }
    s.push_back('|');
    for (auto b : mid) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

ClassicalTranscript ClassicalTranscript::parse(std::string_view text) {
    std::vector<std::string_view> groups;
    size_t start = 0;
    while (true) {
        size_t bar = text.find('|', start);
        groups.push_back(text.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start));
        if (bar == std::string_view::npos) {
            break;
        }
        start = bar + 1;
    }
    if (groups.size() != 3 || groups[0].size() != 4) {
        throw std::invalid_argument("malformed transcript '" + std::string(text) + "'");
    }
    auto bits = [&](std::string_view g) {
        std::vector<uint8_t> out;
        for (char c : g) {
            if (c != '0' && c != '1') {
                throw std::invalid_argument("malformed transcript '" + std::string(text) + "'");
            }
            out.push_back(uint8_t(c == '1'));
        }
        return out;
    };
    ClassicalTranscript t;
    auto a = bits(groups[0]);
    std::copy(a.begin(), a.end(), t.alice.begin());
    t.bob1 = bits(groups[1]);
    t.mid = bits(groups[2]);
    return t;
}

void ClassicalTranscript::validate(size_t n) const {
    for (auto b : alice) {
        if (b > 1) {
            throw std::invalid_argument("transcript bits must be 0 or 1");
        }
    }
    if (bob1.size() != bob1_bits(n) || mid.size() != mid_bob_count(n)) {
        throw std::invalid_argument(
            "transcript '" + str() + "' does not fit N = " + std::to_string(n) + " (expected " +
            std::to_string(bob1_bits(n)) + " Bob1 bit(s) and " + std::to_string(mid_bob_count(n)) +
            " middle bit(s))");
    }
}

uint64_t ClassicalTranscript::index() const {
    uint64_t k = 0;
    for (auto b : alice) {
        k = (k << 1) | b;
    }
    for (auto b : bob1) {
        k = (k << 1) | b;
    }
    for (auto b : mid) {
        k = (k << 1) | b;
    }
    return k;
}

ClassicalTranscript ClassicalTranscript::from_index(size_t n, uint64_t index) {
    size_t total = transcript_bits(n);
    if (index >> total) {
        throw std::invalid_argument("transcript index out of range");
    }
    auto bit = [&](size_t i) { return uint8_t((index >> (total - 1 - i)) & 1); };
    ClassicalTranscript t;
    size_t i = 0;
    for (auto &b : t.alice) {
        b = bit(i++);
    }
    for (size_t k = 0; k < bob1_bits(n); k++) {
        t.bob1.push_back(bit(i++));
    }
    for (size_t k = 0; k < mid_bob_count(n); k++) {
        t.mid.push_back(bit(i++));
    }
    return t;
}

StateVector prepare_joint_state(const SecretState &secret, const StateVector &channel) {
    return tensor_product(secret.state(), channel);
}

namespace {

// Alice's gates on wires 1..4 of the joint register.
void apply_locking_gates(StateVector &s, const LockingVariant &variant) {
    // psi2 trades places with c2, then two CNOT pairs: (psi1 -> c2) and (c1 -> psi2).
    apply_swap(s, 2, 4);
    apply_two_qubit(s, 1, 2, cnot());
    apply_two_qubit(s, 3, 4, cnot());
    if (variant.alice_h == AliceHadamards::targets) {
        apply_single_qubit(s, 2, hadamard());
        apply_single_qubit(s, 4, hadamard());
    } else {
        apply_single_qubit(s, 3, hadamard());
    }
    if (variant.h_on_psi1) {
        apply_single_qubit(s, 1, hadamard());
    }
}

// Bob1's gates; `first` is his lower wire in the given register.
void apply_bob1_gates(StateVector &s, size_t first, size_t n, const LockingVariant &variant) {
    if (n == 5) {
        apply_single_qubit(s, first, hadamard());
        return;
    }
    switch (variant.bob1_style) {
        case Bob1Style::cnot:
            apply_two_qubit(s, first, first + 1, cnot());
            break;
        case Bob1Style::cnot_then_hadamards:
            apply_two_qubit(s, first, first + 1, cnot());
            apply_single_qubit(s, first, hadamard());
            apply_single_qubit(s, first + 1, hadamard());
            break;
        case Bob1Style::cz_then_hadamards:
            apply_two_qubit(s, first, first + 1, cz());
            apply_single_qubit(s, first, hadamard());
            apply_single_qubit(s, first + 1, hadamard());
            break;
    }
}

}  // namespace

std::vector<MeasurementBranch> lock(const StateVector &joint, const LockingVariant &variant) {
    if (joint.num_qubits() < 7) {
        throw std::invalid_argument(
            "locking needs a joint state of at least 7 qubits, got " + std::to_string(joint.num_qubits()));
    }
    StateVector s = joint;
    apply_locking_gates(s, variant);
    const size_t measured[] = {1, 2, 3, 4};
    return enumerate_measurement_branches(s, measured);
}

std::vector<MeasurementBranch> unlock_bob1(const StateVector &branch_state, size_t n, const LockingVariant &variant) {
    if (n < 5 || branch_state.num_qubits() != n - 2) {
        throw std::invalid_argument("post-lock state must hold N - 2 qubits");
    }
    StateVector s = branch_state;
    apply_bob1_gates(s, 1, n, variant);
    if (n == 5) {
        const size_t measured[] = {1};
        return enumerate_measurement_branches(s, measured);
    }
    const size_t measured[] = {1, 2};
    return enumerate_measurement_branches(s, measured);
}

StateVector deferred_measurement_state(const ProtocolConfig &config, const StateVector &joint) {
    const size_t n = config.n;
    if (joint.num_qubits() != n + 2) {
        throw std::invalid_argument("joint state must hold N + 2 qubits");
    }
    StateVector s = joint;
    apply_locking_gates(s, config.variant);
    apply_bob1_gates(s, 5, n, config.variant);
    for (size_t w = 7; w <= n; w++) {
        apply_single_qubit(s, w, hadamard());
    }
    return s;
}

std::vector<MeasurementBranch> unlock_bob_mid(const StateVector &branch_state, size_t wire) {
    StateVector s = branch_state;
    apply_single_qubit(s, wire, hadamard());
    const size_t measured[] = {wire};
    return enumerate_measurement_branches(s, measured);
}

namespace {

// Exactly one term per bracket must be selected; anything else is a bug in the selectors.
size_t selected(const std::array<int, 4> &terms) {
    size_t hit = 4;
    for (size_t i = 0; i < 4; i++) {
        if (terms[i]) {
            if (hit != 4) {
                throw std::logic_error("two selector terms fired");
            }
            hit = i;
        }
    }
    if (hit == 4) {
        throw std::logic_error("no selector term fired");
    }
    return hit;
}

GateSequence assemble(std::vector<TwoQubitOp> left, std::initializer_list<TwoQubitOp> middle, std::vector<TwoQubitOp> right) {
    GateSequence seq;
    seq.ops = std::move(left);
    seq.ops.insert(seq.ops.end(), middle);
    seq.ops.insert(seq.ops.end(), right.begin(), right.end());
    return seq;
}

}  // namespace

DecoderSelectors eq6_selectors(const ClassicalTranscript &t) {
    t.validate(5);
    int a1 = t.alice[0], a2 = t.alice[1], a3 = t.alice[2], a4 = t.alice[3], b1 = t.bob1[0];
    int s = a1 ^ a3;
    int r = a3 ^ b1;
    DecoderSelectors sel;
    sel.left = {!a4 && !a2, !a4 && a2, a4 && !a2, a4 && a2};
    sel.right = {!s && !r, !s && r, s && !r, s && r};
    return sel;
}

DecoderSelectors eq8_selectors(const ClassicalTranscript &t) {
    t.validate(6);
    int a1 = t.alice[0], a2 = t.alice[1], a3 = t.alice[2], a4 = t.alice[3];
    int b1 = t.bob1[0], b2 = t.bob1[1];
    int parity = (a1 ^ a2 ^ b1) ^ (a3 ^ b2);
    int s = a1 ^ a3;
    int u = a3 ^ b2;
    DecoderSelectors sel;
    sel.left = {!a4 && !parity, !a4 && parity, a4 && !parity, a4 && parity};
    sel.right = {!s && !u, !s && u, s && !u, s && u};
    return sel;
}

GateSequence decode_n5(const ClassicalTranscript &t) {
    static const std::vector<TwoQubitOp> left_terms[4] = {
        pauli_layer(Pauli::X, Pauli::I),
        pauli_layer(Pauli::I, Pauli::X),
        pauli_layer(Pauli::I, Pauli::I),
        pauli_layer(Pauli::X, Pauli::X),
    };
    static const std::vector<TwoQubitOp> right_terms[4] = {
        pauli_layer(Pauli::I, Pauli::Z),
        pauli_layer(Pauli::Z, Pauli::I),
        pauli_layer(Pauli::Z, Pauli::Z),
        pauli_layer(Pauli::I, Pauli::I),
    };
    auto sel = eq6_selectors(t);
    return assemble(
        left_terms[selected(sel.left)], {TwoQubitOp::CNOT21, TwoQubitOp::SWAP}, right_terms[selected(sel.right)]);
}

GateSequence decode_n6(const ClassicalTranscript &t) {
    static const std::vector<TwoQubitOp> left_terms[4] = {
        pauli_layer(Pauli::X, Pauli::I),
        pauli_layer(Pauli::I, Pauli::I),
        pauli_layer(Pauli::I, Pauli::X),
        pauli_layer(Pauli::X, Pauli::X),
    };
    static const std::vector<TwoQubitOp> right_terms[4] = {
        pauli_layer(Pauli::Z, Pauli::I),
        pauli_layer(Pauli::I, Pauli::Z),
        pauli_layer(Pauli::Z, Pauli::Z),
        pauli_layer(Pauli::I, Pauli::I),
    };
    auto sel = eq8_selectors(t);
    return assemble(left_terms[selected(sel.left)], {TwoQubitOp::CNOT21}, right_terms[selected(sel.right)]);
}

std::string_view decoder_kind_str(DecoderKind kind) {
    switch (kind) {
        case DecoderKind::eq6:
            return "eq6";
        case DecoderKind::eq8:
            return "eq8";
        case DecoderKind::table:
            return "table";
    }
    throw std::logic_error("unhandled decoder");
}

DecoderKind parse_decoder_kind(std::string_view text) {
    for (auto k : {DecoderKind::eq6, DecoderKind::eq8, DecoderKind::table}) {
        if (decoder_kind_str(k) == text) {
            return k;
        }
    }
    throw std::invalid_argument("unknown decoder '" + std::string(text) + "'");
}

namespace {

void check_decoder(size_t n, DecoderKind decoder, const CorrectionLookup *table) {
    if (decoder == DecoderKind::eq6 && n != 5) {
        throw std::invalid_argument("eq6 decodes N = 5 only");
    }
    if (decoder == DecoderKind::eq8 && n != 6) {
        throw std::invalid_argument("eq8 decodes N = 6 only");
    }
    if (decoder == DecoderKind::table) {
        if (table == nullptr) {
            throw std::invalid_argument("table decoder needs a correction table");
        }
        if (table->size() != (size_t{1} << transcript_bits(n))) {
            throw std::invalid_argument("correction table does not cover N = " + std::to_string(n));
        }
    }
}

GateSequence correction_for(DecoderKind decoder, const ClassicalTranscript &t, const CorrectionLookup *table) {
    switch (decoder) {
        case DecoderKind::eq6:
            return decode_n5(t);
        case DecoderKind::eq8:
            return decode_n6(t);
        case DecoderKind::table:
            return (*table)[t.index()];
    }
    throw std::logic_error("unhandled decoder");
}

}  // namespace

std::vector<ProtocolBranch> enumerate_protocol_branches(
    const ProtocolConfig &config, const SecretState &secret, DecoderKind decoder, const CorrectionLookup *table) {
    const size_t n = config.n;
    check_decoder(n, decoder, table);
    secret.validate();
    const size_t mids = mid_bob_count(n);
    const StateVector target = secret.state();
    StateVector joint = prepare_joint_state(secret, config.channel());

    std::vector<ProtocolBranch> leaves;
    leaves.reserve(size_t{1} << transcript_bits(n));

    auto emit = [&](ClassicalTranscript t, double probability, const StateVector &charlie, bool zero) {
        ProtocolBranch leaf;
        leaf.transcript = std::move(t);
        if (zero) {
            leaf.probability = 0;
            leaf.charlie_output = StateVector::zeros(2);
        } else {
            leaf.probability = probability;
            leaf.charlie_output = apply_correction(charlie, correction_for(decoder, leaf.transcript, table));
            leaf.fidelity = pure_fidelity(leaf.charlie_output, target);
        }
        leaves.push_back(std::move(leaf));
    };

    // Walks the middle Bobs; each measures what is currently wire 1.
    std::function<void(ClassicalTranscript &, const StateVector &, double, bool)> walk_mids =
        [&](ClassicalTranscript &t, const StateVector &state, double probability, bool zero) {
            if (t.mid.size() == mids) {
                emit(t, probability, state, zero);
                return;
            }
            auto branches = unlock_bob_mid(state, 1);
            for (const auto &b : branches) {
                t.mid.push_back(b.outcome[0]);
                walk_mids(t, b.post_state, probability * b.probability, zero || b.zero_probability);
                t.mid.pop_back();
            }
        };

    for (const auto &alice : lock(joint, config.variant)) {
        for (const auto &bob : unlock_bob1(alice.post_state, n, config.variant)) {
            ClassicalTranscript t;
            std::copy(alice.outcome.begin(), alice.outcome.end(), t.alice.begin());
            t.bob1 = bob.outcome;
            walk_mids(
                t,
                bob.post_state,
                alice.probability * bob.probability,
                alice.zero_probability || bob.zero_probability);
        }
    }
    return leaves;
}

PathResult follow_path(const ProtocolConfig &config, const StateVector &joint, const ClassicalTranscript &t) {
    const size_t n = config.n;
    t.validate(n);
    PathResult result;
    auto pick = [](const std::vector<MeasurementBranch> &branches, std::span<const uint8_t> bits) {
        size_t k = 0;
        for (auto b : bits) {
            k = (k << 1) | b;
        }
        return branches[k];
    };
    MeasurementBranch stage = pick(lock(joint, config.variant), t.alice);
    double probability = stage.probability;
    bool zero = stage.zero_probability;
    stage = pick(unlock_bob1(stage.post_state, n, config.variant), t.bob1);
    probability *= stage.probability;
    zero = zero || stage.zero_probability;
    for (auto bit : t.mid) {
        uint8_t bits[] = {bit};
        stage = pick(unlock_bob_mid(stage.post_state, 1), bits);
        probability *= stage.probability;
        zero = zero || stage.zero_probability;
    }
    result.probability = zero ? 0 : probability;
    result.charlie = zero ? StateVector::zeros(2) : stage.post_state;
    return result;
}

}  // namespace qis
