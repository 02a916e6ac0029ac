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

#include "qis/state_vector.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qis {

namespace {

void check_targets(size_t num_qubits, std::span<const size_t> targets) {
    for (size_t i = 0; i < targets.size(); i++) {
        if (targets[i] < 1 || targets[i] > num_qubits) {
            throw std::invalid_argument(
                "qubit " + std::to_string(targets[i]) + " out of range 1.." + std::to_string(num_qubits));
        }
        for (size_t j = 0; j < i; j++) {
            if (targets[i] == targets[j]) {
                throw std::invalid_argument("repeated qubit " + std::to_string(targets[i]));
            }
        }
    }
}

}  // namespace

StateVector::StateVector(size_t num_qubits, std::vector<complex_t> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (num_qubits_ > 30) {
        throw std::invalid_argument("too many qubits: " + std::to_string(num_qubits_));
    }
    if (amplitudes_.size() != (size_t{1} << num_qubits_)) {
        throw std::invalid_argument(
            "expected " + std::to_string(size_t{1} << num_qubits_) + " amplitudes, got " +
            std::to_string(amplitudes_.size()));
    }
}

StateVector StateVector::zeros(size_t num_qubits) {
    return StateVector(num_qubits, std::vector<complex_t>(size_t{1} << num_qubits));
}

complex_t StateVector::amplitude(std::string_view label) const {
    if (label.size() != num_qubits_) {
        throw std::invalid_argument("label '" + std::string(label) + "' does not match width");
    }
    size_t index = 0;
    for (char c : label) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bad character in label '" + std::string(label) + "'");
        }
        index = (index << 1) | size_t(c == '1');
    }
    return amplitudes_[index];
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const auto &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

void StateVector::scale(complex_t factor) {
    for (auto &a : amplitudes_) {
        a *= factor;
    }
}

void StateVector::normalize() {
    double n2 = norm_squared();
    if (n2 == 0) {
        throw std::domain_error("cannot normalize the zero vector");
    }
    scale(1.0 / std::sqrt(n2));
}

std::string StateVector::str() const {
    std::stringstream out;
    bool first = true;
    for (size_t k = 0; k < amplitudes_.size(); k++) {
        if (std::abs(amplitudes_[k]) < 1e-12) {
            continue;
        }
        if (!first) {
            out << " + ";
        }
        first = false;
        out << "(" << amplitudes_[k].real() << (amplitudes_[k].imag() < 0 ? "" : "+") << amplitudes_[k].imag()
            << "i)|";
        for (size_t q = 1; q <= num_qubits_; q++) {
            out << ((k & qubit_mask(q)) ? '1' : '0');
        }
        out << ">";
    }
    if (first) {
        out << "0";
    }
    return out.str();
}

std::string_view gate_name_str(GateName name) {
    switch (name) {
        case GateName::H:
            return "H";
        case GateName::X:
            return "X";
        case GateName::Z:
            return "Z";
        case GateName::XZ:
            return "XZ";
        case GateName::CZ:
            return "CZ";
        case GateName::CNOT:
            return "CNOT";
        case GateName::SWAP:
            return "SWAP";
    }
    throw std::logic_error("unhandled gate");
}

GateName parse_gate_name(std::string_view text) {
    for (GateName g : {GateName::H, GateName::X, GateName::Z, GateName::XZ, GateName::CZ, GateName::CNOT,
                       GateName::SWAP}) {
        if (gate_name_str(g) == text) {
            return g;
        }
    }
    throw std::invalid_argument("unknown gate '" + std::string(text) + "'");
}

size_t gate_arity(GateName name) {
    switch (name) {
        case GateName::H:
        case GateName::X:
        case GateName::Z:
        case GateName::XZ:
            return 1;
        default:
            return 2;
    }
}

Eigen::MatrixXcd gate_matrix(GateName name) {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd m;
    switch (name) {
        case GateName::H:
            m.resize(2, 2);
            m << r, r, r, -r;
            break;
        case GateName::X:
            m.resize(2, 2);
            m << 0, 1, 1, 0;
            break;
        case GateName::Z:
            m.resize(2, 2);
            m << 1, 0, 0, -1;
            break;
        case GateName::XZ:
            // X times Z.
            m.resize(2, 2);
            m << 0, -1, 1, 0;
            break;
        case GateName::CZ:
            m = Eigen::MatrixXcd::Identity(4, 4);
            m(3, 3) = -1;
            break;
        case GateName::CNOT:
            m = Eigen::MatrixXcd::Zero(4, 4);
            m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
            break;
        case GateName::SWAP:
            m = Eigen::MatrixXcd::Zero(4, 4);
            m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
            break;
    }
    return m;
}

StateVector basis_state(size_t num_qubits, std::string_view label) {
    if (num_qubits < 1) {
        throw std::invalid_argument("basis_state needs at least one qubit");
    }
    StateVector result = StateVector::zeros(num_qubits);
    if (label.size() != num_qubits) {
        throw std::invalid_argument(
            "label '" + std::string(label) + "' has length " + std::to_string(label.size()) + ", expected " +
            std::to_string(num_qubits));
    }
    size_t index = 0;
    for (char c : label) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bad character in label '" + std::string(label) + "'");
        }
        index = (index << 1) | size_t(c == '1');
    }
    result[index] = 1;
    return result;
}

void apply_single_qubit(StateVector &state, size_t qubit, const Eigen::Matrix2cd &u) {
    size_t targets[] = {qubit};
    check_targets(state.num_qubits(), targets);
    uint64_t mask = state.qubit_mask(qubit);
    auto amps = state.mutable_amplitudes();
    for (size_t k = 0; k < amps.size(); k++) {
        if (k & mask) {
            continue;
        }
        complex_t a0 = amps[k];
        complex_t a1 = amps[k | mask];
        amps[k] = u(0, 0) * a0 + u(0, 1) * a1;
        amps[k | mask] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void apply_two_qubit(StateVector &state, size_t q1, size_t q2, const Eigen::Matrix4cd &u) {
    size_t targets[] = {q1, q2};
    check_targets(state.num_qubits(), targets);
    uint64_t m1 = state.qubit_mask(q1);
    uint64_t m2 = state.qubit_mask(q2);
    auto amps = state.mutable_amplitudes();
    for (size_t k = 0; k < amps.size(); k++) {
        if (k & (m1 | m2)) {
            continue;
        }
        size_t idx[4] = {k, k | m2, k | m1, k | m1 | m2};
        complex_t in[4] = {amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]};
        for (size_t r = 0; r < 4; r++) {
            amps[idx[r]] = u(r, 0) * in[0] + u(r, 1) * in[1] + u(r, 2) * in[2] + u(r, 3) * in[3];
        }
    }
}

void apply_swap(StateVector &state, size_t q1, size_t q2) {
    size_t targets[] = {q1, q2};
    check_targets(state.num_qubits(), targets);
    uint64_t m1 = state.qubit_mask(q1);
    uint64_t m2 = state.qubit_mask(q2);
    auto amps = state.mutable_amplitudes();
    for (size_t k = 0; k < amps.size(); k++) {
        if ((k & m1) && !(k & m2)) {
            std::swap(amps[k], amps[(k ^ m1) | m2]);
        }
    }
}

StateVector apply_gate(StateVector state, const GateSpec &gate) {
    if (gate.targets.size() != gate_arity(gate.name)) {
        throw std::invalid_argument(
            std::string(gate_name_str(gate.name)) + " takes " + std::to_string(gate_arity(gate.name)) +
            " target(s), got " + std::to_string(gate.targets.size()));
    }
    check_targets(state.num_qubits(), gate.targets);
    if (gate.name == GateName::SWAP) {
        apply_swap(state, gate.targets[0], gate.targets[1]);
    } else if (gate_arity(gate.name) == 1) {
        apply_single_qubit(state, gate.targets[0], gate_matrix(gate.name));
    } else {
        apply_two_qubit(state, gate.targets[0], gate.targets[1], gate_matrix(gate.name));
    }
    return state;
}

StateVector tensor_product(const StateVector &a, const StateVector &b) {
    std::vector<complex_t> out(a.dimension() * b.dimension());
    for (size_t i = 0; i < a.dimension(); i++) {
        for (size_t j = 0; j < b.dimension(); j++) {
            out[i * b.dimension() + j] = a[i] * b[j];
        }
    }
    return StateVector(a.num_qubits() + b.num_qubits(), std::move(out));
}

namespace {

complex_t inner(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument(
            "width mismatch: " + std::to_string(a.num_qubits()) + " vs " + std::to_string(b.num_qubits()));
    }
    complex_t total = 0;
    for (size_t k = 0; k < a.dimension(); k++) {
        total += std::conj(a[k]) * b[k];
    }
    return total;
}

}  // namespace

double pure_fidelity(const StateVector &a, const StateVector &b) {
    // |<a|b>|^2 == |<b|a>|^2 bit for bit because std::norm ignores the sign of the imaginary part.
    return std::norm(inner(a, b));
}

bool equal_up_to_global_phase(const StateVector &a, const StateVector &b, double tol) {
    complex_t overlap = inner(a, b);
    complex_t phase = std::abs(overlap) == 0 ? complex_t{1} : overlap / std::abs(overlap);
    double dist2 = 0;
    for (size_t k = 0; k < a.dimension(); k++) {
        dist2 += std::norm(a[k] - phase * b[k]);
    }
    return std::sqrt(dist2) <= tol;
}

std::string MeasurementBranch::outcome_str() const {
    std::string s;
    for (auto b : outcome) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

StateVector project_out(const StateVector &state, std::span<const size_t> qubits, std::span<const uint8_t> outcome) {
    check_targets(state.num_qubits(), qubits);
    if (outcome.size() != qubits.size()) {
        throw std::invalid_argument("outcome length does not match measured qubits");
    }
    size_t n = state.num_qubits();
    uint64_t measured_mask = 0;
    uint64_t want = 0;
    for (size_t i = 0; i < qubits.size(); i++) {
        measured_mask |= state.qubit_mask(qubits[i]);
        if (outcome[i]) {
            want |= state.qubit_mask(qubits[i]);
        }
    }
    // Survivor bit positions, most significant first.
    std::vector<uint64_t> survivor_masks;
    for (size_t q = 1; q <= n; q++) {
        if (!(measured_mask & state.qubit_mask(q))) {
            survivor_masks.push_back(state.qubit_mask(q));
        }
    }
    size_t m = survivor_masks.size();
    std::vector<complex_t> out(size_t{1} << m);
    for (size_t j = 0; j < out.size(); j++) {
        uint64_t k = want;
        for (size_t s = 0; s < m; s++) {
            if (j & (uint64_t{1} << (m - 1 - s))) {
                k |= survivor_masks[s];
            }
        }
        out[j] = state[k];
    }
    return StateVector(m, std::move(out));
}

std::vector<MeasurementBranch> enumerate_measurement_branches(
    const StateVector &state, std::span<const size_t> qubits) {
    check_targets(state.num_qubits(), qubits);
    std::vector<size_t> survivors;
    for (size_t q = 1; q <= state.num_qubits(); q++) {
        if (std::find(qubits.begin(), qubits.end(), q) == qubits.end()) {
            survivors.push_back(q);
        }
    }
    size_t m = qubits.size();
    std::vector<MeasurementBranch> branches;
    branches.reserve(size_t{1} << m);
    for (size_t bits = 0; bits < (size_t{1} << m); bits++) {
        MeasurementBranch branch;
        branch.outcome.resize(m);
        for (size_t i = 0; i < m; i++) {
            branch.outcome[i] = uint8_t((bits >> (m - 1 - i)) & 1);
        }
        branch.post_state = project_out(state, qubits, branch.outcome);
        branch.probability = branch.post_state.norm_squared();
        branch.survivor_map = survivors;
        if (branch.probability < kZeroProbability) {
            branch.zero_probability = true;
            branch.post_state = StateVector::zeros(survivors.size());
        } else {
            branch.post_state.scale(1.0 / std::sqrt(branch.probability));
        }
        branches.push_back(std::move(branch));
    }
    return branches;
}

}  // namespace qis
