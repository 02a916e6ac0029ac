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

#include "qis/gate_sequence.h"

#include <cmath>
#include <stdexcept>

namespace qis {

namespace {

constexpr TwoQubitOp kAllOps[] = {
    TwoQubitOp::I,  TwoQubitOp::X1, TwoQubitOp::X2,     TwoQubitOp::Z1,     TwoQubitOp::Z2,  TwoQubitOp::H1,
    TwoQubitOp::H2, TwoQubitOp::S1, TwoQubitOp::S2, TwoQubitOp::CNOT12, TwoQubitOp::CNOT21, TwoQubitOp::SWAP};

Eigen::Matrix4cd kron(const Eigen::Matrix2cd &a, const Eigen::Matrix2cd &b) {
    Eigen::Matrix4cd m;
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return m;
}

}  // namespace

std::string_view two_qubit_op_str(TwoQubitOp op) {
    switch (op) {
        case TwoQubitOp::I:
            return "I";
        case TwoQubitOp::X1:
            return "X1";
        case TwoQubitOp::X2:
            return "X2";
        case TwoQubitOp::Z1:
            return "Z1";
        case TwoQubitOp::Z2:
            return "Z2";
        case TwoQubitOp::H1:
            return "H1";
        case TwoQubitOp::H2:
            return "H2";
        case TwoQubitOp::S1:
            return "S1";
        case TwoQubitOp::S2:
            return "S2";
        case TwoQubitOp::CNOT12:
            return "CNOT12";
        case TwoQubitOp::CNOT21:
            return "CNOT21";
        case TwoQubitOp::SWAP:
            return "SWAP";
    }
    throw std::logic_error("unhandled op");
}

TwoQubitOp parse_two_qubit_op(std::string_view token) {
    for (auto op : kAllOps) {
        if (two_qubit_op_str(op) == token) {
            return op;
        }
    }
    throw std::invalid_argument("unknown correction op '" + std::string(token) + "'");
}

Eigen::Matrix4cd two_qubit_op_matrix(TwoQubitOp op) {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix2cd x, z, h, s;
    x << 0, 1, 1, 0;
    z << 1, 0, 0, -1;
    h << r, r, r, -r;
    s << 1, 0, 0, complex_t(0, 1);
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    switch (op) {
        case TwoQubitOp::I:
            return Eigen::Matrix4cd::Identity();
        case TwoQubitOp::X1:
            return kron(x, Eigen::Matrix2cd::Identity());
        case TwoQubitOp::X2:
            return kron(Eigen::Matrix2cd::Identity(), x);
        case TwoQubitOp::Z1:
            return kron(z, Eigen::Matrix2cd::Identity());
        case TwoQubitOp::Z2:
            return kron(Eigen::Matrix2cd::Identity(), z);
        case TwoQubitOp::H1:
            return kron(h, Eigen::Matrix2cd::Identity());
        case TwoQubitOp::H2:
            return kron(Eigen::Matrix2cd::Identity(), h);
        case TwoQubitOp::S1:
            return kron(s, Eigen::Matrix2cd::Identity());
        case TwoQubitOp::S2:
            return kron(Eigen::Matrix2cd::Identity(), s);
        case TwoQubitOp::CNOT12:
            // |q1 q2>: flips q2 when q1 = 1.
            m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
            return m;
        case TwoQubitOp::CNOT21:
            m(0, 0) = m(2, 2) = m(1, 3) = m(3, 1) = 1;
            return m;
        case TwoQubitOp::SWAP:
            m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
            return m;
    }
    throw std::logic_error("unhandled op");
}

std::vector<TwoQubitOp> pauli_layer(Pauli p1, Pauli p2) {
    std::vector<TwoQubitOp> ops;
    auto push = [&](Pauli p, TwoQubitOp x, TwoQubitOp z) {
        if (p == Pauli::X || p == Pauli::XZ) {
            ops.push_back(x);
        }
        if (p == Pauli::Z || p == Pauli::XZ) {
            ops.push_back(z);
        }
    };
    push(p1, TwoQubitOp::X1, TwoQubitOp::Z1);
    push(p2, TwoQubitOp::X2, TwoQubitOp::Z2);
    if (ops.empty()) {
        ops.push_back(TwoQubitOp::I);
    }
    return ops;
}

Eigen::Matrix4cd GateSequence::matrix() const {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
    for (auto op : ops) {
        m = m * two_qubit_op_matrix(op);
    }
    return m;
}

std::vector<std::string> GateSequence::tokens() const {
    std::vector<std::string> out;
    for (auto op : ops) {
        out.emplace_back(two_qubit_op_str(op));
    }
    return out;
}

GateSequence GateSequence::from_tokens(const std::vector<std::string> &tokens) {
    GateSequence seq;
    for (const auto &t : tokens) {
        seq.ops.push_back(parse_two_qubit_op(t));
    }
    return seq;
}

std::string GateSequence::str() const {
    std::string s;
    for (size_t i = 0; i < ops.size(); i++) {
        if (i) {
            s += ".";
        }
        s += two_qubit_op_str(ops[i]);
    }
    return s;
}

GateSequence GateSequence::parse(std::string_view text) {
    GateSequence seq;
    size_t start = 0;
    while (true) {
        size_t dot = text.find('.', start);
        seq.ops.push_back(parse_two_qubit_op(text.substr(start, dot == std::string_view::npos ? dot : dot - start)));
        if (dot == std::string_view::npos) {
            return seq;
        }
        start = dot + 1;
    }
}

StateVector apply_correction(const StateVector &charlie_state, const GateSequence &seq) {
    if (charlie_state.num_qubits() != 2) {
        throw std::invalid_argument(
            "correction acts on 2 qubits, state has " + std::to_string(charlie_state.num_qubits()));
    }
    StateVector out = charlie_state;
    apply_two_qubit(out, 1, 2, seq.matrix());
    return out;
}

bool unitaries_match_up_to_phase(const Eigen::Matrix4cd &a, const Eigen::Matrix4cd &b, double tol) {
    return std::abs((a.adjoint() * b).trace()) / 4.0 >= 1.0 - tol;
}

}  // namespace qis
