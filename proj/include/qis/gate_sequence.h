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

#ifndef QIS_GATE_SEQUENCE_H
#define QIS_GATE_SEQUENCE_H

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qis/state_vector.h"

namespace qis {

/// Primitive operations on Charlie's register. Suffixes name the acted-on qubit;
/// CNOT21 has control 2 and target 1.
enum class TwoQubitOp { I, X1, X2, Z1, Z2, H1, H2, S1, S2, CNOT12, CNOT21, SWAP };

std::string_view two_qubit_op_str(TwoQubitOp op);
TwoQubitOp parse_two_qubit_op(std::string_view token);
Eigen::Matrix4cd two_qubit_op_matrix(TwoQubitOp op);

enum class Pauli { I, X, Z, XZ };

/// Ops realizing P1 (x) P2 ({I} for the identity layer).
std::vector<TwoQubitOp> pauli_layer(Pauli p1, Pauli p2);

/// Ops in written order: the last element acts first, as in A.B.C = A*B*C.
struct GateSequence {
    std::vector<TwoQubitOp> ops;

    static GateSequence identity() {
        return GateSequence{{TwoQubitOp::I}};
    }

    Eigen::Matrix4cd matrix() const;
    std::vector<std::string> tokens() const;
    static GateSequence from_tokens(const std::vector<std::string> &tokens);
    std::string str() const;
    /// Inverse of str(): "X1.CNOT21.Z2".
    static GateSequence parse(std::string_view text);

    bool operator==(const GateSequence &other) const = default;
};

/// Applies seq's matrix to a 2-qubit state. Throws std::invalid_argument otherwise.
StateVector apply_correction(const StateVector &charlie_state, const GateSequence &seq);

/// |tr(a^dagger b)| / 4 >= 1 - tol, i.e. a and b agree up to global phase.
bool unitaries_match_up_to_phase(const Eigen::Matrix4cd &a, const Eigen::Matrix4cd &b, double tol = 1e-9);

}  // namespace qis

#endif
