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

#ifndef QIS_STATE_VECTOR_H
#define QIS_STATE_VECTOR_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qis {

using complex_t = std::complex<double>;

/// Dense state over labeled qubit wires.
///
/// Qubit q (1-based) lives at bit position (num_qubits - q) of the amplitude
/// index, so qubit 1 is the leftmost label of a ket |x1 x2 ... xn>.
///
/// A zero-qubit state (one amplitude) is allowed; it is what remains after
/// every wire of a state has been measured.
class StateVector {
   public:
    StateVector() : num_qubits_(0), amplitudes_(1, complex_t{1.0, 0.0}) {
    }
    StateVector(size_t num_qubits, std::vector<complex_t> amplitudes);

    /// All-zero amplitude vector; used for flagged zero-probability branches.
    static StateVector zeros(size_t num_qubits);

    size_t num_qubits() const {
        return num_qubits_;
    }
    size_t dimension() const {
        return amplitudes_.size();
    }
    std::span<const complex_t> amplitudes() const {
        return amplitudes_;
    }
    std::span<complex_t> mutable_amplitudes() {
        return amplitudes_;
    }
    const complex_t &operator[](size_t index) const {
        return amplitudes_[index];
    }
    complex_t &operator[](size_t index) {
        return amplitudes_[index];
    }

    /// Amplitude of the basis ket written as a bit string, e.g. "00101".
    complex_t amplitude(std::string_view label) const;

    double norm_squared() const;
    void scale(complex_t factor);
    void normalize();

    /// Index mask of qubit q under the fixed bit ordering.
    uint64_t qubit_mask(size_t qubit) const {
        return uint64_t{1} << (num_qubits_ - qubit);
    }

    std::string str() const;

    bool operator==(const StateVector &other) const = default;

   private:
    size_t num_qubits_;
    std::vector<complex_t> amplitudes_;
};

enum class GateName { H, X, Z, XZ, CZ, CNOT, SWAP };

std::string_view gate_name_str(GateName name);
GateName parse_gate_name(std::string_view text);
size_t gate_arity(GateName name);

/// A named gate and its 1-based targets. For CNOT the first target is the control.
struct GateSpec {
    GateName name;
    std::vector<size_t> targets;

    bool operator==(const GateSpec &other) const = default;
};

/// The gate's matrix in the basis |t1 t2> with t1 the most significant bit.
Eigen::MatrixXcd gate_matrix(GateName name);

/// Ket with amplitude 1 on `label`. Throws std::invalid_argument on a length mismatch
/// or a character other than '0'/'1'.
StateVector basis_state(size_t num_qubits, std::string_view label);

/// Returns U|state>. Targets are validated against the state's width.
StateVector apply_gate(StateVector state, const GateSpec &gate);

/// In-place kernels shared by apply_gate and the protocol pipeline.
void apply_single_qubit(StateVector &state, size_t qubit, const Eigen::Matrix2cd &u);
void apply_two_qubit(StateVector &state, size_t q1, size_t q2, const Eigen::Matrix4cd &u);
void apply_swap(StateVector &state, size_t q1, size_t q2);

/// |a> (x) |b>; a's qubits keep labels 1..n_a.
StateVector tensor_product(const StateVector &a, const StateVector &b);

/// |<a|b>|^2. Throws std::invalid_argument on a width mismatch.
double pure_fidelity(const StateVector &a, const StateVector &b);

/// True iff min over phi of ||a - e^{i phi} b|| <= tol.
bool equal_up_to_global_phase(const StateVector &a, const StateVector &b, double tol);

/// One outcome of a computational-basis measurement of several wires.
struct MeasurementBranch {
    /// Bits in measurement-list order.
    std::vector<uint8_t> outcome;
    double probability = 0.0;
    /// Set for branches whose probability is below kZeroProbability.
    bool zero_probability = false;
    /// Renormalized projection on the surviving wires (all zeros when flagged).
    StateVector post_state;
    /// survivor_map[i] is the original label of post_state's wire i + 1.
    std::vector<size_t> survivor_map;

    std::string outcome_str() const;
};

constexpr double kZeroProbability = 1e-12;

/// All 2^m branches of measuring `qubits` in the computational basis, in ascending
/// order of the outcome read as a binary number (first listed qubit most significant).
std::vector<MeasurementBranch> enumerate_measurement_branches(
    const StateVector &state, std::span<const size_t> qubits);

/// Projects `qubits` onto `outcome` without renormalizing and removes those wires.
StateVector project_out(const StateVector &state, std::span<const size_t> qubits, std::span<const uint8_t> outcome);

}  // namespace qis

#endif
