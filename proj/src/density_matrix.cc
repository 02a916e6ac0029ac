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

#include "qis/density_matrix.h"

#include <algorithm>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qis {

DensityMatrix DensityMatrix::pure(const StateVector &state) {
    Eigen::Map<const Eigen::VectorXcd> v(state.amplitudes().data(), Eigen::Index(state.dimension()));
    return DensityMatrix{state.num_qubits(), v * v.adjoint()};
}

double DensityMatrix::trace() const {
    return entries.trace().real();
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

DensityMatrix reduced_density_matrix(const StateVector &state, std::span<const size_t> keep) {
    size_t n = state.num_qubits();
    for (size_t i = 0; i < keep.size(); i++) {
        if (keep[i] < 1 || keep[i] > n) {
            throw std::invalid_argument("kept qubit out of range");
        }
        if (std::count(keep.begin(), keep.end(), keep[i]) != 1) {
            throw std::invalid_argument("kept qubits must be distinct");
        }
    }
    std::vector<size_t> traced;
    for (size_t q = 1; q <= n; q++) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
            traced.push_back(q);
        }
    }
    size_t dk = size_t{1} << keep.size();
    size_t dt = size_t{1} << traced.size();

    auto spread = [&](size_t bits, std::span<const size_t> wires) {
        uint64_t k = 0;
        for (size_t i = 0; i < wires.size(); i++) {
            if (bits & (size_t{1} << (wires.size() - 1 - i))) {
                k |= state.qubit_mask(wires[i]);
            }
        }
        return k;
    };

    // Rows: kept index. Columns: traced index.
    Eigen::MatrixXcd psi = Eigen::MatrixXcd::Zero(Eigen::Index(dk), Eigen::Index(dt));
    std::vector<uint64_t> keep_offsets(dk);
    for (size_t i = 0; i < dk; i++) {
        keep_offsets[i] = spread(i, keep);
    }
    for (size_t j = 0; j < dt; j++) {
        uint64_t tj = spread(j, traced);
        for (size_t i = 0; i < dk; i++) {
            psi(Eigen::Index(i), Eigen::Index(j)) = state[keep_offsets[i] | tj];
        }
    }
    return DensityMatrix{keep.size(), psi * psi.adjoint()};
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.entries.rows() != b.entries.rows() || a.entries.cols() != b.entries.cols()) {
        throw std::invalid_argument("density matrix dimension mismatch");
    }
    Eigen::MatrixXcd diff = a.entries - b.entries;
    // Hermitian, so the singular values are the absolute eigenvalues.
    diff = (diff + diff.adjoint().eval()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace qis
