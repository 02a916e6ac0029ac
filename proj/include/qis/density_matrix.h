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

#ifndef QIS_DENSITY_MATRIX_H
#define QIS_DENSITY_MATRIX_H

#include <span>

#include <Eigen/Dense>

#include "qis/state_vector.h"

namespace qis {

struct DensityMatrix {
    size_t num_qubits = 0;
    Eigen::MatrixXcd entries;

    static DensityMatrix pure(const StateVector &state);

    double trace() const;
    Eigen::VectorXd eigenvalues() const;
};

/// Partial trace over every wire not in `keep`. Kept wires appear in the listed order.
DensityMatrix reduced_density_matrix(const StateVector &state, std::span<const size_t> keep);

/// Half the trace norm of (a - b).
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);

}  // namespace qis

#endif
