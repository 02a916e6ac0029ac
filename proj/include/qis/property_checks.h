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

#ifndef QIS_PROPERTY_CHECKS_H
#define QIS_PROPERTY_CHECKS_H

#include <cstdint>
#include <random>
#include <string>

#include "qis/state_vector.h"

namespace qis {

/// Outcome of one randomized invariant check.
struct PropertyResult {
    bool passed = true;
    size_t cases = 0;
    /// Largest violation seen, in the check's own metric.
    double worst = 0;
    /// First failing case, if any.
    std::string detail;
};

/// Normalized state with complex Gaussian amplitudes.
StateVector random_state(size_t num_qubits, std::mt19937_64 &rng);

/// max|U^dagger U - I| <= 1e-12 for random gates and random correction sequences.
PropertyResult check_unitarity(size_t cases, uint64_t seed);
/// | ||U psi|| - 1 | <= 1e-12 for random gates on random states (1..8 qubits).
PropertyResult check_norm_preservation(size_t cases, uint64_t seed);
/// Branch probabilities sum to 1 within 1e-9 and the probability-weighted post-states
/// reproduce the survivors' reduced density matrix within 1e-9.
PropertyResult check_measurement_completeness(size_t cases, uint64_t seed);
/// Tracing out nothing returns |psi><psi| within 1e-10; random partial traces are
/// Hermitian, unit-trace and positive semidefinite.
PropertyResult check_partial_trace_consistency(size_t cases, uint64_t seed);
/// 0 <= F <= 1 + 1e-12 and F(a, b) == F(b, a) exactly.
PropertyResult check_fidelity_bounds(size_t cases, uint64_t seed);

}  // namespace qis

#endif
