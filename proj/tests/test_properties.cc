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

// Randomized engine invariants, 1000 cases each.

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "qis/density_matrix.h"
#include "qis/property_checks.h"
#include "qis/state_vector.h"

namespace qis {
namespace {

constexpr size_t kCases = 1000;

TEST(Properties, GateMatricesAreUnitary) {
    PropertyResult r = check_unitarity(kCases, 11);
    EXPECT_TRUE(r.passed) << r.detail;
    EXPECT_LE(r.worst, 1e-12);
}

TEST(Properties, GatesPreserveNorm) {
    PropertyResult r = check_norm_preservation(kCases, 12);
    EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Properties, MeasurementIsComplete) {
    PropertyResult r = check_measurement_completeness(kCases, 13);
    EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Properties, FullPartialTraceIsProjector) {
    PropertyResult r = check_partial_trace_consistency(kCases, 14);
    EXPECT_TRUE(r.passed) << r.detail;
}

TEST(Properties, FidelityBoundedAndSymmetric) {
    PropertyResult r = check_fidelity_bounds(kCases, 15);
    EXPECT_TRUE(r.passed) << r.detail;
}

// The checks must catch a broken invariant, not just pass.
TEST(Properties, DetectsNonUnitaryKernel) {
    std::mt19937_64 rng(3);
    StateVector s = random_state(3, rng);
    Eigen::Matrix2cd bad;
    bad << 1, 1, 0, 1;
    apply_single_qubit(s, 2, bad);
    EXPECT_GT(std::abs(s.norm_squared() - 1.0), 1e-6);
}

TEST(Properties, RandomStatesAreNormalized) {
    std::mt19937_64 rng(5);
    for (size_t i = 0; i < 50; i++) {
        EXPECT_NEAR(random_state(1 + i % 6, rng).norm_squared(), 1.0, 1e-12);
    }
}

}  // namespace
}  // namespace qis
