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

#include "qis/property_checks.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qis/density_matrix.h"
#include "qis/gate_sequence.h"

namespace qis {

namespace {

constexpr GateName kGates[] = {GateName::H,  GateName::X,    GateName::Z,   GateName::XZ,
                               GateName::CZ, GateName::CNOT, GateName::SWAP};

size_t uniform_index(std::mt19937_64 &rng, size_t n) {
    return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
}

std::vector<size_t> random_distinct(std::mt19937_64 &rng, size_t n, size_t k) {
    std::vector<size_t> all(n);
    std::iota(all.begin(), all.end(), 1);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(k);
    return all;
}

GateSpec random_gate(std::mt19937_64 &rng, size_t n) {
    GateName name;
    do {
        name = kGates[uniform_index(rng, std::size(kGates))];
    } while (gate_arity(name) > n);
    return GateSpec{name, random_distinct(rng, n, gate_arity(name))};
}

void record(PropertyResult &r, double violation, double tol, const std::string &what) {
    r.cases++;
    r.worst = std::max(r.worst, violation);
    if (!(violation <= tol) && r.passed) {
        r.passed = false;
        r.detail = what + " (violation " + std::to_string(violation) + ")";
    }
}

}  // namespace

StateVector random_state(size_t num_qubits, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<complex_t> amps(size_t{1} << num_qubits);
    for (auto &a : amps) {
        a = {g(rng), g(rng)};
    }
    StateVector s(num_qubits, std::move(amps));
    s.normalize();
    return s;
}

PropertyResult check_unitarity(size_t cases, uint64_t seed) {
    std::mt19937_64 rng(seed);
    PropertyResult r;
    for (size_t c = 0; c < cases; c++) {
        Eigen::MatrixXcd u;
        std::string what;
        if (c % 2 == 0) {
            GateName g = kGates[uniform_index(rng, std::size(kGates))];
            u = gate_matrix(g);
            what = std::string(gate_name_str(g));
        } else {
            GateSequence seq;
            size_t len = 1 + uniform_index(rng, 6);
            for (size_t i = 0; i < len; i++) {
                seq.ops.push_back(TwoQubitOp(uniform_index(rng, size_t(TwoQubitOp::SWAP) + 1)));
            }
            u = seq.matrix();
            what = seq.str();
        }
        Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
        record(r, (u.adjoint() * u - id).cwiseAbs().maxCoeff(), 1e-12, "unitarity of " + what);
    }
    return r;
}

PropertyResult check_norm_preservation(size_t cases, uint64_t seed) {
    std::mt19937_64 rng(seed);
    PropertyResult r;
    for (size_t c = 0; c < cases; c++) {
        size_t n = 1 + uniform_index(rng, 8);
        StateVector s = random_state(n, rng);
        GateSpec g = random_gate(rng, n);
        StateVector out = apply_gate(s, g);
        record(r, std::abs(std::sqrt(out.norm_squared()) - 1.0), 1e-12,
               std::string(gate_name_str(g.name)) + " on " + std::to_string(n) + " qubits");
    }
    return r;
}

PropertyResult check_measurement_completeness(size_t cases, uint64_t seed) {
    std::mt19937_64 rng(seed);
    PropertyResult r;
    for (size_t c = 0; c < cases; c++) {
        size_t n = 2 + uniform_index(rng, 5);
        size_t m = 1 + uniform_index(rng, n - 1);
        StateVector s = random_state(n, rng);
        std::vector<size_t> measured = random_distinct(rng, n, m);
        auto branches = enumerate_measurement_branches(s, measured);

        double total = 0;
        double worst_norm = 0;
        std::vector<size_t> survivors = branches.front().survivor_map;
        Eigen::MatrixXcd mix = Eigen::MatrixXcd::Zero(Eigen::Index(1) << (n - m), Eigen::Index(1) << (n - m));
        for (const auto &b : branches) {
            total += b.probability;
            if (!b.zero_probability) {
                worst_norm = std::max(worst_norm, std::abs(b.post_state.norm_squared() - 1.0));
                mix += b.probability * DensityMatrix::pure(b.post_state).entries;
            }
        }
        DensityMatrix expected = reduced_density_matrix(s, survivors);
        double recon = (mix - expected.entries).cwiseAbs().maxCoeff();
        std::string what = std::to_string(m) + " of " + std::to_string(n) + " qubits";
        record(r, std::max({std::abs(total - 1.0), worst_norm, recon}), 1e-9, "measurement of " + what);
    }
    return r;
}

PropertyResult check_partial_trace_consistency(size_t cases, uint64_t seed) {
    std::mt19937_64 rng(seed);
    PropertyResult r;
    for (size_t c = 0; c < cases; c++) {
        size_t n = 1 + uniform_index(rng, 6);
        StateVector s = random_state(n, rng);
        std::vector<size_t> all(n);
        std::iota(all.begin(), all.end(), 1);
        DensityMatrix full = reduced_density_matrix(s, all);
        double err = (full.entries - DensityMatrix::pure(s).entries).cwiseAbs().maxCoeff();

        size_t k = 1 + uniform_index(rng, n);
        DensityMatrix part = reduced_density_matrix(s, random_distinct(rng, n, k));
        double herm = (part.entries - part.entries.adjoint()).cwiseAbs().maxCoeff();
        double trace = std::abs(part.trace() - 1.0);
        double neg = std::max(0.0, -part.eigenvalues().minCoeff());
        record(r, std::max({err, herm, trace, neg}), 1e-10, "partial trace on " + std::to_string(n) + " qubits");
    }
    return r;
}

PropertyResult check_fidelity_bounds(size_t cases, uint64_t seed) {
    std::mt19937_64 rng(seed);
    PropertyResult r;
    for (size_t c = 0; c < cases; c++) {
        size_t n = 1 + uniform_index(rng, 6);
        StateVector a = random_state(n, rng);
        StateVector b = c % 10 == 0 ? a : random_state(n, rng);
        double f = pure_fidelity(a, b);
        double g = pure_fidelity(b, a);
        double violation = std::max({0.0, -f, f - (1.0 + 1e-12)});
        if (f != g) {
            violation = std::max(violation, 1.0);
        }
        record(r, violation, 0.0, "fidelity on " + std::to_string(n) + " qubits");
    }
    return r;
}

}  // namespace qis
