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

#ifndef QIS_SYNTHESIS_H
#define QIS_SYNTHESIS_H

#include <array>
#include <optional>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "qis/gate_sequence.h"
#include "qis/protocol.h"

namespace qis {

/// Linear map from the secret (standard 2-qubit basis) to Charlie's unnormalized
/// state along one outcome path.
struct TransferMap {
    Eigen::Matrix4cd matrix;
    ClassicalTranscript transcript;

    /// Branch probability for this secret, ||M s||^2.
    double probability(const SecretState &secret) const;
};

/// Runs the branch pipeline once per basis secret and assembles the columns.
TransferMap branch_transfer_map(const ProtocolConfig &config, const ClassicalTranscript &transcript);

/// Every path's map at once, read off the deferred-measurement state. Ordered by transcript index.
std::vector<TransferMap> all_transfer_maps(const ProtocolConfig &config);
std::vector<TransferMap> all_transfer_maps(const ProtocolConfig &config, const StateVector &channel);

/// sum_t M_t^dagger M_t - I, max-norm.
double completeness_error(const std::vector<TransferMap> &maps);

/// True iff M^dagger M = c I within tol with c > kZeroProbability.
bool proportional_to_unitary(const Eigen::Matrix4cd &m, double tol = 1e-9);

enum class DictionaryLevel { pauli_frame, extended, full_clifford };

std::string_view dictionary_level_str(DictionaryLevel level);
DictionaryLevel parse_dictionary_level(std::string_view text);

/// 32 rounded real/imag parts of a unitary after removing its global phase.
using PhaseKey = std::array<int64_t, 32>;

struct PhaseKeyHash {
    size_t operator()(const PhaseKey &key) const;
};

PhaseKey phase_key(const Eigen::Matrix4cd &u);

/// Candidate corrections, unique up to global phase, in a fixed order.
///
/// Each level lists the previous level's entries first, so a lower level is a prefix
/// of the higher one.
struct GateDictionary {
    DictionaryLevel level;
    std::vector<GateSequence> entries;
    std::vector<Eigen::Matrix4cd> matrices;
    std::unordered_map<PhaseKey, size_t, PhaseKeyHash> index;

    /// Entry equal to u up to global phase, if any.
    std::optional<size_t> find(const Eigen::Matrix4cd &u) const;
};

/// Built once per level and cached.
const GateDictionary &build_dictionary(DictionaryLevel level);

enum class RowFlag { corrected, zero_probability, unsynthesizable };

std::string_view row_flag_str(RowFlag flag);
RowFlag parse_row_flag(std::string_view text);

struct CorrectionRow {
    ClassicalTranscript transcript;
    GateSequence sequence;
    RowFlag flag = RowFlag::unsynthesizable;
    /// tr(M^dagger M) / 4: the branch probability averaged over secrets.
    double mean_probability = 0;
};

struct CorrectionTable {
    ProtocolConfig config;
    DictionaryLevel level = DictionaryLevel::pauli_frame;
    /// Ordered by transcript index; covers all 2^bits transcripts.
    std::vector<CorrectionRow> rows;

    size_t count(RowFlag flag) const;
    /// No unsynthesizable rows.
    bool deterministic() const;
    CorrectionLookup lookup() const;
};

/// For each nonzero-probability path, the first dictionary entry U with U M
/// proportional to I within 1e-9. Failures are flagged, never thrown.
CorrectionTable synthesize_table(const ProtocolConfig &config, const GateDictionary &dict);
CorrectionTable synthesize_table(
    const ProtocolConfig &config, const std::vector<TransferMap> &maps, const GateDictionary &dict);

/// pauli_frame, then extended, then full_clifford; returns the first deterministic
/// table, or the full_clifford table if none is.
CorrectionTable synthesize_escalating(const ProtocolConfig &config);
CorrectionTable synthesize_escalating(const ProtocolConfig &config, const std::vector<TransferMap> &maps);

/// ||U M - c I||_max for c = tr(U M) / 4.
double correction_residual(const Eigen::Matrix4cd &u, const Eigen::Matrix4cd &m, complex_t *scale = nullptr);

/// Probability of every transcript for one secret, from full branch enumeration.
std::vector<double> outcome_distribution(const ProtocolConfig &config, const SecretState &secret);

}  // namespace qis

#endif
