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

#ifndef QIS_ANALYSIS_H
#define QIS_ANALYSIS_H

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qis/density_matrix.h"
#include "qis/protocol.h"
#include "qis/synthesis.h"

namespace qis {

/// Seeded source of random secrets: four complex Gaussians, normalized.
///
/// Normals come from Box-Muller over the raw 64-bit engine output so that the
/// sequence is identical across standard libraries.
class SecretSampler {
   public:
    explicit SecretSampler(uint64_t seed) : engine_(seed) {
    }

    SecretState next();

   private:
    double uniform();
    double normal();

    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

std::vector<SecretState> sample_secrets(uint64_t seed, size_t count);

/// How the printed decoders are read against the simulated wires.
///
/// The reversals act on the transcript fed to the decoder; charlie_swapped reads the
/// decoder's unitary with Charlie's two output qubits in the opposite order.
struct BitConvention {
    bool alice_reversed = false;
    bool bob_reversed = false;
    bool charlie_swapped = false;

    /// "wire-order", or the set flags joined by '+', e.g. "alice-reversed+charlie-swapped".
    std::string str() const;
    static BitConvention parse(std::string_view text);
    bool operator==(const BitConvention &other) const = default;
};

/// All eight conventions, wire-order first.
const std::vector<BitConvention> &all_bit_conventions();

/// The transcript a decoder sees when the physical transcript is read under `c`.
/// Each convention is an involution, so this also maps decoder transcripts back.
ClassicalTranscript reinterpret(const ClassicalTranscript &t, const BitConvention &c);

/// A decoder's unitary expressed on the simulated wires.
Eigen::Matrix4cd physical_unitary(const GateSequence &printed, const BitConvention &c);

struct AuditRow {
    ClassicalTranscript transcript;
    GateSequence closed_form;
    GateSequence synthesized;
    RowFlag flag = RowFlag::unsynthesizable;
    bool match = false;
};

/// A printed correction and the transcript it was printed for.
struct WorkedExample {
    ClassicalTranscript transcript;
    GateSequence stated;
};

struct WorkedExampleResult {
    WorkedExample example;
    bool matches_table = false;
    bool matches_equation = false;

    /// "both", "table", "equation" or "neither".
    std::string classification() const;
};

struct AuditReport {
    DecoderKind decoder = DecoderKind::eq6;
    BitConvention convention;
    std::vector<AuditRow> rows;
    size_t compared = 0;
    size_t matches = 0;
    WorkedExampleResult worked;

    /// matches / compared; compared counts corrected rows only.
    double match_fraction() const;
    std::vector<ClassicalTranscript> mismatches() const;
};

/// The worked example printed alongside each closed form.
WorkedExample worked_example(DecoderKind decoder);

/// Compares the closed-form decoder against a synthesized table, up to global phase.
AuditReport audit_decoder(const CorrectionTable &table, DecoderKind decoder, const BitConvention &convention);

/// Audits against the table itself, row by row (sanity baseline).
AuditReport audit_table_against_itself(const CorrectionTable &table);

/// A non-Alice party's share of the locked state.
struct PartyId {
    enum class Kind { bob1, mid_bob, charlie };
    Kind kind = Kind::bob1;
    /// Bob index for mid_bob (2 .. N - 5).
    size_t index = 0;

    std::string str() const;
    /// "bob1", "bob2".."bobK", "charlie". "alice" is rejected.
    static PartyId parse(std::string_view text);
    /// Wires of the joint register held by this party; throws if the party does not exist for N.
    std::vector<size_t> joint_wires(size_t n) const;
};

/// Every non-Alice party for N.
std::vector<PartyId> non_alice_parties(size_t n);

struct SecurityReport {
    PartyId party;
    ProtocolConfig config;
    size_t pairs = 0;
    uint64_t seed = 0;
    /// Indexed by Alice's outcome a1a2a3a4 read as a binary number.
    std::array<double, 16> per_branch_max{};
    double global_max = 0;
};

/// Reduced state of `party` once Alice has measured and announced `alice`, with every
/// later outcome unknown. Returns nullopt for a zero-probability outcome.
std::optional<DensityMatrix> party_view(
    const ProtocolConfig &config,
    const StateVector &channel,
    const SecretState &secret,
    const PartyId &party,
    size_t alice_outcome);

/// Max trace distance between the party's views of two secrets, per Alice outcome,
/// over `pairs` seeded secret pairs.
SecurityReport security_scan(const ProtocolConfig &config, const PartyId &party, size_t pairs, uint64_t seed);

struct SweepEntry {
    ProtocolConfig config;
    double completeness_error = 0;
    /// Rows whose map satisfies M^dagger M proportional to I.
    size_t proportional_rows = 0;
    size_t corrected_rows = 0;
    size_t zero_probability_rows = 0;
    DictionaryLevel level = DictionaryLevel::pauli_frame;
    /// Every transcript occurs and is corrected. A zero-probability transcript means
    /// some party's bit is fixed, so that party is not needed; such entries do not count.
    bool deterministic = false;
};

struct SweepReport {
    size_t n = 0;
    size_t transcripts = 0;
    std::vector<SweepEntry> entries;
    /// Deterministic with the unmodified redistribution schedule.
    bool standard_schedule_deterministic = false;
    /// Deepest extra-swap level that was searched.
    size_t searched_depth = 0;
    std::optional<ProtocolConfig> accepted;
};

/// Channel sources the sweep tries for N, in preference order.
std::vector<ChannelSource> sweep_sources(size_t n);
/// Locking variants in preference order (a single Bob1 style for N = 5).
std::vector<LockingVariant> sweep_variants(size_t n);

SweepEntry evaluate_configuration(const ProtocolConfig &config);

/// Tries every source x variant with the standard schedule; if none is deterministic,
/// retries with one appended swap (then two, up to `max_extra_swaps`).
/// Entries are in preference order; the first deterministic one is accepted.
SweepReport variant_sweep(size_t n, size_t max_extra_swaps = 1);

/// Same order as variant_sweep, but stops at the first deterministic configuration.
std::optional<ProtocolConfig> accepted_configuration(size_t n, size_t max_extra_swaps = 1);

}  // namespace qis

#endif
