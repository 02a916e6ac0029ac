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

#include "qis/analysis.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qis {

double SecretSampler::uniform() {
    // 53 random bits in (0, 1]; never 0 so the logarithm below is finite.
    return double((engine_() >> 11) + 1) * 0x1.0p-53;
}

double SecretSampler::normal() {
    if (spare_) {
        double v = *spare_;
        spare_.reset();
        return v;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    return r * std::cos(theta);
}

SecretState SecretSampler::next() {
    complex_t c[4];
    double norm2 = 0;
    for (auto &z : c) {
        double re = normal();
        double im = normal();
        z = {re, im};
        norm2 += std::norm(z);
    }
    double inv = 1.0 / std::sqrt(norm2);
    return SecretState{c[0] * inv, c[1] * inv, c[2] * inv, c[3] * inv};
}

std::vector<SecretState> sample_secrets(uint64_t seed, size_t count) {
    SecretSampler sampler(seed);
    std::vector<SecretState> out;
    out.reserve(count);
    for (size_t i = 0; i < count; i++) {
        out.push_back(sampler.next());
    }
    return out;
}

std::string BitConvention::str() const {
    std::string out;
    auto add = [&](bool on, const char *name) {
        if (on) {
            out += out.empty() ? "" : "+";
            out += name;
        }
    };
    add(alice_reversed, "alice-reversed");
    add(bob_reversed, "bob-reversed");
    add(charlie_swapped, "charlie-swapped");
    return out.empty() ? "wire-order" : out;
}

BitConvention BitConvention::parse(std::string_view text) {
    for (const auto &c : all_bit_conventions()) {
        if (c.str() == text) {
            return c;
        }
    }
    throw std::invalid_argument("unknown bit convention '" + std::string(text) + "'");
}

const std::vector<BitConvention> &all_bit_conventions() {
    static const std::vector<BitConvention> all = [] {
        std::vector<BitConvention> out;
        for (bool charlie : {false, true}) {
            for (bool bob : {false, true}) {
                for (bool alice : {false, true}) {
                    out.push_back(BitConvention{alice, bob, charlie});
                }
            }
        }
        return out;
    }();
    return all;
}

ClassicalTranscript reinterpret(const ClassicalTranscript &t, const BitConvention &c) {
    ClassicalTranscript out = t;
    if (c.alice_reversed) {
        std::reverse(out.alice.begin(), out.alice.end());
    }
    if (c.bob_reversed) {
        std::reverse(out.bob1.begin(), out.bob1.end());
    }
    return out;
}

Eigen::Matrix4cd physical_unitary(const GateSequence &printed, const BitConvention &c) {
    Eigen::Matrix4cd u = printed.matrix();
    if (c.charlie_swapped) {
        const Eigen::Matrix4cd swap = two_qubit_op_matrix(TwoQubitOp::SWAP);
        u = swap * u * swap;
    }
    return u;
}

std::string WorkedExampleResult::classification() const {
    if (matches_table && matches_equation) {
        return "both";
    }
    if (matches_table) {
        return "table";
    }
    if (matches_equation) {
        return "equation";
    }
    return "neither";
}

double AuditReport::match_fraction() const {
    return compared == 0 ? 0.0 : double(matches) / double(compared);
}

std::vector<ClassicalTranscript> AuditReport::mismatches() const {
    std::vector<ClassicalTranscript> out;
    for (const auto &row : rows) {
        if (row.flag == RowFlag::corrected && !row.match) {
            out.push_back(row.transcript);
        }
    }
    return out;
}

WorkedExample worked_example(DecoderKind decoder) {
    switch (decoder) {
        case DecoderKind::eq6:
            return WorkedExample{
                ClassicalTranscript::parse("1110|1|"),
                GateSequence{{TwoQubitOp::X1, TwoQubitOp::CNOT21, TwoQubitOp::SWAP, TwoQubitOp::Z2}}};
        case DecoderKind::eq8:
            return WorkedExample{
                ClassicalTranscript::parse("0100|01|"),
                GateSequence{{TwoQubitOp::X2, TwoQubitOp::CNOT21, TwoQubitOp::Z2}}};
        case DecoderKind::table:
            break;
    }
    throw std::invalid_argument("only closed-form decoders have worked examples");
}

namespace {

size_t decoder_n(DecoderKind decoder) {
    switch (decoder) {
        case DecoderKind::eq6:
            return 5;
        case DecoderKind::eq8:
            return 6;
        case DecoderKind::table:
            break;
    }
    throw std::invalid_argument("audit needs a closed-form decoder");
}

GateSequence closed_form(DecoderKind decoder, const ClassicalTranscript &t) {
    return decoder == DecoderKind::eq6 ? decode_n5(t) : decode_n6(t);
}

}  // namespace

AuditReport audit_decoder(const CorrectionTable &table, DecoderKind decoder, const BitConvention &convention) {
    const size_t n = decoder_n(decoder);
    if (table.config.n != n) {
        throw std::invalid_argument(
            std::string(decoder_kind_str(decoder)) + " audits N = " + std::to_string(n) + " tables, got N = " +
            std::to_string(table.config.n));
    }
    AuditReport report;
    report.decoder = decoder;
    report.convention = convention;
    for (const auto &row : table.rows) {
        AuditRow out;
        out.transcript = row.transcript;
        out.closed_form = closed_form(decoder, reinterpret(row.transcript, convention));
        out.synthesized = row.sequence;
        out.flag = row.flag;
        if (row.flag == RowFlag::corrected) {
            out.match =
                unitaries_match_up_to_phase(physical_unitary(out.closed_form, convention), row.sequence.matrix());
            report.compared++;
            report.matches += out.match;
        }
        report.rows.push_back(std::move(out));
    }
    // The example is printed in the decoder's frame; the equation comparison does not
    // depend on the convention, the table comparison does.
    WorkedExample ex = worked_example(decoder);
    const auto &row = table.rows.at(reinterpret(ex.transcript, convention).index());
    report.worked.example = ex;
    report.worked.matches_table =
        row.flag == RowFlag::corrected &&
        unitaries_match_up_to_phase(physical_unitary(ex.stated, convention), row.sequence.matrix());
    report.worked.matches_equation =
        unitaries_match_up_to_phase(ex.stated.matrix(), closed_form(decoder, ex.transcript).matrix());
    return report;
}

AuditReport audit_table_against_itself(const CorrectionTable &table) {
    AuditReport report;
    report.decoder = DecoderKind::table;
    for (const auto &row : table.rows) {
        AuditRow out{row.transcript, row.sequence, row.sequence, row.flag, false};
        if (row.flag == RowFlag::corrected) {
            out.match = unitaries_match_up_to_phase(row.sequence.matrix(), row.sequence.matrix());
            report.compared++;
            report.matches += out.match;
        }
        report.rows.push_back(std::move(out));
    }
    return report;
}

std::string PartyId::str() const {
    switch (kind) {
        case Kind::bob1:
            return "bob1";
        case Kind::mid_bob:
            return "bob" + std::to_string(index);
        case Kind::charlie:
            return "charlie";
    }
    throw std::logic_error("unhandled party");
}

PartyId PartyId::parse(std::string_view text) {
    if (text == "alice") {
        throw std::invalid_argument("Alice holds the secret before measuring; scan a different party");
    }
    if (text == "charlie") {
        return PartyId{Kind::charlie, 0};
    }
    if (text == "bob1") {
        return PartyId{Kind::bob1, 1};
    }
    if (text.size() > 3 && text.substr(0, 3) == "bob") {
        std::string digits(text.substr(3));
        if (std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            size_t k = std::stoul(digits);
            if (k >= 2) {
                return PartyId{Kind::mid_bob, k};
            }
        }
    }
    throw std::invalid_argument("unknown party '" + std::string(text) + "'");
}

std::vector<size_t> PartyId::joint_wires(size_t n) const {
    PartyAssignment p = assign_parties(n);
    switch (kind) {
        case Kind::bob1:
            return p.bob1;
        case Kind::charlie:
            return p.charlie;
        case Kind::mid_bob:
            if (index < 2 || index - 2 >= p.mid_bobs.size()) {
                throw std::invalid_argument(str() + " does not exist for N = " + std::to_string(n));
            }
            return {p.mid_bobs[index - 2]};
    }
    throw std::logic_error("unhandled party");
}

std::vector<PartyId> non_alice_parties(size_t n) {
    std::vector<PartyId> out{PartyId{PartyId::Kind::bob1, 1}};
    for (size_t k = 2; k + 5 <= n; k++) {
        out.push_back(PartyId{PartyId::Kind::mid_bob, k});
    }
    out.push_back(PartyId{PartyId::Kind::charlie, 0});
    return out;
}

namespace {

// Post-lock views of a party for all 16 Alice outcomes; wires shift down by Alice's four.
std::vector<std::optional<DensityMatrix>> party_views(
    const ProtocolConfig &config, const StateVector &channel, const SecretState &secret, const PartyId &party) {
    std::vector<size_t> keep = party.joint_wires(config.n);
    for (auto &w : keep) {
        w -= 4;
    }
    std::vector<std::optional<DensityMatrix>> views;
    for (const auto &branch : lock(prepare_joint_state(secret, channel), config.variant)) {
        if (branch.zero_probability) {
            views.emplace_back();
        } else {
            views.emplace_back(reduced_density_matrix(branch.post_state, keep));
        }
    }
    return views;
}

}  // namespace

std::optional<DensityMatrix> party_view(
    const ProtocolConfig &config,
    const StateVector &channel,
    const SecretState &secret,
    const PartyId &party,
    size_t alice_outcome) {
    if (alice_outcome >= 16) {
        throw std::invalid_argument("Alice outcome must be below 16");
    }
    return party_views(config, channel, secret, party)[alice_outcome];
}

SecurityReport security_scan(const ProtocolConfig &config, const PartyId &party, size_t pairs, uint64_t seed) {
    party.joint_wires(config.n);
    SecurityReport report;
    report.party = party;
    report.config = config;
    report.pairs = pairs;
    report.seed = seed;
    const StateVector channel = config.channel();
    SecretSampler sampler(seed);
    for (size_t p = 0; p < pairs; p++) {
        SecretState a = sampler.next();
        SecretState b = sampler.next();
        auto va = party_views(config, channel, a, party);
        auto vb = party_views(config, channel, b, party);
        for (size_t k = 0; k < 16; k++) {
            if (va[k] && vb[k]) {
                double d = trace_distance(*va[k], *vb[k]);
                report.per_branch_max[k] = std::max(report.per_branch_max[k], d);
            }
        }
    }
    report.global_max = *std::max_element(report.per_branch_max.begin(), report.per_branch_max.end());
    return report;
}

std::vector<ChannelSource> sweep_sources(size_t n) {
    if (n == 5 || n == 6) {
        return {ChannelSource::reference, ChannelSource::circuit_form, ChannelSource::product_form};
    }
    return {ChannelSource::circuit_form, ChannelSource::product_form};
}

std::vector<LockingVariant> sweep_variants(size_t n) {
    std::vector<LockingVariant> out;
    std::vector<Bob1Style> styles = {Bob1Style::cnot};
    if (n != 5) {
        styles = {Bob1Style::cnot, Bob1Style::cnot_then_hadamards, Bob1Style::cz_then_hadamards};
    }
    for (auto h : {AliceHadamards::targets, AliceHadamards::controls}) {
        for (bool psi1 : {false, true}) {
            for (auto style : styles) {
                out.push_back(LockingVariant{psi1, h, style});
            }
        }
    }
    return out;
}

SweepEntry evaluate_configuration(const ProtocolConfig &config) {
    SweepEntry entry;
    entry.config = config;
    auto maps = all_transfer_maps(config);
    entry.completeness_error = completeness_error(maps);
    for (const auto &m : maps) {
        entry.proportional_rows += proportional_to_unitary(m.matrix);
    }
    CorrectionTable table = synthesize_escalating(config, maps);
    entry.corrected_rows = table.count(RowFlag::corrected);
    entry.zero_probability_rows = table.count(RowFlag::zero_probability);
    entry.level = table.level;
    entry.deterministic = entry.corrected_rows == maps.size();
    return entry;
}

namespace {

std::vector<std::vector<SwapPair>> extra_swap_sets(size_t n, size_t depth) {
    std::vector<SwapPair> pairs;
    for (size_t i = 1; i <= n; i++) {
        for (size_t j = i + 1; j <= n; j++) {
            pairs.emplace_back(i, j);
        }
    }
    std::vector<std::vector<SwapPair>> sets = {{}};
    for (size_t d = 0; d < depth; d++) {
        std::vector<std::vector<SwapPair>> next;
        for (const auto &s : sets) {
            for (const auto &p : pairs) {
                // A repeated swap undoes itself.
                if (!s.empty() && s.back() == p) {
                    continue;
                }
                auto t = s;
                t.push_back(p);
                next.push_back(std::move(t));
            }
        }
        sets = std::move(next);
    }
    return sets;
}

// Visits configurations depth by depth in preference order. The visitor returns
// true to stop. Returns the deepest level visited.
template <typename Visit>
size_t visit_configurations(size_t n, size_t max_extra_swaps, bool stop_at_depth, Visit &&visit) {
    if (n < 5) {
        throw std::invalid_argument("the protocol needs N >= 5, got " + std::to_string(n));
    }
    size_t depth = 0;
    for (; depth <= max_extra_swaps; depth++) {
        bool any = false;
        for (const auto &extra : extra_swap_sets(n, depth)) {
            for (auto source : sweep_sources(n)) {
                if (source == ChannelSource::reference && !extra.empty()) {
                    // Literal kets are already laid out; extra swaps would not be theirs.
                    continue;
                }
                for (const auto &variant : sweep_variants(n)) {
                    ProtocolConfig config{n, source, variant, extra};
                    int r = visit(config);
                    if (r == 2) {
                        return depth;
                    }
                    any = any || r == 1;
                }
            }
        }
        if (any && stop_at_depth) {
            return depth;
        }
    }
    return max_extra_swaps;
}

}  // namespace

SweepReport variant_sweep(size_t n, size_t max_extra_swaps) {
    SweepReport report;
    report.n = n;
    report.transcripts = size_t{1} << transcript_bits(n);
    report.searched_depth = visit_configurations(n, max_extra_swaps, true, [&](const ProtocolConfig &config) {
        SweepEntry entry = evaluate_configuration(config);
        if (entry.deterministic) {
            if (!report.accepted) {
                report.accepted = config;
            }
            if (config.extra_swaps.empty()) {
                report.standard_schedule_deterministic = true;
            }
        }
        bool det = entry.deterministic;
        report.entries.push_back(std::move(entry));
        return det ? 1 : 0;
    });
    return report;
}

std::optional<ProtocolConfig> accepted_configuration(size_t n, size_t max_extra_swaps) {
    std::optional<ProtocolConfig> found;
    visit_configurations(n, max_extra_swaps, true, [&](const ProtocolConfig &config) {
        auto maps = all_transfer_maps(config);
        for (const auto &m : maps) {
            if (!proportional_to_unitary(m.matrix)) {
                return 0;
            }
        }
        if (synthesize_escalating(config, maps).count(RowFlag::corrected) != maps.size()) {
            return 0;
        }
        found = config;
        return 2;
    });
    return found;
}

}  // namespace qis
