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

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "qis/analysis.h"

namespace qis {
namespace {

ProtocolConfig accepted_n5() {
    return ProtocolConfig{5, ChannelSource::reference, {true, AliceHadamards::controls, Bob1Style::cnot}, {}};
}

ProtocolConfig accepted_n6() {
    return ProtocolConfig{6, ChannelSource::circuit_form, {true, AliceHadamards::controls, Bob1Style::cnot}, {}};
}

TEST(Sampler, ReproducibleAndNormalized) {
    auto a = sample_secrets(2026, 20);
    auto b = sample_secrets(2026, 20);
    auto c = sample_secrets(2027, 20);
    ASSERT_EQ(a.size(), 20u);
    for (size_t i = 0; i < a.size(); i++) {
        EXPECT_EQ(a[i].state(), b[i].state());
        EXPECT_NE(a[i].state(), c[i].state());
        EXPECT_NEAR(a[i].state().norm_squared(), 1.0, 1e-12);
        EXPECT_NO_THROW(a[i].validate());
    }
}

TEST(Sampler, AmplitudesLookIsotropic) {
    // Haar-random 2-qubit states have E|alpha|^2 = 1/4.
    SecretSampler s(1);
    double sum = 0;
    const size_t count = 20000;
    for (size_t i = 0; i < count; i++) {
        sum += std::norm(s.next().alpha);
    }
    EXPECT_NEAR(sum / count, 0.25, 0.01);
}

TEST(Conventions, EightDistinctWithWireOrderFirst) {
    const auto &all = all_bit_conventions();
    ASSERT_EQ(all.size(), 8u);
    EXPECT_EQ(all.front(), BitConvention{});
    EXPECT_EQ(all.front().str(), "wire-order");
    std::set<std::string> names;
    for (const auto &c : all) {
        names.insert(c.str());
        EXPECT_EQ(BitConvention::parse(c.str()), c);
    }
    EXPECT_EQ(names.size(), 8u);
    EXPECT_EQ((BitConvention{true, false, true}.str()), "alice-reversed+charlie-swapped");
    EXPECT_THROW(BitConvention::parse("upside-down"), std::invalid_argument);
}

TEST(Conventions, ReinterpretIsAnInvolution) {
    for (const auto &c : all_bit_conventions()) {
        for (uint64_t k = 0; k < 64; k++) {
            auto t = ClassicalTranscript::from_index(6, k);
            EXPECT_EQ(reinterpret(reinterpret(t, c), c), t);
        }
    }
    auto t = ClassicalTranscript::parse("1100|01|");
    EXPECT_EQ(reinterpret(t, BitConvention{true, false, false}).str(), "0011|01|");
    EXPECT_EQ(reinterpret(t, BitConvention{false, true, false}).str(), "1100|10|");
}

TEST(Conventions, CharlieSwapConjugates) {
    GateSequence printed = GateSequence::parse("X1.CNOT21.Z2");
    Eigen::Matrix4cd swap = GateSequence::parse("SWAP").matrix();
    EXPECT_TRUE(unitaries_match_up_to_phase(physical_unitary(printed, BitConvention{}), printed.matrix()));
    EXPECT_TRUE(unitaries_match_up_to_phase(
        physical_unitary(printed, BitConvention{false, false, true}), swap * printed.matrix() * swap));
}

TEST(Audit, TableAgainstItself) {
    for (const auto &config : {accepted_n5(), accepted_n6()}) {
        AuditReport r = audit_table_against_itself(synthesize_escalating(config));
        EXPECT_EQ(r.matches, r.compared);
        EXPECT_EQ(r.compared, size_t{1} << transcript_bits(config.n));
        EXPECT_DOUBLE_EQ(r.match_fraction(), 1.0);
        EXPECT_TRUE(r.mismatches().empty());
    }
}

TEST(Audit, FiveQubitDecoderPinned) {
    CorrectionTable table = synthesize_escalating(accepted_n5());
    AuditReport plain = audit_decoder(table, DecoderKind::eq6, BitConvention{});
    EXPECT_EQ(plain.compared, 32u);
    EXPECT_EQ(plain.matches, 0u);
    AuditReport swapped = audit_decoder(table, DecoderKind::eq6, BitConvention{false, false, true});
    EXPECT_EQ(swapped.matches, 8u);
    EXPECT_EQ(plain.worked.example.transcript.str(), "1110|1|");
    EXPECT_EQ(plain.worked.example.stated.str(), "X1.CNOT21.SWAP.Z2");
    EXPECT_FALSE(plain.worked.matches_equation);
    EXPECT_EQ(plain.worked.classification(), "neither");
}

TEST(Audit, SixQubitDecoderPinned) {
    CorrectionTable table = synthesize_escalating(accepted_n6());
    for (const auto &c : all_bit_conventions()) {
        AuditReport r = audit_decoder(table, DecoderKind::eq8, c);
        EXPECT_EQ(r.compared, 64u);
        EXPECT_EQ(r.matches, 0u) << c.str();
        EXPECT_EQ(r.worked.classification(), "neither") << c.str();
    }
    EXPECT_EQ(worked_example(DecoderKind::eq8).transcript.str(), "0100|01|");
}

TEST(Audit, MismatchedDecoderRejected) {
    CorrectionTable table = synthesize_escalating(accepted_n5());
    EXPECT_THROW(audit_decoder(table, DecoderKind::eq8, BitConvention{}), std::invalid_argument);
    EXPECT_THROW(audit_decoder(table, DecoderKind::table, BitConvention{}), std::invalid_argument);
}

TEST(Parties, ParseAndWires) {
    EXPECT_EQ(PartyId::parse("bob1").joint_wires(6), (std::vector<size_t>{5, 6}));
    EXPECT_EQ(PartyId::parse("charlie").joint_wires(5), (std::vector<size_t>{6, 7}));
    EXPECT_EQ(PartyId::parse("bob2").joint_wires(8), (std::vector<size_t>{7}));
    EXPECT_EQ(PartyId::parse("bob3").str(), "bob3");
    EXPECT_THROW(PartyId::parse("alice"), std::invalid_argument);
    EXPECT_THROW(PartyId::parse("bob2").joint_wires(6), std::invalid_argument);
    EXPECT_EQ(non_alice_parties(5).size(), 2u);
    EXPECT_EQ(non_alice_parties(8).size(), 4u);
}

TEST(Security, SameSecretGivesIdenticalViews) {
    ProtocolConfig config = accepted_n5();
    StateVector channel = config.channel();
    SecretState s = sample_secrets(3, 1).front();
    for (const auto &party : non_alice_parties(5)) {
        for (size_t a = 0; a < 16; a++) {
            auto x = party_view(config, channel, s, party, a);
            auto y = party_view(config, channel, s, party, a);
            ASSERT_TRUE(x && y);
            EXPECT_EQ(trace_distance(*x, *y), 0.0);
            EXPECT_NEAR(x->trace(), 1.0, 1e-12);
        }
    }
}

// The single-party shares are not independent of the secret; these bounds are the
// computed values, frozen.
TEST(Security, PinnedBounds) {
    struct Case {
        ProtocolConfig config;
        const char *party;
        double bound;
    };
    const Case cases[] = {
        {accepted_n5(), "bob1", 0.800195},
        {accepted_n5(), "charlie", 0.962286},
        {accepted_n6(), "bob1", 0.863351},
        {accepted_n6(), "charlie", 0.871195},
    };
    for (const auto &c : cases) {
        SecurityReport r = security_scan(c.config, PartyId::parse(c.party), 50, 2026);
        EXPECT_NEAR(r.global_max, c.bound, 1e-6) << c.party;
        double worst = 0;
        for (double v : r.per_branch_max) {
            worst = std::max(worst, v);
        }
        EXPECT_EQ(worst, r.global_max);
    }
}

TEST(Sweep, AcceptedConfigurations) {
    EXPECT_EQ(accepted_configuration(5), accepted_n5());
    EXPECT_EQ(accepted_configuration(6), accepted_n6());
    auto seven = accepted_configuration(7);
    ASSERT_TRUE(seven.has_value());
    EXPECT_EQ(seven->extra_swaps, (std::vector<SwapPair>{{2, 5}}));
    EXPECT_EQ(seven->source, ChannelSource::circuit_form);
}

TEST(Sweep, ReportIsDeterministic) {
    SweepReport a = variant_sweep(6);
    SweepReport b = variant_sweep(6);
    ASSERT_EQ(a.entries.size(), b.entries.size());
    for (size_t i = 0; i < a.entries.size(); i++) {
        EXPECT_EQ(a.entries[i].config, b.entries[i].config);
        EXPECT_EQ(a.entries[i].corrected_rows, b.entries[i].corrected_rows);
    }
    EXPECT_TRUE(a.standard_schedule_deterministic);
    EXPECT_EQ(a.transcripts, 64u);
    EXPECT_EQ(a.accepted, accepted_n6());
}

TEST(Sweep, StandardScheduleFailsAtSeven) {
    SweepReport r = variant_sweep(7);
    EXPECT_FALSE(r.standard_schedule_deterministic);
    EXPECT_EQ(r.searched_depth, 1u);
    ASSERT_TRUE(r.accepted.has_value());
    for (const auto &e : r.entries) {
        EXPECT_LE(e.completeness_error, 1e-9);
        if (e.config.extra_swaps.empty()) {
            EXPECT_FALSE(e.deterministic) << e.config.str();
        }
    }
}

}  // namespace
}  // namespace qis
