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

#include <gtest/gtest.h>

#include "qis/analysis.h"
#include "qis/synthesis.h"

namespace qis {
namespace {

ProtocolConfig accepted_n5() {
    return ProtocolConfig{5, ChannelSource::reference, {true, AliceHadamards::controls, Bob1Style::cnot}, {}};
}

ProtocolConfig accepted_n6() {
    return ProtocolConfig{6, ChannelSource::circuit_form, {true, AliceHadamards::controls, Bob1Style::cnot}, {}};
}

StateVector apply_map(const Eigen::Matrix4cd &m, const SecretState &s) {
    Eigen::Vector4cd v(s.alpha, s.gamma, s.mu, s.beta);
    Eigen::Vector4cd out = m * v;
    return StateVector(2, {out(0), out(1), out(2), out(3)});
}

TEST(TransferMaps, ReadOffAgreesWithPathSimulation) {
    for (const auto &config : {accepted_n5(), accepted_n6(), ProtocolConfig{5, ChannelSource::product_form, {}, {}}}) {
        auto maps = all_transfer_maps(config);
        ASSERT_EQ(maps.size(), size_t{1} << transcript_bits(config.n));
        for (size_t k = 0; k < maps.size(); k += 7) {
            TransferMap direct = branch_transfer_map(config, maps[k].transcript);
            EXPECT_LE((direct.matrix - maps[k].matrix).cwiseAbs().maxCoeff(), 1e-12) << config.str();
        }
    }
}

TEST(TransferMaps, LinearInTheSecret) {
    ProtocolConfig config = accepted_n6();
    auto maps = all_transfer_maps(config);
    for (const auto &secret : sample_secrets(77, 5)) {
        StateVector joint = prepare_joint_state(secret, config.channel());
        for (size_t k = 0; k < maps.size(); k += 5) {
            PathResult path = follow_path(config, joint, maps[k].transcript);
            EXPECT_NEAR(maps[k].probability(secret), path.probability, 1e-12);
            if (path.probability > 1e-12) {
                StateVector predicted = apply_map(maps[k].matrix, secret);
                predicted.normalize();
                EXPECT_TRUE(equal_up_to_global_phase(predicted, path.charlie, 1e-10));
            }
        }
    }
}

TEST(TransferMaps, CompleteForEverySweptConfiguration) {
    for (size_t n : {5, 6}) {
        for (auto source : sweep_sources(n)) {
            for (const auto &variant : sweep_variants(n)) {
                ProtocolConfig config{n, source, variant, {}};
                EXPECT_LE(completeness_error(all_transfer_maps(config)), 1e-9) << config.str();
            }
        }
    }
}

TEST(TransferMaps, UniformOutcomesOnAcceptedConfigurations) {
    for (const auto &config : {accepted_n5(), accepted_n6()}) {
        const double expected = 1.0 / double(size_t{1} << transcript_bits(config.n));
        for (const auto &secret : sample_secrets(2026, 10)) {
            for (double p : outcome_distribution(config, secret)) {
                ASSERT_NEAR(p, expected, 1e-10) << config.str();
            }
        }
    }
}

TEST(TransferMaps, ProportionalityTest) {
    Eigen::Matrix4cd u = GateSequence{{TwoQubitOp::H1, TwoQubitOp::CNOT12, TwoQubitOp::S2}}.matrix();
    EXPECT_TRUE(proportional_to_unitary(0.3 * u));
    Eigen::Matrix4cd skew = u;
    skew(0, 0) *= 1.5;
    EXPECT_FALSE(proportional_to_unitary(skew));
    EXPECT_FALSE(proportional_to_unitary(Eigen::Matrix4cd::Zero()));
}

TEST(Dictionary, Sizes) {
    EXPECT_EQ(build_dictionary(DictionaryLevel::pauli_frame).entries.size(), 96u);
    EXPECT_EQ(build_dictionary(DictionaryLevel::extended).entries.size(), 640u);
    EXPECT_EQ(build_dictionary(DictionaryLevel::full_clifford).entries.size(), 11520u);
}

TEST(Dictionary, EntriesAreDistinctUnitaries) {
    for (auto level : {DictionaryLevel::pauli_frame, DictionaryLevel::extended, DictionaryLevel::full_clifford}) {
        const GateDictionary &d = build_dictionary(level);
        EXPECT_EQ(d.index.size(), d.entries.size());
        for (size_t i = 0; i < d.entries.size(); i++) {
            const Eigen::Matrix4cd &u = d.matrices[i];
            ASSERT_LE((u.adjoint() * u - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff(), 1e-12);
            ASSERT_LE((d.entries[i].matrix() - u).cwiseAbs().maxCoeff(), 1e-12);
        }
        EXPECT_TRUE(d.find(Eigen::Matrix4cd::Identity()).has_value()) << dictionary_level_str(level);
    }
}

TEST(Dictionary, ContainsDecoderShapes) {
    const GateDictionary &d = build_dictionary(DictionaryLevel::pauli_frame);
    for (const char *text : {"X1.CNOT21.SWAP.Z2", "X1.X2.CNOT21.SWAP.Z1", "X1.CNOT21.Z1", "X2.CNOT21.Z2"}) {
        GateSequence seq = GateSequence::parse(text);
        auto hit = d.find(seq.matrix());
        ASSERT_TRUE(hit.has_value()) << text;
        EXPECT_TRUE(unitaries_match_up_to_phase(d.matrices[*hit], seq.matrix()));
    }
}

TEST(Dictionary, LookupIgnoresGlobalPhase) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> angle(0, 2 * M_PI);
    const GateDictionary &d = build_dictionary(DictionaryLevel::extended);
    for (size_t i = 0; i < d.entries.size(); i += 13) {
        complex_t phase = std::polar(1.0, angle(rng));
        auto hit = d.find(phase * d.matrices[i]);
        ASSERT_TRUE(hit.has_value());
        EXPECT_EQ(*hit, i);
        EXPECT_EQ(phase_key(phase * d.matrices[i]), phase_key(d.matrices[i]));
    }
}

TEST(Dictionary, LevelsNest) {
    const GateDictionary &small = build_dictionary(DictionaryLevel::pauli_frame);
    const GateDictionary &mid = build_dictionary(DictionaryLevel::extended);
    const GateDictionary &full = build_dictionary(DictionaryLevel::full_clifford);
    for (const auto &u : small.matrices) {
        EXPECT_TRUE(mid.find(u).has_value());
    }
    for (const auto &u : mid.matrices) {
        EXPECT_TRUE(full.find(u).has_value());
    }
}

TEST(Synthesis, AcceptedFiveQubitTable) {
    CorrectionTable table = synthesize_escalating(accepted_n5());
    EXPECT_EQ(table.level, DictionaryLevel::pauli_frame);
    EXPECT_EQ(table.count(RowFlag::corrected), 32u);
    EXPECT_TRUE(table.deterministic());
}

TEST(Synthesis, AcceptedSixQubitTable) {
    CorrectionTable table = synthesize_escalating(accepted_n6());
    EXPECT_EQ(table.level, DictionaryLevel::extended);
    EXPECT_EQ(table.count(RowFlag::corrected), 64u);
}

TEST(Synthesis, CorrectedRowsHaveSmallResidual) {
    for (const auto &config : {accepted_n5(), accepted_n6()}) {
        auto maps = all_transfer_maps(config);
        CorrectionTable table = synthesize_escalating(config, maps);
        for (size_t k = 0; k < maps.size(); k++) {
            ASSERT_EQ(table.rows[k].flag, RowFlag::corrected);
            complex_t scale;
            double r = correction_residual(table.rows[k].sequence.matrix(), maps[k].matrix, &scale);
            EXPECT_LE(r, 1e-9);
            EXPECT_NEAR(std::norm(scale), table.rows[k].mean_probability, 1e-12);
        }
    }
}

TEST(Synthesis, TableRecoversRandomSecrets) {
    for (const auto &config : {accepted_n5(), accepted_n6()}) {
        CorrectionTable table = synthesize_escalating(config);
        CorrectionLookup lookup = table.lookup();
        for (const auto &secret : sample_secrets(5, 20)) {
            for (const auto &leaf : enumerate_protocol_branches(config, secret, DecoderKind::table, &lookup)) {
                ASSERT_TRUE(leaf.fidelity.has_value());
                EXPECT_GE(*leaf.fidelity, 1 - 1e-9) << leaf.transcript.str();
            }
        }
    }
}

// A row is corrected exactly when its map is proportional to a unitary (the
// swept configurations only involve Clifford gates).
TEST(Synthesis, FlagAgreesWithProportionality) {
    for (auto source : sweep_sources(5)) {
        for (const auto &variant : sweep_variants(5)) {
            ProtocolConfig config{5, source, variant, {}};
            auto maps = all_transfer_maps(config);
            CorrectionTable table = synthesize_table(config, maps, build_dictionary(DictionaryLevel::full_clifford));
            for (size_t k = 0; k < maps.size(); k++) {
                if (table.rows[k].flag == RowFlag::zero_probability) {
                    continue;
                }
                EXPECT_EQ(table.rows[k].flag == RowFlag::corrected, proportional_to_unitary(maps[k].matrix))
                    << config.str() << " " << maps[k].transcript.str();
            }
        }
    }
}

TEST(Synthesis, SpecLiteralLockIsNeverCorrectable) {
    for (auto source : sweep_sources(5)) {
        ProtocolConfig config{5, source, {}, {}};
        CorrectionTable table = synthesize_escalating(config);
        EXPECT_EQ(table.count(RowFlag::corrected), 0u) << config.str();
        EXPECT_FALSE(table.deterministic());
    }
}

TEST(Synthesis, NamesRoundTrip) {
    for (auto l : {DictionaryLevel::pauli_frame, DictionaryLevel::extended, DictionaryLevel::full_clifford}) {
        EXPECT_EQ(parse_dictionary_level(dictionary_level_str(l)), l);
    }
    for (auto f : {RowFlag::corrected, RowFlag::zero_probability, RowFlag::unsynthesizable}) {
        EXPECT_EQ(parse_row_flag(row_flag_str(f)), f);
    }
    EXPECT_EQ(row_flag_str(RowFlag::zero_probability), "zero-probability");
}

}  // namespace
}  // namespace qis
