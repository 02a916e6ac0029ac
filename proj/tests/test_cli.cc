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
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "qis/cli.h"
#include "qis/json_io.h"

namespace qis {
namespace {

namespace fs = std::filesystem;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run_cli(const std::vector<std::string> &args) {
    std::ostringstream out, err;
    int code = cli::main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string &name) {
    fs::path dir = fs::temp_directory_path() / ("qis_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

TEST(Json, DumpIsDeterministicAndSorted) {
    json j = {{"zeta", 1.0}, {"alpha", {1, 2, 3}}, {"mid", 0.1}};
    std::string a = dump_json(j);
    EXPECT_EQ(a, dump_json(json::parse(a)));
    EXPECT_LT(a.find("alpha"), a.find("mid"));
    EXPECT_LT(a.find("mid"), a.find("zeta"));
    EXPECT_NE(a.find("\"zeta\": 1.0"), std::string::npos) << a;
    EXPECT_NE(a.find("[1, 2, 3]"), std::string::npos) << a;
    EXPECT_NE(a.find("0.10000000000000001"), std::string::npos) << a;
}

TEST(Json, StateRoundTrip) {
    StateVector s(2, {complex_t(0.5, 0.5), 0, 0, complex_t(0, -std::sqrt(0.5))});
    EXPECT_EQ(state_from_json(json::parse(dump_json(to_json(s)))), s);
}

TEST(Json, TableRoundTrip) {
    ProtocolConfig config{6, ChannelSource::circuit_form, {true, AliceHadamards::controls, Bob1Style::cnot}, {}};
    CorrectionTable table = synthesize_escalating(config);
    json j = to_json(table);
    CorrectionTable back = table_from_json(json::parse(dump_json(j)));
    EXPECT_EQ(back.config, config);
    EXPECT_EQ(back.level, table.level);
    ASSERT_EQ(back.rows.size(), table.rows.size());
    for (size_t k = 0; k < back.rows.size(); k++) {
        EXPECT_EQ(back.rows[k].sequence, table.rows[k].sequence);
        EXPECT_EQ(back.rows[k].flag, table.rows[k].flag);
    }
    EXPECT_EQ(dump_json(to_json(back)), dump_json(j));

    json truncated = j;
    truncated["rows"].erase(truncated["rows"].begin());
    EXPECT_THROW(table_from_json(truncated), std::exception);
}

TEST(Json, DifferencesRespectTolerance) {
    json a = {{"x", 1.0}, {"y", {1.0, 2.0}}, {"s", "abc"}};
    json b = a;
    b["x"] = 1.0 + 1e-12;
    EXPECT_TRUE(json_differences(a, b).empty());
    b["y"][1] = 2.1;
    b["s"] = "abd";
    EXPECT_EQ(json_differences(a, b).size(), 2u);
    json c = a;
    c.erase("s");
    EXPECT_FALSE(json_differences(a, c).empty());
}

TEST(ParseConfig, Generate) {
    cli::RunConfig c = cli::parse_config({"generate", "--n", "3", "--source", "product"});
    EXPECT_EQ(c.command, cli::Command::generate);
    EXPECT_EQ(c.n, 3u);
    EXPECT_EQ(c.source, ChannelSource::product_form);
    EXPECT_TRUE(c.explicit_configuration());
}

TEST(ParseConfig, RunWithSecret) {
    cli::RunConfig c = cli::parse_config({"run", "--n", "5", "--secret", "0.6,0,0,0,0,0,0.8,0"});
    ASSERT_TRUE(c.secret.has_value());
    EXPECT_EQ(c.secret->alpha, complex_t(0.6));
    EXPECT_EQ(c.secret->mu, complex_t(0.0));
    EXPECT_EQ(c.secret->gamma, complex_t(0.0));
    EXPECT_EQ(c.secret->beta, complex_t(0.8));
    EXPECT_FALSE(c.secret_warning.has_value());
    EXPECT_FALSE(c.explicit_configuration());
}

TEST(ParseConfig, SecretIsRenormalizedWithWarning) {
    std::optional<std::string> warning;
    SecretState s = cli::parse_secret_csv("1,0,0,0,0,0,1,0", &warning);
    EXPECT_NEAR(s.alpha.real(), M_SQRT1_2, 1e-15);
    EXPECT_TRUE(warning.has_value());
    EXPECT_THROW(cli::parse_secret_csv("1,0,0"), cli::UsageError);
    EXPECT_THROW(cli::parse_secret_csv("0,0,0,0,0,0,0,0"), cli::UsageError);
}

TEST(ParseConfig, SwapList) {
    EXPECT_EQ(cli::parse_swap_list("2-5,3-4"), (std::vector<SwapPair>{{2, 5}, {3, 4}}));
    EXPECT_THROW(cli::parse_swap_list("2-"), cli::UsageError);
}

TEST(ParseConfig, Rejections) {
    EXPECT_THROW(cli::parse_config({"verify", "--n", "4"}), cli::UsageError);
    EXPECT_THROW(cli::parse_config({"generate", "--n", "17"}), cli::UsageError);
    EXPECT_THROW(cli::parse_config({"verify", "--n", "7", "--source", "reference"}), cli::UsageError);
    EXPECT_THROW(cli::parse_config({"verify", "--n", "6", "--decoder", "eq6"}), cli::UsageError);
    EXPECT_THROW(cli::parse_config({"verify", "--regen-fixtures"}), cli::UsageError);
    EXPECT_THROW(cli::parse_config({"teleport"}), cli::UsageError);
    EXPECT_THROW(cli::parse_config({"verify", "--bogus"}), cli::UsageError);
}

TEST(ParseConfig, EchoOmitsOutputLocations) {
    cli::RunConfig a = cli::parse_config({"sweep", "--n", "5"});
    cli::RunConfig b = cli::parse_config({"sweep", "--n", "5", "--out", "/tmp/x.json"});
    EXPECT_EQ(a.echo(), b.echo());
}

TEST(Commands, GenerateTwoQubitCircuit) {
    Outcome r = run_cli({"generate", "--n", "2", "--source", "circuit"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    json j = json::parse(r.out);
    StateVector s = state_from_json(j["state"]);
    const double want[] = {0.5, 0.5, 0.5, -0.5};
    for (size_t k = 0; k < 4; k++) {
        EXPECT_NEAR(s[k].real(), want[k], 1e-12);
        EXPECT_EQ(s[k].imag(), 0.0);
    }
    EXPECT_EQ(j["command"], "generate");
    EXPECT_EQ(j["fixture_version"], kFixtureVersion);
}

TEST(Commands, VerifyAcceptedConfiguration) {
    Outcome r = run_cli({"verify", "--n", "5", "--decoder", "table", "--secrets", "20"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    json j = json::parse(r.out);
    EXPECT_EQ(j["rows"].size(), 32u);
}

TEST(Commands, LiteralDecoderFailsVerification) {
    Outcome r = run_cli({"verify", "--n", "5", "--decoder", "eq6", "--secrets", "5"});
    EXPECT_EQ(r.code, cli::kExitCheckFailed);
}

TEST(Commands, UsageAndIoErrors) {
    EXPECT_EQ(run_cli({"verify", "--n", "4"}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({}).code, cli::kExitUsage);
    EXPECT_EQ(run_cli({"--help"}).code, cli::kExitOk);
    EXPECT_EQ(run_cli({"verify", "--n", "5", "--table", "/nonexistent/table.json"}).code, cli::kExitIo);
}

TEST(Commands, RunIsSeeded) {
    Outcome a = run_cli({"run", "--n", "6", "--seed", "9"});
    Outcome b = run_cli({"run", "--n", "6", "--seed", "9"});
    ASSERT_EQ(a.code, cli::kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NEAR(json::parse(a.out)["fidelity"].get<double>(), 1.0, 1e-9);
}

TEST(Commands, SynthesizedTableFeedsVerify) {
    fs::path dir = scratch_dir("table");
    fs::path table = dir / "table.json";
    ASSERT_EQ(run_cli({"synthesize", "--n", "6", "--out", table.string()}).code, cli::kExitOk);
    ASSERT_TRUE(fs::exists(table));
    Outcome r = run_cli({"verify", "--n", "6", "--table", table.string(), "--secrets", "5"});
    EXPECT_EQ(r.code, cli::kExitOk) << r.err;
    fs::remove_all(dir);
}

TEST(Commands, FixtureCompareAndRegen) {
    fs::path dir = scratch_dir("fixtures");
    std::vector<std::string> args = {"audit", "--n", "5", "--fixtures", dir.string()};
    std::vector<std::string> regen = args;
    regen.push_back("--regen-fixtures");
    ASSERT_EQ(run_cli(regen).code, cli::kExitOk);
    fs::path fixture = dir / "audit_n5.json";
    ASSERT_TRUE(fs::exists(fixture));
    EXPECT_EQ(run_cli(args).code, cli::kExitOk);

    json j = read_json_file(fixture);
    j["fixture_version"] = 99;
    write_json_file(fixture, j);
    Outcome r = run_cli(args);
    EXPECT_EQ(r.code, cli::kExitCheckFailed);
    EXPECT_NE(r.err.find("fixture_version"), std::string::npos) << r.err;
    fs::remove_all(dir);
}

}  // namespace
}  // namespace qis
