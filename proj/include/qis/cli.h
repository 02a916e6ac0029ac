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

#ifndef QIS_CLI_H
#define QIS_CLI_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qis/json_io.h"

namespace qis::cli {

enum class Command { generate, run, synthesize, audit, verify, security, sweep };

std::string_view command_str(Command c);

enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitUsage = 2,
    kExitIo = 3,
};

class UsageError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    Command command = Command::verify;
    size_t n = 5;
    /// Unset fields mean "sweep": the command picks the accepted configuration,
    /// or `sweep` iterates over them.
    std::optional<ChannelSource> source;
    std::optional<bool> h_on_psi1;
    std::optional<AliceHadamards> alice_h;
    std::optional<Bob1Style> bob1_style;
    std::vector<SwapPair> extra_swaps;
    bool extra_swaps_set = false;

    DecoderKind decoder = DecoderKind::table;
    std::optional<std::filesystem::path> table_path;
    size_t secrets = 100;
    size_t pairs = 50;
    uint64_t seed = 2026;
    std::optional<SecretState> secret;
    /// Set when --secret needed more than 1e-6 of renormalization.
    std::optional<std::string> secret_warning;
    std::optional<std::string> party;

    std::optional<std::filesystem::path> out;
    std::optional<std::filesystem::path> fixtures;
    bool regen_fixtures = false;

    /// True if any of source / variant / extra swaps was given explicitly.
    bool explicit_configuration() const;
    /// Echo of every input that affects the artifact (output locations excluded).
    json echo() const;
};

/// Eight comma-separated reals: re/im of alpha, mu, gamma, beta. Normalizes.
SecretState parse_secret_csv(const std::string &text, std::optional<std::string> *warning = nullptr);

/// "2-5,3-4" -> {(2,5),(3,4)}.
std::vector<SwapPair> parse_swap_list(const std::string &text);

/// argv without the program name. Throws UsageError naming the offending flag.
RunConfig parse_config(const std::vector<std::string> &args);

/// Usage text for --help.
std::string usage();

/// The protocol configuration a command runs on: explicit flags, or the accepted
/// configuration for N.
ProtocolConfig resolve_configuration(const RunConfig &config);

/// Runs one command. The artifact goes to config.out or `out`; diagnostics to `err`.
int execute(const RunConfig &config, std::ostream &out, std::ostream &err);

/// Full entry point: parse, execute, map exceptions to exit codes.
int main_entry(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qis::cli

#endif
