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

#ifndef QIS_JSON_IO_H
#define QIS_JSON_IO_H

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qis/analysis.h"
#include "qis/cluster.h"
#include "qis/protocol.h"
#include "qis/synthesis.h"

namespace qis {

using json = nlohmann::json;

constexpr int kFixtureVersion = 1;

/// Raised for unreadable or unwritable artifacts.
class IoError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Sorted keys, two-space indent, doubles as %.17g. Same value, same bytes.
std::string dump_json(const json &value);

void write_json_file(const std::filesystem::path &path, const json &value);
json read_json_file(const std::filesystem::path &path);

json to_json(const StateVector &state);
StateVector state_from_json(const json &j);

json to_json(const std::vector<GateSpec> &circuit);
json to_json(const SwapSchedule &schedule);
json to_json(const LockingVariant &variant);
LockingVariant variant_from_json(const json &j);
json to_json(const ProtocolConfig &config);
ProtocolConfig config_from_json(const json &j);
json to_json(const SecretState &secret);

json to_json(const CorrectionTable &table);
CorrectionTable table_from_json(const json &j);

json to_json(const AuditReport &report);
json to_json(const SecurityReport &report);
json to_json(const SweepReport &report);

/// Differences between `expected` and `actual`: numbers within `tol`, everything else exact.
/// Each entry is "path: expected vs actual"; empty means equal.
std::vector<std::string> json_differences(const json &expected, const json &actual, double tol = 1e-9);

}  // namespace qis

#endif
