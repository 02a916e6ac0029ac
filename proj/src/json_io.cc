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

#include "qis/json_io.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qis {

namespace {

std::string format_double(double v) {
    if (!std::isfinite(v)) {
        // JSON has no spelling for these.
        return "null";
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    std::string s = buf;
    if (s.find_first_of(".eE") == std::string::npos) {
        s += ".0";
    }
    return s;
}

void emit(const json &v, std::string &out, int depth) {
    const std::string pad(size_t(2 * (depth + 1)), ' ');
    const std::string close_pad(size_t(2 * depth), ' ');
    switch (v.type()) {
        case json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            // object_t is a std::map, so iteration is already key-sorted.
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) {
                    out += ",\n";
                }
                first = false;
                out += pad + json(it.key()).dump() + ": ";
                emit(it.value(), out, depth + 1);
            }
            out += "\n" + close_pad + "}";
            return;
        }
        case json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            // Short arrays of scalars stay on one line so amplitude pairs read naturally.
            bool flat = v.size() <= 4 && std::none_of(v.begin(), v.end(), [](const json &e) {
                return e.is_structured();
            });
            if (flat) {
                out += "[";
                for (size_t i = 0; i < v.size(); i++) {
                    if (i) {
                        out += ", ";
                    }
                    emit(v[i], out, depth + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (size_t i = 0; i < v.size(); i++) {
                if (i) {
                    out += ",\n";
                }
                out += pad;
                emit(v[i], out, depth + 1);
            }
            out += "\n" + close_pad + "]";
            return;
        }
        case json::value_t::number_float:
            out += format_double(v.get<double>());
            return;
        default:
            out += v.dump();
            return;
    }
}

json complex_json(complex_t z) {
    return json::array({z.real(), z.imag()});
}

complex_t complex_from_json(const json &j) {
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("complex numbers are [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

ClassicalTranscript transcript_at(const json &j) {
    return ClassicalTranscript::parse(j.get<std::string>());
}

}  // namespace

std::string dump_json(const json &value) {
    std::string out;
    emit(value, out, 0);
    out += "\n";
    return out;
}

void write_json_file(const std::filesystem::path &path, const json &value) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot write " + path.string());
    }
    f << dump_json(value);
    if (!f) {
        throw IoError("write failed for " + path.string());
    }
}

json read_json_file(const std::filesystem::path &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot read " + path.string());
    }
    std::stringstream buf;
    buf << f.rdbuf();
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error &e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

json to_json(const StateVector &state) {
    json amps = json::array();
    for (auto z : state.amplitudes()) {
        amps.push_back(complex_json(z));
    }
    return json{{"num_qubits", state.num_qubits()}, {"amplitudes", amps}};
}

StateVector state_from_json(const json &j) {
    size_t n = j.at("num_qubits").get<size_t>();
    std::vector<complex_t> amps;
    for (const auto &a : j.at("amplitudes")) {
        amps.push_back(complex_from_json(a));
    }
    return StateVector(n, std::move(amps));
}

json to_json(const std::vector<GateSpec> &circuit) {
    json gates = json::array();
    for (const auto &g : circuit) {
        gates.push_back(json{{"name", gate_name_str(g.name)}, {"targets", g.targets}});
    }
    return gates;
}

json to_json(const SwapSchedule &schedule) {
    json out = json::array();
    for (const auto &[i, j] : schedule.swaps) {
        out.push_back(json::array({i, j}));
    }
    return out;
}

json to_json(const LockingVariant &variant) {
    return json{
        {"h_on_psi1", variant.h_on_psi1},
        {"alice_h", alice_hadamards_str(variant.alice_h)},
        {"bob1_style", bob1_style_str(variant.bob1_style)}};
}

LockingVariant variant_from_json(const json &j) {
    LockingVariant v;
    v.h_on_psi1 = j.at("h_on_psi1").get<bool>();
    v.alice_h = parse_alice_hadamards(j.at("alice_h").get<std::string>());
    v.bob1_style = parse_bob1_style(j.at("bob1_style").get<std::string>());
    return v;
}

json to_json(const ProtocolConfig &config) {
    return json{
        {"n", config.n},
        {"source", channel_source_str(config.source)},
        {"variant", to_json(config.variant)},
        {"extra_swaps", to_json(SwapSchedule{config.extra_swaps})}};
}

ProtocolConfig config_from_json(const json &j) {
    ProtocolConfig c;
    c.n = j.at("n").get<size_t>();
    c.source = parse_channel_source(j.at("source").get<std::string>());
    c.variant = variant_from_json(j.at("variant"));
    if (j.contains("extra_swaps")) {
        for (const auto &p : j.at("extra_swaps")) {
            c.extra_swaps.emplace_back(p.at(0).get<size_t>(), p.at(1).get<size_t>());
        }
    }
    return c;
}

json to_json(const SecretState &secret) {
    return json{
        {"alpha", complex_json(secret.alpha)},
        {"mu", complex_json(secret.mu)},
        {"gamma", complex_json(secret.gamma)},
        {"beta", complex_json(secret.beta)}};
}

json to_json(const CorrectionTable &table) {
    json rows = json::array();
    for (const auto &row : table.rows) {
        rows.push_back(json{
            {"transcript", row.transcript.str()},
            {"sequence", row.sequence.tokens()},
            {"flag", row_flag_str(row.flag)},
            {"mean_probability", row.mean_probability}});
    }
    json out = to_json(table.config);
    out["rows"] = rows;
    out["dictionary"] = dictionary_level_str(table.level);
    out["fixture_version"] = kFixtureVersion;
    return out;
}

CorrectionTable table_from_json(const json &j) {
    CorrectionTable t;
    t.config = config_from_json(j);
    t.level = parse_dictionary_level(j.at("dictionary").get<std::string>());
    const size_t expected = size_t{1} << transcript_bits(t.config.n);
    for (const auto &r : j.at("rows")) {
        CorrectionRow row;
        row.transcript = transcript_at(r.at("transcript"));
        row.transcript.validate(t.config.n);
        row.sequence = GateSequence::from_tokens(r.at("sequence").get<std::vector<std::string>>());
        row.flag = parse_row_flag(r.at("flag").get<std::string>());
        row.mean_probability = r.value("mean_probability", 0.0);
        if (row.transcript.index() != t.rows.size()) {
            throw std::invalid_argument("table rows must be in transcript order");
        }
        t.rows.push_back(std::move(row));
    }
    if (t.rows.size() != expected) {
        throw std::invalid_argument(
            "table has " + std::to_string(t.rows.size()) + " rows, N = " + std::to_string(t.config.n) + " needs " +
            std::to_string(expected));
    }
    return t;
}

json to_json(const AuditReport &report) {
    json rows = json::array();
    for (const auto &r : report.rows) {
        rows.push_back(json{
            {"transcript", r.transcript.str()},
            {"closed_form", r.closed_form.tokens()},
            {"synthesized", r.synthesized.tokens()},
            {"flag", row_flag_str(r.flag)},
            {"match", r.match}});
    }
    json mismatched = json::array();
    for (const auto &t : report.mismatches()) {
        mismatched.push_back(t.str());
    }
    return json{
        {"decoder", decoder_kind_str(report.decoder)},
        {"convention", report.convention.str()},
        {"compared", report.compared},
        {"matches", report.matches},
        {"match_fraction", report.match_fraction()},
        {"mismatched", mismatched},
        {"rows", rows},
        {"worked_example",
         json{
             {"transcript", report.worked.example.transcript.str()},
             {"stated", report.worked.example.stated.tokens()},
             {"matches_table", report.worked.matches_table},
             {"matches_equation", report.worked.matches_equation},
             {"classification", report.worked.classification()}}}};
}

json to_json(const SecurityReport &report) {
    json per_branch = json::object();
    for (size_t k = 0; k < 16; k++) {
        std::string bits;
        for (int b = 3; b >= 0; b--) {
            bits.push_back((k >> b) & 1 ? '1' : '0');
        }
        per_branch[bits] = report.per_branch_max[k];
    }
    return json{
        {"party", report.party.str()},
        {"pairs", report.pairs},
        {"seed", report.seed},
        {"per_branch_max", per_branch},
        {"global_max", report.global_max}};
}

json to_json(const SweepReport &report) {
    json entries = json::array();
    for (const auto &e : report.entries) {
        json j = to_json(e.config);
        j["completeness_error"] = e.completeness_error;
        j["proportional_rows"] = e.proportional_rows;
        j["corrected_rows"] = e.corrected_rows;
        j["zero_probability_rows"] = e.zero_probability_rows;
        j["dictionary"] = dictionary_level_str(e.level);
        j["deterministic"] = e.deterministic;
        entries.push_back(std::move(j));
    }
    json out{
        {"n", report.n},
        {"transcripts", report.transcripts},
        {"entries", entries},
        {"standard_schedule_deterministic", report.standard_schedule_deterministic},
        {"searched_depth", report.searched_depth},
        {"fixture_version", kFixtureVersion}};
    out["accepted"] = report.accepted ? to_json(*report.accepted) : json(nullptr);
    return out;
}

namespace {

void diff_into(
    const json &e, const json &a, const std::string &path, double tol, std::vector<std::string> &out) {
    if (e.is_number() && a.is_number()) {
        double x = e.get<double>();
        double y = a.get<double>();
        if (!(std::abs(x - y) <= tol)) {
            out.push_back(path + ": " + e.dump() + " vs " + a.dump());
        }
        return;
    }
    if (e.type() != a.type()) {
        out.push_back(path + ": type " + e.type_name() + " vs " + a.type_name());
        return;
    }
    if (e.is_object()) {
        for (auto it = e.begin(); it != e.end(); ++it) {
            if (!a.contains(it.key())) {
                out.push_back(path + "/" + it.key() + ": missing");
            } else {
                diff_into(it.value(), a.at(it.key()), path + "/" + it.key(), tol, out);
            }
        }
        for (auto it = a.begin(); it != a.end(); ++it) {
            if (!e.contains(it.key())) {
                out.push_back(path + "/" + it.key() + ": unexpected");
            }
        }
        return;
    }
    if (e.is_array()) {
        if (e.size() != a.size()) {
            out.push_back(path + ": length " + std::to_string(e.size()) + " vs " + std::to_string(a.size()));
            return;
        }
        for (size_t i = 0; i < e.size(); i++) {
            diff_into(e[i], a[i], path + "/" + std::to_string(i), tol, out);
        }
        return;
    }
    if (e != a) {
        out.push_back(path + ": " + e.dump() + " vs " + a.dump());
    }
}

}  // namespace

std::vector<std::string> json_differences(const json &expected, const json &actual, double tol) {
    std::vector<std::string> out;
    diff_into(expected, actual, "", tol, out);
    return out;
}

}  // namespace qis
