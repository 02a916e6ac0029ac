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

#include "qis/cli.h"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

namespace qis::cli {

namespace {

constexpr double kFidelityTol = 1e-9;
constexpr size_t kMaxProtocolN = 12;

const std::pair<const char *, Command> kCommands[] = {
    {"generate", Command::generate},
    {"run", Command::run},
    {"synthesize", Command::synthesize},
    {"audit", Command::audit},
    {"verify", Command::verify},
    {"security", Command::security},
    {"sweep", Command::sweep},
};

template <typename T, typename Parse>
std::optional<T> sweepable(const std::string &flag, const std::string &text, Parse parse) {
    if (text.empty() || text == "sweep") {
        return std::nullopt;
    }
    try {
        return parse(text);
    } catch (const std::invalid_argument &e) {
        throw UsageError(flag + ": " + e.what());
    }
}

}  // namespace

std::string_view command_str(Command c) {
    for (const auto &[name, cmd] : kCommands) {
        if (cmd == c) {
            return name;
        }
    }
    throw std::logic_error("unhandled command");
}

bool RunConfig::explicit_configuration() const {
    return source || h_on_psi1 || alice_h || bob1_style || extra_swaps_set;
}

json RunConfig::echo() const {
    json j{
        {"command", command_str(command)},
        {"n", n},
        {"source", source ? json(channel_source_str(*source)) : json("sweep")},
        {"variant_h_psi1", h_on_psi1 ? json(*h_on_psi1 ? "on" : "off") : json("sweep")},
        {"alice_h", alice_h ? json(alice_hadamards_str(*alice_h)) : json("sweep")},
        {"bob1_style", bob1_style ? json(bob1_style_str(*bob1_style)) : json("sweep")},
        {"extra_swaps", to_json(SwapSchedule{extra_swaps})},
        {"decoder", decoder_kind_str(decoder)},
        {"secrets", secrets},
        {"pairs", pairs},
        {"seed", seed},
    };
    j["table"] = table_path ? json(table_path->generic_string()) : json(nullptr);
    j["secret"] = secret ? to_json(*secret) : json(nullptr);
    j["party"] = party ? json(*party) : json(nullptr);
    return j;
}

SecretState parse_secret_csv(const std::string &text, std::optional<std::string> *warning) {
    std::vector<double> v;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument("trailing characters");
            }
        } catch (const std::exception &) {
            throw UsageError("--secret: '" + item + "' is not a number");
        }
    }
    if (v.size() != 8) {
        throw UsageError("--secret needs 8 comma-separated reals, got " + std::to_string(v.size()));
    }
    double norm = 0;
    for (double x : v) {
        norm += x * x;
    }
    norm = std::sqrt(norm);
    if (norm == 0 || !std::isfinite(norm)) {
        throw UsageError("--secret must have a finite nonzero norm");
    }
    if (warning != nullptr && std::abs(norm - 1) > 1e-6) {
        *warning = "secret renormalized (norm was " + std::to_string(norm) + ")";
    }
    auto c = [&](size_t k) { return complex_t(v[2 * k] / norm, v[2 * k + 1] / norm); };
    return SecretState{c(0), c(1), c(2), c(3)};
}

std::vector<SwapPair> parse_swap_list(const std::string &text) {
    std::vector<SwapPair> out;
    if (text.empty() || text == "none") {
        return out;
    }
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        size_t dash = item.find('-');
        try {
            if (dash == std::string::npos) {
                throw std::invalid_argument("missing '-'");
            }
            size_t i = std::stoul(item.substr(0, dash));
            size_t j = std::stoul(item.substr(dash + 1));
            out.emplace_back(i, j);
        } catch (const std::exception &) {
            throw UsageError("--extra-swaps: '" + item + "' is not of the form i-j");
        }
    }
    return out;
}

RunConfig parse_config(const std::vector<std::string> &args) {
    CLI::App app{"qis_cluster"};
    std::string command, source, h_psi1, alice_h, bob1, decoder, table, secret, out, fixtures, extra, party;
    int64_t n = 5;
    int64_t secrets = 100, pairs = 50;
    uint64_t seed = 2026;
    bool regen = false;
    app.add_option("command", command)->required();
    app.add_option("--n", n);
    app.add_option("--source", source);
    app.add_option("--variant-h-psi1", h_psi1);
    app.add_option("--alice-h", alice_h);
    app.add_option("--bob1-style", bob1);
    app.add_option("--extra-swaps", extra);
    app.add_option("--decoder", decoder);
    app.add_option("--table", table);
    app.add_option("--secrets", secrets);
    app.add_option("--pairs", pairs);
    app.add_option("--seed", seed);
    app.add_option("--secret", secret);
    app.add_option("--party", party);
    app.add_option("--out", out);
    app.add_option("--fixtures", fixtures);
    app.add_flag("--regen-fixtures", regen);
    app.set_help_flag();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        throw UsageError(e.what());
    }

    RunConfig c;
    auto it = std::find_if(std::begin(kCommands), std::end(kCommands), [&](const auto &p) {
        return command == p.first;
    });
    if (it == std::end(kCommands)) {
        throw UsageError("unknown command '" + command + "'");
    }
    c.command = it->second;

    if (c.command == Command::generate) {
        if (n < int64_t(kMinChannelQubits) || n > int64_t(kMaxChannelQubits)) {
            throw UsageError("--n: generate needs 2 <= N <= 16, got " + std::to_string(n));
        }
    } else if (n < 5 || n > int64_t(kMaxProtocolN)) {
        throw UsageError("--n: protocol commands need 5 <= N <= 12, got " + std::to_string(n));
    }
    c.n = size_t(n);

    c.source = sweepable<ChannelSource>("--source", source, parse_channel_source);
    c.h_on_psi1 = sweepable<bool>("--variant-h-psi1", h_psi1, [](const std::string &t) {
        if (t == "on") {
            return true;
        }
        if (t == "off") {
            return false;
        }
        throw std::invalid_argument("expected on, off or sweep, got '" + t + "'");
    });
    c.alice_h = sweepable<AliceHadamards>("--alice-h", alice_h, parse_alice_hadamards);
    c.bob1_style = sweepable<Bob1Style>("--bob1-style", bob1, parse_bob1_style);
    if (!extra.empty()) {
        c.extra_swaps = parse_swap_list(extra);
        c.extra_swaps_set = true;
        for (const auto &[i, j] : c.extra_swaps) {
            if (i == j || i < 1 || j < 1 || i > c.n || j > c.n) {
                throw UsageError("--extra-swaps: pair " + std::to_string(i) + "-" + std::to_string(j) +
                                 " is not two distinct wires of 1.." + std::to_string(c.n));
            }
        }
    }
    if (c.source == ChannelSource::reference && c.n != 5 && c.n != 6) {
        throw UsageError("--source reference exists for N = 5 and N = 6 only");
    }

    if (!decoder.empty()) {
        try {
            c.decoder = parse_decoder_kind(decoder);
        } catch (const std::invalid_argument &e) {
            throw UsageError(std::string("--decoder: ") + e.what());
        }
    } else if (c.command == Command::audit) {
        c.decoder = c.n == 6 ? DecoderKind::eq8 : DecoderKind::eq6;
    }
    if (c.decoder == DecoderKind::eq6 && c.n != 5) {
        throw UsageError("--decoder eq6 decodes N = 5 only");
    }
    if (c.decoder == DecoderKind::eq8 && c.n != 6) {
        throw UsageError("--decoder eq8 decodes N = 6 only");
    }
    if (c.command == Command::audit && c.decoder == DecoderKind::table) {
        throw UsageError("--decoder: audit compares eq6 or eq8 against the table");
    }
    if (!table.empty()) {
        c.table_path = table;
    }
    if (secrets < 1) {
        throw UsageError("--secrets must be positive");
    }
    if (pairs < 1) {
        throw UsageError("--pairs must be positive");
    }
    c.secrets = size_t(secrets);
    c.pairs = size_t(pairs);
    c.seed = seed;
    if (!secret.empty()) {
        c.secret = parse_secret_csv(secret, &c.secret_warning);
    }
    if (!party.empty() && party != "all") {
        try {
            PartyId::parse(party).joint_wires(c.n);
        } catch (const std::invalid_argument &e) {
            throw UsageError(std::string("--party: ") + e.what());
        }
        c.party = party;
    }
    if (!out.empty()) {
        c.out = out;
    }
    if (!fixtures.empty()) {
        c.fixtures = fixtures;
    }
    c.regen_fixtures = regen;
    if (regen && !c.fixtures) {
        throw UsageError("--regen-fixtures needs --fixtures DIR");
    }
    return c;
}

std::string usage() {
    return "usage: qis_cluster <generate|run|synthesize|audit|verify|security|sweep> [options]\n"
           "  --n N                      channel qubits (generate: 2..16, others: 5..12)\n"
           "  --source S                 reference | circuit | product | sweep\n"
           "  --variant-h-psi1 V         on | off | sweep\n"
           "  --alice-h V                targets | controls | sweep\n"
           "  --bob1-style V             cnot | cnot-h | cz-h | sweep\n"
           "  --extra-swaps LIST         swaps after the standard schedule, e.g. 2-5,3-4\n"
           "  --decoder D                eq6 | eq8 | table\n"
           "  --table PATH               correction table JSON (default: synthesize)\n"
           "  --secrets K                random secrets for verify (default 100)\n"
           "  --pairs K                  secret pairs for security (default 50)\n"
           "  --seed S                   RNG seed (default 2026)\n"
           "  --secret CSV               8 reals: re,im of alpha, mu, gamma, beta\n"
           "  --party P                  security: bob1 | bobK | charlie | all\n"
           "  --out PATH                 write the artifact here instead of stdout\n"
           "  --fixtures DIR             compare the artifact with DIR/<command>_n<N>.json\n"
           "  --regen-fixtures           rewrite that fixture instead of comparing\n"
           "Without source/variant flags, protocol commands use the accepted configuration for N.\n";
}

ProtocolConfig resolve_configuration(const RunConfig &rc) {
    if (!rc.explicit_configuration()) {
        auto accepted = accepted_configuration(rc.n);
        if (!accepted) {
            throw std::runtime_error("no deterministic configuration found for N = " + std::to_string(rc.n));
        }
        return *accepted;
    }
    ProtocolConfig config;
    config.n = rc.n;
    config.source = rc.source.value_or(rc.n <= 6 ? ChannelSource::reference : ChannelSource::circuit_form);
    config.variant.h_on_psi1 = rc.h_on_psi1.value_or(false);
    config.variant.alice_h = rc.alice_h.value_or(AliceHadamards::targets);
    config.variant.bob1_style = rc.bob1_style.value_or(Bob1Style::cnot);
    config.extra_swaps = rc.extra_swaps;
    return config;
}

namespace {

struct Outcome {
    json artifact;
    bool passed = true;
};

double uniform01(std::mt19937_64 &engine) {
    return double(engine() >> 11) * 0x1.0p-53;
}

MeasurementBranch sample_branch(const std::vector<MeasurementBranch> &branches, std::mt19937_64 &engine) {
    double u = uniform01(engine);
    double acc = 0;
    for (const auto &b : branches) {
        acc += b.probability;
        if (u < acc && !b.zero_probability) {
            return b;
        }
    }
    // Rounding left u above the running sum; take the last live branch.
    for (auto it = branches.rbegin(); it != branches.rend(); ++it) {
        if (!it->zero_probability) {
            return *it;
        }
    }
    throw std::logic_error("measurement with no live branch");
}

CorrectionTable table_for(const RunConfig &rc, const ProtocolConfig &config) {
    if (rc.table_path) {
        CorrectionTable t = table_from_json(read_json_file(*rc.table_path));
        if (t.config.n != rc.n) {
            throw std::invalid_argument("table is for N = " + std::to_string(t.config.n));
        }
        return t;
    }
    return synthesize_escalating(config);
}

GateSequence correction(const RunConfig &rc, const ClassicalTranscript &t, const CorrectionLookup &lookup) {
    switch (rc.decoder) {
        case DecoderKind::eq6:
            return decode_n5(t);
        case DecoderKind::eq8:
            return decode_n6(t);
        case DecoderKind::table:
            return lookup[t.index()];
    }
    throw std::logic_error("unhandled decoder");
}

Outcome do_generate(const RunConfig &rc) {
    const size_t n = rc.n;
    ChannelSource source = rc.source.value_or(ChannelSource::circuit_form);
    json out;
    switch (source) {
        case ChannelSource::reference:
            if (n != 5 && n != 6) {
                throw std::invalid_argument("reference kets exist for N = 5 and N = 6 only");
            }
            out["state"] = to_json(reference_state(n == 5 ? ReferenceState::C5 : ReferenceState::C6_prime));
            break;
        case ChannelSource::circuit_form:
            out["state"] = to_json(build_circuit_form(n));
            break;
        case ChannelSource::product_form:
            out["state"] = to_json(build_product_form(n));
            break;
    }
    out["circuit"] = to_json(generation_circuit(n));
    if (n >= 5) {
        out["swap_schedule"] = to_json(swap_schedule(n));
        out["channel"] = to_json(channel_state(n, source, rc.extra_swaps));
    }
    return {out, true};
}

Outcome do_run(const RunConfig &rc) {
    ProtocolConfig config = resolve_configuration(rc);
    std::mt19937_64 engine(rc.seed);
    SecretState secret = rc.secret ? *rc.secret : SecretSampler(rc.seed).next();
    CorrectionLookup lookup;
    std::string level;
    if (rc.decoder == DecoderKind::table) {
        CorrectionTable t = table_for(rc, config);
        lookup = t.lookup();
        level = dictionary_level_str(t.level);
    }

    StateVector joint = prepare_joint_state(secret, config.channel());
    ClassicalTranscript t;
    double probability = 1;
    const auto alice = sample_branch(lock(joint, config.variant), engine);
    std::copy(alice.outcome.begin(), alice.outcome.end(), t.alice.begin());
    probability *= alice.probability;
    const auto bob = sample_branch(unlock_bob1(alice.post_state, config.n, config.variant), engine);
    t.bob1 = bob.outcome;
    probability *= bob.probability;
    StateVector state = bob.post_state;
    while (state.num_qubits() > 2) {
        auto branches = unlock_bob_mid(state, 1);
        const auto b = sample_branch(branches, engine);
        t.mid.push_back(b.outcome[0]);
        probability *= b.probability;
        state = b.post_state;
    }
    GateSequence seq = correction(rc, t, lookup);
    StateVector charlie = apply_correction(state, seq);
    double fidelity = pure_fidelity(charlie, secret.state());

    json out{
        {"configuration", to_json(config)},
        {"secret", to_json(secret)},
        {"transcript", t.str()},
        {"probability", probability},
        {"correction", seq.tokens()},
        {"charlie_output", to_json(charlie)},
        {"fidelity", fidelity},
        {"pass", fidelity >= 1 - kFidelityTol},
    };
    if (!level.empty()) {
        out["dictionary"] = level;
    }
    return {out, fidelity >= 1 - kFidelityTol};
}

Outcome do_synthesize(const RunConfig &rc) {
    ProtocolConfig config = resolve_configuration(rc);
    CorrectionTable t = synthesize_escalating(config);
    json out = to_json(t);
    out["corrected"] = t.count(RowFlag::corrected);
    out["unsynthesizable"] = t.count(RowFlag::unsynthesizable);
    out["zero_probability"] = t.count(RowFlag::zero_probability);
    out["deterministic"] = t.deterministic();
    return {out, t.deterministic()};
}

Outcome do_audit(const RunConfig &rc) {
    ProtocolConfig config = resolve_configuration(rc);
    CorrectionTable t = table_for(rc, config);
    json audits = json::array();
    json best;
    double best_fraction = -1;
    for (const auto &c : all_bit_conventions()) {
        AuditReport r = audit_decoder(t, rc.decoder, c);
        if (r.match_fraction() > best_fraction) {
            best_fraction = r.match_fraction();
            best = json{{"convention", c.str()}, {"match_fraction", r.match_fraction()}};
        }
        audits.push_back(to_json(r));
    }
    json out{
        {"table_configuration", to_json(t.config)},
        {"table_dictionary", dictionary_level_str(t.level)},
        {"audits", audits},
        {"best", best},
    };
    return {out, true};
}

Outcome do_verify(const RunConfig &rc) {
    ProtocolConfig config = resolve_configuration(rc);
    CorrectionLookup lookup;
    const CorrectionLookup *table = nullptr;
    if (rc.decoder == DecoderKind::table) {
        lookup = table_for(rc, config).lookup();
        table = &lookup;
    }
    std::vector<SecretState> secrets;
    if (rc.secret) {
        secrets.push_back(*rc.secret);
    } else {
        secrets = sample_secrets(rc.seed, rc.secrets);
    }
    const size_t count = size_t{1} << transcript_bits(config.n);
    std::vector<double> min_fid(count, 2.0), min_p(count, 2.0), max_p(count, -1.0);
    std::vector<bool> live(count, false);
    double worst_sum = 0;
    for (const auto &s : secrets) {
        double sum = 0;
        for (const auto &leaf : enumerate_protocol_branches(config, s, rc.decoder, table)) {
            size_t k = leaf.transcript.index();
            sum += leaf.probability;
            min_p[k] = std::min(min_p[k], leaf.probability);
            max_p[k] = std::max(max_p[k], leaf.probability);
            if (leaf.fidelity) {
                live[k] = true;
                min_fid[k] = std::min(min_fid[k], *leaf.fidelity);
            }
        }
        worst_sum = std::max(worst_sum, std::abs(sum - 1));
    }
    json rows = json::array();
    bool pass = worst_sum <= 1e-9;
    double worst = 1;
    size_t failing = 0;
    for (size_t k = 0; k < count; k++) {
        ClassicalTranscript t = ClassicalTranscript::from_index(config.n, k);
        json row{
            {"transcript", t.str()},
            {"min_probability", min_p[k]},
            {"max_probability", max_p[k]},
        };
        row["correction"] = correction(rc, t, lookup).tokens();
        if (live[k]) {
            row["min_fidelity"] = min_fid[k];
            worst = std::min(worst, min_fid[k]);
            if (min_fid[k] < 1 - kFidelityTol) {
                failing++;
                pass = false;
            }
        } else {
            row["min_fidelity"] = nullptr;
        }
        rows.push_back(std::move(row));
    }
    json out{
        {"configuration", to_json(config)},
        {"secrets_checked", secrets.size()},
        {"rows", rows},
        {"worst_fidelity", worst},
        {"failing_rows", failing},
        {"probability_sum_error", worst_sum},
        {"pass", pass},
    };
    return {out, pass};
}

Outcome do_security(const RunConfig &rc) {
    ProtocolConfig config = resolve_configuration(rc);
    std::vector<PartyId> parties;
    if (rc.party) {
        parties.push_back(PartyId::parse(*rc.party));
    } else {
        parties = non_alice_parties(config.n);
    }
    json reports = json::array();
    double global = 0;
    for (const auto &p : parties) {
        SecurityReport r = security_scan(config, p, rc.pairs, rc.seed);
        global = std::max(global, r.global_max);
        reports.push_back(to_json(r));
    }
    json out{{"configuration", to_json(config)}, {"reports", reports}, {"global_max", global}};
    return {out, true};
}

Outcome do_sweep(const RunConfig &rc) {
    SweepReport report = variant_sweep(rc.n);
    auto keep = [&](const ProtocolConfig &c) {
        return (!rc.source || *rc.source == c.source) && (!rc.h_on_psi1 || *rc.h_on_psi1 == c.variant.h_on_psi1) &&
               (!rc.alice_h || *rc.alice_h == c.variant.alice_h) &&
               (!rc.bob1_style || *rc.bob1_style == c.variant.bob1_style);
    };
    std::erase_if(report.entries, [&](const SweepEntry &e) { return !keep(e.config); });
    report.accepted.reset();
    report.standard_schedule_deterministic = false;
    for (const auto &e : report.entries) {
        if (e.deterministic) {
            if (!report.accepted) {
                report.accepted = e.config;
            }
            report.standard_schedule_deterministic |= e.config.extra_swaps.empty();
        }
    }
    return {to_json(report), report.accepted.has_value()};
}

std::filesystem::path fixture_path(const RunConfig &rc) {
    return *rc.fixtures / (std::string(command_str(rc.command)) + "_n" + std::to_string(rc.n) + ".json");
}

}  // namespace

int execute(const RunConfig &rc, std::ostream &out, std::ostream &err) {
    if (rc.secret_warning) {
        err << "warning: " << *rc.secret_warning << "\n";
    }
    Outcome o;
    switch (rc.command) {
        case Command::generate:
            o = do_generate(rc);
            break;
        case Command::run:
            o = do_run(rc);
            break;
        case Command::synthesize:
            o = do_synthesize(rc);
            break;
        case Command::audit:
            o = do_audit(rc);
            break;
        case Command::verify:
            o = do_verify(rc);
            break;
        case Command::security:
            o = do_security(rc);
            break;
        case Command::sweep:
            o = do_sweep(rc);
            break;
    }
    o.artifact["command"] = command_str(rc.command);
    o.artifact["run_config"] = rc.echo();
    o.artifact["fixture_version"] = kFixtureVersion;

    if (rc.out) {
        write_json_file(*rc.out, o.artifact);
    } else {
        out << dump_json(o.artifact);
    }

    int status = o.passed ? kExitOk : kExitCheckFailed;
    if (!o.passed) {
        err << command_str(rc.command) << ": check failed\n";
    }
    if (rc.fixtures) {
        auto path = fixture_path(rc);
        if (rc.regen_fixtures) {
            std::filesystem::create_directories(*rc.fixtures);
            write_json_file(path, o.artifact);
            err << "wrote " << path.string() << "\n";
        } else {
            auto diffs = json_differences(read_json_file(path), o.artifact);
            if (!diffs.empty()) {
                err << "fixture mismatch against " << path.string() << " (" << diffs.size() << " differences)\n";
                for (size_t i = 0; i < diffs.size() && i < 10; i++) {
                    err << "  " << diffs[i] << "\n";
                }
                status = kExitCheckFailed;
            }
        }
    }
    return status;
}

int main_entry(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    if (args.empty() || std::find(args.begin(), args.end(), "--help") != args.end() ||
        std::find(args.begin(), args.end(), "-h") != args.end()) {
        (args.empty() ? err : out) << usage();
        return args.empty() ? kExitUsage : kExitOk;
    }
    RunConfig rc;
    try {
        rc = parse_config(args);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n" << usage();
        return kExitUsage;
    }
    try {
        return execute(rc, out, err);
    } catch (const IoError &e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::filesystem::filesystem_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
}

}  // namespace qis::cli
