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

#include "qis/synthesis.h"

#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace qis {

namespace {

constexpr double kProportionalTol = 1e-9;

StateVector basis_secret(size_t k) {
    StateVector s = StateVector::zeros(2);
    s[k] = 1;
    return s;
}

}  // namespace

double TransferMap::probability(const SecretState &secret) const {
    StateVector s = secret.state();
    Eigen::Map<const Eigen::Vector4cd> v(s.amplitudes().data());
    return (matrix * v).squaredNorm();
}

TransferMap branch_transfer_map(const ProtocolConfig &config, const ClassicalTranscript &transcript) {
    transcript.validate(config.n);
    StateVector channel = config.channel();
    TransferMap map{Eigen::Matrix4cd::Zero(), transcript};
    for (size_t k = 0; k < 4; k++) {
        StateVector joint = tensor_product(basis_secret(k), channel);
        PathResult path = follow_path(config, joint, transcript);
        double amplitude = std::sqrt(path.probability);
        for (size_t r = 0; r < 4; r++) {
            map.matrix(Eigen::Index(r), Eigen::Index(k)) = amplitude * path.charlie[r];
        }
    }
    return map;
}

std::vector<TransferMap> all_transfer_maps(const ProtocolConfig &config) {
    return all_transfer_maps(config, config.channel());
}

std::vector<TransferMap> all_transfer_maps(const ProtocolConfig &config, const StateVector &channel) {
    if (channel.num_qubits() != config.n) {
        throw std::invalid_argument("channel width does not match N");
    }
    const size_t count = size_t{1} << transcript_bits(config.n);
    std::vector<TransferMap> maps(count);
    for (size_t t = 0; t < count; t++) {
        maps[t].matrix.setZero();
        maps[t].transcript = ClassicalTranscript::from_index(config.n, t);
    }
    for (size_t k = 0; k < 4; k++) {
        StateVector final_state = deferred_measurement_state(config, tensor_product(basis_secret(k), channel));
        for (size_t t = 0; t < count; t++) {
            for (size_t r = 0; r < 4; r++) {
                maps[t].matrix(Eigen::Index(r), Eigen::Index(k)) = final_state[t * 4 + r];
            }
        }
    }
    return maps;
}

double completeness_error(const std::vector<TransferMap> &maps) {
    Eigen::Matrix4cd total = Eigen::Matrix4cd::Zero();
    for (const auto &m : maps) {
        total += m.matrix.adjoint() * m.matrix;
    }
    return (total - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
}

bool proportional_to_unitary(const Eigen::Matrix4cd &m, double tol) {
    Eigen::Matrix4cd gram = m.adjoint() * m;
    complex_t c = gram.trace() / 4.0;
    if (c.real() <= kZeroProbability) {
        return false;
    }
    return (gram - c * Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() <= tol;
}

std::string_view dictionary_level_str(DictionaryLevel level) {
    switch (level) {
        case DictionaryLevel::pauli_frame:
            return "pauli_frame";
        case DictionaryLevel::extended:
            return "extended";
        case DictionaryLevel::full_clifford:
            return "full_clifford";
    }
    throw std::logic_error("unhandled dictionary level");
}

DictionaryLevel parse_dictionary_level(std::string_view text) {
    for (auto l : {DictionaryLevel::pauli_frame, DictionaryLevel::extended, DictionaryLevel::full_clifford}) {
        if (dictionary_level_str(l) == text) {
            return l;
        }
    }
    throw std::invalid_argument("unknown dictionary level '" + std::string(text) + "'");
}

size_t PhaseKeyHash::operator()(const PhaseKey &key) const {
    size_t h = 1469598103934665603ull;
    for (auto v : key) {
        h ^= std::hash<int64_t>{}(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

PhaseKey phase_key(const Eigen::Matrix4cd &u) {
    // Rotate so the first non-negligible entry (row-major) is real and positive.
    complex_t phase = 1;
    for (int k = 0; k < 16; k++) {
        complex_t v = u(k / 4, k % 4);
        if (std::abs(v) > 1e-6) {
            phase = std::conj(v) / std::abs(v);
            break;
        }
    }
    PhaseKey key;
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            complex_t v = u(r, c) * phase;
            key[size_t(8 * r + 2 * c)] = std::llround(v.real() * 1e8);
            key[size_t(8 * r + 2 * c + 1)] = std::llround(v.imag() * 1e8);
        }
    }
    return key;
}

std::optional<size_t> GateDictionary::find(const Eigen::Matrix4cd &u) const {
    auto it = index.find(phase_key(u));
    if (it == index.end()) {
        return std::nullopt;
    }
    if (!unitaries_match_up_to_phase(matrices[it->second], u)) {
        return std::nullopt;
    }
    return it->second;
}

namespace {

bool add_entry(GateDictionary &dict, GateSequence seq) {
    Eigen::Matrix4cd m = seq.matrix();
    auto [it, inserted] = dict.index.emplace(phase_key(m), dict.entries.size());
    if (inserted) {
        dict.entries.push_back(std::move(seq));
        dict.matrices.push_back(m);
    }
    return inserted;
}

std::vector<TwoQubitOp> concat(std::initializer_list<const std::vector<TwoQubitOp> *> parts) {
    std::vector<TwoQubitOp> out;
    for (const auto *p : parts) {
        for (auto op : *p) {
            if (op != TwoQubitOp::I) {
                out.push_back(op);
            }
        }
    }
    if (out.empty()) {
        out.push_back(TwoQubitOp::I);
    }
    return out;
}

std::vector<std::vector<TwoQubitOp>> all_pauli_layers() {
    std::vector<std::vector<TwoQubitOp>> layers;
    for (auto p1 : {Pauli::I, Pauli::X, Pauli::Z, Pauli::XZ}) {
        for (auto p2 : {Pauli::I, Pauli::X, Pauli::Z, Pauli::XZ}) {
            layers.push_back(pauli_layer(p1, p2));
        }
    }
    return layers;
}

const std::vector<std::vector<TwoQubitOp>> kEntanglers = {
    {},
    {TwoQubitOp::CNOT12},
    {TwoQubitOp::CNOT21},
    {TwoQubitOp::SWAP},
    {TwoQubitOp::CNOT21, TwoQubitOp::SWAP},
    {TwoQubitOp::CNOT12, TwoQubitOp::SWAP},
};

const std::vector<std::vector<TwoQubitOp>> kHadamardLayers = {
    {},
    {TwoQubitOp::H1},
    {TwoQubitOp::H2},
    {TwoQubitOp::H1, TwoQubitOp::H2},
};

void fill_pauli_frame(GateDictionary &dict) {
    auto layers = all_pauli_layers();
    for (const auto &ent : kEntanglers) {
        for (const auto &left : layers) {
            for (const auto &right : layers) {
                add_entry(dict, GateSequence{concat({&left, &ent, &right})});
            }
        }
    }
}

void fill_extended(GateDictionary &dict) {
    auto layers = all_pauli_layers();
    for (const auto &ent : kEntanglers) {
        for (const auto &h_left : kHadamardLayers) {
            for (const auto &h_right : kHadamardLayers) {
                for (const auto &left : layers) {
                    for (const auto &right : layers) {
                        add_entry(dict, GateSequence{concat({&left, &h_left, &ent, &h_right, &right})});
                    }
                }
            }
        }
    }
}

// Breadth-first closure under {H1, H2, S1, S2, CNOT12}; yields the 11520 two-qubit
// Cliffords modulo phase.
void fill_full_clifford(GateDictionary &dict) {
    const TwoQubitOp generators[] = {TwoQubitOp::H1, TwoQubitOp::H2, TwoQubitOp::S1, TwoQubitOp::S2,
                                     TwoQubitOp::CNOT12};
    std::unordered_set<PhaseKey, PhaseKeyHash> visited;
    std::deque<std::pair<GateSequence, Eigen::Matrix4cd>> queue;
    GateSequence start = GateSequence::identity();
    visited.insert(phase_key(start.matrix()));
    queue.emplace_back(start, start.matrix());
    while (!queue.empty()) {
        auto [seq, m] = std::move(queue.front());
        queue.pop_front();
        for (auto g : generators) {
            Eigen::Matrix4cd next = two_qubit_op_matrix(g) * m;
            PhaseKey key = phase_key(next);
            if (!visited.insert(key).second) {
                continue;
            }
            GateSequence next_seq;
            next_seq.ops.push_back(g);
            if (seq.ops != std::vector<TwoQubitOp>{TwoQubitOp::I}) {
                next_seq.ops.insert(next_seq.ops.end(), seq.ops.begin(), seq.ops.end());
            }
            add_entry(dict, next_seq);
            queue.emplace_back(std::move(next_seq), next);
        }
    }
}

GateDictionary make_dictionary(DictionaryLevel level) {
    GateDictionary dict;
    dict.level = level;
    fill_pauli_frame(dict);
    if (level == DictionaryLevel::extended || level == DictionaryLevel::full_clifford) {
        fill_extended(dict);
    }
    if (level == DictionaryLevel::full_clifford) {
        fill_full_clifford(dict);
    }
    return dict;
}

}  // namespace

const GateDictionary &build_dictionary(DictionaryLevel level) {
    static const GateDictionary pauli = make_dictionary(DictionaryLevel::pauli_frame);
    static const GateDictionary extended = make_dictionary(DictionaryLevel::extended);
    static const GateDictionary full = make_dictionary(DictionaryLevel::full_clifford);
    switch (level) {
        case DictionaryLevel::pauli_frame:
            return pauli;
        case DictionaryLevel::extended:
            return extended;
        case DictionaryLevel::full_clifford:
            return full;
    }
    throw std::logic_error("unhandled dictionary level");
}

std::string_view row_flag_str(RowFlag flag) {
    switch (flag) {
        case RowFlag::corrected:
            return "corrected";
        case RowFlag::zero_probability:
            return "zero-probability";
        case RowFlag::unsynthesizable:
            return "unsynthesizable";
    }
    throw std::logic_error("unhandled row flag");
}

RowFlag parse_row_flag(std::string_view text) {
    for (auto f : {RowFlag::corrected, RowFlag::zero_probability, RowFlag::unsynthesizable}) {
        if (row_flag_str(f) == text) {
            return f;
        }
    }
    throw std::invalid_argument("unknown row flag '" + std::string(text) + "'");
}

size_t CorrectionTable::count(RowFlag flag) const {
    size_t k = 0;
    for (const auto &row : rows) {
        k += row.flag == flag;
    }
    return k;
}

bool CorrectionTable::deterministic() const {
    return count(RowFlag::unsynthesizable) == 0;
}

CorrectionLookup CorrectionTable::lookup() const {
    CorrectionLookup out;
    out.reserve(rows.size());
    for (const auto &row : rows) {
        out.push_back(row.sequence);
    }
    return out;
}

double correction_residual(const Eigen::Matrix4cd &u, const Eigen::Matrix4cd &m, complex_t *scale) {
    Eigen::Matrix4cd product = u * m;
    complex_t c = product.trace() / 4.0;
    if (scale != nullptr) {
        *scale = c;
    }
    return (product - c * Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff();
}

CorrectionTable synthesize_table(const ProtocolConfig &config, const GateDictionary &dict) {
    return synthesize_table(config, all_transfer_maps(config), dict);
}

CorrectionTable synthesize_table(
    const ProtocolConfig &config, const std::vector<TransferMap> &maps, const GateDictionary &dict) {
    CorrectionTable table;
    table.config = config;
    table.level = dict.level;
    table.rows.reserve(maps.size());
    for (const auto &map : maps) {
        CorrectionRow row;
        row.transcript = map.transcript;
        row.sequence = GateSequence::identity();
        row.mean_probability = (map.matrix.adjoint() * map.matrix).trace().real() / 4.0;
        if (row.mean_probability < kZeroProbability) {
            row.flag = RowFlag::zero_probability;
        } else {
            // U M = c I forces U to be proportional to M^dagger, so that is the only
            // phase class worth looking up.
            Eigen::Matrix4cd candidate = map.matrix.adjoint() / std::sqrt(row.mean_probability);
            auto hit = dict.find(candidate);
            if (hit && correction_residual(dict.matrices[*hit], map.matrix) <= kProportionalTol) {
                row.flag = RowFlag::corrected;
                row.sequence = dict.entries[*hit];
            } else {
                row.flag = RowFlag::unsynthesizable;
            }
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

CorrectionTable synthesize_escalating(const ProtocolConfig &config) {
    return synthesize_escalating(config, all_transfer_maps(config));
}

CorrectionTable synthesize_escalating(const ProtocolConfig &config, const std::vector<TransferMap> &maps) {
    CorrectionTable table;
    for (auto level : {DictionaryLevel::pauli_frame, DictionaryLevel::extended, DictionaryLevel::full_clifford}) {
        table = synthesize_table(config, maps, build_dictionary(level));
        if (table.deterministic()) {
            break;
        }
    }
    return table;
}

std::vector<double> outcome_distribution(const ProtocolConfig &config, const SecretState &secret) {
    CorrectionLookup identity(size_t{1} << transcript_bits(config.n), GateSequence::identity());
    auto leaves = enumerate_protocol_branches(config, secret, DecoderKind::table, &identity);
    std::vector<double> out(leaves.size());
    for (const auto &leaf : leaves) {
        out[leaf.transcript.index()] = leaf.probability;
    }
    return out;
}

}  // namespace qis
