// Copyright 2026 The BCQT Authors
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

#include "bcqt/channel.h"

#include <stdexcept>

namespace bcqt {

ChannelCode ChannelCode::parse(std::string_view text) {
    if (text.size() != 3) throw std::invalid_argument("channel code must have 3 bits, got '" + std::string(text) + "'");
    std::array<bool, 3> b{};
    for (std::size_t i = 0; i < 3; ++i) {
        if (text[i] != '0' && text[i] != '1') {
            throw std::invalid_argument("channel code must be binary, got '" + std::string(text) + "'");
        }
        b[i] = text[i] == '1';
    }
    return ChannelCode(b[0], b[1], b[2]);
}

ChannelCode ChannelCode::from_index(int index) {
    if (index < 0 || index > 7) throw std::invalid_argument("channel code index out of range");
    return ChannelCode((index >> 2) & 1, (index >> 1) & 1, index & 1);
}

std::array<ChannelCode, 8> ChannelCode::all() {
    std::array<ChannelCode, 8> out;
    for (int i = 0; i < 8; ++i) out[i] = from_index(i);
    return out;
}

std::string ChannelCode::str() const {
    return {char('0' + bits_[0]), char('0' + bits_[1]), char('0' + bits_[2])};
}

std::vector<CircuitOp> base_circuit() {
    return {
        {Gate::H, "b0", ""},  {Gate::H, "a1", ""},  {Gate::H, "a2", ""},
        {Gate::X, "b1", "b0"}, {Gate::X, "a0", "b0"}, {Gate::X, "b2", "a1"},
        {Gate::X, "b3", "a2"},
    };
}

std::vector<CircuitOp> encoding_circuit(ChannelCode code) {
    std::vector<CircuitOp> ops;
    if (code.a0()) ops.push_back({Gate::X, "c", "a0"});
    if (code.b2()) ops.push_back({Gate::X, "c", "b2"});
    if (code.b3()) ops.push_back({Gate::X, "c", "b3"});
    return ops;
}

StateVector run_circuit(const StateVector &state, const std::vector<CircuitOp> &ops) {
    StateVector s = state;
    for (const auto &op : ops) {
        s = op.is_cnot() ? apply_cnot(s, op.control, op.target) : apply_single(s, op.target, op.gate);
    }
    return s;
}

GateCount count_gates(const std::vector<CircuitOp> &ops) {
    GateCount n;
    for (const auto &op : ops) {
        if (op.is_cnot()) {
            ++n.cnot;
        } else if (op.gate == Gate::H) {
            ++n.hadamard;
        }
    }
    return n;
}

StateVector prepare_base(const Register &reg) {
    if (!(reg == Register::channel())) {
        throw std::invalid_argument("channel preparation needs the register (a0,b0,b1,a1,a2,c,b2,b3)");
    }
    return run_circuit(basis_state(reg, "00000000"), base_circuit());
}

StateVector apply_controller_encoding(const StateVector &state, ChannelCode code) {
    return run_circuit(state, encoding_circuit(code));
}

StateVector build_channel(ChannelCode code) {
    return apply_controller_encoding(prepare_base(Register::channel()), code);
}

const ChannelTable &reference_channel_table() {
    static const ChannelTable table = {{
        {"00000000", "00001001", "00010010", "00011011", "11100000", "11101001", "11110010", "11111011"},
        {"00000000", "00001101", "00010010", "00011111", "11100000", "11101101", "11110010", "11111111"},
        {"00000000", "00001001", "00010110", "00011111", "11100000", "11101001", "11110110", "11111111"},
        {"00000000", "00001101", "00010110", "00011011", "11100000", "11101101", "11110110", "11111011"},
        {"00000000", "00001001", "00010010", "00011011", "11100100", "11101101", "11110110", "11111111"},
        {"00000000", "00001101", "00010010", "00011111", "11100100", "11101001", "11110110", "11111011"},
        {"00000000", "00001001", "00010110", "00011111", "11100100", "11101101", "11110010", "11111011"},
        {"00000000", "00001101", "00010110", "00011011", "11100100", "11101001", "11110010", "11111111"},
    }};
    return table;
}

const std::array<std::string, 8> &channel_table(ChannelCode code) {
    return reference_channel_table()[static_cast<std::size_t>(code.index())];
}

}  // namespace bcqt
