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

#ifndef BCQT_CHANNEL_H
#define BCQT_CHANNEL_H

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "bcqt/qcore.h"

namespace bcqt {

/// Controller's 3-bit choice of which of (a0, b2, b3) feed qubit c.
class ChannelCode {
   public:
    constexpr ChannelCode() = default;
    constexpr ChannelCode(bool a0, bool b2, bool b3) : bits_{a0, b2, b3} {}

    /// "000".."111", bits in the order a0, b2, b3.
    static ChannelCode parse(std::string_view text);
    /// Index 0..7 with a0 as the most significant bit.
    static ChannelCode from_index(int index);
    static std::array<ChannelCode, 8> all();

    constexpr bool a0() const { return bits_[0]; }
    constexpr bool b2() const { return bits_[1]; }
    constexpr bool b3() const { return bits_[2]; }
    constexpr int index() const { return (bits_[0] << 2) | (bits_[1] << 1) | int(bits_[2]); }
    constexpr int popcount() const { return int(bits_[0]) + int(bits_[1]) + int(bits_[2]); }
    std::string str() const;

    constexpr bool operator==(const ChannelCode &) const = default;

   private:
    std::array<bool, 3> bits_{};
};

/// One gate of the preparation circuit.
struct CircuitOp {
    Gate gate;  ///< H, or X for a CNOT
    std::string target;
    std::string control;  ///< empty for single-qubit gates

    bool is_cnot() const { return !control.empty(); }
};

struct GateCount {
    int hadamard = 0;
    int cnot = 0;
};

/// Hadamards on b0, a1, a2; CNOT b0->b1; CNOTs b0->a0, a1->b2, a2->b3.
std::vector<CircuitOp> base_circuit();
/// CNOTs onto c, in the order a0, b2, b3, for each set bit of the code.
std::vector<CircuitOp> encoding_circuit(ChannelCode code);

StateVector run_circuit(const StateVector &state, const std::vector<CircuitOp> &ops);
GateCount count_gates(const std::vector<CircuitOp> &ops);

/// Base channel on the 8-qubit register (a0, b0, b1, a1, a2, c, b2, b3).
StateVector prepare_base(const Register &reg);
StateVector apply_controller_encoding(const StateVector &state, ChannelCode code);
StateVector build_channel(ChannelCode code);

/// Reference ket list for each code, kets over a0 b0 b1 a1 a2 c b2 b3.
using ChannelTable = std::array<std::array<std::string, 8>, 8>;
const ChannelTable &reference_channel_table();
const std::array<std::string, 8> &channel_table(ChannelCode code);

}  // namespace bcqt

#endif
