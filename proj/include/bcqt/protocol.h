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

#ifndef BCQT_PROTOCOL_H
#define BCQT_PROTOCOL_H

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bcqt/channel.h"
#include "bcqt/qcore.h"

namespace bcqt {

/// Payloads: alpha0|00> + alpha1|11> on (A0, A1) and sum beta_jk |jk> on (B0, B1).
struct InputStates {
    std::array<Amplitude, 2> alpha{1.0, 0.0};
    std::array<Amplitude, 4> beta{1.0, 0.0, 0.0, 0.0};

    /// Checks both payloads are normalized within `tolerance`.
    static InputStates make(std::array<Amplitude, 2> alpha, std::array<Amplitude, 4> beta,
                            double tolerance = 1e-12);

    bool is_real(double tolerance = 0.0) const;
    /// alpha0|00> + alpha1|11> on the two named qubits.
    StateVector alpha_state(const std::string &q0, const std::string &q1) const;
    /// beta00|00> + ... + beta11|11> on the two named qubits.
    StateVector beta_state(const std::string &q0, const std::string &q1) const;
};

/// Z outcomes of (a0, b2, b3), each 0 or 1.
using ZBits = std::array<int, 3>;
/// X outcomes of (A0, A1, B0, B1); 0 is "+", 1 is "-".
using XSigns = std::array<int, 4>;

struct OutcomeRecord {
    ZBits z{};
    XSigns x{};
    int c = 0;  ///< 0 is "+", 1 is "-"

    /// Canonical order: z as a 3-bit integer, then x with + = 0, then c.
    int index() const;
    static OutcomeRecord from_index(int index);
    /// e.g. "0,00,++,+-,-"
    std::string str() const;

    bool operator==(const OutcomeRecord &) const = default;
};

inline constexpr int kBranchCount = 256;

/// Single-qubit Paulis on (b0, b1, a1, a2).
struct PauliString {
    std::array<Gate, 4> ops{Gate::I, Gate::I, Gate::I, Gate::I};

    /// e.g. "I⊗I⊗X⊗X"
    std::string str() const;
    bool operator==(const PauliString &) const = default;
};

inline const std::array<std::string, 4> &receiver_qubits() {
    static const std::array<std::string, 4> q{"b0", "b1", "a1", "a2"};
    return q;
}

StateVector apply_pauli(const StateVector &state, const PauliString &p);

/// a0 = 1 -> X on b0 and b1; b2 = 1 -> X on a1; b3 = 1 -> X on a2.
PauliString x_correction(const ZBits &z);
/// A0 -> Z on b0, A1 -> Z on b1, B0 -> Z on a1, B1 -> Z on a2, for each "-".
PauliString z_correction(const XSigns &x);
/// All valid corrections for the controller's result, first listed first.
/// A "+" result needs none; a "-" result needs Z on a receiver for every
/// code bit, where the a0 bit admits either b1 (first) or b0.
std::vector<PauliString> final_correction_options(ChannelCode code, int c_sign);
PauliString final_correction(ChannelCode code, int c_sign, int alternative = 0);

/// Deterministic outcome sampling from a 64-bit seed (mt19937_64, 53-bit
/// uniforms). Same seed, same branch sequence.
class BranchSampler {
   public:
    explicit BranchSampler(std::uint64_t seed) : engine_(seed) {}
    double uniform();
    /// Index drawn with probability proportional to `weights`.
    int choose(std::span<const double> weights);

   private:
    std::mt19937_64 engine_;
};

template <typename Outcome>
struct Measured {
    StateVector state;  ///< unnormalized, measured qubits still present
    Outcome outcome;
    double probability;  ///< conditional on the input state
};

/// Channel (8 qubits) ⊗ alpha payload (A0 A1) ⊗ beta payload (B0 B1).
StateVector compose_system(const StateVector &channel, const InputStates &inputs);

/// CNOT(A0 -> a0), CNOT(B0 -> b2), CNOT(B1 -> b3).
StateVector step2_encode(const StateVector &state);

Measured<ZBits> step3_measure_z(const StateVector &state, const ZBits &forced);
Measured<ZBits> step3_measure_z(const StateVector &state, BranchSampler &sampler);
StateVector step4_x_corrections(const StateVector &state, const ZBits &z);

Measured<XSigns> step5_measure_x(const StateVector &state, const XSigns &forced);
Measured<XSigns> step5_measure_x(const StateVector &state, BranchSampler &sampler);
StateVector step6_z_corrections(const StateVector &state, const XSigns &x);

Measured<int> step7_measure_c(const StateVector &state, int forced);
Measured<int> step7_measure_c(const StateVector &state, BranchSampler &sampler);
StateVector step8_final_corrections(const StateVector &state, int c_sign, ChannelCode code,
                                    int alternative = 0);

/// Removes every measured qubit, leaving (b0, b1, a1, a2).
StateVector discard_measured(const StateVector &state, const OutcomeRecord &record);

struct ProtocolOptions {
    bool apply_z_corrections = true;  ///< false only to exercise failure reporting
    int final_alternative = 0;        ///< which listed final correction to use
};

struct Sampled {
    std::uint64_t seed;
};
struct Forced {
    OutcomeRecord record;
};
using BranchPolicy = std::variant<Sampled, Forced>;

struct ReconstructionResult {
    OutcomeRecord branch;
    double probability = 0;
    StateVector final_state;  ///< over (b0, b1, a1, a2); squared norm = probability
    double fidelity_A = 0;    ///< beta payload at (a1, a2)
    double fidelity_B = 0;    ///< alpha payload at (b0, b1)
};

/// Fidelities of a (possibly unnormalized) receiver state against the payloads.
void score_reconstruction(ReconstructionResult &result, const InputStates &inputs);

ReconstructionResult run_protocol(const InputStates &inputs, ChannelCode code, const BranchPolicy &policy,
                                  const ProtocolOptions &options = {});

/// Receiver states of all 256 branches, in canonical order, for any starting
/// 12-qubit system (pure or an unnormalized ensemble component). Each entry
/// is the unnormalized corrected state over (b0, b1, a1, a2).
std::vector<StateVector> corrected_branch_states(const StateVector &system, ChannelCode code,
                                                 const ProtocolOptions &options = {});

std::vector<ReconstructionResult> enumerate_branches(const InputStates &inputs, ChannelCode code,
                                                     const ProtocolOptions &options = {});

/// The receivers' ideal joint state: beta on (a1, a2) ⊗ alpha on (b0, b1),
/// laid out over (b0, b1, a1, a2).
StateVector ideal_output(const InputStates &inputs);

}  // namespace bcqt

#endif
