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

#include "bcqt/protocol.h"

#include <cmath>
#include <future>
#include <stdexcept>

#include "bcqt/errors.h"

namespace bcqt {

namespace {

// Forced outcomes below this conditional probability are rejected.
constexpr double kZeroProbability = 1e-14;

const std::array<std::string, 3> kZQubits{"a0", "b2", "b3"};
const std::array<std::string, 4> kXQubits{"A0", "A1", "B0", "B1"};

template <std::size_t N>
Projection project_joint(const StateVector &state, const std::array<std::string, N> &qubits, Basis basis,
                         const std::array<int, N> &outcomes) {
    StateVector s = state;
    for (std::size_t i = 0; i < N; ++i) s = project(s, qubits[i], basis, outcomes[i]).state;
    const double in = state.norm2();
    const double p = in > 0 ? s.norm2() / in : 0.0;
    return {std::move(s), p};
}

template <std::size_t N>
std::array<int, N> unpack(int value) {
    std::array<int, N> bits{};
    for (std::size_t i = 0; i < N; ++i) bits[i] = (value >> (N - 1 - i)) & 1;
    return bits;
}

template <std::size_t N>
int pack(const std::array<int, N> &bits) {
    int v = 0;
    for (int b : bits) v = (v << 1) | (b & 1);
    return v;
}

template <std::size_t N>
Measured<std::array<int, N>> forced_joint(const StateVector &state, const std::array<std::string, N> &qubits,
                                          Basis basis, const std::array<int, N> &forced, const char *what) {
    for (int b : forced) {
        if (b != 0 && b != 1) throw std::invalid_argument(std::string(what) + ": outcomes must be 0 or 1");
    }
    auto p = project_joint(state, qubits, basis, forced);
    if (p.probability <= kZeroProbability) {
        throw ZeroProbabilityBranch(std::string(what) + ": forced outcome has zero probability");
    }
    return {std::move(p.state), forced, p.probability};
}

template <std::size_t N>
Measured<std::array<int, N>> sampled_joint(const StateVector &state, const std::array<std::string, N> &qubits,
                                           Basis basis, BranchSampler &sampler) {
    constexpr int kOutcomes = 1 << N;
    std::vector<Projection> options;
    std::vector<double> weights;
    options.reserve(kOutcomes);
    for (int v = 0; v < kOutcomes; ++v) {
        options.push_back(project_joint(state, qubits, basis, unpack<N>(v)));
        weights.push_back(options.back().probability);
    }
    const int pick = sampler.choose(weights);
    return {std::move(options[pick].state), unpack<N>(pick), options[pick].probability};
}

char sign_char(int s) { return s ? '-' : '+'; }

}  // namespace

InputStates InputStates::make(std::array<Amplitude, 2> alpha, std::array<Amplitude, 4> beta, double tolerance) {
    double na = 0, nb = 0;
    for (auto a : alpha) na += std::norm(a);
    for (auto b : beta) nb += std::norm(b);
    if (std::abs(na - 1) > tolerance) {
        throw std::invalid_argument("alpha payload is not normalized (|alpha|^2 = " + std::to_string(na) + ")");
    }
    if (std::abs(nb - 1) > tolerance) {
        throw std::invalid_argument("beta payload is not normalized (|beta|^2 = " + std::to_string(nb) + ")");
    }
    return InputStates{alpha, beta};
}

bool InputStates::is_real(double tolerance) const {
    for (auto a : alpha) {
        if (std::abs(a.imag()) > tolerance) return false;
    }
    for (auto b : beta) {
        if (std::abs(b.imag()) > tolerance) return false;
    }
    return true;
}

StateVector InputStates::alpha_state(const std::string &q0, const std::string &q1) const {
    return StateVector(Register({q0, q1}), {alpha[0], 0.0, 0.0, alpha[1]});
}

StateVector InputStates::beta_state(const std::string &q0, const std::string &q1) const {
    return StateVector(Register({q0, q1}), {beta[0], beta[1], beta[2], beta[3]});
}

int OutcomeRecord::index() const { return pack(z) * 32 + pack(x) * 2 + (c & 1); }

OutcomeRecord OutcomeRecord::from_index(int index) {
    if (index < 0 || index >= kBranchCount) throw std::invalid_argument("branch index out of range");
    OutcomeRecord r;
    r.z = unpack<3>(index >> 5);
    r.x = unpack<4>((index >> 1) & 15);
    r.c = index & 1;
    return r;
}

std::string OutcomeRecord::str() const {
    std::string s;
    s += char('0' + z[0]);
    s += ',';
    s += char('0' + z[1]);
    s += char('0' + z[2]);
    s += ',';
    s += sign_char(x[0]);
    s += sign_char(x[1]);
    s += ',';
    s += sign_char(x[2]);
    s += sign_char(x[3]);
    s += ',';
    s += sign_char(c);
    return s;
}

std::string PauliString::str() const {
    std::string s;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        if (i) s += "⊗";
        switch (ops[i]) {
            case Gate::I: s += 'I'; break;
            case Gate::X: s += 'X'; break;
            case Gate::Z: s += 'Z'; break;
            case Gate::H: s += 'H'; break;
        }
    }
    return s;
}

StateVector apply_pauli(const StateVector &state, const PauliString &p) {
    StateVector s = state;
    for (std::size_t i = 0; i < p.ops.size(); ++i) {
        if (p.ops[i] != Gate::I) s = apply_single(s, receiver_qubits()[i], p.ops[i]);
    }
    return s;
}

PauliString x_correction(const ZBits &z) {
    PauliString p;
    if (z[0]) p.ops[0] = p.ops[1] = Gate::X;
    if (z[1]) p.ops[2] = Gate::X;
    if (z[2]) p.ops[3] = Gate::X;
    return p;
}

PauliString z_correction(const XSigns &x) {
    PauliString p;
    for (std::size_t i = 0; i < 4; ++i) {
        if (x[i]) p.ops[i] = Gate::Z;
    }
    return p;
}

std::vector<PauliString> final_correction_options(ChannelCode code, int c_sign) {
    PauliString p;
    if (!c_sign) return {p};
    if (code.b2()) p.ops[2] = Gate::Z;
    if (code.b3()) p.ops[3] = Gate::Z;
    if (!code.a0()) return {p};
    PauliString on_b1 = p, on_b0 = p;
    on_b1.ops[1] = Gate::Z;
    on_b0.ops[0] = Gate::Z;
    return {on_b1, on_b0};
}

PauliString final_correction(ChannelCode code, int c_sign, int alternative) {
    const auto options = final_correction_options(code, c_sign);
    if (alternative < 0 || alternative >= static_cast<int>(options.size())) {
        // Single-option rows have no alternative to pick.
        return options.front();
    }
    return options[static_cast<std::size_t>(alternative)];
}

double BranchSampler::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

int BranchSampler::choose(std::span<const double> weights) {
    double total = 0;
    for (double w : weights) total += w;
    if (!(total > 0)) throw std::invalid_argument("cannot sample from all-zero weights");
    const double u = uniform() * total;
    double acc = 0;
    int last = -1;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0) continue;
        acc += weights[i];
        last = static_cast<int>(i);
        if (u < acc) return last;
    }
    return last;
}

StateVector compose_system(const StateVector &channel, const InputStates &inputs) {
    if (!(channel.reg == Register::channel())) {
        throw std::invalid_argument("compose_system expects the 8-qubit channel register");
    }
    return tensor(tensor(channel, inputs.alpha_state("A0", "A1")), inputs.beta_state("B0", "B1"));
}

StateVector step2_encode(const StateVector &state) {
    StateVector s = apply_cnot(state, "A0", "a0");
    s = apply_cnot(s, "B0", "b2");
    return apply_cnot(s, "B1", "b3");
}

Measured<ZBits> step3_measure_z(const StateVector &state, const ZBits &forced) {
    return forced_joint(state, kZQubits, Basis::Z, forced, "Z measurement");
}

Measured<ZBits> step3_measure_z(const StateVector &state, BranchSampler &sampler) {
    return sampled_joint(state, kZQubits, Basis::Z, sampler);
}

StateVector step4_x_corrections(const StateVector &state, const ZBits &z) {
    return apply_pauli(state, x_correction(z));
}

Measured<XSigns> step5_measure_x(const StateVector &state, const XSigns &forced) {
    return forced_joint(state, kXQubits, Basis::X, forced, "X measurement");
}

Measured<XSigns> step5_measure_x(const StateVector &state, BranchSampler &sampler) {
    return sampled_joint(state, kXQubits, Basis::X, sampler);
}

StateVector step6_z_corrections(const StateVector &state, const XSigns &x) {
    return apply_pauli(state, z_correction(x));
}

Measured<int> step7_measure_c(const StateVector &state, int forced) {
    auto m = forced_joint(state, std::array<std::string, 1>{"c"}, Basis::X, std::array<int, 1>{forced},
                          "controller measurement");
    return {std::move(m.state), forced, m.probability};
}

Measured<int> step7_measure_c(const StateVector &state, BranchSampler &sampler) {
    auto m = sampled_joint(state, std::array<std::string, 1>{"c"}, Basis::X, sampler);
    return {std::move(m.state), m.outcome[0], m.probability};
}

StateVector step8_final_corrections(const StateVector &state, int c_sign, ChannelCode code, int alternative) {
    return apply_pauli(state, final_correction(code, c_sign, alternative));
}

StateVector discard_measured(const StateVector &state, const OutcomeRecord &record) {
    StateVector s = state;
    for (std::size_t i = 0; i < 3; ++i) s = discard(s, kZQubits[i], Basis::Z, record.z[i]);
    for (std::size_t i = 0; i < 4; ++i) s = discard(s, kXQubits[i], Basis::X, record.x[i]);
    return discard(s, "c", Basis::X, record.c);
}

void score_reconstruction(ReconstructionResult &result, const InputStates &inputs) {
    const double n2 = result.final_state.norm2();
    if (!(n2 > 0)) {
        result.fidelity_A = result.fidelity_B = 0;
        return;
    }
    const StateVector psi = result.final_state.scaled(1.0 / std::sqrt(n2));
    auto overlap = [&](const StateVector &target, const std::vector<std::string> &pair) {
        const ComplexMatrix rho = reduced_density(psi, pair);
        Eigen::Map<const Eigen::VectorXcd> t(target.amplitudes.data(), 4);
        return (t.adjoint() * rho * t)(0, 0).real();
    };
    result.fidelity_A = overlap(inputs.beta_state("a1", "a2"), {"a1", "a2"});
    result.fidelity_B = overlap(inputs.alpha_state("b0", "b1"), {"b0", "b1"});
}

ReconstructionResult run_protocol(const InputStates &inputs, ChannelCode code, const BranchPolicy &policy,
                                  const ProtocolOptions &options) {
    const StateVector system = compose_system(build_channel(code), inputs);
    StateVector s = step2_encode(system);

    OutcomeRecord record;
    if (const auto *forced = std::get_if<Forced>(&policy)) {
        auto z = step3_measure_z(s, forced->record.z);
        s = step4_x_corrections(z.state, z.outcome);
        auto x = step5_measure_x(s, forced->record.x);
        s = options.apply_z_corrections ? step6_z_corrections(x.state, x.outcome) : x.state;
        auto c = step7_measure_c(s, forced->record.c);
        s = step8_final_corrections(c.state, c.outcome, code, options.final_alternative);
        record = forced->record;
    } else {
        BranchSampler sampler(std::get<Sampled>(policy).seed);
        auto z = step3_measure_z(s, sampler);
        s = step4_x_corrections(z.state, z.outcome);
        auto x = step5_measure_x(s, sampler);
        s = options.apply_z_corrections ? step6_z_corrections(x.state, x.outcome) : x.state;
        auto c = step7_measure_c(s, sampler);
        s = step8_final_corrections(c.state, c.outcome, code, options.final_alternative);
        record = OutcomeRecord{z.outcome, x.outcome, c.outcome};
    }

    ReconstructionResult result;
    result.branch = record;
    result.final_state = discard_measured(s, record);
    result.probability = result.final_state.norm2() / system.norm2();
    score_reconstruction(result, inputs);
    return result;
}

std::vector<StateVector> corrected_branch_states(const StateVector &system, ChannelCode code,
                                                 const ProtocolOptions &options) {
    if (!(system.reg == Register::protocol())) {
        throw std::invalid_argument("branch enumeration expects the 12-qubit protocol register");
    }
    const StateVector encoded = step2_encode(system);
    std::vector<StateVector> out(kBranchCount);

    // Each Z branch owns a disjoint block of 32 output slots.
    auto z_subtree = [&](int zi) {
        const ZBits z = unpack<3>(zi);
        StateVector s = project_joint(encoded, kZQubits, Basis::Z, z).state;
        s = step4_x_corrections(s, z);
        for (std::size_t i = 0; i < 3; ++i) s = discard(s, kZQubits[i], Basis::Z, z[i]);
        for (int xi = 0; xi < 16; ++xi) {
            const XSigns x = unpack<4>(xi);
            StateVector t = project_joint(s, kXQubits, Basis::X, x).state;
            if (options.apply_z_corrections) t = step6_z_corrections(t, x);
            for (std::size_t i = 0; i < 4; ++i) t = discard(t, kXQubits[i], Basis::X, x[i]);
            for (int c = 0; c < 2; ++c) {
                StateVector u = project(t, "c", Basis::X, c).state;
                u = step8_final_corrections(u, c, code, options.final_alternative);
                out[static_cast<std::size_t>(zi * 32 + xi * 2 + c)] = discard(u, "c", Basis::X, c);
            }
        }
    };

    std::vector<std::future<void>> tasks;
    tasks.reserve(8);
    for (int zi = 0; zi < 8; ++zi) tasks.push_back(std::async(std::launch::async, z_subtree, zi));
    for (auto &t : tasks) t.get();
    return out;
}

std::vector<ReconstructionResult> enumerate_branches(const InputStates &inputs, ChannelCode code,
                                                     const ProtocolOptions &options) {
    const StateVector system = compose_system(build_channel(code), inputs);
    const double n2 = system.norm2();
    auto states = corrected_branch_states(system, code, options);

    std::vector<ReconstructionResult> results(kBranchCount);
    for (int i = 0; i < kBranchCount; ++i) {
        auto &r = results[static_cast<std::size_t>(i)];
        r.branch = OutcomeRecord::from_index(i);
        r.final_state = std::move(states[static_cast<std::size_t>(i)]);
        r.probability = r.final_state.norm2() / n2;
        score_reconstruction(r, inputs);
    }
    return results;
}

StateVector ideal_output(const InputStates &inputs) {
    return tensor(inputs.alpha_state("b0", "b1"), inputs.beta_state("a1", "a2"));
}

}  // namespace bcqt
