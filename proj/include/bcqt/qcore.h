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

#ifndef BCQT_QCORE_H
#define BCQT_QCORE_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace bcqt {

using Amplitude = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Ordered set of named qubits. The first label is the most significant bit
/// of a basis-state index, so the ket |q0 q1 ... q{n-1}> written left to right
/// is the binary expansion of its index.
class Register {
   public:
    Register() = default;
    explicit Register(std::vector<std::string> labels);

    /// (a0, b0, b1, a1, a2, c, b2, b3, A0, A1, B0, B1)
    static Register protocol();
    /// (a0, b0, b1, a1, a2, c, b2, b3)
    static Register channel();

    std::size_t size() const { return labels_.size(); }
    std::size_t dimension() const { return std::size_t{1} << labels_.size(); }
    const std::vector<std::string> &labels() const { return labels_; }
    const std::string &label(std::size_t position) const { return labels_.at(position); }

    bool contains(std::string_view name) const;
    /// Position in the label order. Throws std::invalid_argument if absent.
    std::size_t position(std::string_view name) const;
    /// Bit index in a basis-state index (0 = least significant).
    std::size_t bit(std::string_view name) const { return size() - 1 - position(name); }

    Register without(std::string_view name) const;
    /// Concatenation; labels of both sides must be disjoint.
    Register concat(const Register &other) const;

    bool operator==(const Register &other) const { return labels_ == other.labels_; }

   private:
    std::vector<std::string> labels_;
};

/// Dense amplitude vector over a register. Post-measurement states are kept
/// unnormalized; their squared norm is the branch weight.
struct StateVector {
    Register reg;
    std::vector<Amplitude> amplitudes;

    StateVector() = default;
    StateVector(Register r, std::vector<Amplitude> amps);

    double norm2() const;
    /// Amplitude of the ket spelled as a bitstring over the register order.
    Amplitude amplitude(std::string_view bits) const;
    /// Bitstring of a basis index over this register.
    std::string ket(std::size_t index) const;
    StateVector scaled(Amplitude factor) const;
    StateVector normalized() const;
};

/// Mixed state written as rho = sum_i |v_i><v_i| over unnormalized components.
struct PureEnsemble {
    std::vector<StateVector> components;

    double total_weight() const;
    const Register &reg() const;
};

enum class Gate { I, H, X, Z };

/// Z basis: outcome 0 -> |0>, 1 -> |1>. X basis: outcome 0 -> |+>, 1 -> |->.
enum class Basis { Z, X };

StateVector basis_state(const Register &reg, std::string_view bits);

StateVector apply_single(const StateVector &state, std::string_view qubit, Gate gate);
StateVector apply_cnot(const StateVector &state, std::string_view control, std::string_view target);
/// Arbitrary 2x2 operator on one wire (need not be unitary).
StateVector apply_operator(const StateVector &state, std::string_view qubit, const Eigen::Matrix2cd &op);

struct Projection {
    StateVector state;   ///< projector applied, not renormalized
    double probability;  ///< |P psi|^2 / |psi|^2
};

/// Projective measurement outcome. The qubit stays in the register, collapsed
/// to the eigenstate of the outcome.
Projection project(const StateVector &state, std::string_view qubit, Basis basis, int outcome);

/// Removes a qubit that holds the eigenstate (basis, outcome) in product with
/// the rest of the register. Throws DisentanglementError otherwise.
StateVector discard(const StateVector &state, std::string_view qubit, Basis basis, int outcome,
                    double tolerance = 1e-9);

/// <a|b>
Amplitude inner(const StateVector &a, const StateVector &b);

/// Tensor product with `a` as the high-order qubits.
StateVector tensor(const StateVector &a, const StateVector &b);

/// sum_i |<target|v_i>|^2 with no renormalization of the ensemble.
double fidelity_pure(const StateVector &target, const PureEnsemble &rho);

/// |v><v| over the full register.
ComplexMatrix outer(const StateVector &v);

/// Reduced density matrix of `keep` (in the given order) from a pure state.
ComplexMatrix reduced_density(const StateVector &state, const std::vector<std::string> &keep);

}  // namespace bcqt

#endif
