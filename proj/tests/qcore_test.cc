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

#include "bcqt/qcore.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bcqt/errors.h"

namespace bcqt {
namespace {

StateVector random_state(const Register &reg, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    std::vector<Amplitude> amps(reg.dimension());
    for (auto &a : amps) a = {g(rng), g(rng)};
    return StateVector(reg, std::move(amps)).normalized();
}

TEST(Register, ProtocolOrderAndBits) {
    const Register r = Register::protocol();
    EXPECT_EQ(r.size(), 12u);
    EXPECT_EQ(r.dimension(), 4096u);
    EXPECT_EQ(r.position("a0"), 0u);
    EXPECT_EQ(r.position("c"), 5u);
    EXPECT_EQ(r.bit("a0"), 11u);
    EXPECT_EQ(r.bit("B1"), 0u);
    EXPECT_TRUE(r.contains("A1"));
    EXPECT_FALSE(r.contains("x"));
    EXPECT_THROW(r.position("x"), std::invalid_argument);
}

TEST(Register, RejectsBadLabels) {
    EXPECT_THROW(Register({"a", "a"}), std::invalid_argument);
    EXPECT_THROW(Register({"a", ""}), std::invalid_argument);
}

TEST(Register, WithoutAndConcat) {
    const Register r = Register::channel();
    const Register w = r.without("c");
    EXPECT_EQ(w.size(), 7u);
    EXPECT_FALSE(w.contains("c"));
    EXPECT_EQ(w.label(5), "b2");
    EXPECT_THROW(r.without("A0"), std::invalid_argument);
    const Register both = Register({"x"}).concat(Register({"y", "z"}));
    EXPECT_EQ(both.position("z"), 2u);
    EXPECT_THROW(Register({"x"}).concat(Register({"x"})), std::invalid_argument);
}

TEST(StateVector, KetAndAmplitude) {
    const Register r({"p", "q", "s"});
    const StateVector s = basis_state(r, "101");
    EXPECT_EQ(s.amplitude("101"), Amplitude(1.0));
    EXPECT_EQ(s.amplitudes[5], Amplitude(1.0));
    EXPECT_EQ(s.ket(5), "101");
    EXPECT_THROW(s.amplitude("10"), std::invalid_argument);
    EXPECT_THROW(basis_state(r, "1x1"), std::invalid_argument);
    EXPECT_THROW(StateVector(r, std::vector<Amplitude>(3)), std::invalid_argument);
}

TEST(Gates, ActOnNamedQubit) {
    const Register r({"p", "q"});
    StateVector s = apply_single(basis_state(r, "00"), "q", Gate::X);
    EXPECT_EQ(s.amplitude("01"), Amplitude(1.0));
    s = apply_cnot(apply_single(basis_state(r, "00"), "p", Gate::X), "p", "q");
    EXPECT_EQ(s.amplitude("11"), Amplitude(1.0));
    s = apply_single(basis_state(r, "00"), "p", Gate::H);
    EXPECT_NEAR(s.amplitude("00").real(), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(s.amplitude("10").real(), 1 / std::sqrt(2.0), 1e-15);
    s = apply_single(basis_state(r, "10"), "p", Gate::Z);
    EXPECT_EQ(s.amplitude("10"), Amplitude(-1.0));
    EXPECT_THROW(apply_cnot(s, "p", "p"), std::invalid_argument);
}

TEST(Gates, InvolutionsOnRandomStates) {
    std::mt19937_64 rng(11);
    const Register r({"p", "q", "s", "t"});
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector s = random_state(r, rng);
        for (Gate g : {Gate::H, Gate::X, Gate::Z}) {
            const StateVector back = apply_single(apply_single(s, "s", g), "s", g);
            EXPECT_NEAR(std::abs(inner(s, back)), 1.0, 1e-12);
        }
        const StateVector back = apply_cnot(apply_cnot(s, "t", "p"), "t", "p");
        EXPECT_NEAR(std::abs(inner(s, back)), 1.0, 1e-12);
        EXPECT_NEAR(apply_single(s, "q", Gate::H).norm2(), 1.0, 1e-12);
    }
}

TEST(Gates, OperatorMatchesNamedGate) {
    std::mt19937_64 rng(3);
    const Register r({"p", "q", "s"});
    const StateVector s = random_state(r, rng);
    Eigen::Matrix2cd xm;
    xm << 0, 1, 1, 0;
    const StateVector a = apply_operator(s, "q", xm);
    const StateVector b = apply_single(s, "q", Gate::X);
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) EXPECT_EQ(a.amplitudes[i], b.amplitudes[i]);
}

TEST(Measurement, ProbabilitiesSumToOne) {
    std::mt19937_64 rng(5);
    const Register r({"p", "q", "s"});
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector s = random_state(r, rng);
        for (Basis b : {Basis::Z, Basis::X}) {
            const double p0 = project(s, "q", b, 0).probability;
            const double p1 = project(s, "q", b, 1).probability;
            EXPECT_NEAR(p0 + p1, 1.0, 1e-12);
            EXPECT_NEAR(project(s, "q", b, 0).state.norm2(), p0, 1e-12);
        }
    }
    EXPECT_THROW(project(random_state(r, rng), "p", Basis::Z, 2), std::invalid_argument);
}

TEST(Measurement, XBasisOutcomeZeroIsPlus) {
    const Register r({"p"});
    const StateVector plus = apply_single(basis_state(r, "0"), "p", Gate::H);
    EXPECT_NEAR(project(plus, "p", Basis::X, 0).probability, 1.0, 1e-15);
    EXPECT_NEAR(project(plus, "p", Basis::X, 1).probability, 0.0, 1e-15);
}

TEST(Discard, RemovesProductFactor) {
    std::mt19937_64 rng(9);
    const StateVector rest = random_state(Register({"q", "s"}), rng);
    const StateVector one = basis_state(Register({"p"}), "1");
    const StateVector joint = tensor(one, rest);
    const StateVector back = discard(joint, "p", Basis::Z, 1);
    EXPECT_NEAR(std::abs(inner(rest, back)), 1.0, 1e-12);
    EXPECT_THROW(discard(joint, "p", Basis::Z, 0), DisentanglementError);

    const StateVector minus = apply_single(apply_single(basis_state(Register({"p"}), "0"), "p", Gate::X), "p", Gate::H);
    const StateVector xb = discard(tensor(rest, minus), "p", Basis::X, 1);
    EXPECT_NEAR(std::abs(inner(rest, xb)), 1.0, 1e-12);
    EXPECT_THROW(discard(tensor(rest, minus), "p", Basis::X, 0), DisentanglementError);
}

TEST(Discard, EntangledQubitIsRejected) {
    const Register r({"p", "q"});
    const StateVector bell = apply_cnot(apply_single(basis_state(r, "00"), "p", Gate::H), "p", "q");
    EXPECT_THROW(discard(bell, "p", Basis::Z, 0), DisentanglementError);
}

TEST(Density, ReducedStateIsAValidState) {
    std::mt19937_64 rng(21);
    const Register r({"p", "q", "s", "t"});
    for (int trial = 0; trial < 10; ++trial) {
        const StateVector s = random_state(r, rng);
        const ComplexMatrix rho = reduced_density(s, {"s", "p"});
        EXPECT_EQ(rho.rows(), 4);
        EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
        EXPECT_LT((rho - rho.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho);
        EXPECT_GT(es.eigenvalues().minCoeff(), -1e-12);
    }
}

TEST(Density, ReducedStateOfProductIsTheFactor) {
    std::mt19937_64 rng(22);
    const StateVector a = random_state(Register({"p", "q"}), rng);
    const StateVector b = random_state(Register({"s"}), rng);
    const ComplexMatrix rho = reduced_density(tensor(a, b), {"p", "q"});
    EXPECT_LT((rho - outer(a)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Fidelity, EnsembleSum) {
    const Register r({"p"});
    const StateVector zero = basis_state(r, "0");
    const StateVector plus = apply_single(zero, "p", Gate::H);
    PureEnsemble e{{zero.scaled(std::sqrt(0.5)), basis_state(r, "1").scaled(std::sqrt(0.5))}};
    EXPECT_NEAR(e.total_weight(), 1.0, 1e-15);
    EXPECT_NEAR(fidelity_pure(zero, e), 0.5, 1e-15);
    EXPECT_NEAR(fidelity_pure(plus, e), 0.5, 1e-15);
}

}  // namespace
}  // namespace bcqt
