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

#include "bcqt/noise.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bcqt/errors.h"
#include "oracle.h"

namespace bcqt {
namespace {

const ChannelCode kCode001 = ChannelCode::parse("001");

InputStates uniform_inputs() {
    const double h = 1 / std::numbers::sqrt2;
    return InputStates::make({h, h}, {0.5, 0.5, 0.5, 0.5});
}
InputStates skewed_inputs() {
    const double r = std::sqrt(3.0) / 2;
    return InputStates::make({0.5, r}, {0.5, 0.0, 0.0, r});
}
InputStates basis00() { return InputStates::make({1.0, 0.0}, {1.0, 0.0, 0.0, 0.0}); }

InputStates random_inputs(std::mt19937_64 &rng, bool complex) {
    std::normal_distribution<double> g;
    auto draw = [&] { return Amplitude(g(rng), complex ? g(rng) : 0.0); };
    std::array<Amplitude, 2> a{draw(), draw()};
    std::array<Amplitude, 4> b{draw(), draw(), draw(), draw()};
    double na = 0, nb = 0;
    for (auto x : a) na += std::norm(x);
    for (auto x : b) nb += std::norm(x);
    for (auto &x : a) x /= std::sqrt(na);
    for (auto &x : b) x /= std::sqrt(nb);
    return InputStates::make(a, b);
}

TEST(Kraus, Completeness) {
    for (NoiseKind kind : {NoiseKind::AmplitudeDamping, NoiseKind::PhaseDamping}) {
        for (double eta : {0.0, 0.3, 1.0}) {
            Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
            for (const auto &e : kraus_ops(NoiseSpec::make(kind, eta))) sum += e.adjoint() * e;
            EXPECT_LT((sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff(), 1e-15);
        }
    }
    EXPECT_EQ(kraus_ops(NoiseSpec::make(NoiseKind::AmplitudeDamping, 0.5)).size(), 2u);
    EXPECT_EQ(kraus_ops(NoiseSpec::make(NoiseKind::PhaseDamping, 0.5)).size(), 3u);
}

TEST(NoiseSpec, Validation) {
    EXPECT_THROW(NoiseSpec::make(NoiseKind::PhaseDamping, -0.1), std::invalid_argument);
    EXPECT_THROW(NoiseSpec::make(NoiseKind::PhaseDamping, 1.1), std::invalid_argument);
    EXPECT_THROW(NoiseSpec::make(NoiseKind::PhaseDamping, std::nan("")), std::invalid_argument);
    EXPECT_EQ(parse_noise_kind("ad"), NoiseKind::AmplitudeDamping);
    EXPECT_EQ(to_string(NoiseKind::PhaseDamping), "pd");
    EXPECT_THROW(parse_noise_kind("AD"), std::invalid_argument);
}

TEST(CorrelatedNoise, AmplitudeDampingComponents) {
    const StateVector ch = build_channel(kCode001);
    for (double eta : {0.2, 0.7}) {
        const auto e = apply_correlated_noise(ch, NoiseSpec::make(NoiseKind::AmplitudeDamping, eta));
        ASSERT_EQ(e.components.size(), 2u);
        const auto &keep = e.components[0];
        for (std::size_t i = 0; i < keep.amplitudes.size(); ++i) {
            if (std::abs(ch.amplitudes[i]) == 0) continue;
            const std::string ket = ch.ket(i);
            int ones = 0;
            for (std::size_t p = 0; p < 8; ++p) ones += p != 5 && ket[p] == '1';
            EXPECT_NEAR(std::abs(keep.amplitudes[i] - std::pow(1 - eta, ones / 2.0) / std::sqrt(8.0)), 0.0, 1e-12);
        }
        const auto &lost = e.components[1];
        EXPECT_NEAR(std::abs(lost.amplitude("00000100") - std::pow(eta, 3.5) / std::sqrt(8.0)), 0.0, 1e-12);
        EXPECT_NEAR(lost.norm2(), std::pow(eta, 7) / 8, 1e-12);
    }
}

TEST(CorrelatedNoise, PhaseDampingComponents) {
    const StateVector ch = build_channel(kCode001);
    const double eta = 0.4;
    const auto e = apply_correlated_noise(ch, NoiseSpec::make(NoiseKind::PhaseDamping, eta));
    ASSERT_EQ(e.components.size(), 3u);
    EXPECT_NEAR(std::abs(inner(e.components[0], ch) - std::pow(1 - eta, 3.5)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(e.components[1].amplitude("00000000") - std::pow(eta, 3.5) / std::sqrt(8.0)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(e.components[2].amplitude("11111111") - std::pow(eta, 3.5) / std::sqrt(8.0)), 0.0, 1e-12);
    EXPECT_NEAR(e.components[1].norm2(), std::pow(eta, 7) / 8, 1e-12);
}

TEST(CorrelatedNoise, ZeroComponentsAreDropped) {
    const StateVector ch = build_channel(kCode001);
    EXPECT_EQ(apply_correlated_noise(ch, NoiseSpec::make(NoiseKind::AmplitudeDamping, 0.0)).components.size(), 1u);
    EXPECT_EQ(apply_correlated_noise(ch, NoiseSpec::make(NoiseKind::PhaseDamping, 1.0)).components.size(), 2u);
}

TEST(CorrelatedNoise, EnsembleWeightFormula) {
    const StateVector ch = build_channel(kCode001);
    auto weight = [&](double eta) {
        return apply_correlated_noise(ch, NoiseSpec::make(NoiseKind::AmplitudeDamping, eta)).total_weight();
    };
    for (double eta : eta_grid(0.0, 1.0, 21)) {
        const double k = 1 - eta;
        const double expected_weight = (1 + 2 * std::pow(k, 2) + std::pow(k, 4) + std::pow(k, 3) + 2 * std::pow(k, 5) +
                                std::pow(k, 7) + std::pow(eta, 7)) /
                               8;
        EXPECT_NEAR(weight(eta), expected_weight, 1e-12) << eta;
    }
    EXPECT_NEAR(weight(0.0), 1.0, 1e-15);
    // The eta^7 term lifts the weight again near full damping.
    EXPECT_NEAR(weight(1.0), 0.25, 1e-15);
    EXPECT_GT(weight(1.0), weight(0.9));
    EXPECT_LT(weight(0.5), weight(0.1));
}

TEST(NoisyProtocol, NoiselessLimitIsIdeal) {
    std::mt19937_64 rng(2);
    const InputStates in = random_inputs(rng, true);
    for (NoiseKind kind : {NoiseKind::AmplitudeDamping, NoiseKind::PhaseDamping}) {
        const NoisyOutcome out = run_noisy_protocol(in, kCode001, NoiseSpec::make(kind, 0.0));
        EXPECT_NEAR(out.rho_out.trace(), 1.0, 1e-12);
        EXPECT_NEAR(out.rho_out.expectation(ideal_output(in)), 1.0, 1e-12);
        EXPECT_LT(out.branch_deviation, 1e-12);
    }
}

TEST(NoisyProtocol, OutputIsPositiveSemidefinite) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 3; ++trial) {
        const InputStates in = random_inputs(rng, trial == 2);
        for (NoiseKind kind : {NoiseKind::AmplitudeDamping, NoiseKind::PhaseDamping}) {
            const NoisyOutcome out = run_noisy_protocol(in, ChannelCode::from_index(trial * 3),
                                                        NoiseSpec::make(kind, 0.25 * (trial + 1)));
            EXPECT_LT(out.rho_out.hermiticity_error(), 1e-12);
            EXPECT_GT(out.rho_out.min_eigenvalue(), -1e-12);
            EXPECT_LE(out.rho_out.trace(), 1.0 + 1e-12);
        }
    }
}

TEST(NoisyProtocol, MatchesIndependentOracle) {
    std::mt19937_64 rng(13);
    const std::vector<InputStates> inputs{uniform_inputs(), skewed_inputs(), basis00(), random_inputs(rng, false),
                                          random_inputs(rng, true)};
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const oracle::Payload p{inputs[k].alpha, inputs[k].beta};
        const ChannelCode code = ChannelCode::from_index(int(k + 1) % 8);
        const std::array<int, 3> bits{code.a0(), code.b2(), code.b3()};
        for (double eta : {0.0, 0.35, 0.8, 1.0}) {
            for (int kind = 0; kind < 2; ++kind) {
                const NoiseSpec spec =
                    NoiseSpec::make(kind == 0 ? NoiseKind::AmplitudeDamping : NoiseKind::PhaseDamping, eta);
                EXPECT_NEAR(fidelity_sim(inputs[k], code, spec), oracle::noisy_fidelity(p, bits, kind, eta), 1e-12)
                    << "input " << k << " code " << code.str() << " eta " << eta << " kind " << kind;
            }
        }
    }
}

// Values produced by a separate numpy model of the full pipeline.
TEST(NoisyProtocol, FrozenReferenceValues) {
    struct Case {
        InputStates in;
        NoiseKind kind;
        double eta, f;
    };
    const std::vector<Case> cases{
        {uniform_inputs(), NoiseKind::AmplitudeDamping, 0.3, 0.32812663266658},
        {uniform_inputs(), NoiseKind::PhaseDamping, 0.3, 0.082361134375},
        {uniform_inputs(), NoiseKind::AmplitudeDamping, 0.7, 0.061784050592098},
        {uniform_inputs(), NoiseKind::PhaseDamping, 0.7, 0.002792271875},
        {skewed_inputs(), NoiseKind::AmplitudeDamping, 0.3, 0.33925493835617},
        {skewed_inputs(), NoiseKind::PhaseDamping, 0.3, 0.0823756574218745},
        {skewed_inputs(), NoiseKind::AmplitudeDamping, 0.7, 0.08795046911511},
        {skewed_inputs(), NoiseKind::PhaseDamping, 0.7, 0.008261112109375},
        {basis00(), NoiseKind::AmplitudeDamping, 0.3, 0.372726625},
        {basis00(), NoiseKind::PhaseDamping, 0.3, 0.082408975},
        {basis00(), NoiseKind::AmplitudeDamping, 0.7, 0.162816625},
        {basis00(), NoiseKind::PhaseDamping, 0.7, 0.020807275},
        {basis00(), NoiseKind::AmplitudeDamping, 1.0, 0.25},
        {basis00(), NoiseKind::PhaseDamping, 1.0, 0.25},
    };
    for (const auto &c : cases) {
        EXPECT_NEAR(fidelity_sim(c.in, kCode001, NoiseSpec::make(c.kind, c.eta)), c.f, 1e-12)
            << to_string(c.kind) << " eta " << c.eta;
    }
}

TEST(ClosedForm, FidelityIsExpectationOfClosedState) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 5; ++trial) {
        const InputStates in = random_inputs(rng, false);
        for (double eta : {0.0, 0.2, 0.6, 1.0}) {
            EXPECT_NEAR(f_amp_closed(in, eta), rho_amp_closed(in, eta).expectation(ideal_output(in)), 1e-12);
            EXPECT_NEAR(f_phase_closed(in, eta), rho_phase_closed(in, eta).expectation(ideal_output(in)), 1e-12);
        }
    }
}

TEST(ClosedForm, ReferenceValues) {
    EXPECT_NEAR(f_phase_closed(basis00(), 1.0), 1.0, 1e-15);
    EXPECT_NEAR(f_phase_closed(basis00(), 0.3), std::pow(0.7, 7) + std::pow(0.3, 7), 1e-15);
    for (double eta : eta_grid(0.0, 1.0, 11)) EXPECT_NEAR(f_amp_closed(basis00(), eta), 1.0, 1e-15);
    EXPECT_NEAR(f_amp_closed(uniform_inputs(), 1.0), 1.0 / 32, 1e-15);
    EXPECT_NEAR(f_phase_closed(uniform_inputs(), 1.0), 1.0 / 32, 1e-15);
    EXPECT_NEAR(f_amp_closed(uniform_inputs(), 0.0), 1.0, 1e-15);
}

TEST(ClosedForm, ComplexInputsUnsupported) {
    const InputStates in = InputStates::make({Amplitude(0, 1), 0.0}, {1.0, 0.0, 0.0, 0.0});
    EXPECT_THROW(f_amp_closed(in, 0.5), UnsupportedInputs);
    EXPECT_THROW(rho_phase_closed(in, 0.5), UnsupportedInputs);
}

// The closed forms are a single-branch result: the (0,00,++,++,+) branch
// scaled to full weight reproduces the phase-damping state exactly, and the
// amplitude-damping state up to which corner carries the eta^7 term.
TEST(ClosedForm, FirstBranchRelation) {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 3; ++trial) {
        const InputStates in = random_inputs(rng, false);
        for (double eta : {0.1, 0.5, 0.9}) {
            const auto pd = run_noisy_protocol(in, kCode001, NoiseSpec::make(NoiseKind::PhaseDamping, eta));
            EXPECT_LT(pd.branch_output(OutcomeRecord{}).max_abs_diff(rho_phase_closed(in, eta)), 1e-12);

            const auto ad = run_noisy_protocol(in, kCode001, NoiseSpec::make(NoiseKind::AmplitudeDamping, eta));
            ComplexMatrix diff = ad.branch_output(OutcomeRecord{}).entries - rho_amp_closed(in, eta).entries;
            const double a0 = in.alpha[0].real(), a1 = in.alpha[1].real();
            const double b00 = in.beta[0].real(), b11 = in.beta[3].real();
            EXPECT_NEAR(diff(0, 0).real(), std::pow(eta, 7) * (a0 * a0 * b00 * b00 - a1 * a1 * b11 * b11), 1e-12);
            diff(0, 0) = 0;
            EXPECT_LT(diff.cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(ClosedForm, BranchesDifferUnderNoise) {
    const auto out = run_noisy_protocol(basis00(), kCode001, NoiseSpec::make(NoiseKind::PhaseDamping, 0.5));
    EXPECT_GT(out.branch_deviation, 1e-3);
}

TEST(Crossing, UniformInputsNeverCross) {
    EXPECT_THROW(find_crossing(uniform_inputs()), NoCrossing);
}

TEST(Crossing, UnequalInputsCross) {
    const double root = find_crossing(skewed_inputs(), 0.01, 0.99, 1e-9);
    EXPECT_NEAR(root, 0.6671445, 1e-6);
    EXPECT_NEAR(f_amp_closed(skewed_inputs(), root), f_phase_closed(skewed_inputs(), root), 1e-7);
}

TEST(Crossing, GenericBisection) {
    const double r = find_crossing([](double x) { return x * x; }, [](double) { return 2.0; }, 0.0, 2.0, 1e-10);
    EXPECT_NEAR(r, std::sqrt(2.0), 1e-9);
    EXPECT_THROW(find_crossing([](double x) { return x; }, [](double) { return -1.0; }, 0.0, 1.0), NoCrossing);
}

TEST(Grid, InclusiveAndValidated) {
    const auto g = eta_grid(0.0, 1.0, 21);
    ASSERT_EQ(g.size(), 21u);
    EXPECT_DOUBLE_EQ(g.front(), 0.0);
    EXPECT_DOUBLE_EQ(g.back(), 1.0);
    EXPECT_NEAR(g[1], 0.05, 1e-15);
    EXPECT_THROW(eta_grid(0.0, 1.0, 1), std::invalid_argument);
    EXPECT_THROW(eta_grid(0.5, 0.2, 5), std::invalid_argument);
    EXPECT_THROW(eta_grid(0.0, 1.5, 5), std::invalid_argument);
}

TEST(Comparison, ReportLocatesDeviation) {
    const ComparisonReport uniform = compare_closed_forms({uniform_inputs()}, {0.0, 0.5, 1.0}, kCode001,
                                                        {NoiseKind::AmplitudeDamping, NoiseKind::PhaseDamping});
    EXPECT_EQ(uniform.points.size(), 6u);
    EXPECT_LT(uniform.max_fidelity_deviation(), 1e-12);
    EXPECT_GT(uniform.max_rho_deviation(), 1e-3);
    EXPECT_FALSE(uniform.agrees(1e-9));
    EXPECT_TRUE(compare_closed_forms({uniform_inputs(), basis00()}, {0.0}, kCode001,
                                     {NoiseKind::AmplitudeDamping, NoiseKind::PhaseDamping})
                    .agrees(1e-12));

    const ComparisonReport r =
        compare_closed_forms({uniform_inputs(), basis00()}, {0.5}, kCode001, {NoiseKind::AmplitudeDamping});
    EXPECT_FALSE(r.agrees(1e-9));
    const ComparisonPoint *w = r.worst_fidelity_point();
    ASSERT_NE(w, nullptr);
    EXPECT_EQ(w->input_index, 1u);
    EXPECT_NEAR(w->f_sim, 0.220703125, 1e-12);
    EXPECT_NEAR(*w->f_closed, 1.0, 1e-12);
}

TEST(Comparison, ComplexInputsHaveNoClosedForm) {
    std::mt19937_64 rng(1);
    const auto r = compare_closed_forms({random_inputs(rng, true)}, {0.5}, kCode001, {NoiseKind::PhaseDamping});
    ASSERT_EQ(r.points.size(), 1u);
    EXPECT_FALSE(r.points[0].f_closed.has_value());
    EXPECT_EQ(r.worst_fidelity_point(), nullptr);
}

}  // namespace
}  // namespace bcqt
