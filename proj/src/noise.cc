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

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "bcqt/errors.h"

namespace bcqt {

namespace {

struct RealAmplitudes {
    double a0, a1, b00, b01, b10, b11;
};

RealAmplitudes require_real(const InputStates &inputs) {
    if (!inputs.is_real(1e-12)) {
        throw UnsupportedInputs("closed-form evaluators need real amplitudes");
    }
    return {inputs.alpha[0].real(), inputs.alpha[1].real(), inputs.beta[0].real(),
            inputs.beta[1].real(),  inputs.beta[2].real(),  inputs.beta[3].real()};
}

void require_eta(double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in [0, 1]");
}

// Receiver kets 0000, 0001, 0010, 0011, 1100, 1101, 1110, 1111 (b0 b1 a1 a2).
constexpr std::array<int, 8> kPayloadKets{0b0000, 0b0001, 0b0010, 0b0011, 0b1100, 0b1101, 0b1110, 0b1111};

// Exponent of (1 - eta) on each payload ket: half the number of ones its
// channel ket carries on the transmitted qubits.
constexpr std::array<double, 8> kAmpDampingPowers{0, 1, 1, 2, 1.5, 2.5, 2.5, 3.5};

Eigen::VectorXcd payload_vector(const RealAmplitudes &r, const std::array<double, 8> &scale) {
    const std::array<double, 8> coeff{r.a0 * r.b00, r.a0 * r.b01, r.a0 * r.b10, r.a0 * r.b11,
                                      r.a1 * r.b00, r.a1 * r.b01, r.a1 * r.b10, r.a1 * r.b11};
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
    for (std::size_t i = 0; i < 8; ++i) v(kPayloadKets[i]) = coeff[i] * scale[i];
    return v;
}

std::array<double, 8> amp_damping_scale(double eta) {
    std::array<double, 8> s{};
    for (std::size_t i = 0; i < 8; ++i) s[i] = std::pow(1.0 - eta, kAmpDampingPowers[i]);
    return s;
}

}  // namespace

std::string to_string(NoiseKind kind) { return kind == NoiseKind::AmplitudeDamping ? "ad" : "pd"; }

NoiseKind parse_noise_kind(const std::string &text) {
    if (text == "ad") return NoiseKind::AmplitudeDamping;
    if (text == "pd") return NoiseKind::PhaseDamping;
    throw std::invalid_argument("noise kind must be 'ad' or 'pd', got '" + text + "'");
}

NoiseSpec NoiseSpec::make(NoiseKind kind, double eta) {
    require_eta(eta);
    return NoiseSpec{kind, eta};
}

KrausSet kraus_ops(const NoiseSpec &spec) {
    require_eta(spec.eta);
    const double keep = std::sqrt(1.0 - spec.eta);
    const double lose = std::sqrt(spec.eta);
    if (spec.kind == NoiseKind::AmplitudeDamping) {
        Eigen::Matrix2cd e0, e1;
        e0 << 1.0, 0.0, 0.0, keep;
        e1 << 0.0, lose, 0.0, 0.0;
        return {e0, e1};
    }
    Eigen::Matrix2cd e0 = keep * Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd e1, e2;
    e1 << lose, 0.0, 0.0, 0.0;
    e2 << 0.0, 0.0, 0.0, lose;
    return {e0, e1, e2};
}

const std::vector<std::string> &transmitted_qubits() {
    static const std::vector<std::string> q{"a0", "a1", "a2", "b0", "b1", "b2", "b3"};
    return q;
}

PureEnsemble apply_correlated_noise(const StateVector &channel, const NoiseSpec &spec) {
    PureEnsemble out;
    for (const auto &e : kraus_ops(spec)) {
        StateVector v = channel;
        for (const auto &q : transmitted_qubits()) v = apply_operator(v, q, e);
        if (v.norm2() > 0) out.components.push_back(std::move(v));
    }
    return out;
}

DensityMatrix DensityMatrix::receivers(ComplexMatrix m) {
    if (m.rows() != 16 || m.cols() != 16) throw std::invalid_argument("receiver density matrix must be 16x16");
    return DensityMatrix{Register({"b0", "b1", "a1", "a2"}), std::move(m)};
}

double DensityMatrix::hermiticity_error() const { return (entries - entries.adjoint()).cwiseAbs().maxCoeff(); }

double DensityMatrix::min_eigenvalue() const {
    const ComplexMatrix h = 0.5 * (entries + entries.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double DensityMatrix::expectation(const StateVector &target) const {
    if (!(target.reg == reg)) throw std::invalid_argument("register mismatch in expectation");
    Eigen::Map<const Eigen::VectorXcd> t(target.amplitudes.data(), static_cast<Eigen::Index>(target.amplitudes.size()));
    return (t.adjoint() * entries * t)(0, 0).real();
}

double DensityMatrix::max_abs_diff(const DensityMatrix &other) const {
    return (entries - other.entries).cwiseAbs().maxCoeff();
}

DensityMatrix NoisyOutcome::branch_output(const OutcomeRecord &record) const {
    return DensityMatrix::receivers(double(kBranchCount) *
                                    branch_contributions.at(static_cast<std::size_t>(record.index())));
}

NoisyOutcome run_noisy_protocol(const InputStates &inputs, ChannelCode code, const NoiseSpec &spec) {
    const PureEnsemble noisy = apply_correlated_noise(build_channel(code), spec);

    NoisyOutcome out;
    out.branch_contributions.assign(kBranchCount, ComplexMatrix::Zero(16, 16));
    for (const auto &component : noisy.components) {
        const auto branches = corrected_branch_states(compose_system(component, inputs), code);
        for (std::size_t b = 0; b < branches.size(); ++b) out.branch_contributions[b] += outer(branches[b]);
    }

    ComplexMatrix total = ComplexMatrix::Zero(16, 16);
    for (const auto &c : out.branch_contributions) total += c;
    out.rho_out = DensityMatrix::receivers(total);

    for (int b = 0; b < kBranchCount; ++b) {
        const double dev =
            (double(kBranchCount) * out.branch_contributions[static_cast<std::size_t>(b)] - total).cwiseAbs().maxCoeff();
        if (dev > out.branch_deviation || b == 0) {
            out.branch_deviation = dev;
            out.worst_branch = OutcomeRecord::from_index(b);
        }
    }
    return out;
}

DensityMatrix rho_amp_closed(const InputStates &inputs, double eta) {
    require_eta(eta);
    const auto r = require_real(inputs);
    const Eigen::VectorXcd v = payload_vector(r, amp_damping_scale(eta));
    ComplexMatrix m = v * v.adjoint();
    m(0, 0) += std::pow(eta, 7) * r.a1 * r.a1 * r.b11 * r.b11;
    return DensityMatrix::receivers(std::move(m));
}

DensityMatrix rho_phase_closed(const InputStates &inputs, double eta) {
    require_eta(eta);
    const auto r = require_real(inputs);
    std::array<double, 8> ones;
    ones.fill(1.0);
    const Eigen::VectorXcd v = payload_vector(r, ones);
    ComplexMatrix m = std::pow(1.0 - eta, 7) * (v * v.adjoint());
    const double e7 = std::pow(eta, 7);
    m(0, 0) += e7 * r.a0 * r.a0 * r.b00 * r.b00;
    m(15, 15) += e7 * r.a1 * r.a1 * r.b11 * r.b11;
    return DensityMatrix::receivers(std::move(m));
}

double f_amp_closed(const InputStates &inputs, double eta) {
    require_eta(eta);
    const auto r = require_real(inputs);
    const auto s = amp_damping_scale(eta);
    const double a0 = r.a0 * r.a0, a1 = r.a1 * r.a1;
    const std::array<double, 8> w{a0 * r.b00 * r.b00, a0 * r.b01 * r.b01, a0 * r.b10 * r.b10, a0 * r.b11 * r.b11,
                                  a1 * r.b00 * r.b00, a1 * r.b01 * r.b01, a1 * r.b10 * r.b10, a1 * r.b11 * r.b11};
    double bracket = 0;
    for (std::size_t i = 0; i < 8; ++i) bracket += s[i] * w[i];
    return bracket * bracket + std::pow(eta, 7) * a0 * a1 * r.b00 * r.b00 * r.b11 * r.b11;
}

double f_phase_closed(const InputStates &inputs, double eta) {
    require_eta(eta);
    const auto r = require_real(inputs);
    const double e7 = std::pow(eta, 7);
    return std::pow(1.0 - eta, 7) + e7 * std::pow(r.a0 * r.b00, 4) + e7 * std::pow(r.a1 * r.b11, 4);
}

DensityMatrix rho_closed(const InputStates &inputs, const NoiseSpec &spec) {
    return spec.kind == NoiseKind::AmplitudeDamping ? rho_amp_closed(inputs, spec.eta)
                                                    : rho_phase_closed(inputs, spec.eta);
}

double f_closed(const InputStates &inputs, const NoiseSpec &spec) {
    return spec.kind == NoiseKind::AmplitudeDamping ? f_amp_closed(inputs, spec.eta)
                                                    : f_phase_closed(inputs, spec.eta);
}

double fidelity_sim(const InputStates &inputs, ChannelCode code, const NoiseSpec &spec) {
    return run_noisy_protocol(inputs, code, spec).rho_out.expectation(ideal_output(inputs));
}

double find_crossing(const std::function<double(double)> &f, const std::function<double(double)> &g, double lo,
                     double hi, double tol) {
    if (!(lo < hi)) throw std::invalid_argument("crossing search needs lo < hi");
    if (!(tol > 0)) throw std::invalid_argument("crossing tolerance must be positive");
    auto diff = [&](double x) { return f(x) - g(x); };
    const double dlo = diff(lo), dhi = diff(hi);
    if (!(dlo * dhi < 0)) {
        throw NoCrossing("no sign change of the fidelity difference on [" + std::to_string(lo) + ", " +
                         std::to_string(hi) + "]");
    }
    std::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::bisect(
        diff, lo, hi, [tol](double x, double y) { return std::abs(y - x) <= tol; }, max_iter);
    return 0.5 * (a + b);
}

double find_crossing(const InputStates &inputs, double lo, double hi, double tol) {
    return find_crossing([&](double eta) { return f_amp_closed(inputs, eta); },
                         [&](double eta) { return f_phase_closed(inputs, eta); }, lo, hi, tol);
}

double ComparisonReport::max_fidelity_deviation() const {
    double m = 0;
    for (const auto &p : points) {
        if (p.f_closed) m = std::max(m, std::abs(p.f_sim - *p.f_closed));
    }
    return m;
}

double ComparisonReport::max_rho_deviation() const {
    double m = 0;
    for (const auto &p : points) {
        if (p.rho_deviation) m = std::max(m, *p.rho_deviation);
    }
    return m;
}

double ComparisonReport::max_first_branch_deviation() const {
    double m = 0;
    for (const auto &p : points) {
        if (p.first_branch_deviation) m = std::max(m, *p.first_branch_deviation);
    }
    return m;
}

double ComparisonReport::max_branch_deviation() const {
    double m = 0;
    for (const auto &p : points) m = std::max(m, p.branch_deviation);
    return m;
}

const ComparisonPoint *ComparisonReport::worst_fidelity_point() const {
    const ComparisonPoint *worst = nullptr;
    double m = -1;
    for (const auto &p : points) {
        if (!p.f_closed) continue;
        const double d = std::abs(p.f_sim - *p.f_closed);
        if (d > m) {
            m = d;
            worst = &p;
        }
    }
    return worst;
}

const ComparisonPoint *ComparisonReport::worst_rho_point() const {
    const ComparisonPoint *worst = nullptr;
    double m = -1;
    for (const auto &p : points) {
        if (p.rho_deviation && *p.rho_deviation > m) {
            m = *p.rho_deviation;
            worst = &p;
        }
    }
    return worst;
}

bool ComparisonReport::agrees(double tolerance) const {
    return max_fidelity_deviation() <= tolerance && max_rho_deviation() <= tolerance;
}

ComparisonReport compare_closed_forms(const std::vector<InputStates> &inputs, const std::vector<double> &etas,
                                      ChannelCode code, const std::vector<NoiseKind> &kinds) {
    ComparisonReport report;
    for (NoiseKind kind : kinds) {
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            const StateVector ideal = ideal_output(inputs[i]);
            const bool real = inputs[i].is_real(1e-12);
            for (double eta : etas) {
                const NoiseSpec spec = NoiseSpec::make(kind, eta);
                const NoisyOutcome sim = run_noisy_protocol(inputs[i], code, spec);
                ComparisonPoint p{kind, eta, inputs[i], i, sim.rho_out.expectation(ideal), std::nullopt,
                                  std::nullopt, std::nullopt, sim.branch_deviation};
                if (real) {
                    const DensityMatrix closed = rho_closed(inputs[i], spec);
                    p.f_closed = f_closed(inputs[i], spec);
                    p.rho_deviation = sim.rho_out.max_abs_diff(closed);
                    p.first_branch_deviation = sim.branch_output(OutcomeRecord{}).max_abs_diff(closed);
                }
                report.points.push_back(std::move(p));
            }
        }
    }
    return report;
}

std::vector<double> eta_grid(double start, double stop, int steps) {
    if (steps < 2) throw std::invalid_argument("eta grid needs at least 2 steps");
    if (!(0.0 <= start && start <= stop && stop <= 1.0)) {
        throw std::invalid_argument("eta grid needs 0 <= start <= stop <= 1");
    }
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) grid[static_cast<std::size_t>(i)] = start + (stop - start) * i / (steps - 1);
    grid.back() = stop;
    return grid;
}

}  // namespace bcqt
