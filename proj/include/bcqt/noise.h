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

#ifndef BCQT_NOISE_H
#define BCQT_NOISE_H

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bcqt/channel.h"
#include "bcqt/protocol.h"
#include "bcqt/qcore.h"

namespace bcqt {

enum class NoiseKind { AmplitudeDamping, PhaseDamping };

/// "ad" / "pd"
std::string to_string(NoiseKind kind);
NoiseKind parse_noise_kind(const std::string &text);

struct NoiseSpec {
    NoiseKind kind = NoiseKind::AmplitudeDamping;
    double eta = 0;  ///< decoherence rate in [0, 1]

    static NoiseSpec make(NoiseKind kind, double eta);
};

using KrausSet = std::vector<Eigen::Matrix2cd>;

/// AD: diag(1, sqrt(1-eta)), sqrt(eta)|0><1|.
/// PD: sqrt(1-eta) I, sqrt(eta)|0><0|, sqrt(eta)|1><1|.
KrausSet kraus_ops(const NoiseSpec &spec);

/// Qubits that travel to A and B; c stays with the controller.
const std::vector<std::string> &transmitted_qubits();

/// Correlated noise: the same Kraus index m acts on all seven transmitted
/// qubits at once, giving one unnormalized component per m. This map is not
/// trace preserving, so the total weight is generally below 1. Components
/// that vanish identically are dropped.
PureEnsemble apply_correlated_noise(const StateVector &channel, const NoiseSpec &spec);

/// Unnormalized 16x16 state over (b0, b1, a1, a2).
struct DensityMatrix {
    Register reg;
    ComplexMatrix entries;

    static DensityMatrix receivers(ComplexMatrix m);

    double trace() const { return entries.trace().real(); }
    double hermiticity_error() const;
    double min_eigenvalue() const;
    /// <target|rho|target>, no renormalization.
    double expectation(const StateVector &target) const;
    /// Largest |entry| of (this - other).
    double max_abs_diff(const DensityMatrix &other) const;
};

struct NoisyOutcome {
    DensityMatrix rho_out;  ///< summed over components and all 256 branches
    /// Per branch, summed over ensemble components, canonical order.
    std::vector<ComplexMatrix> branch_contributions;
    /// max over branches of max |256 * contribution - rho_out|
    double branch_deviation = 0;
    OutcomeRecord worst_branch;

    /// One branch scaled to full weight (x256).
    DensityMatrix branch_output(const OutcomeRecord &record) const;
};

NoisyOutcome run_noisy_protocol(const InputStates &inputs, ChannelCode code, const NoiseSpec &spec);

/// Closed-form receiver states and fidelities. Real amplitudes only;
/// complex inputs raise UnsupportedInputs.
DensityMatrix rho_amp_closed(const InputStates &inputs, double eta);
DensityMatrix rho_phase_closed(const InputStates &inputs, double eta);
double f_amp_closed(const InputStates &inputs, double eta);
double f_phase_closed(const InputStates &inputs, double eta);
DensityMatrix rho_closed(const InputStates &inputs, const NoiseSpec &spec);
double f_closed(const InputStates &inputs, const NoiseSpec &spec);

/// <ideal|rho_out|ideal> from the simulated pipeline.
double fidelity_sim(const InputStates &inputs, ChannelCode code, const NoiseSpec &spec);

/// Bisection root of f - g on [lo, hi]. Throws NoCrossing unless f - g has
/// strictly opposite signs at the endpoints.
double find_crossing(const std::function<double(double)> &f, const std::function<double(double)> &g, double lo,
                     double hi, double tol = 1e-6);
/// Crossing of f_amp_closed and f_phase_closed.
double find_crossing(const InputStates &inputs, double lo = 0.01, double hi = 0.99, double tol = 1e-6);

/// Simulator vs closed form at one grid point.
struct ComparisonPoint {
    NoiseKind kind;
    double eta;
    InputStates inputs;
    std::size_t input_index;
    double f_sim;
    std::optional<double> f_closed;       ///< empty for complex inputs
    std::optional<double> rho_deviation;  ///< max |rho_sim - rho_closed|
    /// max |256 * branch(0,00,++,++,+) - rho_closed|
    std::optional<double> first_branch_deviation;
    double branch_deviation;  ///< spread of the 256 branch contributions
};

struct ComparisonReport {
    std::vector<ComparisonPoint> points;

    double max_fidelity_deviation() const;
    double max_rho_deviation() const;
    double max_first_branch_deviation() const;
    double max_branch_deviation() const;
    /// Point with the largest |f_sim - f_closed|, if any closed form applied.
    const ComparisonPoint *worst_fidelity_point() const;
    const ComparisonPoint *worst_rho_point() const;
    bool agrees(double tolerance = 1e-9) const;
};

ComparisonReport compare_closed_forms(const std::vector<InputStates> &inputs, const std::vector<double> &etas,
                                      ChannelCode code, const std::vector<NoiseKind> &kinds);

/// Inclusive uniform grid of `steps` points.
std::vector<double> eta_grid(double start, double stop, int steps);

}  // namespace bcqt

#endif
