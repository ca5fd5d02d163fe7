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

#ifndef BCQT_CLI_H
#define BCQT_CLI_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bcqt/channel.h"
#include "bcqt/noise.h"
#include "bcqt/protocol.h"

namespace bcqt::cli {

enum ExitCode : int { kOk = 0, kVerificationFailure = 1, kUsageError = 2 };

struct SweepConfig {
    std::optional<NoiseKind> kind;  ///< unset: both kinds, ad rows first
    double eta_start = 0.0;
    double eta_stop = 1.0;
    int eta_steps = 21;
    /// Unset: the command's default inputs.
    std::optional<InputStates> inputs;
    ChannelCode code{false, false, true};
    std::string out_path;  ///< empty: standard output
};

/// Real CLI amplitudes: accepted as-is within 1e-9 of unit norm, rescaled
/// with a warning within 1e-6, rejected (std::invalid_argument) otherwise.
InputStates normalize_cli_inputs(const std::array<double, 2> &alpha, const std::array<double, 4> &beta,
                                 std::ostream &warn);

/// Throws std::invalid_argument when the grid bounds are out of range.
void validate(const SweepConfig &config);

/// Basis payloads, Bell alpha with uniform beta, the two crossing-analysis
/// settings, three random real and three random complex payloads.
std::vector<InputStates> default_input_suite(std::uint64_t seed);
/// Real settings used by `compare` when no amplitudes are given.
std::vector<InputStates> default_real_inputs();

int cmd_verify_channel(std::ostream &out, const ChannelTable &golden = reference_channel_table());
int cmd_verify_protocol(std::ostream &out, const std::vector<InputStates> &suite, std::uint64_t seed,
                        const ProtocolOptions &options = {});
/// CSV rows for the sweep, header included.
std::string sweep_csv(const SweepConfig &config);
int cmd_sweep(const SweepConfig &config, std::ostream &out, std::ostream &err);
int cmd_compare(const SweepConfig &config, std::ostream &out);
int cmd_tables(std::ostream &out);

/// Full command line entry point; returns the process exit status.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// 12 significant digits, as written to CSV.
std::string format_number(double value);

}  // namespace bcqt::cli

#endif
