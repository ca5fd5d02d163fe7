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

#include "bcqt/cli.h"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <numbers>
#include <sstream>

#include "bcqt/errors.h"

namespace bcqt::cli {

namespace {

constexpr double kFidelityTolerance = 1e-9;
constexpr double kAgreementTolerance = 1e-9;
constexpr double kExactNorm = 1e-9;
constexpr double kRescaleNorm = 1e-6;

std::string fixed(double v, int digits = 12) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

std::string describe(const InputStates &in) {
    auto amp = [](Amplitude a) {
        if (a.imag() == 0.0) return format_number(a.real());
        return "(" + format_number(a.real()) + (a.imag() < 0 ? "" : "+") + format_number(a.imag()) + "i)";
    };
    return "alpha=(" + amp(in.alpha[0]) + "," + amp(in.alpha[1]) + ") beta=(" + amp(in.beta[0]) + "," +
           amp(in.beta[1]) + "," + amp(in.beta[2]) + "," + amp(in.beta[3]) + ")";
}

template <std::size_t N>
std::array<double, N> rescale_if_close(std::array<double, N> v, const char *name, std::ostream &warn) {
    double n2 = 0;
    for (double x : v) n2 += x * x;
    const double off = std::abs(n2 - 1.0);
    if (off <= kExactNorm) return v;
    if (off > kRescaleNorm) {
        throw std::invalid_argument(std::string(name) + " amplitudes are not normalized (squared norm " +
                                    format_number(n2) + ")");
    }
    warn << "warning: " << name << " squared norm " << format_number(n2) << " rescaled to 1\n";
    const double s = 1.0 / std::sqrt(n2);
    for (double &x : v) x *= s;
    return v;
}

InputStates random_inputs(BranchSampler &rng, bool complex) {
    std::array<Amplitude, 2> a;
    std::array<Amplitude, 4> b;
    auto draw = [&] {
        const double re = 2 * rng.uniform() - 1;
        const double im = complex ? 2 * rng.uniform() - 1 : 0.0;
        return Amplitude(re, im);
    };
    for (auto &x : a) x = draw();
    for (auto &x : b) x = draw();
    double na = 0, nb = 0;
    for (auto x : a) na += std::norm(x);
    for (auto x : b) nb += std::norm(x);
    for (auto &x : a) x /= std::sqrt(na);
    for (auto &x : b) x /= std::sqrt(nb);
    return InputStates::make(a, b, 1e-12);
}

std::vector<NoiseKind> kinds_of(const SweepConfig &config) {
    if (config.kind) return {*config.kind};
    return {NoiseKind::AmplitudeDamping, NoiseKind::PhaseDamping};
}

InputStates uniform_inputs() {
    const double h = 1.0 / std::numbers::sqrt2;
    return InputStates::make({h, h}, {0.5, 0.5, 0.5, 0.5});
}

}  // namespace

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

InputStates normalize_cli_inputs(const std::array<double, 2> &alpha, const std::array<double, 4> &beta,
                                 std::ostream &warn) {
    const auto a = rescale_if_close(alpha, "alpha", warn);
    const auto b = rescale_if_close(beta, "beta", warn);
    return InputStates::make({a[0], a[1]}, {b[0], b[1], b[2], b[3]}, kExactNorm);
}

void validate(const SweepConfig &config) {
    if (!(0.0 <= config.eta_start && config.eta_start <= config.eta_stop && config.eta_stop <= 1.0)) {
        throw std::invalid_argument("need 0 <= eta-start <= eta-stop <= 1");
    }
    if (config.eta_steps < 2) throw std::invalid_argument("need --steps >= 2");
}

std::vector<InputStates> default_real_inputs() {
    const double r3 = std::sqrt(3.0) / 2.0;
    const double h = 1.0 / std::numbers::sqrt2;
    return {
        uniform_inputs(),
        InputStates::make({0.5, r3}, {0.5, 0.0, 0.0, r3}),
        InputStates::make({1.0, 0.0}, {1.0, 0.0, 0.0, 0.0}),
        InputStates::make({0.6, 0.8}, {0.1, 0.3, 0.5, std::sqrt(0.65)}),
        InputStates::make({0.8, -0.6}, {h, 0.0, 0.0, h}),
        InputStates::make({0.28, 0.96}, {-0.5, 0.5, 0.5, 0.5}),
    };
}

std::vector<InputStates> default_input_suite(std::uint64_t seed) {
    const double h = 1.0 / std::numbers::sqrt2;
    const double r3 = std::sqrt(3.0) / 2.0;
    std::vector<InputStates> suite{
        InputStates::make({1.0, 0.0}, {1.0, 0.0, 0.0, 0.0}),
        InputStates::make({0.0, 1.0}, {0.0, 0.0, 0.0, 1.0}),
        InputStates::make({h, h}, {0.5, 0.5, 0.5, 0.5}),
        InputStates::make({0.5, r3}, {0.5, 0.0, 0.0, r3}),
    };
    BranchSampler rng(seed);
    for (int i = 0; i < 3; ++i) suite.push_back(random_inputs(rng, false));
    for (int i = 0; i < 3; ++i) suite.push_back(random_inputs(rng, true));
    return suite;
}

int cmd_verify_channel(std::ostream &out, const ChannelTable &golden) {
    int passed = 0;
    const double amp = 1.0 / std::sqrt(8.0);
    for (ChannelCode code : ChannelCode::all()) {
        const StateVector s = build_channel(code);
        const auto &kets = golden[static_cast<std::size_t>(code.index())];
        double worst = 0;
        for (std::size_t i = 0; i < s.amplitudes.size(); ++i) {
            const bool listed = std::find(kets.begin(), kets.end(), s.ket(i)) != kets.end();
            worst = std::max(worst, std::abs(s.amplitudes[i] - (listed ? amp : 0.0)));
        }
        auto ops = base_circuit();
        const auto enc = encoding_circuit(code);
        ops.insert(ops.end(), enc.begin(), enc.end());
        const GateCount gates = count_gates(ops);
        const bool ok = worst <= 1e-12;
        passed += ok;
        out << "code " << code.str() << ": " << gates.hadamard << " H + " << gates.cnot << " CNOT, max amplitude error "
            << sci(worst) << "  " << (ok ? "PASS" : "FAIL") << "\n";
    }
    out << "verify-channel: " << passed << "/8 codes pass\n";
    return passed == 8 ? kOk : kVerificationFailure;
}

int cmd_verify_protocol(std::ostream &out, const std::vector<InputStates> &suite, std::uint64_t seed,
                        const ProtocolOptions &options) {
    int pairs = 0, passed = 0;
    constexpr int kShownFailures = 8;
    for (std::size_t k = 0; k < suite.size(); ++k) {
        out << "input " << k << ": " << describe(suite[k]) << "\n";
        for (ChannelCode code : ChannelCode::all()) {
            const auto results = enumerate_branches(suite[k], code, options);
            double psum = 0, min_a = 1, min_b = 1;
            std::vector<const ReconstructionResult *> failures;
            for (const auto &r : results) {
                psum += r.probability;
                min_a = std::min(min_a, r.fidelity_A);
                min_b = std::min(min_b, r.fidelity_B);
                if (std::abs(r.fidelity_A - 1) > kFidelityTolerance || std::abs(r.fidelity_B - 1) > kFidelityTolerance) {
                    failures.push_back(&r);
                }
            }
            const bool ok = failures.empty() && std::abs(psum - 1) <= kFidelityTolerance;
            ++pairs;
            passed += ok;
            out << "  code " << code.str() << ": " << results.size() << " branches, prob sum " << fixed(psum)
                << ", min F_A " << fixed(min_a) << ", min F_B " << fixed(min_b) << "  " << (ok ? "PASS" : "FAIL")
                << "\n";
            for (std::size_t i = 0; i < failures.size() && i < kShownFailures; ++i) {
                out << "    FAIL branch " << failures[i]->branch.str() << " F_A=" << fixed(failures[i]->fidelity_A)
                    << " F_B=" << fixed(failures[i]->fidelity_B) << "\n";
            }
            if (failures.size() > kShownFailures) {
                out << "    ... " << failures.size() - kShownFailures << " more failing branches\n";
            }
        }
    }

    // Sampled runs use the same pipeline with outcomes drawn from the seed.
    int sampled_ok = 0, sampled_total = 0;
    for (std::size_t k = 0; k < suite.size(); ++k) {
        for (ChannelCode code : ChannelCode::all()) {
            const auto r = run_protocol(suite[k], code, Sampled{seed + k * 8 + std::uint64_t(code.index())}, options);
            ++sampled_total;
            const bool ok =
                std::abs(r.fidelity_A - 1) <= kFidelityTolerance && std::abs(r.fidelity_B - 1) <= kFidelityTolerance;
            sampled_ok += ok;
            if (!ok) {
                out << "sampled run input " << k << " code " << code.str() << " branch " << r.branch.str()
                    << " FAIL\n";
            }
        }
    }
    out << "sampled runs: " << sampled_ok << "/" << sampled_total << " pass (seed " << seed << ")\n";
    out << "verify-protocol: " << passed << "/" << pairs << " input/code pairs pass\n";
    return passed == pairs && sampled_ok == sampled_total ? kOk : kVerificationFailure;
}

std::string sweep_csv(const SweepConfig &config) {
    validate(config);
    const InputStates inputs = config.inputs.value_or(uniform_inputs());
    const auto grid = eta_grid(config.eta_start, config.eta_stop, config.eta_steps);

    struct Row {
        NoiseKind kind;
        double eta;
    };
    std::vector<Row> rows;
    for (NoiseKind kind : kinds_of(config)) {
        for (double eta : grid) rows.push_back({kind, eta});
    }

    std::vector<std::future<std::string>> lines;
    lines.reserve(rows.size());
    for (const Row &row : rows) {
        lines.push_back(std::async(std::launch::async, [&inputs, &config, row] {
            const NoiseSpec spec = NoiseSpec::make(row.kind, row.eta);
            const double sim = fidelity_sim(inputs, config.code, spec);
            const double closed = f_closed(inputs, spec);
            std::string line = format_number(row.eta) + "," + to_string(row.kind);
            for (auto a : inputs.alpha) line += "," + format_number(a.real());
            for (auto b : inputs.beta) line += "," + format_number(b.real());
            line += "," + config.code.str() + "," + format_number(sim) + "," + format_number(closed) + "," +
                    format_number(std::abs(sim - closed)) + "\n";
            return line;
        }));
    }

    std::string csv = "eta,kind,alpha0,alpha1,beta00,beta01,beta10,beta11,code,f_sim,f_closed,abs_diff\n";
    for (auto &l : lines) csv += l.get();
    return csv;
}

int cmd_sweep(const SweepConfig &config, std::ostream &out, std::ostream &err) {
    const std::string csv = sweep_csv(config);
    if (config.out_path.empty()) {
        out << csv;
        return kOk;
    }
    std::ofstream file(config.out_path, std::ios::binary);
    if (!file) {
        err << "error: cannot open '" << config.out_path << "' for writing\n";
        return kVerificationFailure;
    }
    file << csv;
    file.close();
    if (!file) {
        err << "error: failed writing '" << config.out_path << "'\n";
        return kVerificationFailure;
    }
    return kOk;
}

int cmd_compare(const SweepConfig &config, std::ostream &out) {
    validate(config);
    const std::vector<InputStates> inputs =
        config.inputs ? std::vector<InputStates>{*config.inputs} : default_real_inputs();
    const auto grid = eta_grid(config.eta_start, config.eta_stop, config.eta_steps);
    const ComparisonReport report = compare_closed_forms(inputs, grid, config.code, kinds_of(config));

    out << "simulator vs closed form, code " << config.code.str() << ", " << grid.size() << " eta points on ["
        << format_number(config.eta_start) << ", " << format_number(config.eta_stop) << "]\n";
    for (std::size_t k = 0; k < inputs.size(); ++k) out << "input " << k << ": " << describe(inputs[k]) << "\n";
    out << "kind input  max|f_sim-f_closed|  max|rho_sim-rho_closed|  max|branch0*256-rho_closed|  branch spread\n";
    for (NoiseKind kind : kinds_of(config)) {
        for (std::size_t k = 0; k < inputs.size(); ++k) {
            double df = 0, dr = 0, d0 = 0, spread = 0;
            bool closed = false;
            for (const auto &p : report.points) {
                if (p.kind != kind || p.input_index != k) continue;
                spread = std::max(spread, p.branch_deviation);
                if (!p.f_closed) continue;
                closed = true;
                df = std::max(df, std::abs(p.f_sim - *p.f_closed));
                dr = std::max(dr, *p.rho_deviation);
                d0 = std::max(d0, *p.first_branch_deviation);
            }
            out << to_string(kind) << "   " << k << "      ";
            if (closed) {
                out << sci(df) << "            " << sci(dr) << "                " << sci(d0) << "                  ";
            } else {
                out << "unsupported          unsupported              unsupported                ";
            }
            out << sci(spread) << "\n";
        }
    }

    const bool ok = report.agrees(kAgreementTolerance);
    out << "max |f_sim - f_closed| = " << sci(report.max_fidelity_deviation());
    if (const auto *w = report.worst_fidelity_point()) {
        out << " at kind=" << to_string(w->kind) << " eta=" << format_number(w->eta) << " input " << w->input_index
            << " (f_sim=" << format_number(w->f_sim) << ", f_closed=" << format_number(*w->f_closed) << ")";
    }
    out << "\nmax |rho_sim - rho_closed| = " << sci(report.max_rho_deviation());
    if (const auto *w = report.worst_rho_point()) {
        out << " at kind=" << to_string(w->kind) << " eta=" << format_number(w->eta) << " input " << w->input_index;
    }
    out << "\nmax |256*branch(0,00,++,++,+) - rho_closed| = " << sci(report.max_first_branch_deviation())
        << "\nmax branch spread |256*branch - rho_sim| = " << sci(report.max_branch_deviation()) << "\n";
    if (ok) {
        out << "compare: AGREEMENT within " << sci(kAgreementTolerance) << "\n";
        return kOk;
    }
    out << "compare: DISCREPANCY exceeds " << sci(kAgreementTolerance)
        << " (closed forms do not match the branch-summed simulation)\n";
    return kVerificationFailure;
}

int cmd_tables(std::ostream &out) {
    out << "X corrections from Z outcomes\n";
    out << "a0  b2b3  on (b0)(b1)(a1)(a2)\n";
    for (int zi = 0; zi < 8; ++zi) {
        const ZBits z{(zi >> 2) & 1, (zi >> 1) & 1, zi & 1};
        out << z[0] << "   " << z[1] << z[2] << "    " << x_correction(z).str() << "\n";
    }
    out << "\nZ corrections from X outcomes\n";
    out << "A0A1  B0B1  on (b0)(b1)(a1)(a2)\n";
    auto sign = [](int s) { return s ? '-' : '+'; };
    for (int xi = 0; xi < 16; ++xi) {
        const XSigns x{(xi >> 3) & 1, (xi >> 2) & 1, (xi >> 1) & 1, xi & 1};
        out << sign(x[0]) << sign(x[1]) << "    " << sign(x[2]) << sign(x[3]) << "    " << z_correction(x).str()
            << "\n";
    }
    out << "\nController corrections\n";
    out << "code  c   on (b0)(b1)(a1)(a2)\n";
    for (ChannelCode code : ChannelCode::all()) {
        for (int c = 0; c < 2; ++c) {
            out << code.str() << "   " << sign(c) << "   ";
            const auto options = final_correction_options(code, c);
            for (std::size_t i = 0; i < options.size(); ++i) out << (i ? " OR " : "") << options[i].str();
            out << "\n";
        }
    }
    return kOk;
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Bidirectional controlled teleportation over an eight-qubit channel"};
    app.require_subcommand(1);

    auto *verify_channel = app.add_subcommand("verify-channel", "Check all 8 controller encodings of the channel");
    auto *verify_protocol = app.add_subcommand("verify-protocol", "Exhaustively check every measurement branch");
    auto *sweep = app.add_subcommand("sweep", "Fidelity vs decoherence rate as CSV");
    auto *compare = app.add_subcommand("compare", "Simulator vs closed-form fidelities and states");
    auto *tables = app.add_subcommand("tables", "Print the implemented correction tables");

    std::string kind_text, code_text = "001", out_path;
    double eta_start = 0.0, eta_stop = 1.0;
    int steps = 21;
    std::array<double, 2> alpha{0, 0};
    std::array<double, 4> beta{0, 0, 0, 0};
    std::uint64_t seed = 20240917;
    std::vector<CLI::Option *> amp_opts;

    auto add_amplitudes = [&](CLI::App *sub) {
        amp_opts.push_back(sub->add_option("--alpha0", alpha[0], "alpha0 (real)"));
        amp_opts.push_back(sub->add_option("--alpha1", alpha[1], "alpha1 (real)"));
        amp_opts.push_back(sub->add_option("--beta00", beta[0], "beta00 (real)"));
        amp_opts.push_back(sub->add_option("--beta01", beta[1], "beta01 (real)"));
        amp_opts.push_back(sub->add_option("--beta10", beta[2], "beta10 (real)"));
        amp_opts.push_back(sub->add_option("--beta11", beta[3], "beta11 (real)"));
    };
    auto add_grid = [&](CLI::App *sub) {
        sub->add_option("--kind", kind_text, "Noise model (default: both)")->check(CLI::IsMember({"ad", "pd"}));
        sub->add_option("--eta-start", eta_start, "First decoherence rate")->capture_default_str();
        sub->add_option("--eta-stop", eta_stop, "Last decoherence rate")->capture_default_str();
        sub->add_option("--steps", steps, "Grid points, endpoints included")->capture_default_str();
        sub->add_option("--code", code_text, "Channel code 000..111")->capture_default_str();
        add_amplitudes(sub);
    };
    add_amplitudes(verify_protocol);
    verify_protocol->add_option("--seed", seed, "Seed for random inputs and sampled runs")->capture_default_str();
    add_grid(sweep);
    sweep->add_option("--out", out_path, "CSV output path (default: stdout)");
    add_grid(compare);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    bool amplitudes_given = false;
    for (auto *o : amp_opts) amplitudes_given |= o->count() > 0;

    SweepConfig config;
    try {
        if (amplitudes_given) config.inputs = normalize_cli_inputs(alpha, beta, err);
        if (!kind_text.empty()) config.kind = parse_noise_kind(kind_text);
        config.code = ChannelCode::parse(code_text);
        config.eta_start = eta_start;
        config.eta_stop = eta_stop;
        config.eta_steps = steps;
        config.out_path = out_path;
        if (*sweep || *compare) validate(config);
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kUsageError;
    }

    if (*verify_channel) return cmd_verify_channel(out);
    if (*verify_protocol) {
        const auto suite = config.inputs ? std::vector<InputStates>{*config.inputs} : default_input_suite(seed);
        return cmd_verify_protocol(out, suite, seed);
    }
    if (*sweep) return cmd_sweep(config, out, err);
    if (*compare) return cmd_compare(config, out);
    if (*tables) return cmd_tables(out);
    return kUsageError;
}

}  // namespace bcqt::cli
