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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bcqt/errors.h"

namespace bcqt {

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

// Eigenvector of (basis, outcome) as (<0|e>, <1|e>).
std::pair<Amplitude, Amplitude> eigenvector(Basis basis, int outcome) {
    if (outcome != 0 && outcome != 1) {
        throw std::invalid_argument("measurement outcome must be 0 or 1");
    }
    if (basis == Basis::Z) {
        return outcome == 0 ? std::pair<Amplitude, Amplitude>{1.0, 0.0}
                            : std::pair<Amplitude, Amplitude>{0.0, 1.0};
    }
    return {kInvSqrt2, outcome == 0 ? kInvSqrt2 : -kInvSqrt2};
}

}  // namespace

Register::Register(std::vector<std::string> labels) : labels_(std::move(labels)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i].empty()) {
            throw std::invalid_argument("qubit labels must be non-empty");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (labels_[i] == labels_[j]) {
                throw std::invalid_argument("duplicate qubit label '" + labels_[i] + "'");
            }
        }
    }
    if (labels_.size() > 30) {
        throw std::invalid_argument("register too large for dense storage");
    }
}

Register Register::protocol() {
    return Register({"a0", "b0", "b1", "a1", "a2", "c", "b2", "b3", "A0", "A1", "B0", "B1"});
}

Register Register::channel() { return Register({"a0", "b0", "b1", "a1", "a2", "c", "b2", "b3"}); }

bool Register::contains(std::string_view name) const {
    return std::find(labels_.begin(), labels_.end(), name) != labels_.end();
}

std::size_t Register::position(std::string_view name) const {
    auto it = std::find(labels_.begin(), labels_.end(), name);
    if (it == labels_.end()) {
        throw std::invalid_argument("unknown qubit '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

Register Register::without(std::string_view name) const {
    std::vector<std::string> rest;
    rest.reserve(labels_.size());
    position(name);
    for (const auto &l : labels_) {
        if (l != name) rest.push_back(l);
    }
    return Register(std::move(rest));
}

Register Register::concat(const Register &other) const {
    std::vector<std::string> all = labels_;
    all.insert(all.end(), other.labels_.begin(), other.labels_.end());
    return Register(std::move(all));
}

StateVector::StateVector(Register r, std::vector<Amplitude> amps)
    : reg(std::move(r)), amplitudes(std::move(amps)) {
    if (amplitudes.size() != reg.dimension()) {
        throw std::invalid_argument("amplitude count does not match register dimension");
    }
}

double StateVector::norm2() const {
    double s = 0;
    for (const auto &a : amplitudes) s += std::norm(a);
    return s;
}

Amplitude StateVector::amplitude(std::string_view bits) const {
    if (bits.size() != reg.size()) {
        throw std::invalid_argument("bitstring length does not match register size");
    }
    std::size_t index = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("bitstring must contain only 0/1");
        index = (index << 1) | static_cast<std::size_t>(ch - '0');
    }
    return amplitudes[index];
}

std::string StateVector::ket(std::size_t index) const {
    std::string s(reg.size(), '0');
    for (std::size_t p = 0; p < reg.size(); ++p) {
        if ((index >> (reg.size() - 1 - p)) & 1) s[p] = '1';
    }
    return s;
}

StateVector StateVector::scaled(Amplitude factor) const {
    StateVector out = *this;
    for (auto &a : out.amplitudes) a *= factor;
    return out;
}

StateVector StateVector::normalized() const {
    const double n2 = norm2();
    if (n2 <= 0) throw std::invalid_argument("cannot normalize a zero vector");
    return scaled(1.0 / std::sqrt(n2));
}

double PureEnsemble::total_weight() const {
    double w = 0;
    for (const auto &c : components) w += c.norm2();
    return w;
}

const Register &PureEnsemble::reg() const {
    if (components.empty()) throw std::invalid_argument("empty ensemble");
    return components.front().reg;
}

StateVector basis_state(const Register &reg, std::string_view bits) {
    StateVector s(reg, std::vector<Amplitude>(reg.dimension(), 0.0));
    if (bits.size() != reg.size()) {
        throw std::invalid_argument("bitstring length does not match register size");
    }
    std::size_t index = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("bitstring must contain only 0/1");
        index = (index << 1) | static_cast<std::size_t>(ch - '0');
    }
    s.amplitudes[index] = 1.0;
    return s;
}

StateVector apply_single(const StateVector &state, std::string_view qubit, Gate gate) {
    const std::size_t mask = std::size_t{1} << state.reg.bit(qubit);
    StateVector out = state;
    auto &v = out.amplitudes;
    switch (gate) {
        case Gate::I:
            break;
        case Gate::X:
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (!(i & mask)) std::swap(v[i], v[i | mask]);
            }
            break;
        case Gate::Z:
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i & mask) v[i] = -v[i];
            }
            break;
        case Gate::H:
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i & mask) continue;
                const Amplitude a = v[i];
                const Amplitude b = v[i | mask];
                v[i] = (a + b) * kInvSqrt2;
                v[i | mask] = (a - b) * kInvSqrt2;
            }
            break;
    }
    return out;
}

StateVector apply_cnot(const StateVector &state, std::string_view control, std::string_view target) {
    if (control == target) throw std::invalid_argument("CNOT control and target must differ");
    const std::size_t cmask = std::size_t{1} << state.reg.bit(control);
    const std::size_t tmask = std::size_t{1} << state.reg.bit(target);
    StateVector out = state;
    auto &v = out.amplitudes;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if ((i & cmask) && !(i & tmask)) std::swap(v[i], v[i | tmask]);
    }
    return out;
}

StateVector apply_operator(const StateVector &state, std::string_view qubit, const Eigen::Matrix2cd &op) {
    const std::size_t mask = std::size_t{1} << state.reg.bit(qubit);
    StateVector out = state;
    auto &v = out.amplitudes;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i & mask) continue;
        const Amplitude a = v[i];
        const Amplitude b = v[i | mask];
        v[i] = op(0, 0) * a + op(0, 1) * b;
        v[i | mask] = op(1, 0) * a + op(1, 1) * b;
    }
    return out;
}

Projection project(const StateVector &state, std::string_view qubit, Basis basis, int outcome) {
    const std::size_t mask = std::size_t{1} << state.reg.bit(qubit);
    const auto [e0, e1] = eigenvector(basis, outcome);
    StateVector out = state;
    auto &v = out.amplitudes;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i & mask) continue;
        // |e><e| applied to the (i, i|mask) pair.
        const Amplitude overlap = std::conj(e0) * v[i] + std::conj(e1) * v[i | mask];
        v[i] = e0 * overlap;
        v[i | mask] = e1 * overlap;
    }
    const double in = state.norm2();
    const double p = in > 0 ? out.norm2() / in : 0.0;
    return {std::move(out), p};
}

StateVector discard(const StateVector &state, std::string_view qubit, Basis basis, int outcome,
                    double tolerance) {
    const std::size_t bit = state.reg.bit(qubit);
    const std::size_t mask = std::size_t{1} << bit;
    const auto [e0, e1] = eigenvector(basis, outcome);
    const std::size_t low = mask - 1;

    StateVector rest(state.reg.without(qubit),
                     std::vector<Amplitude>(state.amplitudes.size() / 2, 0.0));
    double residual = 0;
    for (std::size_t j = 0; j < rest.amplitudes.size(); ++j) {
        const std::size_t i0 = ((j & ~low) << 1) | (j & low);
        const std::size_t i1 = i0 | mask;
        const Amplitude a0 = state.amplitudes[i0];
        const Amplitude a1 = state.amplitudes[i1];
        Amplitude r;
        if (basis == Basis::Z) {
            r = outcome == 0 ? a0 : a1;
        } else {
            r = std::conj(e0) * a0 + std::conj(e1) * a1;
        }
        rest.amplitudes[j] = r;
        residual += std::norm(a0 - e0 * r) + std::norm(a1 - e1 * r);
    }
    if (std::sqrt(residual) > tolerance) {
        throw DisentanglementError("qubit '" + std::string(qubit) +
                                   "' is not in the asserted product state (residual " +
                                   std::to_string(std::sqrt(residual)) + ")");
    }
    return rest;
}

Amplitude inner(const StateVector &a, const StateVector &b) {
    if (!(a.reg == b.reg)) throw std::invalid_argument("register mismatch in inner product");
    Amplitude s = 0;
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
        s += std::conj(a.amplitudes[i]) * b.amplitudes[i];
    }
    return s;
}

StateVector tensor(const StateVector &a, const StateVector &b) {
    StateVector out(a.reg.concat(b.reg),
                    std::vector<Amplitude>(a.amplitudes.size() * b.amplitudes.size()));
    const std::size_t nb = b.amplitudes.size();
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i) {
        for (std::size_t j = 0; j < nb; ++j) {
            out.amplitudes[i * nb + j] = a.amplitudes[i] * b.amplitudes[j];
        }
    }
    return out;
}

double fidelity_pure(const StateVector &target, const PureEnsemble &rho) {
    double f = 0;
    for (const auto &v : rho.components) {
        if (!(v.reg == target.reg)) throw std::invalid_argument("register mismatch in fidelity");
        f += std::norm(inner(target, v));
    }
    return f;
}

ComplexMatrix outer(const StateVector &v) {
    Eigen::Map<const Eigen::VectorXcd> col(v.amplitudes.data(),
                                           static_cast<Eigen::Index>(v.amplitudes.size()));
    return col * col.adjoint();
}

ComplexMatrix reduced_density(const StateVector &state, const std::vector<std::string> &keep) {
    const std::size_t n = state.reg.size();
    std::vector<std::size_t> keep_bits;
    std::size_t keep_mask = 0;
    for (const auto &q : keep) {
        const std::size_t b = state.reg.bit(q);
        if (keep_mask & (std::size_t{1} << b)) throw std::invalid_argument("duplicate qubit in keep set");
        keep_bits.push_back(b);
        keep_mask |= std::size_t{1} << b;
    }
    const std::size_t k = keep_bits.size();
    const std::size_t rest_dim = std::size_t{1} << (n - k);

    ComplexMatrix m = ComplexMatrix::Zero(Eigen::Index(1) << k, static_cast<Eigen::Index>(rest_dim));
    for (std::size_t i = 0; i < state.amplitudes.size(); ++i) {
        std::size_t row = 0;
        for (std::size_t b : keep_bits) row = (row << 1) | ((i >> b) & 1);
        std::size_t col = 0;
        for (std::size_t b = n; b-- > 0;) {
            if (!(keep_mask & (std::size_t{1} << b))) col = (col << 1) | ((i >> b) & 1);
        }
        m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = state.amplitudes[i];
    }
    return m * m.adjoint();
}

}  // namespace bcqt
