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

#ifndef BCQT_ERRORS_H
#define BCQT_ERRORS_H

#include <stdexcept>
#include <string>

namespace bcqt {

// Invalid arguments (unknown qubit, length mismatch, bad code) are reported
// with std::invalid_argument. The types below cover the domain failures.

/// A qubit asked to be discarded is not in the asserted product state.
class DisentanglementError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A forced measurement outcome has zero probability.
class ZeroProbabilityBranch : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Closed-form evaluators only accept real amplitudes.
class UnsupportedInputs : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// The fidelity difference does not change sign on the search interval.
class NoCrossing : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

}  // namespace bcqt

#endif
