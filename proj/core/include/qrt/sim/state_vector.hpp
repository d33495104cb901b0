// Copyright 2026 The qrt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <string_view>
#include <vector>

namespace qrt::sim {

using Amplitude = std::complex<double>;

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kMatrixTolerance = 1e-12;
inline constexpr double kBranchPruneThreshold = 1e-12;

/// 2x2 unitary in row-major order.
struct Gate1 {
    Amplitude m00, m01, m10, m11;
};

const Gate1& gateMatrix(std::string_view name);  // H X Y Z S T

/// Dense statevector over a dynamic number of wires. Wire w corresponds to
/// bit w of the amplitude index (wire 0 is the least significant bit).
class StateVector {
public:
    StateVector() : amps_{1.0} {}

    int wireCount() const { return wires_; }
    const std::vector<Amplitude>& amplitudes() const { return amps_; }
    std::vector<Amplitude>& amplitudes() { return amps_; }

    /// Appends `count` fresh |0> wires; returns the first new wire index.
    int allocate(int count);

    /// Removes a wire that is in a computational basis state with the given
    /// value (projects and renormalizes; caller checks legality).
    void release(int wire, bool value);

    void apply1(int wire, const Gate1& g);

    /// Multi-controlled X: flips `target` on components where all controls
    /// are 1.
    void applyControlledX(const std::vector<int>& controls, int target);

    /// Probability of measuring 1 on the wire.
    double probOne(int wire) const;

    /// Collapses to the given outcome and renormalizes by the supplied
    /// outcome probability.
    void collapse(int wire, bool outcome, double prob);

    double norm() const;

private:
    int wires_ = 0;
    std::vector<Amplitude> amps_;
};

}  // namespace qrt::sim
