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

#include "qrt/sim/state_vector.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qrt::sim {

namespace {
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;
}

const Gate1& gateMatrix(std::string_view name) {
    static const Gate1 h{kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
    static const Gate1 x{0, 1, 1, 0};
    static const Gate1 y{0, Amplitude(0, -1), Amplitude(0, 1), 0};
    static const Gate1 z{1, 0, 0, -1};
    static const Gate1 s{1, 0, 0, Amplitude(0, 1)};
    static const Gate1 t{1, 0, 0, Amplitude(kInvSqrt2, kInvSqrt2)};
    if (name == "H") return h;
    if (name == "X") return x;
    if (name == "Y") return y;
    if (name == "Z") return z;
    if (name == "S") return s;
    if (name == "T") return t;
    throw std::invalid_argument("unknown single-qubit gate: " + std::string(name));
}

int StateVector::allocate(int count) {
    int first = wires_;
    wires_ += count;
    amps_.resize(size_t{1} << wires_, Amplitude(0, 0));
    // new wires carry value 0: existing amplitudes already sit at indices
    // whose new high bits are zero
    return first;
}

void StateVector::release(int wire, bool value) {
    size_t bit = size_t{1} << wire;
    size_t newSize = amps_.size() >> 1;
    std::vector<Amplitude> next(newSize);
    for (size_t k = 0; k < newSize; ++k) {
        size_t low = k & (bit - 1);
        size_t high = (k & ~(bit - 1)) << 1;
        size_t src = high | (value ? bit : 0) | low;
        next[k] = amps_[src];
    }
    amps_ = std::move(next);
    --wires_;
    // renormalize residual numeric noise away
    double n = 0;
    for (const auto& a : amps_) n += std::norm(a);
    if (n > 0) {
        double inv = 1.0 / std::sqrt(n);
        for (auto& a : amps_) a *= inv;
    }
}

void StateVector::apply1(int wire, const Gate1& g) {
    size_t bit = size_t{1} << wire;
    for (size_t k = 0; k < amps_.size(); ++k) {
        if (k & bit) continue;
        Amplitude a0 = amps_[k];
        Amplitude a1 = amps_[k | bit];
        amps_[k] = g.m00 * a0 + g.m01 * a1;
        amps_[k | bit] = g.m10 * a0 + g.m11 * a1;
    }
}

void StateVector::applyControlledX(const std::vector<int>& controls, int target) {
    size_t targetBit = size_t{1} << target;
    size_t controlMask = 0;
    for (int c : controls) controlMask |= size_t{1} << c;
    for (size_t k = 0; k < amps_.size(); ++k) {
        if ((k & controlMask) != controlMask) continue;
        if (k & targetBit) continue;
        std::swap(amps_[k], amps_[k | targetBit]);
    }
}

double StateVector::probOne(int wire) const {
    size_t bit = size_t{1} << wire;
    double p = 0;
    for (size_t k = 0; k < amps_.size(); ++k)
        if (k & bit) p += std::norm(amps_[k]);
    return p;
}

void StateVector::collapse(int wire, bool outcome, double prob) {
    size_t bit = size_t{1} << wire;
    double inv = prob > 0 ? 1.0 / std::sqrt(prob) : 0.0;
    for (size_t k = 0; k < amps_.size(); ++k) {
        bool isOne = (k & bit) != 0;
        if (isOne != outcome)
            amps_[k] = 0;
        else
            amps_[k] *= inv;
    }
}

double StateVector::norm() const {
    double n = 0;
    for (const auto& a : amps_) n += std::norm(a);
    return n;
}

}  // namespace qrt::sim
