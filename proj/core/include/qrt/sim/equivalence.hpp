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

#include "qrt/ast.hpp"
#include "qrt/sim/simulator.hpp"

#include <optional>
#include <string>

namespace qrt::sim {

inline constexpr double kProbTolerance = 1e-9;

struct EquivalenceVerdict {
    enum class Kind { Equivalent, Inequivalent, Inconclusive };

    Kind kind = Kind::Inconclusive;
    // Inequivalent: a concrete witness
    std::vector<std::string> witnessTrace;
    double probA = 0.0;
    double probB = 0.0;
    // Inconclusive: the resource limit or failure that was hit
    std::string reason;

    bool equivalent() const { return kind == Kind::Equivalent; }
};

std::string describe(const EquivalenceVerdict& v);

/// Compares observable behavior of the two programs at the given entry:
/// trace distributions must have identical key sets with per-key probability
/// difference within 1e-9. Measurement- and Message-free entries taking
/// qubit parameters are compared as unitaries up to global phase instead.
EquivalenceVerdict checkEquivalence(const syntax::Program& a, const syntax::Program& b,
                                    const std::string& entry, const Limits& limits = {});

/// As above with per-side entry names (used when a refactoring renames the
/// entry point itself).
EquivalenceVerdict checkEquivalence(const syntax::Program& a, const std::string& entryA,
                                    const syntax::Program& b, const std::string& entryB,
                                    const Limits& limits = {});

/// Full form with per-side entry names and Int arguments, used when an edit
/// changes the entry's own signature (the added value is threaded through).
EquivalenceVerdict checkEquivalence(const syntax::Program& a, const std::string& entryA,
                                    const std::vector<long long>& argsA,
                                    const syntax::Program& b, const std::string& entryB,
                                    const std::vector<long long>& argsB, const Limits& limits);

}  // namespace qrt::sim
