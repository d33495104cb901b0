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
#include "qrt/diag.hpp"

#include <map>
#include <string>
#include <vector>

namespace qrt::sim {

struct Limits {
    int maxQubits = 12;
    int maxBranches = 4096;
    long long maxSteps = 1'000'000;
};

/// Finite map from observable output trace (ordered Message strings) to
/// probability. Keys are exact strings after interpolation.
struct TraceDistribution {
    std::map<std::vector<std::string>, double> probabilities;
    double prunedMass = 0.0;

    double total() const;
};

/// JSON form: [{"trace": [...], "p": ...}, ...] sorted by trace.
std::string toJson(const TraceDistribution& dist);

/// Executes the entry callable by exhaustive measurement branching. The
/// entry must take no parameters or only Int parameters supplied as
/// literals via `entryArgs`. Deterministic: no randomness anywhere.
Outcome<TraceDistribution> runDistribution(const syntax::Program& p, const std::string& entry,
                                           const Limits& limits = {},
                                           const std::vector<long long>& entryArgs = {});

}  // namespace qrt::sim
