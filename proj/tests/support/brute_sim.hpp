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

// Brute-force reference interpreter used as an independent oracle for the
// production simulator. It evolves an unnormalized state with explicitly
// constructed full operator matrices, forks a complete state copy at every
// measurement (MultiM expanded into a sequence of M's), never renormalizes
// and never prunes; leaf probability is the squared norm of the projected
// state.

#pragma once

#include "qrt/ast.hpp"

#include <map>
#include <string>
#include <vector>

namespace qrt::testing {

struct BruteDistribution {
    std::map<std::vector<std::string>, double> probabilities;
};

/// Throws std::runtime_error on runtime failures; intended for small valid
/// programs (<= 3 qubits, few measurements).
BruteDistribution bruteForceDistribution(const syntax::Program& p, const std::string& entry);

}  // namespace qrt::testing
