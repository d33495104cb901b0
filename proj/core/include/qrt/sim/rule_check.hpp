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

#include "qrt/refactor/gate_rules.hpp"

namespace qrt::sim {

/// Verifies one gate-rule: both sides are built into operations over fresh
/// qubits and their unitaries must agree up to global phase within 1e-12.
bool matrixRuleCheck(const refactor::GateRule& rule);

/// Checks the whole builtin table (used at startup and by the acceptance
/// suite).
bool verifyGateRuleTable();

}  // namespace qrt::sim
