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

#include <string>
#include <string_view>
#include <vector>

namespace qrt::refactor {

/// One gate pattern: a builtin gate name plus operand slots. Slots are
/// placeholder indices; a rule like {CNOT(0,1)} -> {Controlled X([0], 1)}
/// matches any operands bound consistently to the slots.
struct GatePattern {
    std::string gate;           // H X Y Z S T CNOT, or CX for Controlled X
    std::vector<int> operands;  // slot indices
};

/// Rewrite rule over adjacent gate statements on identical operands.
/// Reduction rules drive merge_gates; substitution rules drive replace_gate.
struct GateRule {
    enum class Kind { Reduction, Substitution };

    std::string name;  // stable kebab-case id
    Kind kind;
    std::vector<GatePattern> lhs;
    std::vector<GatePattern> rhs;
    int slotCount = 1;
};

/// The built-in rule table. Every rule is unitary-equivalent up to global
/// phase, verified against the matrix oracle (see matrixRuleCheck).
const std::vector<GateRule>& gateRuleTable();

const GateRule* findGateRule(std::string_view name);

}  // namespace qrt::refactor
