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

#include "qrt/sim/rule_check.hpp"

#include "qrt/parser.hpp"
#include "qrt/sim/state_vector.hpp"
#include "qrt/sim/unitary.hpp"

#include <sstream>

namespace qrt::sim {

using refactor::GatePattern;
using refactor::GateRule;

namespace {

/// Renders one side of a rule as an operation over q0..q{n-1}.
std::string sideSource(const std::vector<GatePattern>& side, int slots) {
    std::ostringstream src;
    src << "namespace RuleCheck {\n    operation Side(";
    for (int i = 0; i < slots; ++i) {
        if (i > 0) src << ", ";
        src << 'q' << i << " : Qubit";
    }
    src << ") : Unit {\n";
    for (const auto& g : side) {
        src << "        ";
        if (g.gate == "CX") {
            src << "Controlled X([q" << g.operands[0] << "], q" << g.operands[1] << ");\n";
        } else {
            src << g.gate << '(';
            for (size_t i = 0; i < g.operands.size(); ++i) {
                if (i > 0) src << ", ";
                src << 'q' << g.operands[i];
            }
            src << ");\n";
        }
    }
    src << "    }\n}\n";
    return src.str();
}

}  // namespace

bool matrixRuleCheck(const GateRule& rule) {
    if (rule.slotCount < 1 || rule.slotCount > 3) return false;
    auto build = [&rule](const std::vector<GatePattern>& side) -> std::optional<Matrix> {
        auto parsed = syntax::parse(sideSource(side, rule.slotCount));
        if (!parsed.ok()) return std::nullopt;
        auto u = unitaryOf(*parsed, "Side", rule.slotCount);
        if (!u.ok()) return std::nullopt;
        return std::move(*u);
    };
    auto lhs = build(rule.lhs);
    auto rhs = build(rule.rhs);
    if (!lhs || !rhs) return false;
    return equalUpToGlobalPhase(*lhs, *rhs, kMatrixTolerance);
}

bool verifyGateRuleTable() {
    for (const auto& rule : refactor::gateRuleTable())
        if (!matrixRuleCheck(rule)) return false;
    return true;
}

}  // namespace qrt::sim
