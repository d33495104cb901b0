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

#include "qrt/analysis/symbols.hpp"

#include <optional>
#include <vector>

namespace qrt::analysis {

/// Syntactic reference to (part of) a qubit binding. Two references conflict
/// when they may denote the same qubit: same binding and either one covers
/// the whole array or a slice, or the indices are equal constants; distinct
/// non-constant indices conservatively conflict.
struct QubitRef {
    enum class Kind { Whole, ConstIndex, DynIndex, Slice };
    SymbolId binding = -1;
    Kind kind = Kind::Whole;
    long long index = 0;  // ConstIndex only
    const syntax::Expr* site = nullptr;
};

bool conflicts(const QubitRef& a, const QubitRef& b);

/// Collects the qubit references named by an argument expression of qubit
/// (array) type.
std::vector<QubitRef> collectQubitRefs(const syntax::Expr& e, const SymbolTable& symbols);

/// Static quantum-safety diagnostics: duplicated qubit operands in one gate
/// application, control/target overlap in Controlled applications, and
/// quantum constructs inside `function` bodies.
std::vector<Diagnostic> checkQuantumSafety(const syntax::Program& p, const SymbolTable& symbols);

}  // namespace qrt::analysis
