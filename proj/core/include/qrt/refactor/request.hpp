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

#include "qrt/analysis/stmt_index.hpp"
#include "qrt/ast.hpp"
#include "qrt/diag.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qrt::refactor {

enum class RefactoringKind {
    Rename,
    ChangeSignature,
    ExtractOperation,
    ExtractFunctionFromOperation,
    ExtractNamespace,
    InlineCallable,
    SplitOperation,
    MergeOperations,
    ParameterizeOperation,
    SpecializeOperation,
    MergeGates,
    ReplaceGate,
    ReorderInstructions,
    OrderQubits,
    ConsolidateMeasurements,
    UnrollLoop,
    RollLoop,
    RemoveUnused,
    RemoveCodeDuplication,
};

/// Target addressing: `Namespace.Callable` for symbols (optionally narrowed
/// to a local with `symbolName`), `Namespace.Callable:<path>[..<path>]` for
/// statement ranges.
struct Target {
    std::string qualifiedName;  // Namespace.Callable, namespace part may be dotted
    std::string symbolName;     // optional local symbol within the callable
    std::optional<analysis::StmtPath> pathLo;
    std::optional<analysis::StmtPath> pathHi;  // defaults to pathLo

    bool isRange() const { return pathLo.has_value(); }
};

/// Parses the target grammar; the namespace/callable split happens against
/// the program during application.
std::optional<Target> parseTarget(std::string_view text);

struct RefactoringRequest {
    RefactoringKind kind = RefactoringKind::Rename;
    Target target;
    std::map<std::string, std::string> args;

    std::optional<std::string> arg(const std::string& key) const {
        auto it = args.find(key);
        if (it == args.end()) return std::nullopt;
        return it->second;
    }
};

struct EditResult {
    syntax::Program program;  // on failure, structurally equal to the input
    std::vector<std::string> changes;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return diagnostics.empty(); }
};

}  // namespace qrt::refactor
