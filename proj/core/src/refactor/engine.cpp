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

#include "qrt/refactor/engine.hpp"

#include "qrt/analysis/safety.hpp"
#include "qrt/analysis/symbols.hpp"

#include "ops.hpp"

#include <json.hpp>

#include <algorithm>

namespace qrt::refactor {

using namespace syntax;

const std::vector<RefactoringInfo>& catalog() {
    static const std::vector<RefactoringInfo> entries = [] {
        std::vector<RefactoringInfo> v = {
            {RefactoringKind::ChangeSignature,
             "change-signature",
             "Add, remove, or reorder the parameters of an operation definition and in all calls "
             "to that operation.",
             {"Add Parameter", "Remove Parameter", "Reorder Parameters"},
             {"mode"},
             {"name", "type", "default", "permutation"}},
            {RefactoringKind::ConsolidateMeasurements,
             "consolidate-measurements",
             "Consolidate multiple measurements in an operation into a single measurement.",
             {"Consolidate Measurement"},
             {},
             {"name"}},
            {RefactoringKind::ExtractFunctionFromOperation,
             "extract-function-from-operation",
             "Extract a portion of classical code within an operation into a separate function "
             "to promote code reuse and modularity.",
             {"Extract Function from Operation"},
             {"name"},
             {}},
            {RefactoringKind::ExtractNamespace,
             "extract-namespace",
             "Move operations (functions) into a new namespace for better organization.",
             {"Extract Namespace"},
             {"namespace", "callables"},
             {}},
            {RefactoringKind::ExtractOperation,
             "extract-operation",
             "Extract a portion of code into a new operation to promote code reuse and "
             "modularity.",
             {"Extract Operation"},
             {"name"},
             {}},
            {RefactoringKind::InlineCallable,
             "inline-callable",
             "Replace the invocation of an operation or function with its original code to "
             "eliminate unnecessary overhead.",
             {"Inline Operation", "Inline Function into Operation"},
             {},
             {}},
            {RefactoringKind::MergeGates,
             "merge-gates",
             "Combine adjacent gates into a single gate to optimize circuit execution.",
             {"Merge Gate"},
             {},
             {}},
            {RefactoringKind::MergeOperations,
             "merge-operations",
             "Combine multiple operations with similar functionality into a single operation to "
             "eliminate redundancy and improve code organization.",
             {"Merge Operations"},
             {"other", "name"},
             {}},
            {RefactoringKind::OrderQubits,
             "order-qubits",
             "Rearranges the qubit order to optimize for specific quantum algorithms or "
             "hardware.",
             {"Order Qubit"},
             {"permutation"},
             {}},
            {RefactoringKind::ParameterizeOperation,
             "parameterize-operation",
             "Create one operation that uses a parameter for the different values when several "
             "operations do similar things with different values in the operation body.",
             {"Parameterize Operation"},
             {"param"},
             {"others"}},
            {RefactoringKind::RemoveCodeDuplication,
             "remove-code-duplication",
             "Identify and eliminate duplicated code within an operation to improve code "
             "efficiency and maintainability.",
             {"Remove Code Duplication"},
             {"name", "other"},
             {}},
            {RefactoringKind::RemoveUnused,
             "remove-unused",
             "Remove unused variables or operations that are no longer necessary to reduce "
             "clutter and improve code clarity.",
             {"Remove Variable", "Remove Operation"},
             {},
             {}},
            {RefactoringKind::Rename,
             "rename",
             "Change the name of a variable, parameter, or operation throughout and only in its "
             "scope.",
             {"Rename Variable", "Rename Parameter", "Rename Operation"},
             {"name"},
             {}},
            {RefactoringKind::ReorderInstructions,
             "reorder-instructions",
             "Reorder the sequence of instructions within an operation to optimize execution "
             "flow and minimize resource usage.",
             {"Reorder Instructions"},
             {"with"},
             {}},
            {RefactoringKind::ReplaceGate,
             "replace-gate",
             "Replace specific gates with alternative gate sequences or equivalent gates that "
             "are more suitable for a specific quantum hardware platform.",
             {"Replace Gate"},
             {"rule"},
             {}},
            {RefactoringKind::RollLoop,
             "roll-loop",
             "Add classical control by replacing repeated statements with an equivalent loop.",
             {"Introduce Classical Control"},
             {},
             {"var"}},
            {RefactoringKind::SpecializeOperation,
             "specialize-operation",
             "Create specialized versions of an operation for specific use cases to optimize "
             "performance or accommodate specific constraints.",
             {"Specialize Operation"},
             {"name"},
             {}},
            {RefactoringKind::SplitOperation,
             "split-operation",
             "Divide a large operation into smaller, more focused operations to improve code "
             "modularity and maintainability.",
             {"Split Operation"},
             {"split"},
             {}},
            {RefactoringKind::UnrollLoop,
             "unroll-loop",
             "Replaces a loop in an operation with its unrolled equivalent code, improving code "
             "execution efficiency.",
             {"Unroll Loop"},
             {},
             {"limit"}},
        };
        std::sort(v.begin(), v.end(),
                  [](const RefactoringInfo& a, const RefactoringInfo& b) { return a.name < b.name; });
        return v;
    }();
    return entries;
}

const RefactoringInfo* findRefactoring(std::string_view name) {
    for (const auto& info : catalog())
        if (info.name == name) return &info;
    return nullptr;
}

std::optional<Target> parseTarget(std::string_view text) {
    Target t;
    size_t colon = text.find(':');
    std::string_view qualified = text.substr(0, colon);
    if (qualified.empty()) return std::nullopt;
    t.qualifiedName = std::string(qualified);
    if (colon == std::string_view::npos) return t;
    std::string_view pathPart = text.substr(colon + 1);
    if (pathPart.empty()) return std::nullopt;
    size_t dots = pathPart.find("..");
    if (dots == std::string_view::npos) {
        auto p = analysis::parsePath(pathPart);
        if (!p) return std::nullopt;
        t.pathLo = *p;
        return t;
    }
    auto lo = analysis::parsePath(pathPart.substr(0, dots));
    auto hi = analysis::parsePath(pathPart.substr(dots + 2));
    if (!lo || !hi) return std::nullopt;
    t.pathLo = *lo;
    t.pathHi = *hi;
    return t;
}

namespace {

void dispatch(Ctx& ctx) {
    switch (ctx.request.kind) {
        case RefactoringKind::Rename: applyRename(ctx); break;
        case RefactoringKind::ChangeSignature: applyChangeSignature(ctx); break;
        case RefactoringKind::ExtractOperation: applyExtractOperation(ctx); break;
        case RefactoringKind::ExtractFunctionFromOperation: applyExtractFunction(ctx); break;
        case RefactoringKind::ExtractNamespace: applyExtractNamespace(ctx); break;
        case RefactoringKind::InlineCallable: applyInlineCallable(ctx); break;
        case RefactoringKind::SplitOperation: applySplitOperation(ctx); break;
        case RefactoringKind::MergeOperations: applyMergeOperations(ctx); break;
        case RefactoringKind::ParameterizeOperation: applyParameterizeOperation(ctx); break;
        case RefactoringKind::SpecializeOperation: applySpecializeOperation(ctx); break;
        case RefactoringKind::MergeGates: applyMergeGates(ctx); break;
        case RefactoringKind::ReplaceGate: applyReplaceGate(ctx); break;
        case RefactoringKind::ReorderInstructions: applyReorderInstructions(ctx); break;
        case RefactoringKind::OrderQubits: applyOrderQubits(ctx); break;
        case RefactoringKind::ConsolidateMeasurements: applyConsolidateMeasurements(ctx); break;
        case RefactoringKind::UnrollLoop: applyUnrollLoop(ctx); break;
        case RefactoringKind::RollLoop: applyRollLoop(ctx); break;
        case RefactoringKind::RemoveUnused: applyRemoveUnused(ctx); break;
        case RefactoringKind::RemoveCodeDuplication: applyRemoveCodeDuplication(ctx); break;
    }
}

EditResult failResult(const Program& input, std::vector<Diagnostic> diags) {
    EditResult result;
    result.program = clone(input);
    result.diagnostics = std::move(diags);
    return result;
}

}  // namespace

EditResult apply(const Program& input, const RefactoringRequest& request) {
    // shared precondition: the input resolves and is quantum-safe
    auto inputSymbols = analysis::resolve(input);
    if (!inputSymbols.ok()) return failResult(input, std::move(inputSymbols.diagnostics));
    if (auto safety = analysis::checkQuantumSafety(input, *inputSymbols); !safety.empty())
        return failResult(input, std::move(safety));

    Program work = clone(input);
    auto workSymbols = analysis::resolve(work);
    if (!workSymbols.ok()) return failResult(input, std::move(workSymbols.diagnostics));

    Ctx ctx{work, std::move(*workSymbols), analysis::indexStatements(work), request, {}, {}};
    dispatch(ctx);
    if (ctx.failed()) return failResult(input, std::move(ctx.diagnostics));

    // well-formedness closure: the edited program must resolve cleanly and
    // stay quantum-safe, otherwise the edit is rejected wholesale
    auto after = analysis::resolve(work);
    std::vector<Diagnostic> closure;
    if (!after.ok()) {
        closure = std::move(after.diagnostics);
    } else if (auto safety = analysis::checkQuantumSafety(work, *after); !safety.empty()) {
        closure = std::move(safety);
    }
    if (!closure.empty()) {
        std::vector<Diagnostic> diags;
        for (auto& d : closure)
            diags.push_back(makeError(diag_code::Precondition, d.span,
                                      "edit would produce an invalid program: " + d.message));
        return failResult(input, std::move(diags));
    }

    EditResult result;
    result.program = std::move(work);
    result.changes = std::move(ctx.changes);
    return result;
}

Outcome<RefactoringRequest> requestFromJson(const std::string& json) {
    nlohmann::json doc = nlohmann::json::parse(json, nullptr, /*allow_exceptions=*/false);
    auto bad = [](std::string msg) {
        return Outcome<RefactoringRequest>::failure(
            {makeError(diag_code::Precondition, {}, std::move(msg))});
    };
    if (doc.is_discarded() || !doc.is_object()) return bad("request is not a JSON object");
    if (!doc.contains("refactoring") || !doc["refactoring"].is_string())
        return bad("request is missing the 'refactoring' name");
    const RefactoringInfo* info = findRefactoring(doc["refactoring"].get<std::string>());
    if (!info) return bad("unknown refactoring '" + doc["refactoring"].get<std::string>() + "'");
    RefactoringRequest request;
    request.kind = info->kind;
    if (doc.contains("target")) {
        if (!doc["target"].is_string()) return bad("'target' must be a string");
        auto target = parseTarget(doc["target"].get<std::string>());
        if (!target) return bad("malformed target '" + doc["target"].get<std::string>() + "'");
        request.target = *target;
    }
    if (doc.contains("symbol")) {
        if (!doc["symbol"].is_string()) return bad("'symbol' must be a string");
        request.target.symbolName = doc["symbol"].get<std::string>();
    }
    if (doc.contains("args")) {
        if (!doc["args"].is_object()) return bad("'args' must be an object");
        for (const auto& [key, value] : doc["args"].items()) {
            if (value.is_string())
                request.args[key] = value.get<std::string>();
            else
                request.args[key] = value.dump();
        }
    }
    for (const auto& required : info->requiredArgs)
        if (!request.args.count(required))
            return bad("refactoring '" + info->name + "' requires argument '" + required + "'");
    return Outcome<RefactoringRequest>::success(std::move(request));
}

}  // namespace qrt::refactor
