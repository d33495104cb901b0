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

// Internal machinery shared by the refactoring operations: target
// resolution, mutable tree navigation, fresh-name generation, scope-aware
// substitution and effect analysis. Not installed.

#pragma once

#include "qrt/analysis/pdg.hpp"
#include "qrt/analysis/safety.hpp"
#include "qrt/analysis/stmt_index.hpp"
#include "qrt/analysis/symbols.hpp"
#include "qrt/refactor/request.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qrt::refactor {

/// Working state for one refactoring application. The program is a private
/// clone and may be mutated freely; symbols/index are resolved over it and
/// become stale after the first mutation.
struct Ctx {
    syntax::Program& program;
    analysis::SymbolTable symbols;
    analysis::StatementIndex index;
    const RefactoringRequest& request;
    std::vector<std::string> changes;
    std::vector<Diagnostic> diagnostics;

    bool failed() const { return !diagnostics.empty(); }
    void fail(SourceSpan span, std::string msg) {
        diagnostics.push_back(makeError(diag_code::Precondition, span, std::move(msg)));
    }
    void note(std::string change) { changes.push_back(std::move(change)); }
};

/// Splits Target.qualifiedName into (namespace, callable) against the
/// program (longest namespace prefix wins). Fails into ctx on no match.
struct ResolvedTarget {
    syntax::Namespace* ns = nullptr;
    syntax::Callable* callable = nullptr;
};
std::optional<ResolvedTarget> resolveCallableTarget(Ctx& ctx);

/// A contiguous statement range inside one concrete block.
struct StmtRange {
    syntax::Block* block = nullptr;
    size_t begin = 0;
    size_t count = 0;
};

/// Locates the block and intra-block index addressed by a path.
struct Location {
    syntax::Block* block = nullptr;
    size_t index = 0;
};
std::optional<Location> locate(syntax::Callable& c, const analysis::StmtPath& path);

/// Resolves the request's path range to a concrete block range; both
/// endpoints must live in the same block.
std::optional<StmtRange> resolveRange(Ctx& ctx, syntax::Callable& c);

/// Every identifier-like name appearing anywhere in the program, plus
/// builtins; used to make generated names fresh.
std::set<std::string> allNames(const syntax::Program& p);

/// Requested name if valid and unused, otherwise `<base>_<k>` with the
/// smallest non-colliding k >= 1. The chosen name is added to `taken`.
std::string freshName(std::set<std::string>& taken, const std::string& requested,
                      const std::string& base);

/// Scope-aware substitution of free identifier occurrences by expression
/// clones. Names shadowed by inner declarations are left alone.
void substituteInBlock(syntax::Block& b,
                       const std::map<std::string, const syntax::Expr*>& mapping,
                       std::set<std::string> shadowed = {});

/// Renames every declaration and reference of the mapped names (used to
/// freshen locals of inlined or duplicated bodies). The mapping must be
/// injective and target names must be globally fresh.
void renameAll(syntax::Block& b, const std::map<std::string, std::string>& mapping);

/// Names declared directly or transitively inside the block.
std::set<std::string> declaredNames(const syntax::Block& b);

/// Whether evaluating the expression can have observable effects
/// (measurement, gate application, qubit allocation or output). User
/// function calls are effectful only if the callee may emit output.
bool exprHasEffects(const syntax::Expr& e, const analysis::SymbolTable& symbols);

/// Free variables of a statement range: names used inside but declared
/// outside, in declaration (symbol id) order.
std::vector<analysis::SymbolId> freeVariables(const std::vector<const syntax::Stmt*>& stmts,
                                              const analysis::SymbolTable& symbols);

/// Statements of a range as raw pointers.
std::vector<const syntax::Stmt*> rangeStmts(const StmtRange& range);

/// True when the subtree contains a return statement.
bool containsReturn(const syntax::Block& b);

/// Constant folding pass used by specialize: folds integer/bool operators
/// over literals and prunes if-statements with constant conditions.
void constantFold(syntax::Block& b);

/// The builtin gate call shape `G(q, ...)` or `Controlled X([c...], t)`
/// used by the gate rules; null when the statement is not a gate statement.
struct GateStmtView {
    std::string gate;  // H X Y Z S T CNOT or CX (Controlled X)
    std::vector<const syntax::Expr*> operands;  // qubit operand expressions
};
std::optional<GateStmtView> asGateStmt(const syntax::Stmt& s, const analysis::SymbolTable& symbols);

}  // namespace qrt::refactor
