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

#include "qrt/analysis/symbols.hpp"
#include "qrt/lexer.hpp"

#include "ops.hpp"

#include <map>

namespace qrt::refactor {

using namespace syntax;
using analysis::SymbolId;
using analysis::SymbolKind;

namespace {

/// Finds the symbol a rename request addresses: the callable itself, a local
/// picked by name, or the declaration statement at a path.
std::optional<SymbolId> findRenameTarget(Ctx& ctx, const ResolvedTarget& target) {
    const Target& t = ctx.request.target;
    if (t.isRange()) {
        auto loc = locate(*target.callable, *t.pathLo);
        if (!loc) {
            ctx.fail({}, "target path does not address a statement");
            return std::nullopt;
        }
        const Stmt* stmt = loc->block->stmts[loc->index].get();
        auto it = ctx.symbols.stmtDefs.find(stmt);
        if (it == ctx.symbols.stmtDefs.end()) {
            ctx.fail(stmt->span, "statement does not declare a symbol");
            return std::nullopt;
        }
        return it->second;
    }
    if (!t.symbolName.empty()) {
        std::vector<SymbolId> matches;
        for (const auto& param : target.callable->params) {
            auto it = ctx.symbols.paramSymbols.find(&param);
            if (it != ctx.symbols.paramSymbols.end() &&
                ctx.symbols.symbol(it->second).name == t.symbolName)
                matches.push_back(it->second);
        }
        forEachStmt(target.callable->body, [&](const Stmt& s) {
            auto it = ctx.symbols.stmtDefs.find(&s);
            if (it != ctx.symbols.stmtDefs.end() &&
                ctx.symbols.symbol(it->second).name == t.symbolName)
                matches.push_back(it->second);
        });
        if (matches.empty()) {
            ctx.fail({}, "no symbol named '" + t.symbolName + "' in " + target.callable->name);
            return std::nullopt;
        }
        if (matches.size() > 1) {
            ctx.fail({}, "'" + t.symbolName + "' is shadowed; address its declaration by path");
            return std::nullopt;
        }
        return matches[0];
    }
    return ctx.symbols.callableSymbols.at(target.callable);
}

}  // namespace

void applyRename(Ctx& ctx) {
    auto newNameArg = ctx.request.arg("name");
    if (!newNameArg) {
        ctx.fail({}, "rename requires the 'name' argument");
        return;
    }
    const std::string& newName = *newNameArg;
    auto target = resolveCallableTarget(ctx);
    if (!target) return;
    auto symbolId = findRenameTarget(ctx, *target);
    if (!symbolId) return;
    const analysis::Symbol symbol = ctx.symbols.symbol(*symbolId);

    if (!isValidIdentifier(newName)) {
        ctx.fail({}, "'" + newName + "' is not a valid identifier");
        return;
    }
    if (findBuiltin(newName)) {
        ctx.fail({}, "'" + newName + "' is a builtin name");
        return;
    }
    if (newName == symbol.name) return;  // no-op

    // remember how every identifier resolves (by declaration span, which
    // survives the rename) so captures can be detected afterwards
    std::map<const Expr*, SourceSpan> resolutionBefore;
    for (const auto& [expr, id] : ctx.symbols.uses)
        resolutionBefore[expr] = ctx.symbols.symbol(id).declSpan;
    size_t builtinRefsBefore = ctx.symbols.builtinUses.size();

    // rename the declaration
    if (symbol.kind == SymbolKind::Callable) {
        for (auto& ns : ctx.program.namespaces)
            for (auto& c : ns.callables)
                if (&c == symbol.decl) c.name = newName;
    } else {
        for (auto& ns : ctx.program.namespaces) {
            for (auto& c : ns.callables) {
                for (auto& param : c.params) {
                    auto it = ctx.symbols.paramSymbols.find(&param);
                    if (it != ctx.symbols.paramSymbols.end() && it->second == *symbolId)
                        param.name = newName;
                }
                std::function<void(Block&)> walk = [&](Block& b) {
                    for (auto& sp : b.stmts) {
                        auto defIt = ctx.symbols.stmtDefs.find(sp.get());
                        bool declaresTarget =
                            defIt != ctx.symbols.stmtDefs.end() && defIt->second == *symbolId;
                        auto setIt = ctx.symbols.setTargets.find(sp.get());
                        bool setsTarget =
                            setIt != ctx.symbols.setTargets.end() && setIt->second == *symbolId;
                        std::visit(
                            [&](auto& n) {
                                using T = std::decay_t<decltype(n)>;
                                if constexpr (std::is_same_v<T, LetStmt> ||
                                              std::is_same_v<T, MutableStmt> ||
                                              std::is_same_v<T, UsingStmt>) {
                                    if (declaresTarget) n.name = newName;
                                } else if constexpr (std::is_same_v<T, SetStmt>) {
                                    if (setsTarget) n.name = newName;
                                } else if constexpr (std::is_same_v<T, ForStmt>) {
                                    if (declaresTarget) n.var = newName;
                                }
                            },
                            sp->node);
                        for (Block* sub : subBlocks(*sp)) walk(*sub);
                    }
                };
                walk(c.body);
            }
        }
    }

    // rename every use, including interpolation holes and cross-namespace
    // call sites
    int uses = 0;
    for (auto& ns : ctx.program.namespaces) {
        for (auto& c : ns.callables) {
            std::function<void(Block&)> walk = [&](Block& b) {
                for (auto& sp : b.stmts) {
                    forEachOwnExpr(*sp, [&](Expr& e) {
                        auto it = ctx.symbols.uses.find(&e);
                        if (it == ctx.symbols.uses.end() || it->second != *symbolId) return;
                        if (auto* id = e.as<Ident>()) {
                            id->name = newName;
                            ++uses;
                        }
                    });
                    for (Block* sub : subBlocks(*sp)) walk(*sub);
                }
            };
            walk(c.body);
        }
    }

    // capture check: every identifier must still resolve to the declaration
    // it resolved to before (modulo the renamed declaration itself)
    auto after = analysis::resolve(ctx.program);
    if (!after.ok()) {
        ctx.fail(after.diagnostics.front().span,
                 "renaming to '" + newName + "' collides: " + after.diagnostics.front().message);
        return;
    }
    if (after->builtinUses.size() != builtinRefsBefore) {
        ctx.fail({}, "renaming to '" + newName + "' changes a builtin reference");
        return;
    }
    for (const auto& [expr, id] : after->uses) {
        auto beforeIt = resolutionBefore.find(expr);
        if (beforeIt == resolutionBefore.end()) continue;
        if (after->symbol(id).declSpan != beforeIt->second) {
            ctx.fail(expr->span, "renaming to '" + newName + "' would capture this reference");
            return;
        }
    }

    ctx.note("renamed " + symbol.name + " to " + newName + " (" + std::to_string(uses) +
             " reference(s))");
}

}  // namespace qrt::refactor
