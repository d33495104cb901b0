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

#include "qrt/analysis/usage.hpp"

#include "ops.hpp"

#include <algorithm>
#include <functional>

namespace qrt::refactor {

using namespace syntax;
using analysis::SymbolId;
using analysis::SymbolKind;

void applyRemoveUnused(Ctx& ctx) {
    auto target = resolveCallableTarget(ctx);
    if (!target) return;

    std::vector<SymbolId> unused = analysis::findUnused(ctx.program, ctx.symbols);
    auto isUnused = [&unused](SymbolId id) {
        return std::find(unused.begin(), unused.end(), id) != unused.end();
    };

    // whole-callable removal
    if (!ctx.request.target.isRange() && ctx.request.target.symbolName.empty()) {
        Callable* callable = target->callable;
        if (callable->name == "Main") {
            ctx.fail(callable->nameSpan, "'Main' is the entry point and cannot be removed");
            return;
        }
        SymbolId id = ctx.symbols.callableSymbols.at(callable);
        if (!isUnused(id)) {
            ctx.fail(callable->nameSpan, "'" + callable->name + "' has call sites or is an "
                                         "entry point");
            return;
        }
        ctx.note("removed unused " +
                 std::string(callable->kind == CallableKind::Operation ? "operation "
                                                                       : "function ") +
                 callable->name);
        for (auto& ns : ctx.program.namespaces) {
            for (size_t i = 0; i < ns.callables.size(); ++i) {
                if (&ns.callables[i] == callable) {
                    ns.callables.erase(ns.callables.begin() + static_cast<long>(i));
                    return;
                }
            }
        }
        return;
    }

    // local variable removal: locate the declaration statement
    Location loc;
    if (ctx.request.target.isRange()) {
        auto found = locate(*target->callable, *ctx.request.target.pathLo);
        if (!found) {
            ctx.fail({}, "target path does not address a statement");
            return;
        }
        loc = *found;
    } else {
        const std::string& name = ctx.request.target.symbolName;
        // parameters belong to change-signature
        for (const auto& param : target->callable->params) {
            if (param.name == name) {
                ctx.fail(param.span,
                         "'" + name + "' is a parameter; use change-signature mode=remove");
                return;
            }
        }
        std::vector<Location> matches;
        std::function<void(Block&)> search = [&](Block& b) {
            for (size_t i = 0; i < b.stmts.size(); ++i) {
                auto it = ctx.symbols.stmtDefs.find(b.stmts[i].get());
                if (it != ctx.symbols.stmtDefs.end() &&
                    ctx.symbols.symbol(it->second).name == name &&
                    (b.stmts[i]->is<LetStmt>() || b.stmts[i]->is<MutableStmt>()))
                    matches.push_back({&b, i});
                for (Block* sub : subBlocks(*b.stmts[i])) search(*sub);
            }
        };
        search(target->callable->body);
        if (matches.empty()) {
            ctx.fail({}, "no variable named '" + name + "' in " + target->callable->name);
            return;
        }
        if (matches.size() > 1) {
            ctx.fail({}, "'" + name + "' is shadowed; address its declaration by path");
            return;
        }
        loc = matches[0];
    }

    Stmt& stmt = *loc.block->stmts[loc.index];
    auto defIt = ctx.symbols.stmtDefs.find(&stmt);
    if (defIt == ctx.symbols.stmtDefs.end() ||
        (!stmt.is<LetStmt>() && !stmt.is<MutableStmt>())) {
        ctx.fail(stmt.span, "target does not declare a removable variable");
        return;
    }
    if (!isUnused(defIt->second)) {
        ctx.fail(stmt.span,
                 "'" + ctx.symbols.symbol(defIt->second).name + "' is used and cannot be removed");
        return;
    }

    ExprPtr* init = nullptr;
    if (auto* let = stmt.as<LetStmt>()) init = &let->value;
    if (auto* mut = stmt.as<MutableStmt>()) init = &mut->value;
    std::string name = ctx.symbols.symbol(defIt->second).name;

    if (exprHasEffects(**init, ctx.symbols)) {
        // the initializer's effects must stay behind
        if (!(*init)->is<CallExpr>() && !(*init)->is<ControlledApply>()) {
            ctx.fail(stmt.span, "initializer of '" + name +
                                    "' has effects that cannot stand alone as a statement");
            return;
        }
        auto demoted = makeStmt(stmt.span, CallStmt{std::move(*init)});
        demoted->comments = stmt.comments;
        loc.block->stmts[loc.index] = std::move(demoted);
        ctx.note("demoted unused binding " + name + " to an expression statement");
        return;
    }
    loc.block->stmts.erase(loc.block->stmts.begin() + static_cast<long>(loc.index));
    ctx.note("removed unused variable " + name);
}

}  // namespace qrt::refactor
