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

#include "ops.hpp"

#include <functional>

namespace qrt::refactor {

using namespace syntax;
using analysis::SymbolId;
using analysis::SymbolKind;

namespace {

bool isLiteral(const Expr& e) {
    if (e.is<IntLit>() || e.is<DoubleLit>() || e.is<BoolLit>() || e.is<StringLit>()) return true;
    if (const auto* u = e.as<UnaryExpr>())
        return u->op == UnaryOp::Neg && (u->operand->is<IntLit>() || u->operand->is<DoubleLit>());
    return false;
}

/// Direct and transitive user callees of a callable.
std::set<const Callable*> transitiveCallees(const Program& p,
                                            const analysis::SymbolTable& symbols,
                                            const Callable& root) {
    std::set<const Callable*> seen;
    std::vector<const Callable*> work{&root};
    while (!work.empty()) {
        const Callable* current = work.back();
        work.pop_back();
        forEachStmt(current->body, [&](const Stmt& s) {
            forEachExpr(s, [&](const Expr& e) {
                const auto* call = e.as<CallExpr>();
                if (!call) return;
                auto it = symbols.uses.find(call->callee.get());
                if (it == symbols.uses.end()) return;
                const auto& sym = symbols.symbol(it->second);
                if (sym.kind == SymbolKind::Callable && sym.decl && !seen.count(sym.decl)) {
                    seen.insert(sym.decl);
                    work.push_back(sym.decl);
                }
            });
        });
    }
    (void)p;
    return seen;
}

struct CallSite {
    Block* block = nullptr;
    size_t index = 0;
    Stmt* stmt = nullptr;
    CallExpr* call = nullptr;  // the whole-statement call or let initializer
};

/// Call sites of the callee that sit in an inlinable statement position
/// (call statement or let initializer), in document order. `blocked` is set
/// when a call site in a non-inlinable position exists.
std::vector<CallSite> collectInlinableSites(Ctx& ctx, SymbolId calleeId, bool& blocked) {
    std::vector<CallSite> sites;
    blocked = false;
    auto refersToCallee = [&](const Expr& e) {
        const auto* call = e.as<CallExpr>();
        if (!call) return false;
        auto it = ctx.symbols.uses.find(call->callee.get());
        return it != ctx.symbols.uses.end() && it->second == calleeId;
    };
    for (auto& ns : ctx.program.namespaces) {
        for (auto& c : ns.callables) {
            std::function<void(Block&)> walk = [&](Block& b) {
                for (size_t i = 0; i < b.stmts.size(); ++i) {
                    Stmt& s = *b.stmts[i];
                    CallExpr* direct = nullptr;
                    if (auto* callStmt = s.as<CallStmt>()) {
                        if (refersToCallee(*callStmt->call))
                            direct = callStmt->call->as<CallExpr>();
                    } else if (auto* let = s.as<LetStmt>()) {
                        if (refersToCallee(*let->value)) direct = let->value->as<CallExpr>();
                    }
                    if (direct) sites.push_back({&b, i, &s, direct});
                    // any other occurrence blocks whole-callable inlining
                    forEachOwnExpr(s, [&](Expr& e) {
                        if (refersToCallee(e) && e.as<CallExpr>() != direct) blocked = true;
                    });
                    for (Block* sub : subBlocks(s)) walk(*sub);
                }
            };
            walk(c.body);
        }
    }
    return sites;
}

}  // namespace

void applyInlineCallable(Ctx& ctx) {
    auto target = resolveCallableTarget(ctx);
    if (!target) return;

    Callable* callee = nullptr;
    std::optional<CallSite> onlySite;
    bool allSites = !ctx.request.target.isRange();

    if (allSites) {
        callee = target->callable;
    } else {
        // target addresses one call-site statement inside the callable
        auto loc = locate(*target->callable, *ctx.request.target.pathLo);
        if (!loc) {
            ctx.fail({}, "target path does not address a statement");
            return;
        }
        Stmt& s = *loc->block->stmts[loc->index];
        CallExpr* call = nullptr;
        if (auto* callStmt = s.as<CallStmt>())
            call = callStmt->call->as<CallExpr>();
        else if (auto* let = s.as<LetStmt>())
            call = let->value->as<CallExpr>();
        if (!call) {
            ctx.fail(s.span, "statement is not an inlinable call");
            return;
        }
        auto it = ctx.symbols.uses.find(call->callee.get());
        if (it == ctx.symbols.uses.end() ||
            ctx.symbols.symbol(it->second).kind != SymbolKind::Callable) {
            ctx.fail(s.span, "statement does not call a user-defined callable");
            return;
        }
        callee = const_cast<Callable*>(ctx.symbols.symbol(it->second).decl);
        onlySite = CallSite{loc->block, loc->index, &s, call};
    }

    SymbolId calleeId = ctx.symbols.callableSymbols.at(callee);

    // no recursion, direct or indirect
    auto callees = transitiveCallees(ctx.program, ctx.symbols, *callee);
    if (callees.count(callee)) {
        ctx.fail(callee->nameSpan, "'" + callee->name + "' is recursive");
        return;
    }
    // single exit: at most one return, as the final top-level statement
    const std::vector<StmtPtr>& bodyStmts = callee->body.stmts;
    for (size_t i = 0; i < bodyStmts.size(); ++i) {
        bool isLast = i + 1 == bodyStmts.size();
        if (bodyStmts[i]->is<ReturnStmt>() && isLast) continue;
        bool inner = bodyStmts[i]->is<ReturnStmt>();
        for (const Block* sub : subBlocks(*bodyStmts[i]))
            if (containsReturn(*sub)) inner = true;
        if (inner) {
            ctx.fail(bodyStmts[i]->span, "'" + callee->name + "' has an early return");
            return;
        }
    }

    bool blocked = false;
    std::vector<CallSite> sites;
    if (onlySite) {
        sites.push_back(*onlySite);
    } else {
        sites = collectInlinableSites(ctx, calleeId, blocked);
        if (blocked) {
            ctx.fail({}, "'" + callee->name +
                             "' is called in an expression position that cannot be inlined");
            return;
        }
        if (sites.empty()) {
            ctx.fail({}, "'" + callee->name + "' has no call sites to inline");
            return;
        }
    }

    std::set<std::string> taken = allNames(ctx.program);

    // splice sites in reverse document order so indices stay valid
    for (auto it = sites.rbegin(); it != sites.rend(); ++it) {
        const CallSite& site = *it;
        std::vector<StmtPtr> replacement;

        // bind complex arguments to fresh locals; substitute names/literals
        std::map<std::string, const Expr*> mapping;
        std::vector<ExprPtr> hoistedHolders;
        for (size_t i = 0; i < callee->params.size(); ++i) {
            const Param& param = callee->params[i];
            const Expr& arg = *site.call->args[i];
            if (arg.is<Ident>() || isLiteral(arg)) {
                mapping[param.name] = &arg;
            } else {
                std::string local = freshName(taken, "", param.name);
                replacement.push_back(makeStmt({}, LetStmt{local, {}, clone(arg)}));
                hoistedHolders.push_back(makeExpr({}, Ident{local}));
                mapping[param.name] = hoistedHolders.back().get();
            }
        }

        Block body = clone(callee->body);
        ExprPtr returnExpr;
        if (!body.stmts.empty() && body.stmts.back()->is<ReturnStmt>()) {
            returnExpr = std::move(body.stmts.back()->as<ReturnStmt>()->value);
            body.stmts.pop_back();
        }
        substituteInBlock(body, mapping);
        if (returnExpr) {
            Block holder;
            holder.stmts.push_back(makeStmt({}, ReturnStmt{std::move(returnExpr)}));
            substituteInBlock(holder, mapping);
            returnExpr = std::move(holder.stmts.back()->as<ReturnStmt>()->value);
        }

        // freshen the body's own locals
        std::map<std::string, std::string> localRenames;
        for (const std::string& name : declaredNames(body))
            localRenames[name] = freshName(taken, "", name);
        renameAll(body, localRenames);
        if (returnExpr) {
            forEachExpr(*returnExpr, [&](Expr& e) {
                if (auto* id = e.as<Ident>()) {
                    auto rn = localRenames.find(id->name);
                    if (rn != localRenames.end()) id->name = rn->second;
                }
            });
        }

        for (auto& sp : body.stmts) replacement.push_back(std::move(sp));

        if (auto* let = site.stmt->as<LetStmt>()) {
            if (!returnExpr) {
                ctx.fail(site.stmt->span,
                         "'" + callee->name + "' returns no value to bind");
                return;
            }
            replacement.push_back(makeStmt({}, LetStmt{let->name, let->nameSpan,
                                                       std::move(returnExpr)}));
        } else if (returnExpr && exprHasEffects(*returnExpr, ctx.symbols)) {
            if (returnExpr->is<CallExpr>() || returnExpr->is<ControlledApply>()) {
                replacement.push_back(makeStmt({}, CallStmt{std::move(returnExpr)}));
            } else {
                ctx.fail(site.stmt->span, "cannot discard the effectful result expression");
                return;
            }
        }

        auto& stmts = site.block->stmts;
        stmts.erase(stmts.begin() + static_cast<long>(site.index));
        for (size_t k = 0; k < replacement.size(); ++k)
            stmts.insert(stmts.begin() + static_cast<long>(site.index + k),
                         std::move(replacement[k]));
    }

    ctx.note("inlined " + std::to_string(sites.size()) + " call(s) of " + callee->name);

    if (allSites && callee->name != "Main") {
        for (auto& ns : ctx.program.namespaces) {
            for (size_t i = 0; i < ns.callables.size(); ++i) {
                if (&ns.callables[i] == callee) {
                    ctx.note("removed " + callee->name);
                    ns.callables.erase(ns.callables.begin() + static_cast<long>(i));
                    return;
                }
            }
        }
    }
}

}  // namespace qrt::refactor
