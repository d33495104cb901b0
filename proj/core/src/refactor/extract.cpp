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

#include "qrt/analysis/clones.hpp"
#include "qrt/lexer.hpp"

#include "ops.hpp"

#include <algorithm>

namespace qrt::refactor {

using namespace syntax;
using analysis::StmtPath;
using analysis::SymbolId;
using analysis::SymbolKind;

namespace {

bool typeContainsQubit(const Type& t) {
    if (t.kind == TypeKind::Qubit) return true;
    for (const auto& a : t.args)
        if (typeContainsQubit(a)) return true;
    return false;
}

/// Quantum constructs that bar extraction into a function.
bool rangeTouchesQuantum(const std::vector<const Stmt*>& stmts,
                         const analysis::SymbolTable& symbols) {
    bool quantum = false;
    for (const Stmt* s : stmts) {
        std::function<void(const Stmt&)> walk = [&](const Stmt& stmt) {
            if (stmt.is<UsingStmt>()) quantum = true;
            forEachOwnExpr(stmt, [&](const Expr& e) {
                if (e.is<ControlledApply>()) quantum = true;
                const auto* call = e.as<CallExpr>();
                if (!call) return;
                auto bIt = symbols.builtinUses.find(call->callee.get());
                if (bIt != symbols.builtinUses.end() && bIt->second->isQuantum()) quantum = true;
                auto uIt = symbols.uses.find(call->callee.get());
                if (uIt != symbols.uses.end()) {
                    const auto& sym = symbols.symbol(uIt->second);
                    if (sym.kind == SymbolKind::Callable &&
                        sym.callableKind == CallableKind::Operation)
                        quantum = true;
                }
            });
            for (const Block* sub : subBlocks(stmt))
                for (const auto& child : sub->stmts) walk(*child);
        };
        walk(*s);
    }
    return quantum;
}

struct ExtractionPlan {
    std::vector<SymbolId> params;        // qubits first, then classical
    std::optional<SymbolId> liveOut;
    std::string name;
    bool asFunction = false;
};

/// Validates the extraction preconditions and computes parameters and the
/// live-out value. Fails into ctx.
std::optional<ExtractionPlan> planExtraction(Ctx& ctx, const StmtRange& range,
                                             const std::string& newName, bool asFunction) {
    if (range.count == 0) {
        ctx.fail({}, "cannot extract an empty range");
        return std::nullopt;
    }
    auto stmts = rangeStmts(range);

    for (const Stmt* s : stmts) {
        bool hasReturn = s->is<ReturnStmt>();
        for (const Block* sub : subBlocks(*s))
            if (containsReturn(*sub)) hasReturn = true;
        if (hasReturn) {
            ctx.fail(s->span, "range contains a return statement");
            return std::nullopt;
        }
    }

    // assignments to variables declared outside the range cannot be carried
    // out of the extracted callable
    std::set<SymbolId> declaredInside;
    for (const Stmt* s : stmts) {
        std::function<void(const Stmt&)> walk = [&](const Stmt& stmt) {
            auto it = ctx.symbols.stmtDefs.find(&stmt);
            if (it != ctx.symbols.stmtDefs.end()) declaredInside.insert(it->second);
            for (const Block* sub : subBlocks(stmt))
                for (const auto& child : sub->stmts) walk(*child);
        };
        walk(*s);
    }
    for (const Stmt* s : stmts) {
        std::function<void(const Stmt&)> walk = [&](const Stmt& stmt) {
            auto it = ctx.symbols.setTargets.find(&stmt);
            if (it != ctx.symbols.setTargets.end() && !declaredInside.count(it->second))
                ctx.fail(stmt.span, "range assigns to enclosing variable '" +
                                        ctx.symbols.symbol(it->second).name + "'");
            for (const Block* sub : subBlocks(stmt))
                for (const auto& child : sub->stmts) walk(*child);
        };
        walk(*s);
    }
    if (ctx.failed()) return std::nullopt;

    if (asFunction && rangeTouchesQuantum(stmts, ctx.symbols)) {
        ctx.fail(stmts.front()->span,
                 "range contains quantum operations and cannot become a function");
        return std::nullopt;
    }

    // live-out: top-level declarations of the range still referenced after it
    size_t rangeEnd = stmts.back()->span.end;
    std::vector<SymbolId> liveOuts;
    for (const Stmt* s : stmts) {
        auto it = ctx.symbols.stmtDefs.find(s);
        if (it == ctx.symbols.stmtDefs.end()) continue;
        SymbolId sym = it->second;
        bool usedAfter = false;
        auto usesIt = ctx.symbols.useSites.find(sym);
        if (usesIt != ctx.symbols.useSites.end())
            for (const Expr* use : usesIt->second)
                if (use->span.begin >= rangeEnd) usedAfter = true;
        auto setsIt = ctx.symbols.setSites.find(sym);
        if (setsIt != ctx.symbols.setSites.end())
            for (const Stmt* set : setsIt->second)
                if (set->span.begin >= rangeEnd) usedAfter = true;
        if (usedAfter) liveOuts.push_back(sym);
    }
    if (liveOuts.size() > 1) {
        ctx.fail(stmts.front()->span, "range defines " + std::to_string(liveOuts.size()) +
                                          " values that are used afterwards");
        return std::nullopt;
    }
    if (!liveOuts.empty() && typeContainsQubit(ctx.symbols.symbol(liveOuts[0]).type)) {
        ctx.fail(stmts.front()->span, "live-out value has a qubit type");
        return std::nullopt;
    }

    ExtractionPlan plan;
    plan.asFunction = asFunction;
    if (!liveOuts.empty()) plan.liveOut = liveOuts[0];

    std::vector<SymbolId> free = freeVariables(stmts, ctx.symbols);
    std::vector<SymbolId> qubits, classicals;
    for (SymbolId id : free) {
        const auto& sym = ctx.symbols.symbol(id);
        if (typeContainsQubit(sym.type))
            qubits.push_back(id);
        else
            classicals.push_back(id);
    }
    if (asFunction && !qubits.empty()) {
        ctx.fail(stmts.front()->span, "range references qubits and cannot become a function");
        return std::nullopt;
    }
    plan.params = qubits;
    plan.params.insert(plan.params.end(), classicals.begin(), classicals.end());

    std::set<std::string> taken = allNames(ctx.program);
    if (newName.empty() || !isValidIdentifier(newName)) {
        ctx.fail({}, "'" + newName + "' is not a valid identifier");
        return std::nullopt;
    }
    if (taken.count(newName)) {
        ctx.fail({}, "name '" + newName + "' is already in use");
        return std::nullopt;
    }
    plan.name = newName;
    return plan;
}

/// Builds the new callable from clones of the range statements.
Callable buildExtractedCallable(Ctx& ctx, const ExtractionPlan& plan, const StmtRange& range) {
    Callable fresh;
    fresh.kind = plan.asFunction ? CallableKind::Function : CallableKind::Operation;
    fresh.name = plan.name;
    for (SymbolId id : plan.params) {
        const auto& sym = ctx.symbols.symbol(id);
        fresh.params.push_back({sym.name, sym.type, {}});
    }
    fresh.returnType = plan.liveOut ? ctx.symbols.symbol(*plan.liveOut).type : Type::unit();
    for (size_t i = 0; i < range.count; ++i)
        fresh.body.stmts.push_back(clone(*range.block->stmts[range.begin + i]));
    if (plan.liveOut) {
        const auto& sym = ctx.symbols.symbol(*plan.liveOut);
        fresh.body.stmts.push_back(makeStmt({}, ReturnStmt{makeExpr({}, Ident{sym.name})}));
    }
    return fresh;
}

/// Replaces the range with a call to the extracted callable; arguments are
/// the free variables (remapped for secondary clone occurrences).
void replaceRangeWithCall(Ctx& ctx, const StmtRange& range, const ExtractionPlan& plan,
                          const std::map<SymbolId, SymbolId>* argumentRemap) {
    CallExpr call;
    call.callee = makeExpr({}, Ident{plan.name});
    for (SymbolId id : plan.params) {
        SymbolId argId = id;
        if (argumentRemap) {
            auto it = argumentRemap->find(id);
            if (it != argumentRemap->end()) argId = it->second;
        }
        call.args.push_back(makeExpr({}, Ident{ctx.symbols.symbol(argId).name}));
    }
    StmtPtr replacement;
    if (plan.liveOut) {
        SymbolId outId = *plan.liveOut;
        if (argumentRemap) {
            auto it = argumentRemap->find(outId);
            if (it != argumentRemap->end()) outId = it->second;
        }
        replacement = makeStmt({}, LetStmt{ctx.symbols.symbol(outId).name, {},
                                           makeExpr({}, std::move(call))});
    } else {
        replacement = makeStmt({}, CallStmt{makeExpr({}, std::move(call))});
    }
    auto& stmts = range.block->stmts;
    stmts.erase(stmts.begin() + static_cast<long>(range.begin),
                stmts.begin() + static_cast<long>(range.begin + range.count));
    stmts.insert(stmts.begin() + static_cast<long>(range.begin), std::move(replacement));
}

/// Inserts the callable right after `source` in its namespace (invalidates
/// pointers into ns.callables; callers re-resolve afterwards).
void insertCallableAfter(Namespace& ns, Callable& source, Callable fresh) {
    size_t insertAt = ns.callables.size();
    for (size_t i = 0; i < ns.callables.size(); ++i)
        if (&ns.callables[i] == &source) insertAt = i + 1;
    ns.callables.insert(ns.callables.begin() + static_cast<long>(insertAt), std::move(fresh));
}

void executeExtraction(Ctx& ctx, Namespace& ns, Callable& source, const StmtRange& range,
                       const ExtractionPlan& plan) {
    Callable fresh = buildExtractedCallable(ctx, plan, range);
    replaceRangeWithCall(ctx, range, plan, nullptr);
    insertCallableAfter(ns, source, std::move(fresh));
}

void applyExtractImpl(Ctx& ctx, bool asFunction) {
    auto name = ctx.request.arg("name");
    if (!name) {
        ctx.fail({}, "extraction requires the 'name' argument");
        return;
    }
    auto target = resolveCallableTarget(ctx);
    if (!target) return;
    auto range = resolveRange(ctx, *target->callable);
    if (!range) return;
    // rejecting whole-body self-extraction of a lone return is covered by
    // the return check inside planExtraction
    auto plan = planExtraction(ctx, *range, *name, asFunction);
    if (!plan) return;
    executeExtraction(ctx, *target->ns, *target->callable, *range, *plan);
    ctx.note("extracted " + std::to_string(range->count) + " statement(s) into " +
             std::string(asFunction ? "function " : "operation ") + *name);
}

}  // namespace

void applyExtractOperation(Ctx& ctx) {
    applyExtractImpl(ctx, /*asFunction=*/false);
}

void applyExtractFunction(Ctx& ctx) {
    applyExtractImpl(ctx, /*asFunction=*/true);
}

void applySplitOperation(Ctx& ctx) {
    auto splitArg = ctx.request.arg("split");
    if (!splitArg) {
        ctx.fail({}, "split-operation requires the 'split' argument");
        return;
    }
    struct Entry {
        StmtPath lo, hi;
        std::string name;
    };
    std::vector<Entry> entries;
    std::string_view text = *splitArg;
    while (!text.empty()) {
        size_t comma = text.find(',');
        std::string_view item = text.substr(0, comma);
        size_t colon = item.rfind(':');
        size_t dots = item.find("..");
        if (colon == std::string_view::npos || dots == std::string_view::npos || dots > colon) {
            ctx.fail({}, "malformed split entry '" + std::string(item) +
                             "' (expected <path>..<path>:Name)");
            return;
        }
        auto lo = analysis::parsePath(item.substr(0, dots));
        auto hi = analysis::parsePath(item.substr(dots + 2, colon - dots - 2));
        std::string name(item.substr(colon + 1));
        if (!lo || !hi || name.empty()) {
            ctx.fail({}, "malformed split entry '" + std::string(item) + "'");
            return;
        }
        entries.push_back({*lo, *hi, name});
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    }
    if (entries.empty()) {
        ctx.fail({}, "split-operation requires at least one partition entry");
        return;
    }
    // partition entries must be in order and pairwise disjoint
    for (size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].lo > entries[i].hi) {
            ctx.fail({}, "split range out of order");
            return;
        }
        for (size_t j = i + 1; j < entries.size(); ++j) {
            if (!(entries[i].hi < entries[j].lo)) {
                ctx.fail({}, "split ranges overlap or are out of order");
                return;
            }
        }
    }

    std::string nsName, callableName;
    {
        auto target = resolveCallableTarget(ctx);
        if (!target) return;
        nsName = target->ns->name;
        callableName = target->callable->name;
    }

    // apply extractions in reverse source order so earlier paths stay valid;
    // inserting right after the source callable yields partition order
    for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
        auto symbols = analysis::resolve(ctx.program);
        if (!symbols.ok()) {
            ctx.diagnostics = std::move(symbols.diagnostics);
            return;
        }
        ctx.symbols = std::move(*symbols);
        Namespace* ns = nullptr;
        Callable* callable = nullptr;
        for (auto& cand : ctx.program.namespaces) {
            if (cand.name != nsName) continue;
            ns = &cand;
            for (auto& c : cand.callables)
                if (c.name == callableName) callable = &c;
        }
        if (!callable) {
            ctx.fail({}, "split target disappeared");
            return;
        }
        auto locLo = locate(*callable, it->lo);
        auto locHi = locate(*callable, it->hi);
        if (!locLo || !locHi || locLo->block != locHi->block || locHi->index < locLo->index) {
            ctx.fail({}, "split range does not address a contiguous block range");
            return;
        }
        StmtRange range{locLo->block, locLo->index, locHi->index - locLo->index + 1};
        auto plan = planExtraction(ctx, range, it->name, /*asFunction=*/false);
        if (!plan) return;
        executeExtraction(ctx, *ns, *callable, range, *plan);
        ctx.note("split out operation " + it->name);
    }
    std::reverse(ctx.changes.end() - static_cast<long>(entries.size()), ctx.changes.end());
}

void applyRemoveCodeDuplication(Ctx& ctx) {
    auto name = ctx.request.arg("name");
    auto otherArg = ctx.request.arg("other");
    if (!name || !otherArg) {
        ctx.fail({}, "remove-code-duplication requires 'name' and 'other' arguments");
        return;
    }
    auto target = resolveCallableTarget(ctx);
    if (!target) return;
    auto rangeA = resolveRange(ctx, *target->callable);
    if (!rangeA) return;

    size_t dots = otherArg->find("..");
    auto loB = analysis::parsePath(dots == std::string::npos ? std::string_view(*otherArg)
                                                             : std::string_view(*otherArg).substr(0, dots));
    auto hiB = dots == std::string::npos
                   ? loB
                   : analysis::parsePath(std::string_view(*otherArg).substr(dots + 2));
    if (!loB || !hiB) {
        ctx.fail({}, "malformed 'other' range '" + *otherArg + "'");
        return;
    }
    auto locLo = locate(*target->callable, *loB);
    auto locHi = locate(*target->callable, *hiB);
    if (!locLo || !locHi || locLo->block != locHi->block || locHi->index < locLo->index) {
        ctx.fail({}, "'other' range does not address a contiguous block range");
        return;
    }
    StmtRange rangeB{locLo->block, locLo->index, locHi->index - locLo->index + 1};

    if (rangeA->block == rangeB.block) {
        size_t aEnd = rangeA->begin + rangeA->count;
        size_t bEnd = rangeB.begin + rangeB.count;
        if (rangeA->begin < bEnd && rangeB.begin < aEnd) {
            ctx.fail({}, "clone occurrences overlap");
            return;
        }
    }
    if (rangeA->count != rangeB.count) {
        ctx.fail({}, "clone occurrences have different lengths");
        return;
    }

    auto stmtsA = rangeStmts(*rangeA);
    auto stmtsB = rangeStmts(rangeB);
    if (!analysis::sequencesMatchUpToRenaming(ctx.symbols, stmtsA, stmtsB)) {
        ctx.fail(stmtsA.front()->span,
                 "the two ranges are not clones up to consistent renaming");
        return;
    }

    auto plan = planExtraction(ctx, *rangeA, *name, /*asFunction=*/false);
    if (!plan) return;
    // plan the second occurrence too (validates its own live-outs and sets)
    Ctx probe{ctx.program, std::move(ctx.symbols), {}, ctx.request, {}, {}};
    auto planB = planExtraction(probe, rangeB, *name + "_probe_", /*asFunction=*/false);
    ctx.symbols = std::move(probe.symbols);
    if (!planB) {
        ctx.diagnostics = std::move(probe.diagnostics);
        return;
    }
    if (planB->params.size() != plan->params.size()) {
        ctx.fail({}, "clone occurrences take different numbers of free variables");
        return;
    }
    if (plan->liveOut.has_value() != planB->liveOut.has_value()) {
        ctx.fail({}, "clone occurrences differ in live-out values");
        return;
    }

    // correspondence between A's and B's symbols, derived from the free
    // variable lists and live-outs position by position
    std::map<SymbolId, SymbolId> remap;
    for (size_t i = 0; i < plan->params.size(); ++i) {
        const auto& symA = ctx.symbols.symbol(plan->params[i]);
        const auto& symB = ctx.symbols.symbol(planB->params[i]);
        if (symA.type != symB.type) {
            ctx.fail({}, "clone occurrences pass incompatible free variables");
            return;
        }
        remap[plan->params[i]] = planB->params[i];
    }
    if (plan->liveOut) remap[*plan->liveOut] = *planB->liveOut;

    // build the callable before touching either occurrence, then replace
    // the later occurrence first so the earlier indices stay valid
    Callable fresh = buildExtractedCallable(ctx, *plan, *rangeA);
    bool sameBlock = rangeA->block == rangeB.block;
    if (sameBlock && rangeB.begin > rangeA->begin) {
        replaceRangeWithCall(ctx, rangeB, *plan, &remap);
        replaceRangeWithCall(ctx, *rangeA, *plan, nullptr);
    } else {
        replaceRangeWithCall(ctx, *rangeA, *plan, nullptr);
        replaceRangeWithCall(ctx, rangeB, *plan, &remap);
    }
    insertCallableAfter(*target->ns, *target->callable, std::move(fresh));
    ctx.note("extracted duplicate block into operation " + *name +
             " and replaced both occurrences");
}

}  // namespace qrt::refactor
