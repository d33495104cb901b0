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

#include "qrt/refactor/gate_rules.hpp"

#include "qrt/analysis/safety.hpp"
#include "qrt/sim/rule_check.hpp"

#include "ops.hpp"

#include <functional>

namespace qrt::refactor {

using namespace syntax;

const std::vector<GateRule>& gateRuleTable() {
    using K = GateRule::Kind;
    static const std::vector<GateRule> table = {
        // cancellation and strength reduction
        {"hh-cancel", K::Reduction, {{"H", {0}}, {"H", {0}}}, {}, 1},
        {"xx-cancel", K::Reduction, {{"X", {0}}, {"X", {0}}}, {}, 1},
        {"yy-cancel", K::Reduction, {{"Y", {0}}, {"Y", {0}}}, {}, 1},
        {"zz-cancel", K::Reduction, {{"Z", {0}}, {"Z", {0}}}, {}, 1},
        {"ss-to-z", K::Reduction, {{"S", {0}}, {"S", {0}}}, {{"Z", {0}}}, 1},
        {"tt-to-s", K::Reduction, {{"T", {0}}, {"T", {0}}}, {{"S", {0}}}, 1},
        {"cnot-cancel", K::Reduction, {{"CNOT", {0, 1}}, {"CNOT", {0, 1}}}, {}, 2},
        // substitutions
        {"z-to-hxh", K::Substitution, {{"Z", {0}}}, {{"H", {0}}, {"X", {0}}, {"H", {0}}}, 1},
        {"x-to-hzh", K::Substitution, {{"X", {0}}}, {{"H", {0}}, {"Z", {0}}, {"H", {0}}}, 1},
        {"cnot-to-controlled-x", K::Substitution, {{"CNOT", {0, 1}}}, {{"CX", {0, 1}}}, 2},
        {"controlled-x-to-cnot", K::Substitution, {{"CX", {0, 1}}}, {{"CNOT", {0, 1}}}, 2},
    };
    return table;
}

const GateRule* findGateRule(std::string_view name) {
    for (const auto& rule : gateRuleTable())
        if (rule.name == name) return &rule;
    return nullptr;
}

namespace {

/// Binds a statement against one pattern, extending the slot assignment.
/// Slots hold operand expressions that must agree structurally.
bool matchPattern(const GateStmtView& view, const GatePattern& pattern,
                  std::vector<const Expr*>& slots) {
    if (view.gate != pattern.gate) return false;
    if (view.operands.size() != pattern.operands.size()) return false;
    for (size_t i = 0; i < view.operands.size(); ++i) {
        int slot = pattern.operands[i];
        if (slot >= static_cast<int>(slots.size())) slots.resize(static_cast<size_t>(slot) + 1);
        if (!slots[static_cast<size_t>(slot)]) {
            slots[static_cast<size_t>(slot)] = view.operands[i];
        } else if (!astEqual(*slots[static_cast<size_t>(slot)], *view.operands[i])) {
            return false;
        }
    }
    return true;
}

StmtPtr buildGateStmt(const GatePattern& pattern, const std::vector<const Expr*>& slots) {
    if (pattern.gate == "CX") {
        ControlledApply node;
        node.gate = "X";
        ArrayLit controls;
        controls.items.push_back(clone(*slots[static_cast<size_t>(pattern.operands[0])]));
        node.controls = makeExpr({}, std::move(controls));
        node.args.push_back(clone(*slots[static_cast<size_t>(pattern.operands[1])]));
        return makeStmt({}, CallStmt{makeExpr({}, std::move(node))});
    }
    CallExpr call;
    call.callee = makeExpr({}, Ident{pattern.gate});
    for (int slot : pattern.operands)
        call.args.push_back(clone(*slots[static_cast<size_t>(slot)]));
    return makeStmt({}, CallStmt{makeExpr({}, std::move(call))});
}

/// Aggregate qubit references of a statement subtree.
std::vector<analysis::QubitRef> stmtTouches(const Stmt& s, const analysis::SymbolTable& symbols) {
    std::vector<analysis::QubitRef> refs;
    std::function<void(const Stmt&)> walk = [&](const Stmt& stmt) {
        forEachOwnExpr(stmt, [&](const Expr& e) {
            if (const auto* ctl = e.as<ControlledApply>()) {
                auto c = analysis::collectQubitRefs(*ctl->controls, symbols);
                refs.insert(refs.end(), c.begin(), c.end());
                for (const auto& a : ctl->args) {
                    auto t = analysis::collectQubitRefs(*a, symbols);
                    refs.insert(refs.end(), t.begin(), t.end());
                }
                return;
            }
            const auto* call = e.as<CallExpr>();
            if (!call) return;
            bool relevant = false;
            auto bIt = symbols.builtinUses.find(call->callee.get());
            if (bIt != symbols.builtinUses.end() && bIt->second->isQuantum()) relevant = true;
            auto uIt = symbols.uses.find(call->callee.get());
            if (uIt != symbols.uses.end() &&
                symbols.symbol(uIt->second).kind == analysis::SymbolKind::Callable)
                relevant = true;
            if (!relevant) return;
            for (const auto& a : call->args) {
                auto t = analysis::collectQubitRefs(*a, symbols);
                refs.insert(refs.end(), t.begin(), t.end());
            }
        });
        for (const Block* sub : subBlocks(stmt))
            for (const auto& child : sub->stmts) walk(*child);
    };
    walk(s);
    return refs;
}

bool anyConflict(const std::vector<analysis::QubitRef>& a,
                 const std::vector<analysis::QubitRef>& b) {
    for (const auto& x : a)
        for (const auto& y : b)
            if (analysis::conflicts(x, y)) return true;
    return false;
}

/// One pass over a block section; returns the net statement-count shrink
/// when a rule fired, or -1 when nothing matched.
int reduceOnce(Ctx& ctx, Block& block, size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
        auto first = asGateStmt(*block.stmts[i], ctx.symbols);
        if (!first) continue;
        auto firstRefs = stmtTouches(*block.stmts[i], ctx.symbols);
        for (size_t j = i + 1; j < end; ++j) {
            // adjacency: nothing between the two statements may touch the
            // first gate's operands
            if (j > i + 1) {
                auto between = stmtTouches(*block.stmts[j - 1], ctx.symbols);
                if (anyConflict(firstRefs, between)) break;
            }
            auto second = asGateStmt(*block.stmts[j], ctx.symbols);
            if (!second) continue;
            for (const auto& rule : gateRuleTable()) {
                if (rule.kind != GateRule::Kind::Reduction) continue;
                std::vector<const Expr*> slots;
                if (!matchPattern(*first, rule.lhs[0], slots)) continue;
                if (!matchPattern(*second, rule.lhs[1], slots)) continue;
                // rewrite: replace statement i, drop statement j
                std::vector<StmtPtr> replacement;
                for (const auto& pattern : rule.rhs)
                    replacement.push_back(buildGateStmt(pattern, slots));
                if (!replacement.empty())
                    replacement.front()->comments = block.stmts[i]->comments;
                int shrink = 2 - static_cast<int>(replacement.size());
                block.stmts.erase(block.stmts.begin() + static_cast<long>(j));
                block.stmts.erase(block.stmts.begin() + static_cast<long>(i));
                for (size_t k = 0; k < replacement.size(); ++k)
                    block.stmts.insert(block.stmts.begin() + static_cast<long>(i + k),
                                       std::move(replacement[k]));
                ctx.note("applied " + rule.name);
                return shrink;
            }
        }
    }
    return -1;
}

}  // namespace

namespace {

/// The rule table is matrix-verified once per process before its first use.
bool ruleTableVerified() {
    static const bool verified = sim::verifyGateRuleTable();
    return verified;
}

}  // namespace

void applyMergeGates(Ctx& ctx) {
    if (!ruleTableVerified()) {
        ctx.fail({}, "gate rule table failed matrix verification");
        return;
    }
    auto target = resolveCallableTarget(ctx);
    if (!target) return;

    size_t before = ctx.changes.size();
    if (ctx.request.target.isRange()) {
        auto range = resolveRange(ctx, *target->callable);
        if (!range) return;
        size_t end = range->begin + range->count;
        int shrink;
        while ((shrink = reduceOnce(ctx, *range->block, range->begin, end)) >= 0) {
            end -= static_cast<size_t>(shrink);
            // rewrites introduce statements unknown to the symbol table;
            // refresh it so adjacency stays sound
            auto fresh = analysis::resolve(ctx.program);
            if (!fresh.ok()) {
                ctx.diagnostics = std::move(fresh.diagnostics);
                return;
            }
            ctx.symbols = std::move(*fresh);
        }
    } else {
        bool changed = true;
        while (changed) {
            changed = false;
            // rewrites restructure blocks, so re-collect each round
            std::vector<Block*> blocks;
            std::function<void(Block&)> collect = [&](Block& b) {
                blocks.push_back(&b);
                for (auto& sp : b.stmts)
                    for (Block* sub : subBlocks(*sp)) collect(*sub);
            };
            collect(target->callable->body);
            for (Block* b : blocks) {
                while (reduceOnce(ctx, *b, 0, b->stmts.size()) >= 0) {
                    changed = true;
                    auto fresh = analysis::resolve(ctx.program);
                    if (!fresh.ok()) {
                        ctx.diagnostics = std::move(fresh.diagnostics);
                        return;
                    }
                    ctx.symbols = std::move(*fresh);
                }
            }
        }
    }
    if (ctx.changes.size() == before) ctx.note("no reducible gate pairs");
}

void applyReplaceGate(Ctx& ctx) {
    if (!ruleTableVerified()) {
        ctx.fail({}, "gate rule table failed matrix verification");
        return;
    }
    auto ruleName = ctx.request.arg("rule");
    if (!ruleName) {
        ctx.fail({}, "replace-gate requires the 'rule' argument");
        return;
    }
    const GateRule* rule = findGateRule(*ruleName);
    if (!rule || rule->kind != GateRule::Kind::Substitution) {
        ctx.fail({}, "'" + *ruleName + "' is not a substitution rule");
        return;
    }
    auto target = resolveCallableTarget(ctx);
    if (!target) return;
    if (!ctx.request.target.isRange()) {
        ctx.fail({}, "replace-gate targets one gate statement");
        return;
    }
    auto loc = locate(*target->callable, *ctx.request.target.pathLo);
    if (!loc) {
        ctx.fail({}, "target path does not address a statement");
        return;
    }
    Stmt& stmt = *loc->block->stmts[loc->index];
    auto view = asGateStmt(stmt, ctx.symbols);
    if (!view) {
        ctx.fail(stmt.span, "target statement is not a gate application");
        return;
    }
    std::vector<const Expr*> slots;
    if (rule->lhs.size() != 1 || !matchPattern(*view, rule->lhs[0], slots)) {
        ctx.fail(stmt.span, "target statement does not match the left side of " + rule->name);
        return;
    }
    std::vector<StmtPtr> replacement;
    for (const auto& pattern : rule->rhs) replacement.push_back(buildGateStmt(pattern, slots));
    if (!replacement.empty()) replacement.front()->comments = stmt.comments;
    auto& stmts = loc->block->stmts;
    stmts.erase(stmts.begin() + static_cast<long>(loc->index));
    for (size_t k = 0; k < replacement.size(); ++k)
        stmts.insert(stmts.begin() + static_cast<long>(loc->index + k),
                     std::move(replacement[k]));
    ctx.note("replaced gate via " + rule->name);
}

}  // namespace qrt::refactor
