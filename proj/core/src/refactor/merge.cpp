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
#include "qrt/consteval.hpp"
#include "qrt/lexer.hpp"

#include "ops.hpp"

#include <functional>

namespace qrt::refactor {

using namespace syntax;
using analysis::SymbolId;
using analysis::SymbolKind;

namespace {

// Maximum number of differing literal positions merge_operations tolerates
// before giving up (it then delegates to parameterization).
constexpr size_t kMaxMergeLiteralDiffs = 1;

Callable* findByName(Program& p, Namespace& preferredNs, const std::string& name) {
    for (auto& c : preferredNs.callables)
        if (c.name == name) return &c;
    Callable* found = nullptr;
    for (auto& ns : p.namespaces)
        for (auto& c : ns.callables)
            if (c.name == name) {
                if (found) return nullptr;
                found = &c;
            }
    return found;
}

bool sameSignature(const Callable& a, const Callable& b) {
    if (a.returnType != b.returnType || a.params.size() != b.params.size()) return false;
    for (size_t i = 0; i < a.params.size(); ++i)
        if (a.params[i].name != b.params[i].name || a.params[i].type != b.params[i].type)
            return false;
    return true;
}

/// Lockstep structural walk that tolerates (and records) mismatching
/// literals of the same kind. Everything else must match exactly up to a
/// consistent renaming of local symbols.
class AntiUnifier {
public:
    struct Mismatch {
        std::vector<Expr*> sites;  // one per body, same position
    };

    AntiUnifier(Ctx& ctx, size_t bodies) : ctx_(ctx), bodies_(bodies) {}

    bool unify(const std::vector<Callable*>& targets) {
        for (size_t i = 1; i < targets.size(); ++i)
            if (!sameSignature(*targets[0], *targets[i])) return false;
        size_t size = targets[0]->body.stmts.size();
        for (Callable* c : targets)
            if (c->body.stmts.size() != size) return false;
        for (size_t i = 0; i < size; ++i) {
            std::vector<Stmt*> row;
            for (Callable* c : targets) row.push_back(c->body.stmts[i].get());
            if (!unifyStmts(row)) return false;
        }
        return true;
    }

    std::vector<Mismatch>& mismatches() { return mismatches_; }

private:
    Ctx& ctx_;
    size_t bodies_;
    std::vector<Mismatch> mismatches_;
    // pairwise symbol correspondence against body 0
    std::vector<std::map<SymbolId, SymbolId>> forward_{bodies_};
    std::vector<std::map<SymbolId, SymbolId>> backward_{bodies_};

    bool mapSymbol(size_t body, SymbolId a, SymbolId b) {
        const auto& symA = ctx_.symbols.symbol(a);
        const auto& symB = ctx_.symbols.symbol(b);
        if (symA.kind == SymbolKind::Callable || symB.kind == SymbolKind::Callable)
            return a == b;
        if (symA.kind != symB.kind || symA.type != symB.type) return false;
        auto f = forward_[body].find(a);
        auto g = backward_[body].find(b);
        if (f == forward_[body].end() && g == backward_[body].end()) {
            forward_[body][a] = b;
            backward_[body][b] = a;
            return true;
        }
        return f != forward_[body].end() && f->second == b && g != backward_[body].end() &&
               g->second == a;
    }

    bool symbolsOf(const std::vector<Stmt*>& row,
                   const std::unordered_map<const Stmt*, SymbolId>& table,
                   std::vector<SymbolId>& out) {
        out.clear();
        for (Stmt* s : row) {
            auto it = table.find(s);
            if (it == table.end()) return false;
            out.push_back(it->second);
        }
        return true;
    }

    bool unifyStmts(const std::vector<Stmt*>& row) {
        size_t kind = row[0]->node.index();
        for (Stmt* s : row)
            if (s->node.index() != kind) return false;

        std::vector<SymbolId> defs;
        if (symbolsOf(row, ctx_.symbols.stmtDefs, defs)) {
            for (size_t b = 1; b < row.size(); ++b)
                if (!mapSymbol(b, defs[0], defs[b])) return false;
        }
        if (row[0]->is<SetStmt>()) {
            std::vector<SymbolId> targets;
            if (!symbolsOf(row, ctx_.symbols.setTargets, targets)) return false;
            for (size_t b = 1; b < row.size(); ++b)
                if (!mapSymbol(b, targets[0], targets[b])) return false;
        }

        // unify child expressions and blocks positionally
        std::vector<std::vector<Expr*>> exprRows;
        std::vector<std::vector<Block*>> blockRows;
        for (size_t i = 0; i < row.size(); ++i) {
            std::vector<Expr*> exprs;
            std::visit(
                [&exprs](auto& n) {
                    using T = std::decay_t<decltype(n)>;
                    if constexpr (std::is_same_v<T, LetStmt> || std::is_same_v<T, MutableStmt> ||
                                  std::is_same_v<T, SetStmt>) {
                        exprs.push_back(n.value.get());
                    } else if constexpr (std::is_same_v<T, UsingStmt>) {
                        if (n.count) exprs.push_back(n.count.get());
                    } else if constexpr (std::is_same_v<T, ForStmt>) {
                        exprs.push_back(n.range.get());
                    } else if constexpr (std::is_same_v<T, IfStmt>) {
                        exprs.push_back(n.cond.get());
                        for (auto& arm : n.elifs) exprs.push_back(arm.cond.get());
                    } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                        exprs.push_back(n.value.get());
                    } else if constexpr (std::is_same_v<T, CallStmt>) {
                        exprs.push_back(n.call.get());
                    }
                },
                row[i]->node);
            if (i == 0) {
                exprRows.assign(exprs.size(), {});
            } else if (exprRows.size() != exprs.size()) {
                return false;
            }
            for (size_t k = 0; k < exprs.size(); ++k) exprRows[k].push_back(exprs[k]);

            std::vector<Block*> blocks = subBlocks(*row[i]);
            if (i == 0) {
                blockRows.assign(blocks.size(), {});
            } else if (blockRows.size() != blocks.size()) {
                return false;
            }
            for (size_t k = 0; k < blocks.size(); ++k) blockRows[k].push_back(blocks[k]);
        }
        for (auto& exprRow : exprRows)
            if (!unifyExprs(exprRow)) return false;
        for (auto& blockRow : blockRows) {
            size_t size = blockRow[0]->stmts.size();
            for (Block* b : blockRow)
                if (b->stmts.size() != size) return false;
            for (size_t i = 0; i < size; ++i) {
                std::vector<Stmt*> inner;
                for (Block* b : blockRow) inner.push_back(b->stmts[i].get());
                if (!unifyStmts(inner)) return false;
            }
        }
        return true;
    }

    bool sameLiteralKind(const std::vector<Expr*>& row) {
        size_t kind = row[0]->node.index();
        bool literal = row[0]->is<IntLit>() || row[0]->is<DoubleLit>() || row[0]->is<BoolLit>() ||
                       row[0]->is<StringLit>();
        if (!literal) return false;
        for (Expr* e : row)
            if (e->node.index() != kind) return false;
        return true;
    }

    bool literalsEqual(const Expr& a, const Expr& b) {
        if (const auto* i = a.as<IntLit>()) return i->value == b.as<IntLit>()->value;
        if (const auto* d = a.as<DoubleLit>()) return d->value == b.as<DoubleLit>()->value;
        if (const auto* x = a.as<BoolLit>()) return x->value == b.as<BoolLit>()->value;
        if (const auto* s = a.as<StringLit>()) return s->value == b.as<StringLit>()->value;
        return false;
    }

    bool unifyExprs(const std::vector<Expr*>& row) {
        if (sameLiteralKind(row)) {
            bool allEqual = true;
            for (size_t i = 1; i < row.size(); ++i)
                if (!literalsEqual(*row[0], *row[i])) allEqual = false;
            if (!allEqual) {
                mismatches_.push_back({row});
                return true;
            }
            // identical literals unify silently
        }
        size_t kind = row[0]->node.index();
        for (Expr* e : row)
            if (e->node.index() != kind) return false;

        if (row[0]->is<Ident>()) {
            bool builtin0 = ctx_.symbols.builtinUses.count(row[0]);
            for (Expr* e : row)
                if (static_cast<bool>(ctx_.symbols.builtinUses.count(e)) != builtin0) return false;
            if (builtin0) {
                const auto* b0 = ctx_.symbols.builtinUses.at(row[0]);
                for (Expr* e : row)
                    if (ctx_.symbols.builtinUses.at(e) != b0) return false;
                return true;
            }
            std::vector<SymbolId> ids;
            for (Expr* e : row) {
                auto it = ctx_.symbols.uses.find(e);
                if (it == ctx_.symbols.uses.end()) return false;
                ids.push_back(it->second);
            }
            for (size_t b = 1; b < row.size(); ++b)
                if (!mapSymbol(b, ids[0], ids[b])) return false;
            return true;
        }

        // positional recursion over children
        std::vector<std::vector<Expr*>> childRows;
        for (size_t i = 0; i < row.size(); ++i) {
            std::vector<Expr*> children;
            std::visit(
                [&children](auto& n) {
                    using T = std::decay_t<decltype(n)>;
                    if constexpr (std::is_same_v<T, InterpString>) {
                        for (auto& part : n.parts)
                            if (part.expr) children.push_back(part.expr.get());
                    } else if constexpr (std::is_same_v<T, ArrayLit>) {
                        for (auto& item : n.items) children.push_back(item.get());
                    } else if constexpr (std::is_same_v<T, IndexExpr>) {
                        children.push_back(n.base.get());
                        children.push_back(n.index.get());
                    } else if constexpr (std::is_same_v<T, SliceExpr>) {
                        children.push_back(n.base.get());
                        children.push_back(n.range.get());
                    } else if constexpr (std::is_same_v<T, RangeExpr>) {
                        children.push_back(n.lo.get());
                        children.push_back(n.hi.get());
                    } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                        children.push_back(n.lhs.get());
                        children.push_back(n.rhs.get());
                    } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                        children.push_back(n.operand.get());
                    } else if constexpr (std::is_same_v<T, CallExpr>) {
                        children.push_back(n.callee.get());
                        for (auto& a : n.args) children.push_back(a.get());
                    } else if constexpr (std::is_same_v<T, ControlledApply>) {
                        children.push_back(n.controls.get());
                        for (auto& a : n.args) children.push_back(a.get());
                    }
                },
                row[i]->node);
            if (i == 0) {
                childRows.assign(children.size(), {});
            } else if (childRows.size() != children.size()) {
                return false;
            }
            for (size_t k = 0; k < children.size(); ++k) childRows[k].push_back(children[k]);
        }
        // structural scalar payloads (operators, interp text, gate names)
        if (const auto* bin = row[0]->as<BinaryExpr>()) {
            for (Expr* e : row)
                if (e->as<BinaryExpr>()->op != bin->op) return false;
        }
        if (const auto* un = row[0]->as<UnaryExpr>()) {
            for (Expr* e : row)
                if (e->as<UnaryExpr>()->op != un->op) return false;
        }
        if (const auto* interp = row[0]->as<InterpString>()) {
            for (Expr* e : row) {
                const auto* other = e->as<InterpString>();
                if (other->parts.size() != interp->parts.size()) return false;
                for (size_t k = 0; k < interp->parts.size(); ++k) {
                    bool hole0 = interp->parts[k].expr != nullptr;
                    bool holeK = other->parts[k].expr != nullptr;
                    if (hole0 != holeK) return false;
                    if (!hole0 && interp->parts[k].text != other->parts[k].text) return false;
                }
            }
        }
        if (const auto* ctl = row[0]->as<ControlledApply>()) {
            for (Expr* e : row)
                if (e->as<ControlledApply>()->gate != ctl->gate) return false;
        }
        if (const auto* str = row[0]->as<StringLit>()) {
            for (Expr* e : row)
                if (e->as<StringLit>()->value != str->value) return false;
        }
        for (auto& childRow : childRows)
            if (!unifyExprs(childRow)) return false;
        return true;
    }
};

/// Retargets every call of `fromIds` to `newName` and appends an optional
/// extra literal argument per callee.
void retargetCalls(Ctx& ctx, const std::map<SymbolId, long long>& extraArgByCallee,
                   const std::set<SymbolId>& fromIds, const std::string& newName, bool addArg) {
    for (auto& ns : ctx.program.namespaces) {
        for (auto& c : ns.callables) {
            std::function<void(Block&)> walk = [&](Block& b) {
                for (auto& sp : b.stmts) {
                    forEachOwnExpr(*sp, [&](Expr& e) {
                        auto* call = e.as<CallExpr>();
                        if (!call) return;
                        auto it = ctx.symbols.uses.find(call->callee.get());
                        if (it == ctx.symbols.uses.end() || !fromIds.count(it->second)) return;
                        call->callee->as<Ident>()->name = newName;
                        if (addArg)
                            call->args.push_back(
                                makeIntExpr(extraArgByCallee.at(it->second)));
                    });
                    for (Block* sub : subBlocks(*sp)) walk(*sub);
                }
            };
            walk(c.body);
        }
    }
}

void eraseCallable(Program& p, const Callable* target) {
    for (auto& ns : p.namespaces) {
        for (size_t i = 0; i < ns.callables.size(); ++i) {
            if (&ns.callables[i] == target) {
                ns.callables.erase(ns.callables.begin() + static_cast<long>(i));
                return;
            }
        }
    }
}

void parameterizeTargets(Ctx& ctx, std::vector<Callable*> targets, const std::string& paramName);

}  // namespace

void applyMergeOperations(Ctx& ctx) {
    auto otherName = ctx.request.arg("other");
    auto mergedName = ctx.request.arg("name");
    if (!otherName || !mergedName) {
        ctx.fail({}, "merge-operations requires 'other' and 'name' arguments");
        return;
    }
    auto target = resolveCallableTarget(ctx);
    if (!target) return;
    Callable* a = target->callable;
    Callable* b = findByName(ctx.program, *target->ns, *otherName);
    if (!b) {
        ctx.fail({}, "'" + *otherName + "' does not name a unique callable");
        return;
    }
    if (a == b) {
        ctx.fail({}, "cannot merge an operation with itself");
        return;
    }
    if (!sameSignature(*a, *b)) {
        ctx.fail(b->nameSpan, "'" + a->name + "' and '" + b->name +
                                  "' have different signatures");
        return;
    }

    // strict case: alpha-equivalent bodies
    std::vector<const Stmt*> stmtsA, stmtsB;
    for (const auto& s : a->body.stmts) stmtsA.push_back(s.get());
    for (const auto& s : b->body.stmts) stmtsB.push_back(s.get());
    if (analysis::sequencesMatchUpToRenaming(ctx.symbols, stmtsA, stmtsB)) {
        if (!isValidIdentifier(*mergedName)) {
            ctx.fail({}, "'" + *mergedName + "' is not a valid identifier");
            return;
        }
        std::set<std::string> taken = allNames(ctx.program);
        taken.erase(a->name);
        taken.erase(b->name);
        if (taken.count(*mergedName)) {
            ctx.fail({}, "name '" + *mergedName + "' is already in use");
            return;
        }
        SymbolId idA = ctx.symbols.callableSymbols.at(a);
        SymbolId idB = ctx.symbols.callableSymbols.at(b);
        retargetCalls(ctx, {}, {idA, idB}, *mergedName, /*addArg=*/false);
        a->name = *mergedName;
        ctx.note("merged " + ctx.symbols.symbol(idB).name + " into " + *mergedName);
        eraseCallable(ctx.program, b);
        return;
    }

    // near-identical bodies delegate to parameterization
    AntiUnifier unifier(ctx, 2);
    if (unifier.unify({a, b}) && !unifier.mismatches().empty() &&
        unifier.mismatches().size() <= kMaxMergeLiteralDiffs) {
        if (!isValidIdentifier(*mergedName)) {
            ctx.fail({}, "'" + *mergedName + "' is not a valid identifier");
            return;
        }
        SymbolId idA = ctx.symbols.callableSymbols.at(a);
        SymbolId idB = ctx.symbols.callableSymbols.at(b);
        auto param = ctx.request.arg("param");
        parameterizeTargets(ctx, {a, b}, param.value_or(""));
        if (ctx.failed()) return;
        if (a->name != *mergedName) {
            std::set<std::string> taken = allNames(ctx.program);
            taken.erase(a->name);
            if (taken.count(*mergedName)) {
                ctx.fail({}, "name '" + *mergedName + "' is already in use");
                return;
            }
            // includes the absorbed operation's former sites, which still
            // carry its symbol id in the (now historical) table
            retargetCalls(ctx, {}, {idA, idB}, *mergedName, /*addArg=*/false);
            a->name = *mergedName;
        }
        return;
    }
    ctx.fail(b->nameSpan,
             "'" + a->name + "' and '" + b->name + "' bodies are not unifiable");
}

void applyParameterizeOperation(Ctx& ctx) {
    auto paramName = ctx.request.arg("param");
    if (!paramName) {
        ctx.fail({}, "parameterize-operation requires the 'param' argument");
        return;
    }
    auto target = resolveCallableTarget(ctx);
    if (!target) return;
    std::vector<Callable*> targets{target->callable};
    if (auto others = ctx.request.arg("others")) {
        std::string_view text = *others;
        while (!text.empty()) {
            size_t comma = text.find(',');
            std::string name(text.substr(0, comma));
            Callable* c = findByName(ctx.program, *target->ns, name);
            if (!c) {
                ctx.fail({}, "'" + name + "' does not name a unique callable");
                return;
            }
            targets.push_back(c);
            text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        }
    }
    parameterizeTargets(ctx, std::move(targets), *paramName);
}

namespace {

void parameterizeTargets(Ctx& ctx, std::vector<Callable*> targets, const std::string& paramName) {
    Callable* primary = targets[0];

    std::vector<std::vector<Expr*>> positions;  // [position][target]
    if (targets.size() == 1) {
        // degenerate single-target form: abstract the first Int literal
        Expr* firstLiteral = nullptr;
        forEachStmt(primary->body, [&](const Stmt& s) {
            forEachOwnExpr(const_cast<Stmt&>(s), [&](Expr& e) {
                if (!firstLiteral && e.is<IntLit>()) firstLiteral = &e;
            });
        });
        if (!firstLiteral) {
            ctx.fail(primary->nameSpan, "'" + primary->name + "' has no literal to abstract");
            return;
        }
        positions.push_back({firstLiteral});
    } else {
        AntiUnifier unifier(ctx, targets.size());
        if (!unifier.unify(targets)) {
            ctx.fail(primary->nameSpan, "target bodies are not structurally unifiable");
            return;
        }
        if (unifier.mismatches().empty()) {
            ctx.fail(primary->nameSpan, "target bodies are identical; use merge-operations");
            return;
        }
        for (auto& m : unifier.mismatches()) positions.push_back(m.sites);
    }

    // all differing positions must hold Int literals with one value per target
    std::vector<long long> valueByTarget(targets.size());
    for (size_t t = 0; t < targets.size(); ++t) {
        std::optional<long long> value;
        for (const auto& position : positions) {
            const auto* lit = position[t]->as<IntLit>();
            if (!lit) {
                ctx.fail(position[t]->span, "differing position does not hold an Int literal");
                return;
            }
            if (value && *value != lit->value) {
                ctx.fail(position[t]->span,
                         "differing literals are inconsistent within one operation");
                return;
            }
            value = lit->value;
        }
        valueByTarget[t] = *value;
    }

    std::set<std::string> taken = allNames(ctx.program);
    std::string name = paramName;
    if (!name.empty() && isValidIdentifier(name) && taken.count(name)) {
        ctx.fail({}, "parameter name '" + name + "' is already in use");
        return;
    }
    if (name.empty() || !isValidIdentifier(name)) name = freshName(taken, "", "value");

    // abstract the primary body's positions and add the trailing parameter
    for (const auto& position : positions) {
        Expr* site = position[0];
        SourceSpan span = site->span;
        site->node = Ident{name};
        site->span = span;
    }
    primary->params.push_back({name, Type::integer(), {}});

    // retarget call sites: each former callee passes its own literal
    std::map<SymbolId, long long> extraArg;
    std::set<SymbolId> fromIds;
    for (size_t t = 0; t < targets.size(); ++t) {
        SymbolId id = ctx.symbols.callableSymbols.at(targets[t]);
        fromIds.insert(id);
        extraArg[id] = valueByTarget[t];
    }
    retargetCalls(ctx, extraArg, fromIds, primary->name, /*addArg=*/true);

    std::string note = "parameterized " + primary->name + " over " + name;
    for (size_t t = 1; t < targets.size(); ++t) {
        note += ", absorbed " + targets[t]->name;
    }
    std::vector<const Callable*> toErase(targets.begin() + 1, targets.end());
    for (const Callable* dead : toErase) eraseCallable(ctx.program, dead);
    ctx.note(note);
}

}  // namespace

void applySpecializeOperation(Ctx& ctx) {
    auto newName = ctx.request.arg("name");
    if (!newName) {
        ctx.fail({}, "specialize-operation requires the 'name' argument");
        return;
    }
    auto target = resolveCallableTarget(ctx);
    if (!target) return;
    if (!ctx.request.target.isRange()) {
        ctx.fail({}, "specialize-operation targets one call-site statement");
        return;
    }
    auto loc = locate(*target->callable, *ctx.request.target.pathLo);
    if (!loc) {
        ctx.fail({}, "target path does not address a statement");
        return;
    }
    Stmt& stmt = *loc->block->stmts[loc->index];
    CallExpr* call = nullptr;
    if (auto* callStmt = stmt.as<CallStmt>())
        call = callStmt->call->as<CallExpr>();
    else if (auto* let = stmt.as<LetStmt>())
        call = let->value->as<CallExpr>();
    if (!call) {
        ctx.fail(stmt.span, "statement is not a call");
        return;
    }
    auto useIt = ctx.symbols.uses.find(call->callee.get());
    if (useIt == ctx.symbols.uses.end() ||
        ctx.symbols.symbol(useIt->second).kind != SymbolKind::Callable) {
        ctx.fail(stmt.span, "statement does not call a user-defined callable");
        return;
    }
    const Callable* callee = ctx.symbols.symbol(useIt->second).decl;

    // literal classical arguments become baked-in constants
    std::vector<size_t> literalPositions;
    for (size_t i = 0; i < call->args.size() && i < callee->params.size(); ++i) {
        const Expr& arg = *call->args[i];
        bool literal = arg.is<IntLit>() || arg.is<BoolLit>() || arg.is<DoubleLit>() ||
                       arg.is<StringLit>();
        if (const auto* u = arg.as<UnaryExpr>())
            literal = u->op == UnaryOp::Neg &&
                      (u->operand->is<IntLit>() || u->operand->is<DoubleLit>());
        if (literal) literalPositions.push_back(i);
    }
    if (literalPositions.empty()) {
        ctx.fail(stmt.span, "call site passes no literal arguments to specialize on");
        return;
    }

    std::set<std::string> taken = allNames(ctx.program);
    if (!isValidIdentifier(*newName) || taken.count(*newName)) {
        ctx.fail({}, "name '" + *newName + "' is invalid or already in use");
        return;
    }

    Callable specialized = clone(*callee);
    specialized.name = *newName;
    std::map<std::string, const Expr*> mapping;
    for (size_t pos : literalPositions)
        mapping[callee->params[pos].name] = call->args[pos].get();
    substituteInBlock(specialized.body, mapping);
    // drop the specialized parameters, last position first
    for (auto it = literalPositions.rbegin(); it != literalPositions.rend(); ++it)
        specialized.params.erase(specialized.params.begin() + static_cast<long>(*it));
    constantFold(specialized.body);

    // retarget the one call site
    call->callee->as<Ident>()->name = *newName;
    for (auto it = literalPositions.rbegin(); it != literalPositions.rend(); ++it)
        call->args.erase(call->args.begin() + static_cast<long>(*it));

    // insert after the callee (pointers into the vector go stale here)
    std::string calleeName = callee->name;
    for (auto& ns : ctx.program.namespaces) {
        for (size_t i = 0; i < ns.callables.size(); ++i) {
            if (&ns.callables[i] == callee) {
                ns.callables.insert(ns.callables.begin() + static_cast<long>(i + 1),
                                    std::move(specialized));
                ctx.note("specialized " + calleeName + " into " + *newName + " over " +
                         std::to_string(literalPositions.size()) + " argument(s)");
                return;
            }
        }
    }
    ctx.fail({}, "callee declaration not found");
}

}  // namespace qrt::refactor
