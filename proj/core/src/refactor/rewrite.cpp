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

#include "rewrite.hpp"

#include "qrt/consteval.hpp"
#include "qrt/lexer.hpp"

#include <algorithm>

namespace qrt::refactor {

using namespace syntax;
using analysis::StmtPath;
using analysis::SymbolId;
using analysis::SymbolKind;

std::optional<ResolvedTarget> resolveCallableTarget(Ctx& ctx) {
    const std::string& qualified = ctx.request.target.qualifiedName;
    ResolvedTarget out;
    size_t bestLen = 0;
    for (auto& ns : ctx.program.namespaces) {
        if (qualified.size() <= ns.name.size() + 1) continue;
        if (qualified.compare(0, ns.name.size(), ns.name) != 0) continue;
        if (qualified[ns.name.size()] != '.') continue;
        std::string callable = qualified.substr(ns.name.size() + 1);
        if (callable.find('.') != std::string::npos) continue;
        for (auto& c : ns.callables) {
            if (c.name == callable && ns.name.size() > bestLen) {
                bestLen = ns.name.size();
                out.ns = &ns;
                out.callable = &c;
            }
        }
    }
    if (!out.callable) {
        ctx.fail({}, "target '" + qualified + "' does not name a callable");
        return std::nullopt;
    }
    return out;
}

namespace {

std::optional<Location> locateChild(Block& block, size_t index, const StmtPath& path,
                                    size_t depth) {
    if (index >= block.stmts.size()) return std::nullopt;
    if (depth == path.size()) return Location{&block, index};
    Stmt& s = *block.stmts[index];
    int next = path[depth];
    if (next < 0) return std::nullopt;
    int skipped = 0;
    for (Block* sub : subBlocks(s)) {
        int size = static_cast<int>(sub->stmts.size());
        if (next < skipped + size)
            return locateChild(*sub, static_cast<size_t>(next - skipped), path, depth + 1);
        skipped += size;
    }
    return std::nullopt;
}

}  // namespace

std::optional<Location> locate(Callable& c, const StmtPath& path) {
    if (path.empty() || path[0] < 0) return std::nullopt;
    return locateChild(c.body, static_cast<size_t>(path[0]), path, 1);
}

std::optional<StmtRange> resolveRange(Ctx& ctx, Callable& c) {
    const Target& t = ctx.request.target;
    if (!t.pathLo) {
        ctx.fail({}, "this refactoring requires a statement range target");
        return std::nullopt;
    }
    StmtPath lo = *t.pathLo;
    StmtPath hi = t.pathHi.value_or(lo);
    if (lo.size() != hi.size() ||
        !std::equal(lo.begin(), lo.end() - 1, hi.begin(), hi.end() - 1) ||
        lo.back() > hi.back()) {
        ctx.fail({}, "range endpoints must be siblings in source order");
        return std::nullopt;
    }
    auto locLo = locate(c, lo);
    auto locHi = locate(c, hi);
    if (!locLo || !locHi) {
        ctx.fail({}, "range does not address statements of " + c.name);
        return std::nullopt;
    }
    if (locLo->block != locHi->block) {
        ctx.fail({}, "range endpoints lie in different blocks");
        return std::nullopt;
    }
    return StmtRange{locLo->block, locLo->index, locHi->index - locLo->index + 1};
}

std::set<std::string> allNames(const Program& p) {
    std::set<std::string> names;
    for (const auto& b : builtinRegistry()) names.insert(std::string(b.name));
    for (const auto& ns : p.namespaces) {
        names.insert(ns.name);
        for (const auto& c : ns.callables) {
            names.insert(c.name);
            for (const auto& param : c.params) names.insert(param.name);
            forEachStmt(c.body, [&names](const Stmt& s) {
                std::visit(
                    [&names](const auto& n) {
                        using T = std::decay_t<decltype(n)>;
                        if constexpr (std::is_same_v<T, LetStmt> || std::is_same_v<T, MutableStmt>)
                            names.insert(n.name);
                        else if constexpr (std::is_same_v<T, UsingStmt>)
                            names.insert(n.name);
                        else if constexpr (std::is_same_v<T, ForStmt>)
                            names.insert(n.var);
                    },
                    s.node);
                forEachExpr(s, [&names](const Expr& e) {
                    if (const auto* id = e.as<Ident>()) names.insert(id->name);
                });
            });
        }
    }
    return names;
}

std::string freshName(std::set<std::string>& taken, const std::string& requested,
                      const std::string& base) {
    if (!requested.empty() && isValidIdentifier(requested) && !taken.count(requested)) {
        taken.insert(requested);
        return requested;
    }
    for (int k = 1;; ++k) {
        std::string candidate = base + "_" + std::to_string(k);
        if (!taken.count(candidate)) {
            taken.insert(candidate);
            return candidate;
        }
    }
}

namespace {

void substituteInExpr(Expr& e, const std::map<std::string, const Expr*>& mapping,
                      const std::set<std::string>& shadowed) {
    if (auto* id = e.as<Ident>()) {
        if (shadowed.count(id->name)) return;
        auto it = mapping.find(id->name);
        if (it == mapping.end()) return;
        SourceSpan span = e.span;
        ExprPtr replacement = clone(*it->second);
        e.node = std::move(replacement->node);
        e.span = span;
        return;
    }
    std::visit(
        [&](auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, InterpString>) {
                for (auto& part : n.parts)
                    if (part.expr) substituteInExpr(*part.expr, mapping, shadowed);
            } else if constexpr (std::is_same_v<T, ArrayLit>) {
                for (auto& item : n.items) substituteInExpr(*item, mapping, shadowed);
            } else if constexpr (std::is_same_v<T, IndexExpr>) {
                substituteInExpr(*n.base, mapping, shadowed);
                substituteInExpr(*n.index, mapping, shadowed);
            } else if constexpr (std::is_same_v<T, SliceExpr>) {
                substituteInExpr(*n.base, mapping, shadowed);
                substituteInExpr(*n.range, mapping, shadowed);
            } else if constexpr (std::is_same_v<T, RangeExpr>) {
                substituteInExpr(*n.lo, mapping, shadowed);
                substituteInExpr(*n.hi, mapping, shadowed);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                substituteInExpr(*n.lhs, mapping, shadowed);
                substituteInExpr(*n.rhs, mapping, shadowed);
            } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                substituteInExpr(*n.operand, mapping, shadowed);
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                // callee names are callables/builtins, never substituted
                for (auto& a : n.args) substituteInExpr(*a, mapping, shadowed);
            } else if constexpr (std::is_same_v<T, ControlledApply>) {
                substituteInExpr(*n.controls, mapping, shadowed);
                for (auto& a : n.args) substituteInExpr(*a, mapping, shadowed);
            }
        },
        e.node);
}

}  // namespace

void substituteInBlock(Block& b, const std::map<std::string, const Expr*>& mapping,
                       std::set<std::string> shadowed) {
    for (auto& sp : b.stmts) {
        Stmt& s = *sp;
        std::visit(
            [&](auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, LetStmt> || std::is_same_v<T, MutableStmt>) {
                    substituteInExpr(*n.value, mapping, shadowed);
                    shadowed.insert(n.name);
                } else if constexpr (std::is_same_v<T, SetStmt>) {
                    substituteInExpr(*n.value, mapping, shadowed);
                } else if constexpr (std::is_same_v<T, UsingStmt>) {
                    if (n.count) substituteInExpr(*n.count, mapping, shadowed);
                    std::set<std::string> inner = shadowed;
                    inner.insert(n.name);
                    substituteInBlock(n.body, mapping, inner);
                } else if constexpr (std::is_same_v<T, ForStmt>) {
                    substituteInExpr(*n.range, mapping, shadowed);
                    std::set<std::string> inner = shadowed;
                    inner.insert(n.var);
                    substituteInBlock(n.body, mapping, inner);
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    substituteInExpr(*n.cond, mapping, shadowed);
                    substituteInBlock(n.then, mapping, shadowed);
                    for (auto& arm : n.elifs) {
                        substituteInExpr(*arm.cond, mapping, shadowed);
                        substituteInBlock(arm.body, mapping, shadowed);
                    }
                    if (n.elseBlock) substituteInBlock(*n.elseBlock, mapping, shadowed);
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    substituteInExpr(*n.value, mapping, shadowed);
                } else {
                    static_assert(std::is_same_v<T, CallStmt>);
                    substituteInExpr(*n.call, mapping, shadowed);
                }
            },
            s.node);
    }
}

void renameAll(Block& b, const std::map<std::string, std::string>& mapping) {
    for (auto& sp : b.stmts) {
        Stmt& s = *sp;
        std::visit(
            [&](auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, LetStmt> || std::is_same_v<T, MutableStmt> ||
                              std::is_same_v<T, SetStmt> || std::is_same_v<T, UsingStmt>) {
                    auto it = mapping.find(n.name);
                    if (it != mapping.end()) n.name = it->second;
                } else if constexpr (std::is_same_v<T, ForStmt>) {
                    auto it = mapping.find(n.var);
                    if (it != mapping.end()) n.var = it->second;
                }
            },
            s.node);
        forEachExpr(s, [&mapping](Expr& e) {
            if (auto* id = e.as<Ident>()) {
                auto it = mapping.find(id->name);
                if (it != mapping.end()) id->name = it->second;
            }
        });
        for (Block* sub : subBlocks(s)) renameAll(*sub, mapping);
    }
}

std::set<std::string> declaredNames(const Block& b) {
    std::set<std::string> names;
    forEachStmt(b, [&names](const Stmt& s) {
        std::visit(
            [&names](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, LetStmt> || std::is_same_v<T, MutableStmt> ||
                              std::is_same_v<T, UsingStmt>)
                    names.insert(n.name);
                else if constexpr (std::is_same_v<T, ForStmt>)
                    names.insert(n.var);
            },
            s.node);
    });
    return names;
}

bool exprHasEffects(const Expr& e, const analysis::SymbolTable& symbols) {
    bool effects = false;
    forEachExpr(e, [&](const Expr& sub) {
        if (sub.is<ControlledApply>()) {
            effects = true;
            return;
        }
        const auto* call = sub.as<CallExpr>();
        if (!call) return;
        auto bIt = symbols.builtinUses.find(call->callee.get());
        if (bIt != symbols.builtinUses.end()) {
            if (bIt->second->kind != syntax::Builtin::Kind::ResultArrayAsInt) effects = true;
            return;
        }
        auto uIt = symbols.uses.find(call->callee.get());
        if (uIt != symbols.uses.end()) {
            const auto& sym = symbols.symbol(uIt->second);
            if (sym.kind != SymbolKind::Callable) {
                effects = true;
                return;
            }
            if (sym.callableKind == CallableKind::Operation) {
                effects = true;
                return;
            }
            // function: effectful only if it may emit output
            auto emitIt = symbols.mayEmit.find(sym.decl);
            if (emitIt == symbols.mayEmit.end() || emitIt->second) effects = true;
            return;
        }
        effects = true;  // unresolved: be conservative
    });
    return effects;
}

std::vector<SymbolId> freeVariables(const std::vector<const Stmt*>& stmts,
                                    const analysis::SymbolTable& symbols) {
    // symbols declared inside the range
    std::set<SymbolId> declared;
    for (const Stmt* s : stmts) {
        std::function<void(const Stmt&)> walk = [&](const Stmt& stmt) {
            auto it = symbols.stmtDefs.find(&stmt);
            if (it != symbols.stmtDefs.end()) declared.insert(it->second);
            for (const Block* sub : subBlocks(stmt))
                for (const auto& child : sub->stmts) walk(*child);
        };
        walk(*s);
    }
    std::set<SymbolId> seen;
    std::vector<SymbolId> free;
    for (const Stmt* s : stmts) {
        forEachExpr(*s, [&](const Expr& e) {
            if (!e.is<Ident>()) return;
            auto it = symbols.uses.find(&e);
            if (it == symbols.uses.end()) return;
            SymbolId id = it->second;
            const auto& sym = symbols.symbol(id);
            if (sym.kind == SymbolKind::Callable) return;
            if (declared.count(id) || seen.count(id)) return;
            seen.insert(id);
            free.push_back(id);
        });
        // set targets of outer variables are also free references
        std::function<void(const Stmt&)> walkSets = [&](const Stmt& stmt) {
            auto it = symbols.setTargets.find(&stmt);
            if (it != symbols.setTargets.end() && !declared.count(it->second) &&
                !seen.count(it->second)) {
                seen.insert(it->second);
                free.push_back(it->second);
            }
            for (const Block* sub : subBlocks(stmt))
                for (const auto& child : sub->stmts) walkSets(*child);
        };
        walkSets(*s);
    }
    std::sort(free.begin(), free.end());
    return free;
}

std::vector<const Stmt*> rangeStmts(const StmtRange& range) {
    std::vector<const Stmt*> out;
    for (size_t i = 0; i < range.count; ++i)
        out.push_back(range.block->stmts[range.begin + i].get());
    return out;
}

bool containsReturn(const Block& b) {
    bool found = false;
    forEachStmt(b, [&found](const Stmt& s) {
        if (s.is<ReturnStmt>()) found = true;
    });
    return found;
}

namespace {

// Folds constant subexpressions in place.
void foldExpr(Expr& e) {
    std::visit(
        [&](auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, InterpString>) {
                for (auto& part : n.parts)
                    if (part.expr) foldExpr(*part.expr);
            } else if constexpr (std::is_same_v<T, ArrayLit>) {
                for (auto& item : n.items) foldExpr(*item);
            } else if constexpr (std::is_same_v<T, IndexExpr>) {
                foldExpr(*n.base);
                foldExpr(*n.index);
            } else if constexpr (std::is_same_v<T, SliceExpr>) {
                foldExpr(*n.base);
                foldExpr(*n.range);
            } else if constexpr (std::is_same_v<T, RangeExpr>) {
                foldExpr(*n.lo);
                foldExpr(*n.hi);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                foldExpr(*n.lhs);
                foldExpr(*n.rhs);
            } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                foldExpr(*n.operand);
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                for (auto& a : n.args) foldExpr(*a);
            } else if constexpr (std::is_same_v<T, ControlledApply>) {
                foldExpr(*n.controls);
                for (auto& a : n.args) foldExpr(*a);
            }
        },
        e.node);
    if (e.is<IntLit>() || e.is<BoolLit>()) return;
    if (e.is<BinaryExpr>() || e.is<UnaryExpr>()) {
        if (auto iv = evalConstInt(e)) {
            ExprPtr lit = makeIntExpr(*iv);
            SourceSpan span = e.span;
            e.node = std::move(lit->node);
            e.span = span;
            return;
        }
        if (auto bv = evalConstBool(e)) {
            SourceSpan span = e.span;
            e.node = BoolLit{*bv};
            e.span = span;
        }
    }
}

}  // namespace

void constantFold(Block& b) {
    std::vector<StmtPtr> out;
    for (auto& sp : b.stmts) {
        Stmt& s = *sp;
        bool dropped = false;
        std::visit(
            [&](auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, LetStmt> || std::is_same_v<T, MutableStmt> ||
                              std::is_same_v<T, SetStmt>) {
                    foldExpr(*n.value);
                } else if constexpr (std::is_same_v<T, UsingStmt>) {
                    if (n.count) foldExpr(*n.count);
                    constantFold(n.body);
                } else if constexpr (std::is_same_v<T, ForStmt>) {
                    foldExpr(*n.range);
                    constantFold(n.body);
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    foldExpr(*n.cond);
                    constantFold(n.then);
                    for (auto& arm : n.elifs) {
                        foldExpr(*arm.cond);
                        constantFold(arm.body);
                    }
                    if (n.elseBlock) constantFold(*n.elseBlock);
                    // prune a fully-determined branch chain
                    if (auto cv = evalConstBool(*n.cond)) {
                        bool allConst = true;
                        std::optional<size_t> takenElif;
                        if (!*cv) {
                            for (size_t i = 0; i < n.elifs.size(); ++i) {
                                auto av = evalConstBool(*n.elifs[i].cond);
                                if (!av) {
                                    allConst = false;
                                    break;
                                }
                                if (*av) {
                                    takenElif = i;
                                    break;
                                }
                            }
                        }
                        if (allConst) {
                            Block taken;
                            if (*cv) {
                                taken = clone(n.then);
                            } else if (takenElif) {
                                taken = clone(n.elifs[*takenElif].body);
                            } else if (n.elseBlock) {
                                taken = clone(*n.elseBlock);
                            }
                            for (auto& inner : taken.stmts) out.push_back(std::move(inner));
                            dropped = true;
                        }
                    }
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    foldExpr(*n.value);
                } else if constexpr (std::is_same_v<T, CallStmt>) {
                    foldExpr(*n.call);
                }
            },
            s.node);
        if (!dropped) out.push_back(std::move(sp));
    }
    b.stmts = std::move(out);
}

std::optional<GateStmtView> asGateStmt(const Stmt& s, const analysis::SymbolTable& symbols) {
    const auto* callStmt = s.as<CallStmt>();
    if (!callStmt) return std::nullopt;
    if (const auto* ctl = callStmt->call->as<ControlledApply>()) {
        if (ctl->gate != "X") return std::nullopt;
        const auto* controls = ctl->controls->as<ArrayLit>();
        if (!controls || controls->items.size() != 1 || ctl->args.size() != 1)
            return std::nullopt;
        GateStmtView view;
        view.gate = "CX";
        view.operands = {controls->items[0].get(), ctl->args[0].get()};
        return view;
    }
    const auto* call = callStmt->call->as<CallExpr>();
    if (!call) return std::nullopt;
    auto bIt = symbols.builtinUses.find(call->callee.get());
    if (bIt == symbols.builtinUses.end() || !bIt->second->isGate()) return std::nullopt;
    GateStmtView view;
    view.gate = std::string(bIt->second->name);
    for (const auto& a : call->args) view.operands.push_back(a.get());
    return view;
}

}  // namespace qrt::refactor
