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

#include "qrt/printer.hpp"

#include <functional>
#include <map>
#include <set>

namespace qrt::analysis {

using namespace syntax;

namespace {

bool typeContainsQubit(const Type& t) {
    if (t.kind == TypeKind::Qubit) return true;
    for (const auto& a : t.args)
        if (typeContainsQubit(a)) return true;
    return false;
}

class Resolver {
public:
    explicit Resolver(const Program& p) : program_(p) {}

    Outcome<SymbolTable> run() {
        declareCallables();
        for (const auto& ns : program_.namespaces) {
            currentNs_ = &ns;
            for (const auto& c : ns.callables) resolveCallable(c);
        }
        computeMayEmit();
        if (!diags_.empty()) return Outcome<SymbolTable>::failure(std::move(diags_));
        return Outcome<SymbolTable>::success(std::move(table_));
    }

private:
    const Program& program_;
    SymbolTable table_;
    std::vector<Diagnostic> diags_;
    std::vector<std::map<std::string, SymbolId>> scopes_;
    std::map<std::string, std::map<std::string, SymbolId>> nsCallables_;
    std::map<std::string, SymbolId> retiredQubits_;  // out-of-scope qubit bindings
    const Namespace* currentNs_ = nullptr;
    const Callable* currentCallable_ = nullptr;

    void error(const char* code, SourceSpan span, std::string msg) {
        diags_.push_back(makeError(code, span, std::move(msg)));
    }

    SymbolId newSymbol(Symbol s) {
        s.id = static_cast<SymbolId>(table_.symbols.size());
        table_.symbols.push_back(std::move(s));
        return table_.symbols.back().id;
    }

    // ------------------------------------------------------------------
    // declarations
    // ------------------------------------------------------------------

    void declareCallables() {
        for (const auto& ns : program_.namespaces) {
            for (const auto& c : ns.callables) {
                if (findBuiltin(c.name)) {
                    error(diag_code::Duplicate, c.nameSpan,
                          "callable '" + c.name + "' collides with a builtin");
                    continue;
                }
                Symbol s;
                s.kind = SymbolKind::Callable;
                s.name = c.name;
                s.declSpan = c.nameSpan;
                s.type = c.returnType;
                s.callableKind = c.kind;
                s.namespaceName = ns.name;
                s.decl = &c;
                SymbolId id = newSymbol(std::move(s));
                nsCallables_[ns.name][c.name] = id;
                table_.callableSymbols[&c] = id;
            }
        }
    }

    // ------------------------------------------------------------------
    // scopes
    // ------------------------------------------------------------------

    SymbolId declareLocal(SymbolKind kind, const std::string& name, SourceSpan span, Type type,
                          bool isMutable) {
        auto& scope = scopes_.back();
        if (scope.count(name)) {
            error(diag_code::Duplicate, span, "'" + name + "' already declared in this scope");
        }
        Symbol s;
        s.kind = kind;
        s.name = name;
        s.declSpan = span;
        s.type = std::move(type);
        s.isMutable = isMutable;
        SymbolId id = newSymbol(std::move(s));
        scope[name] = id;
        return id;
    }

    SymbolId lookupLocal(const std::string& name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return found->second;
        }
        return -1;
    }

    /// Callable lookup from the current namespace through its opens.
    /// Returns -1 when absent, -2 when ambiguous.
    SymbolId lookupCallable(const std::string& name) const {
        std::set<SymbolId> found;
        auto search = [&](const std::string& nsName) {
            auto nsIt = nsCallables_.find(nsName);
            if (nsIt == nsCallables_.end()) return;
            auto it = nsIt->second.find(name);
            if (it != nsIt->second.end()) found.insert(it->second);
        };
        search(currentNs_->name);
        for (const auto& open : currentNs_->opens) search(open);
        if (found.empty()) return -1;
        if (found.size() > 1) return -2;
        return *found.begin();
    }

    // ------------------------------------------------------------------
    // callables
    // ------------------------------------------------------------------

    void resolveCallable(const Callable& c) {
        currentCallable_ = &c;
        retiredQubits_.clear();
        scopes_.clear();
        scopes_.emplace_back();
        for (const auto& p : c.params) {
            SymbolId id = declareLocal(SymbolKind::Parameter, p.name, p.span, p.type, false);
            table_.paramSymbols[&p] = id;
        }
        resolveBlock(c.body);
        scopes_.pop_back();
    }

    void resolveBlock(const Block& b) {
        scopes_.emplace_back();
        for (const auto& s : b.stmts) resolveStmt(*s);
        // retire qubit bindings going out of scope
        for (const auto& [name, id] : scopes_.back())
            if (table_.symbol(id).kind == SymbolKind::QubitBinding) retiredQubits_[name] = id;
        scopes_.pop_back();
    }

    void resolveStmt(const Stmt& s) {
        std::visit(
            [this, &s](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, LetStmt> || std::is_same_v<T, MutableStmt>) {
                    auto type = typeExpr(*n.value);
                    // no qubit-typed rebinding: qubits are referred to only
                    // through their using-binding, its index, or its slice
                    if (type && typeContainsQubit(*type))
                        error(diag_code::TypeError, n.nameSpan,
                              "qubit values cannot be bound with let/mutable");
                    SymbolId id = declareLocal(SymbolKind::Variable, n.name, n.nameSpan,
                                               type.value_or(Type::unit()),
                                               std::is_same_v<T, MutableStmt>);
                    table_.stmtDefs[&s] = id;
                } else if constexpr (std::is_same_v<T, SetStmt>) {
                    auto valueType = typeExpr(*n.value);
                    SymbolId id = lookupLocal(n.name);
                    if (id < 0) {
                        error(diag_code::Unresolved, n.nameSpan,
                              "unresolved name '" + n.name + "'");
                        return;
                    }
                    const Symbol& sym = table_.symbol(id);
                    if (sym.kind != SymbolKind::Variable || !sym.isMutable) {
                        error(diag_code::TypeError, n.nameSpan,
                              "'" + n.name + "' is not a mutable variable");
                    } else if (valueType && *valueType != sym.type) {
                        error(diag_code::TypeError, n.value->span,
                              "cannot assign " + typeName(*valueType) + " to " + typeName(sym.type) +
                                  " variable '" + n.name + "'");
                    }
                    table_.setTargets[&s] = id;
                    table_.setSites[id].push_back(&s);
                } else if constexpr (std::is_same_v<T, UsingStmt>) {
                    Type bindingType = Type::qubit();
                    if (n.count) {
                        auto ct = typeExpr(*n.count);
                        if (ct && *ct != Type::integer())
                            error(diag_code::TypeError, n.count->span,
                                  "qubit array size must be Int, got " + typeName(*ct));
                        bindingType = Type::array(Type::qubit());
                    }
                    scopes_.emplace_back();
                    SymbolId id = declareLocal(SymbolKind::QubitBinding, n.name, n.nameSpan,
                                               bindingType, false);
                    table_.stmtDefs[&s] = id;
                    resolveBlock(n.body);
                    retiredQubits_[n.name] = id;
                    scopes_.pop_back();
                } else if constexpr (std::is_same_v<T, ForStmt>) {
                    auto rt = typeExpr(*n.range);
                    if (rt && *rt != Type::range())
                        error(diag_code::TypeError, n.range->span,
                              "for expects a Range, got " + typeName(*rt));
                    scopes_.emplace_back();
                    SymbolId id =
                        declareLocal(SymbolKind::LoopVar, n.var, n.varSpan, Type::integer(), false);
                    table_.stmtDefs[&s] = id;
                    resolveBlock(n.body);
                    scopes_.pop_back();
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    auto ct = typeExpr(*n.cond);
                    if (ct && *ct != Type::boolean())
                        error(diag_code::TypeError, n.cond->span,
                              "if condition must be Bool, got " + typeName(*ct));
                    resolveBlock(n.then);
                    for (const auto& arm : n.elifs) {
                        auto at = typeExpr(*arm.cond);
                        if (at && *at != Type::boolean())
                            error(diag_code::TypeError, arm.cond->span,
                                  "elif condition must be Bool, got " + typeName(*at));
                        resolveBlock(arm.body);
                    }
                    if (n.elseBlock) resolveBlock(*n.elseBlock);
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    auto vt = typeExpr(*n.value);
                    if (vt) {
                        if (typeContainsQubit(*vt)) {
                            error(diag_code::QubitEscape, n.value->span,
                                  "qubits cannot escape through a return value");
                        } else if (*vt != currentCallable_->returnType) {
                            error(diag_code::TypeError, n.value->span,
                                  "return type mismatch: expected " +
                                      typeName(currentCallable_->returnType) + ", got " +
                                      typeName(*vt));
                        }
                    }
                } else {
                    static_assert(std::is_same_v<T, CallStmt>);
                    typeExpr(*n.call);
                }
            },
            s.node);
    }

    // ------------------------------------------------------------------
    // expressions
    // ------------------------------------------------------------------

    std::optional<Type> typeExpr(const Expr& e) {
        auto result = typeExprInner(e);
        if (result) table_.exprTypes[&e] = *result;
        return result;
    }

    std::optional<Type> typeExprInner(const Expr& e) {
        return std::visit(
            [this, &e](const auto& n) -> std::optional<Type> {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, IntLit>) {
                    return Type::integer();
                } else if constexpr (std::is_same_v<T, DoubleLit>) {
                    return Type::real();
                } else if constexpr (std::is_same_v<T, BoolLit>) {
                    return Type::boolean();
                } else if constexpr (std::is_same_v<T, StringLit>) {
                    return Type::string();
                } else if constexpr (std::is_same_v<T, InterpString>) {
                    for (const auto& part : n.parts) {
                        if (!part.expr) continue;
                        auto pt = typeExpr(*part.expr);
                        if (pt && (typeContainsQubit(*pt) || pt->kind == TypeKind::Unit))
                            error(diag_code::TypeError, part.expr->span,
                                  "cannot interpolate a value of type " + typeName(*pt));
                    }
                    return Type::string();
                } else if constexpr (std::is_same_v<T, Ident>) {
                    return typeIdent(e, n);
                } else if constexpr (std::is_same_v<T, ArrayLit>) {
                    if (n.items.empty()) {
                        error(diag_code::TypeError, e.span, "cannot infer type of empty array");
                        return std::nullopt;
                    }
                    auto et = typeExpr(*n.items[0]);
                    for (size_t i = 1; i < n.items.size(); ++i) {
                        auto it = typeExpr(*n.items[i]);
                        if (et && it && *it != *et)
                            error(diag_code::TypeError, n.items[i]->span,
                                  "array element type mismatch: " + typeName(*et) + " vs " +
                                      typeName(*it));
                    }
                    if (!et) return std::nullopt;
                    return Type::array(*et);
                } else if constexpr (std::is_same_v<T, IndexExpr>) {
                    auto bt = typeExpr(*n.base);
                    auto it = typeExpr(*n.index);
                    if (it && *it != Type::integer())
                        error(diag_code::TypeError, n.index->span,
                              "index must be Int, got " + typeName(*it));
                    if (!bt) return std::nullopt;
                    if (!bt->isArray()) {
                        error(diag_code::TypeError, n.base->span,
                              "cannot index a value of type " + typeName(*bt));
                        return std::nullopt;
                    }
                    return bt->element();
                } else if constexpr (std::is_same_v<T, SliceExpr>) {
                    auto bt = typeExpr(*n.base);
                    typeExpr(*n.range);
                    if (!bt) return std::nullopt;
                    if (!bt->isArray()) {
                        error(diag_code::TypeError, n.base->span,
                              "cannot slice a value of type " + typeName(*bt));
                        return std::nullopt;
                    }
                    return *bt;
                } else if constexpr (std::is_same_v<T, RangeExpr>) {
                    auto lt = typeExpr(*n.lo);
                    auto ht = typeExpr(*n.hi);
                    if (lt && *lt != Type::integer())
                        error(diag_code::TypeError, n.lo->span,
                              "range bound must be Int, got " + typeName(*lt));
                    if (ht && *ht != Type::integer())
                        error(diag_code::TypeError, n.hi->span,
                              "range bound must be Int, got " + typeName(*ht));
                    return Type::range();
                } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                    return typeBinary(e, n);
                } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                    auto ot = typeExpr(*n.operand);
                    if (!ot) return std::nullopt;
                    if (n.op == UnaryOp::Neg) {
                        if (*ot == Type::integer() || *ot == Type::real()) return ot;
                        error(diag_code::TypeError, e.span,
                              "cannot negate a value of type " + typeName(*ot));
                        return std::nullopt;
                    }
                    if (*ot == Type::boolean()) return ot;
                    error(diag_code::TypeError, e.span,
                          "'not' expects Bool, got " + typeName(*ot));
                    return std::nullopt;
                } else if constexpr (std::is_same_v<T, CallExpr>) {
                    return typeCall(e, n);
                } else {
                    static_assert(std::is_same_v<T, ControlledApply>);
                    return typeControlled(e, n);
                }
            },
            e.node);
    }

    std::optional<Type> typeIdent(const Expr& e, const Ident& n) {
        SymbolId local = lookupLocal(n.name);
        if (local >= 0) {
            table_.uses[&e] = local;
            table_.useSites[local].push_back(&e);
            return table_.symbol(local).type;
        }
        SymbolId callable = lookupCallable(n.name);
        if (callable == -2) {
            error(diag_code::Unresolved, e.span, "ambiguous reference to '" + n.name + "'");
            return std::nullopt;
        }
        if (callable >= 0) {
            table_.uses[&e] = callable;
            table_.useSites[callable].push_back(&e);
            error(diag_code::TypeError, e.span,
                  "callable '" + n.name + "' used as a value");
            return std::nullopt;
        }
        if (findBuiltin(n.name)) {
            error(diag_code::TypeError, e.span,
                  "builtin '" + n.name + "' used as a value");
            return std::nullopt;
        }
        auto retired = retiredQubits_.find(n.name);
        if (retired != retiredQubits_.end()) {
            error(diag_code::QubitEscape, e.span,
                  "qubit binding '" + n.name + "' is used outside its using block");
            return std::nullopt;
        }
        error(diag_code::Unresolved, e.span, "unresolved name '" + n.name + "'");
        return std::nullopt;
    }

    std::optional<Type> typeBinary(const Expr& e, const BinaryExpr& n) {
        auto lt = typeExpr(*n.lhs);
        auto rt = typeExpr(*n.rhs);
        if (!lt || !rt) return std::nullopt;
        auto mismatch = [&]() -> std::optional<Type> {
            error(diag_code::TypeError, e.span,
                  std::string("invalid operands to '") + std::string(binaryOpToken(n.op)) + "': " +
                      typeName(*lt) + " and " + typeName(*rt));
            return std::nullopt;
        };
        switch (n.op) {
            case BinaryOp::Add:
            case BinaryOp::Sub:
            case BinaryOp::Mul:
            case BinaryOp::Div:
                if (*lt == Type::integer() && *rt == Type::integer()) return Type::integer();
                if (*lt == Type::real() && *rt == Type::real()) return Type::real();
                return mismatch();
            case BinaryOp::Mod:
                if (*lt == Type::integer() && *rt == Type::integer()) return Type::integer();
                return mismatch();
            case BinaryOp::Eq:
            case BinaryOp::Ne: {
                if (*lt != *rt) return mismatch();
                TypeKind k = lt->kind;
                if (k == TypeKind::Int || k == TypeKind::Double || k == TypeKind::Bool ||
                    k == TypeKind::String || k == TypeKind::Result)
                    return Type::boolean();
                return mismatch();
            }
            case BinaryOp::Lt:
            case BinaryOp::Le:
            case BinaryOp::Gt:
            case BinaryOp::Ge:
                if ((*lt == Type::integer() && *rt == Type::integer()) ||
                    (*lt == Type::real() && *rt == Type::real()))
                    return Type::boolean();
                return mismatch();
            case BinaryOp::And:
            case BinaryOp::Or:
                if (*lt == Type::boolean() && *rt == Type::boolean()) return Type::boolean();
                return mismatch();
        }
        return std::nullopt;
    }

    std::optional<Type> typeCall(const Expr& e, const CallExpr& n) {
        const auto* calleeIdent = n.callee->as<Ident>();
        if (!calleeIdent) {
            error(diag_code::TypeError, n.callee->span, "expression is not callable");
            return std::nullopt;
        }
        const std::string& name = calleeIdent->name;
        // locals shadow callables and builtins
        if (SymbolId local = lookupLocal(name); local >= 0) {
            table_.uses[n.callee.get()] = local;
            table_.useSites[local].push_back(n.callee.get());
            error(diag_code::TypeError, n.callee->span,
                  "'" + name + "' is a value and cannot be called");
            return std::nullopt;
        }
        SymbolId callable = lookupCallable(name);
        if (callable == -2) {
            error(diag_code::Unresolved, n.callee->span, "ambiguous reference to '" + name + "'");
            return std::nullopt;
        }
        if (callable >= 0) return typeUserCall(e, n, callable);
        if (const Builtin* b = findBuiltin(name)) return typeBuiltinCall(e, n, *b);
        error(diag_code::Unresolved, n.callee->span, "unresolved name '" + name + "'");
        return std::nullopt;
    }

    std::optional<Type> typeUserCall(const Expr& e, const CallExpr& n, SymbolId callable) {
        table_.uses[n.callee.get()] = callable;
        table_.useSites[callable].push_back(n.callee.get());
        const Symbol& sym = table_.symbol(callable);
        const Callable& decl = *sym.decl;
        if (n.args.size() != decl.params.size()) {
            error(diag_code::Arity, e.span,
                  "'" + sym.name + "' expects " + std::to_string(decl.params.size()) +
                      " argument(s), got " + std::to_string(n.args.size()));
            for (const auto& a : n.args) typeExpr(*a);
            return decl.returnType;
        }
        for (size_t i = 0; i < n.args.size(); ++i) {
            auto at = typeExpr(*n.args[i]);
            if (at && *at != decl.params[i].type)
                error(diag_code::TypeError, n.args[i]->span,
                      "argument " + std::to_string(i + 1) + " of '" + sym.name + "' expects " +
                          typeName(decl.params[i].type) + ", got " + typeName(*at));
        }
        return decl.returnType;
    }

    std::optional<Type> typeBuiltinCall(const Expr& e, const CallExpr& n, const Builtin& b) {
        table_.builtinUses[n.callee.get()] = &b;
        if (b.kind == Builtin::Kind::ApplyToEach) {
            if (n.args.size() != 2) {
                error(diag_code::Arity, e.span, "ApplyToEach expects 2 arguments, got " +
                                                    std::to_string(n.args.size()));
                return Type::unit();
            }
            const auto* gateIdent = n.args[0]->as<Ident>();
            if (!gateIdent || !isSingleQubitGate(gateIdent->name)) {
                error(diag_code::TypeError, n.args[0]->span,
                      "ApplyToEach expects a single-qubit gate name");
            } else {
                table_.builtinUses[n.args[0].get()] = findBuiltin(gateIdent->name);
            }
            auto at = typeExpr(*n.args[1]);
            if (at && *at != Type::array(Type::qubit()))
                error(diag_code::TypeError, n.args[1]->span,
                      "ApplyToEach expects Qubit[], got " + typeName(*at));
            return Type::unit();
        }
        if (n.args.size() != b.paramTypes.size()) {
            error(diag_code::Arity, e.span,
                  std::string(b.name) + " expects " + std::to_string(b.paramTypes.size()) +
                      " argument(s), got " + std::to_string(n.args.size()));
            for (const auto& a : n.args) typeExpr(*a);
            return b.returnType;
        }
        for (size_t i = 0; i < n.args.size(); ++i) {
            auto at = typeExpr(*n.args[i]);
            if (at && *at != b.paramTypes[i])
                error(diag_code::TypeError, n.args[i]->span,
                      "argument " + std::to_string(i + 1) + " of " + std::string(b.name) +
                          " expects " + typeName(b.paramTypes[i]) + ", got " + typeName(*at));
        }
        return b.returnType;
    }

    std::optional<Type> typeControlled(const Expr& e, const ControlledApply& n) {
        if (n.gate != "X") {
            error(diag_code::Unsupported, n.gateSpan,
                  "the Controlled functor is supported for X only");
        }
        auto ct = typeExpr(*n.controls);
        if (ct && *ct != Type::array(Type::qubit()))
            error(diag_code::TypeError, n.controls->span,
                  "controls must be Qubit[], got " + typeName(*ct));
        if (n.args.size() != 1) {
            error(diag_code::Arity, e.span, "Controlled X expects exactly one target");
        }
        for (const auto& a : n.args) {
            auto at = typeExpr(*a);
            if (at && *at != Type::qubit())
                error(diag_code::TypeError, a->span,
                      "Controlled X target must be Qubit, got " + typeName(*at));
        }
        return Type::unit();
    }

    // ------------------------------------------------------------------
    // trace-emission summary
    // ------------------------------------------------------------------

    void computeMayEmit() {
        std::map<const Callable*, std::set<const Callable*>> callees;
        std::map<const Callable*, bool> direct;
        for (const auto& ns : program_.namespaces) {
            for (const auto& c : ns.callables) {
                direct[&c] = false;
                callees[&c] = {};
                forEachStmt(c.body, [&](const Stmt& s) {
                    forEachExpr(s, [&](const Expr& e) {
                        const auto* call = e.as<CallExpr>();
                        if (!call) return;
                        auto bIt = table_.builtinUses.find(call->callee.get());
                        if (bIt != table_.builtinUses.end() &&
                            bIt->second->kind == Builtin::Kind::Message)
                            direct[&c] = true;
                        auto uIt = table_.uses.find(call->callee.get());
                        if (uIt != table_.uses.end()) {
                            const Symbol& sym = table_.symbol(uIt->second);
                            if (sym.kind == SymbolKind::Callable && sym.decl)
                                callees[&c].insert(sym.decl);
                        }
                    });
                });
            }
        }
        // propagate to a fixpoint
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& [c, d] : direct) {
                if (d) continue;
                for (const Callable* callee : callees[c]) {
                    if (direct[callee]) {
                        d = true;
                        changed = true;
                        break;
                    }
                }
            }
        }
        for (const auto& [c, d] : direct) table_.mayEmit[c] = d;
    }
};

}  // namespace

Outcome<SymbolTable> resolve(const Program& p) {
    return Resolver(p).run();
}

}  // namespace qrt::analysis
