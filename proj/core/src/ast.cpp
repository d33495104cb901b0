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

#include "qrt/ast.hpp"

#include <algorithm>

namespace qrt::syntax {

std::string typeName(const Type& t) {
    switch (t.kind) {
        case TypeKind::Unit: return "Unit";
        case TypeKind::Int: return "Int";
        case TypeKind::Double: return "Double";
        case TypeKind::Bool: return "Bool";
        case TypeKind::String: return "String";
        case TypeKind::Result: return "Result";
        case TypeKind::Range: return "Range";
        case TypeKind::Qubit: return "Qubit";
        case TypeKind::Array: return typeName(t.element()) + "[]";
    }
    return "?";
}

std::string_view binaryOpToken(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Mod: return "%";
        case BinaryOp::Eq: return "==";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::And: return "and";
        case BinaryOp::Or: return "or";
    }
    return "?";
}

std::string_view unaryOpToken(UnaryOp op) {
    return op == UnaryOp::Neg ? "-" : "not";
}

ExprPtr makeExpr(SourceSpan span, ExprNode node) {
    auto e = std::make_unique<Expr>();
    e->span = span;
    e->node = std::move(node);
    return e;
}

StmtPtr makeStmt(SourceSpan span, StmtNode node) {
    auto s = std::make_unique<Stmt>();
    s->span = span;
    s->node = std::move(node);
    return s;
}

// ============================================================================
// Deep copy
// ============================================================================

namespace {

ExprPtr cloneOrNull(const ExprPtr& e) {
    return e ? clone(*e) : nullptr;
}

std::vector<ExprPtr> cloneAll(const std::vector<ExprPtr>& xs) {
    std::vector<ExprPtr> out;
    out.reserve(xs.size());
    for (const auto& x : xs) out.push_back(clone(*x));
    return out;
}

}  // namespace

ExprPtr clone(const Expr& e) {
    ExprNode node = std::visit(
        [](const auto& n) -> ExprNode {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntLit> || std::is_same_v<T, DoubleLit> ||
                          std::is_same_v<T, BoolLit> || std::is_same_v<T, StringLit> ||
                          std::is_same_v<T, Ident>) {
                return n;
            } else if constexpr (std::is_same_v<T, InterpString>) {
                InterpString out;
                for (const auto& p : n.parts)
                    out.parts.push_back({p.text, cloneOrNull(p.expr)});
                return out;
            } else if constexpr (std::is_same_v<T, ArrayLit>) {
                return ArrayLit{cloneAll(n.items)};
            } else if constexpr (std::is_same_v<T, IndexExpr>) {
                return IndexExpr{clone(*n.base), clone(*n.index)};
            } else if constexpr (std::is_same_v<T, SliceExpr>) {
                return SliceExpr{clone(*n.base), clone(*n.range)};
            } else if constexpr (std::is_same_v<T, RangeExpr>) {
                return RangeExpr{clone(*n.lo), clone(*n.hi)};
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                return BinaryExpr{n.op, clone(*n.lhs), clone(*n.rhs)};
            } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                return UnaryExpr{n.op, clone(*n.operand)};
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                return CallExpr{clone(*n.callee), cloneAll(n.args)};
            } else {
                static_assert(std::is_same_v<T, ControlledApply>);
                return ControlledApply{n.gate, n.gateSpan, clone(*n.controls), cloneAll(n.args)};
            }
        },
        e.node);
    return makeExpr(e.span, std::move(node));
}

StmtPtr clone(const Stmt& s) {
    StmtNode node = std::visit(
        [](const auto& n) -> StmtNode {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, LetStmt>) {
                return LetStmt{n.name, n.nameSpan, clone(*n.value)};
            } else if constexpr (std::is_same_v<T, MutableStmt>) {
                return MutableStmt{n.name, n.nameSpan, clone(*n.value)};
            } else if constexpr (std::is_same_v<T, SetStmt>) {
                return SetStmt{n.name, n.nameSpan, clone(*n.value)};
            } else if constexpr (std::is_same_v<T, UsingStmt>) {
                return UsingStmt{n.name, n.nameSpan, cloneOrNull(n.count), clone(n.body)};
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                return ForStmt{n.var, n.varSpan, clone(*n.range), clone(n.body)};
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                IfStmt out;
                out.cond = clone(*n.cond);
                out.then = clone(n.then);
                for (const auto& arm : n.elifs)
                    out.elifs.push_back({clone(*arm.cond), clone(arm.body)});
                if (n.elseBlock) out.elseBlock = clone(*n.elseBlock);
                return out;
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                return ReturnStmt{clone(*n.value)};
            } else {
                static_assert(std::is_same_v<T, CallStmt>);
                return CallStmt{clone(*n.call)};
            }
        },
        s.node);
    auto out = makeStmt(s.span, std::move(node));
    out->comments = s.comments;
    return out;
}

Block clone(const Block& b) {
    Block out;
    out.span = b.span;
    out.trailingComments = b.trailingComments;
    out.stmts.reserve(b.stmts.size());
    for (const auto& s : b.stmts) out.stmts.push_back(clone(*s));
    return out;
}

Callable clone(const Callable& c) {
    Callable out;
    out.kind = c.kind;
    out.name = c.name;
    out.nameSpan = c.nameSpan;
    out.params = c.params;
    out.returnType = c.returnType;
    out.body = clone(c.body);
    out.span = c.span;
    return out;
}

Program clone(const Program& p) {
    Program out;
    out.namespaces.reserve(p.namespaces.size());
    for (const auto& ns : p.namespaces) {
        Namespace n;
        n.name = ns.name;
        n.nameSpan = ns.nameSpan;
        n.opens = ns.opens;
        n.span = ns.span;
        n.callables.reserve(ns.callables.size());
        for (const auto& c : ns.callables) n.callables.push_back(clone(c));
        out.namespaces.push_back(std::move(n));
    }
    return out;
}

// ============================================================================
// Structural equality (span- and comment-insensitive)
// ============================================================================

bool astEqual(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&b](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, IntLit>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, DoubleLit>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, BoolLit>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, StringLit>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, InterpString>) {
                if (x.parts.size() != y.parts.size()) return false;
                for (size_t i = 0; i < x.parts.size(); ++i) {
                    const auto& px = x.parts[i];
                    const auto& py = y.parts[i];
                    if (static_cast<bool>(px.expr) != static_cast<bool>(py.expr)) return false;
                    if (px.expr) {
                        if (!astEqual(*px.expr, *py.expr)) return false;
                    } else if (px.text != py.text) {
                        return false;
                    }
                }
                return true;
            } else if constexpr (std::is_same_v<T, Ident>) {
                return x.name == y.name;
            } else if constexpr (std::is_same_v<T, ArrayLit>) {
                if (x.items.size() != y.items.size()) return false;
                for (size_t i = 0; i < x.items.size(); ++i)
                    if (!astEqual(*x.items[i], *y.items[i])) return false;
                return true;
            } else if constexpr (std::is_same_v<T, IndexExpr>) {
                return astEqual(*x.base, *y.base) && astEqual(*x.index, *y.index);
            } else if constexpr (std::is_same_v<T, SliceExpr>) {
                return astEqual(*x.base, *y.base) && astEqual(*x.range, *y.range);
            } else if constexpr (std::is_same_v<T, RangeExpr>) {
                return astEqual(*x.lo, *y.lo) && astEqual(*x.hi, *y.hi);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                return x.op == y.op && astEqual(*x.lhs, *y.lhs) && astEqual(*x.rhs, *y.rhs);
            } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                return x.op == y.op && astEqual(*x.operand, *y.operand);
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                if (!astEqual(*x.callee, *y.callee)) return false;
                if (x.args.size() != y.args.size()) return false;
                for (size_t i = 0; i < x.args.size(); ++i)
                    if (!astEqual(*x.args[i], *y.args[i])) return false;
                return true;
            } else {
                static_assert(std::is_same_v<T, ControlledApply>);
                if (x.gate != y.gate) return false;
                if (!astEqual(*x.controls, *y.controls)) return false;
                if (x.args.size() != y.args.size()) return false;
                for (size_t i = 0; i < x.args.size(); ++i)
                    if (!astEqual(*x.args[i], *y.args[i])) return false;
                return true;
            }
        },
        a.node);
}

bool astEqual(const Stmt& a, const Stmt& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&b](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, LetStmt> || std::is_same_v<T, MutableStmt> ||
                          std::is_same_v<T, SetStmt>) {
                return x.name == y.name && astEqual(*x.value, *y.value);
            } else if constexpr (std::is_same_v<T, UsingStmt>) {
                if (x.name != y.name) return false;
                if (static_cast<bool>(x.count) != static_cast<bool>(y.count)) return false;
                if (x.count && !astEqual(*x.count, *y.count)) return false;
                return astEqual(x.body, y.body);
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                return x.var == y.var && astEqual(*x.range, *y.range) && astEqual(x.body, y.body);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                if (!astEqual(*x.cond, *y.cond) || !astEqual(x.then, y.then)) return false;
                if (x.elifs.size() != y.elifs.size()) return false;
                for (size_t i = 0; i < x.elifs.size(); ++i) {
                    if (!astEqual(*x.elifs[i].cond, *y.elifs[i].cond)) return false;
                    if (!astEqual(x.elifs[i].body, y.elifs[i].body)) return false;
                }
                if (x.elseBlock.has_value() != y.elseBlock.has_value()) return false;
                return !x.elseBlock || astEqual(*x.elseBlock, *y.elseBlock);
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                return astEqual(*x.value, *y.value);
            } else {
                static_assert(std::is_same_v<T, CallStmt>);
                return astEqual(*x.call, *y.call);
            }
        },
        a.node);
}

bool astEqual(const Block& a, const Block& b) {
    if (a.stmts.size() != b.stmts.size()) return false;
    for (size_t i = 0; i < a.stmts.size(); ++i)
        if (!astEqual(*a.stmts[i], *b.stmts[i])) return false;
    return true;
}

bool astEqual(const Callable& a, const Callable& b) {
    if (a.kind != b.kind || a.name != b.name || a.returnType != b.returnType) return false;
    if (a.params.size() != b.params.size()) return false;
    for (size_t i = 0; i < a.params.size(); ++i)
        if (a.params[i].name != b.params[i].name || a.params[i].type != b.params[i].type)
            return false;
    return astEqual(a.body, b.body);
}

bool astEqual(const Program& a, const Program& b) {
    if (a.namespaces.size() != b.namespaces.size()) return false;
    for (size_t i = 0; i < a.namespaces.size(); ++i) {
        const auto& na = a.namespaces[i];
        const auto& nb = b.namespaces[i];
        if (na.name != nb.name || na.opens != nb.opens) return false;
        if (na.callables.size() != nb.callables.size()) return false;
        for (size_t j = 0; j < na.callables.size(); ++j)
            if (!astEqual(na.callables[j], nb.callables[j])) return false;
    }
    return true;
}

// ============================================================================
// Traversal
// ============================================================================

namespace {

template <typename E, typename Fn>
void walkExpr(E& e, const Fn& fn) {
    fn(e);
    std::visit(
        [&fn](auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, InterpString>) {
                for (auto& p : n.parts)
                    if (p.expr) walkExpr(*p.expr, fn);
            } else if constexpr (std::is_same_v<T, ArrayLit>) {
                for (auto& x : n.items) walkExpr(*x, fn);
            } else if constexpr (std::is_same_v<T, IndexExpr>) {
                walkExpr(*n.base, fn);
                walkExpr(*n.index, fn);
            } else if constexpr (std::is_same_v<T, SliceExpr>) {
                walkExpr(*n.base, fn);
                walkExpr(*n.range, fn);
            } else if constexpr (std::is_same_v<T, RangeExpr>) {
                walkExpr(*n.lo, fn);
                walkExpr(*n.hi, fn);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                walkExpr(*n.lhs, fn);
                walkExpr(*n.rhs, fn);
            } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                walkExpr(*n.operand, fn);
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                walkExpr(*n.callee, fn);
                for (auto& a : n.args) walkExpr(*a, fn);
            } else if constexpr (std::is_same_v<T, ControlledApply>) {
                walkExpr(*n.controls, fn);
                for (auto& a : n.args) walkExpr(*a, fn);
            }
        },
        e.node);
}

template <typename S, typename B, typename Fn>
void walkStmtExprs(S& s, const Fn& fn) {
    std::visit(
        [&fn](auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, LetStmt> || std::is_same_v<T, MutableStmt> ||
                          std::is_same_v<T, SetStmt>) {
                walkExpr(*n.value, fn);
            } else if constexpr (std::is_same_v<T, UsingStmt>) {
                if (n.count) walkExpr(*n.count, fn);
                for (auto& c : n.body.stmts) walkStmtExprs<S, B>(*c, fn);
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                walkExpr(*n.range, fn);
                for (auto& c : n.body.stmts) walkStmtExprs<S, B>(*c, fn);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                walkExpr(*n.cond, fn);
                for (auto& c : n.then.stmts) walkStmtExprs<S, B>(*c, fn);
                for (auto& arm : n.elifs) {
                    walkExpr(*arm.cond, fn);
                    for (auto& c : arm.body.stmts) walkStmtExprs<S, B>(*c, fn);
                }
                if (n.elseBlock)
                    for (auto& c : n.elseBlock->stmts) walkStmtExprs<S, B>(*c, fn);
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                walkExpr(*n.value, fn);
            } else {
                static_assert(std::is_same_v<T, CallStmt>);
                walkExpr(*n.call, fn);
            }
        },
        s.node);
}

}  // namespace

void forEachExpr(const Stmt& s, const std::function<void(const Expr&)>& fn) {
    walkStmtExprs<const Stmt, const Block>(s, fn);
}

void forEachExpr(const Expr& e, const std::function<void(const Expr&)>& fn) {
    walkExpr(e, fn);
}

void forEachExpr(Stmt& s, const std::function<void(Expr&)>& fn) {
    walkStmtExprs<Stmt, Block>(s, fn);
}

void forEachExpr(Expr& e, const std::function<void(Expr&)>& fn) {
    walkExpr(e, fn);
}

namespace {

template <typename S, typename Fn>
void walkOwnExprs(S& s, const Fn& fn) {
    std::visit(
        [&fn](auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, LetStmt> || std::is_same_v<T, MutableStmt> ||
                          std::is_same_v<T, SetStmt>) {
                walkExpr(*n.value, fn);
            } else if constexpr (std::is_same_v<T, UsingStmt>) {
                if (n.count) walkExpr(*n.count, fn);
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                walkExpr(*n.range, fn);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                walkExpr(*n.cond, fn);
                for (auto& arm : n.elifs) walkExpr(*arm.cond, fn);
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                walkExpr(*n.value, fn);
            } else if constexpr (std::is_same_v<T, CallStmt>) {
                walkExpr(*n.call, fn);
            }
        },
        s.node);
}

}  // namespace

void forEachOwnExpr(const Stmt& s, const std::function<void(const Expr&)>& fn) {
    walkOwnExprs(s, fn);
}

void forEachOwnExpr(Stmt& s, const std::function<void(Expr&)>& fn) {
    walkOwnExprs(s, fn);
}

namespace {

template <typename S, typename B>
std::vector<B*> subBlocksImpl(S& s) {
    std::vector<B*> out;
    std::visit(
        [&out](auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, UsingStmt> || std::is_same_v<T, ForStmt>) {
                out.push_back(&n.body);
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                out.push_back(&n.then);
                for (auto& arm : n.elifs) out.push_back(&arm.body);
                if (n.elseBlock) out.push_back(&*n.elseBlock);
            }
        },
        s.node);
    return out;
}

}  // namespace

std::vector<const Block*> subBlocks(const Stmt& s) {
    return subBlocksImpl<const Stmt, const Block>(s);
}

std::vector<Block*> subBlocks(Stmt& s) {
    return subBlocksImpl<Stmt, Block>(s);
}

void forEachStmt(const Block& b, const std::function<void(const Stmt&)>& fn) {
    for (const auto& s : b.stmts) {
        fn(*s);
        for (const Block* sub : subBlocks(*s)) forEachStmt(*sub, fn);
    }
}

const Callable* findCallable(const Program& p, std::string_view nsName, std::string_view name) {
    for (const auto& ns : p.namespaces) {
        if (ns.name != nsName) continue;
        for (const auto& c : ns.callables)
            if (c.name == name) return &c;
    }
    return nullptr;
}

Callable* findCallable(Program& p, std::string_view nsName, std::string_view name) {
    return const_cast<Callable*>(findCallable(std::as_const(p), nsName, name));
}

const Callable* findCallableByName(const Program& p, std::string_view name, std::string* nsOut) {
    const Callable* found = nullptr;
    for (const auto& ns : p.namespaces) {
        for (const auto& c : ns.callables) {
            if (c.name != name) continue;
            if (found) return nullptr;  // ambiguous
            found = &c;
            if (nsOut) *nsOut = ns.name;
        }
    }
    return found;
}

}  // namespace qrt::syntax
