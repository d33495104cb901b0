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

#pragma once

#include "qrt/diag.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qrt::syntax {

// ============================================================================
// Types
// ============================================================================

enum class TypeKind { Unit, Int, Double, Bool, String, Result, Range, Qubit, Array };

/// Value-semantic type descriptor. Array element types live in `args`
/// (exactly one entry for Array, empty otherwise).
struct Type {
    TypeKind kind = TypeKind::Unit;
    std::vector<Type> args;

    static Type unit() { return {TypeKind::Unit, {}}; }
    static Type integer() { return {TypeKind::Int, {}}; }
    static Type real() { return {TypeKind::Double, {}}; }
    static Type boolean() { return {TypeKind::Bool, {}}; }
    static Type string() { return {TypeKind::String, {}}; }
    static Type result() { return {TypeKind::Result, {}}; }
    static Type range() { return {TypeKind::Range, {}}; }
    static Type qubit() { return {TypeKind::Qubit, {}}; }
    static Type array(Type element) { return {TypeKind::Array, {std::move(element)}}; }

    bool isArray() const { return kind == TypeKind::Array; }
    const Type& element() const { return args.front(); }

    bool operator==(const Type&) const = default;
};

std::string typeName(const Type& t);

// ============================================================================
// Expressions
// ============================================================================

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class BinaryOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };
enum class UnaryOp { Neg, Not };

std::string_view binaryOpToken(BinaryOp op);
std::string_view unaryOpToken(UnaryOp op);

struct IntLit {
    long long value = 0;
};
struct DoubleLit {
    double value = 0.0;
};
struct BoolLit {
    bool value = false;
};
struct StringLit {
    std::string value;  // unescaped
};
/// `$"text {expr} text"`; parts alternate freely between literal text and
/// embedded expressions so renames can rewrite interpolation holes.
struct InterpString {
    struct Part {
        std::string text;  // literal text, used when expr is null
        ExprPtr expr;
    };
    std::vector<Part> parts;
};
struct Ident {
    std::string name;
};
struct ArrayLit {
    std::vector<ExprPtr> items;
};
struct IndexExpr {
    ExprPtr base;
    ExprPtr index;
};
struct SliceExpr {
    ExprPtr base;
    ExprPtr range;
};
struct RangeExpr {
    ExprPtr lo;
    ExprPtr hi;
};
struct BinaryExpr {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};
struct UnaryExpr {
    UnaryOp op;
    ExprPtr operand;
};
struct CallExpr {
    ExprPtr callee;
    std::vector<ExprPtr> args;
};
/// `Controlled G(controls, targets...)`
struct ControlledApply {
    std::string gate;
    SourceSpan gateSpan;
    ExprPtr controls;
    std::vector<ExprPtr> args;
};

using ExprNode = std::variant<IntLit, DoubleLit, BoolLit, StringLit, InterpString, Ident, ArrayLit,
                              IndexExpr, SliceExpr, RangeExpr, BinaryExpr, UnaryExpr, CallExpr,
                              ControlledApply>;

struct Expr {
    SourceSpan span;
    ExprNode node;

    template <typename T>
    const T* as() const {
        return std::get_if<T>(&node);
    }
    template <typename T>
    T* as() {
        return std::get_if<T>(&node);
    }
    template <typename T>
    bool is() const {
        return std::holds_alternative<T>(node);
    }
};

ExprPtr makeExpr(SourceSpan span, ExprNode node);

// ============================================================================
// Statements
// ============================================================================

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Block {
    std::vector<StmtPtr> stmts;
    /// Comments sitting at the end of the block with no statement to attach to.
    std::vector<std::string> trailingComments;
    SourceSpan span;
};

struct LetStmt {
    std::string name;
    SourceSpan nameSpan;
    ExprPtr value;
};
struct MutableStmt {
    std::string name;
    SourceSpan nameSpan;
    ExprPtr value;
};
struct SetStmt {
    std::string name;
    SourceSpan nameSpan;
    ExprPtr value;
};
/// `using (q = Qubit()) { ... }` when count is null,
/// `using (qs = Qubit[n]) { ... }` otherwise.
struct UsingStmt {
    std::string name;
    SourceSpan nameSpan;
    ExprPtr count;
    Block body;
};
struct ForStmt {
    std::string var;
    SourceSpan varSpan;
    ExprPtr range;
    Block body;
};
struct IfStmt {
    struct Arm {
        ExprPtr cond;
        Block body;
    };
    ExprPtr cond;
    Block then;
    std::vector<Arm> elifs;
    std::optional<Block> elseBlock;
};
struct ReturnStmt {
    ExprPtr value;
};
/// Expression used as a statement; the expression is a call in the subset.
struct CallStmt {
    ExprPtr call;
};

using StmtNode =
    std::variant<LetStmt, MutableStmt, SetStmt, UsingStmt, ForStmt, IfStmt, ReturnStmt, CallStmt>;

struct Stmt {
    SourceSpan span;
    /// Leading `//` comment lines, without the delimiter, attached as trivia.
    std::vector<std::string> comments;
    StmtNode node;

    template <typename T>
    const T* as() const {
        return std::get_if<T>(&node);
    }
    template <typename T>
    T* as() {
        return std::get_if<T>(&node);
    }
    template <typename T>
    bool is() const {
        return std::holds_alternative<T>(node);
    }
};

StmtPtr makeStmt(SourceSpan span, StmtNode node);

// ============================================================================
// Declarations
// ============================================================================

enum class CallableKind { Operation, Function };

struct Param {
    std::string name;
    Type type;
    SourceSpan span;
};

struct Callable {
    CallableKind kind = CallableKind::Operation;
    std::string name;
    SourceSpan nameSpan;
    std::vector<Param> params;
    Type returnType;
    Block body;
    SourceSpan span;
};

struct Namespace {
    std::string name;  // dotted
    SourceSpan nameSpan;
    std::vector<std::string> opens;
    std::vector<Callable> callables;
    SourceSpan span;
};

struct Program {
    std::vector<Namespace> namespaces;
};

// ============================================================================
// Deep copy and structural equality
// ============================================================================

ExprPtr clone(const Expr& e);
StmtPtr clone(const Stmt& s);
Block clone(const Block& b);
Callable clone(const Callable& c);
Program clone(const Program& p);

/// Structural equality ignoring spans and comments.
bool astEqual(const Expr& a, const Expr& b);
bool astEqual(const Stmt& a, const Stmt& b);
bool astEqual(const Block& a, const Block& b);
bool astEqual(const Callable& a, const Callable& b);
bool astEqual(const Program& a, const Program& b);

// ============================================================================
// Traversal helpers
// ============================================================================

/// Calls fn on every expression in the statement (header expressions and
/// nested blocks included), pre-order.
void forEachExpr(const Stmt& s, const std::function<void(const Expr&)>& fn);
void forEachExpr(const Expr& e, const std::function<void(const Expr&)>& fn);
void forEachExpr(Stmt& s, const std::function<void(Expr&)>& fn);
void forEachExpr(Expr& e, const std::function<void(Expr&)>& fn);

/// Like forEachExpr but restricted to the statement's own expressions
/// (headers and simple-statement bodies); nested statements are skipped.
void forEachOwnExpr(const Stmt& s, const std::function<void(const Expr&)>& fn);
void forEachOwnExpr(Stmt& s, const std::function<void(Expr&)>& fn);

/// Sub-blocks of a compound statement, in source order (nullptr-free).
std::vector<const Block*> subBlocks(const Stmt& s);
std::vector<Block*> subBlocks(Stmt& s);

/// All statements of a callable body in pre-order (the order statement ids
/// are assigned by analysis).
void forEachStmt(const Block& b, const std::function<void(const Stmt&)>& fn);

const Callable* findCallable(const Program& p, std::string_view nsName, std::string_view name);
Callable* findCallable(Program& p, std::string_view nsName, std::string_view name);

/// Looks a callable up by plain name across all namespaces; null when absent
/// or ambiguous.
const Callable* findCallableByName(const Program& p, std::string_view name,
                                   std::string* nsOut = nullptr);

}  // namespace qrt::syntax
