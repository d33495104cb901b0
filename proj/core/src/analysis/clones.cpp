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

#include <map>

namespace qrt::analysis {

using namespace syntax;

namespace {

/// Structural matcher that accumulates a bijective mapping between
/// callable-local symbols of the two sides. References to callables and
/// builtins, and all literals, must agree exactly.
class RenameMatcher {
public:
    explicit RenameMatcher(const SymbolTable& symbols) : symbols_(symbols) {}

    bool matchStmt(const Stmt& a, const Stmt& b) {
        if (a.node.index() != b.node.index()) return false;
        return std::visit(
            [this, &a, &b](const auto& x) -> bool {
                using T = std::decay_t<decltype(x)>;
                const auto& y = std::get<T>(b.node);
                if constexpr (std::is_same_v<T, LetStmt> || std::is_same_v<T, MutableStmt>) {
                    if (!matchExpr(*x.value, *y.value)) return false;
                    return matchDef(a, b);
                } else if constexpr (std::is_same_v<T, SetStmt>) {
                    auto ta = symbols_.setTargets.find(&a);
                    auto tb = symbols_.setTargets.find(&b);
                    if (ta == symbols_.setTargets.end() || tb == symbols_.setTargets.end())
                        return false;
                    return matchSymbol(ta->second, tb->second) && matchExpr(*x.value, *y.value);
                } else if constexpr (std::is_same_v<T, UsingStmt>) {
                    if (static_cast<bool>(x.count) != static_cast<bool>(y.count)) return false;
                    if (x.count && !matchExpr(*x.count, *y.count)) return false;
                    if (!matchDef(a, b)) return false;
                    return matchBlock(x.body, y.body);
                } else if constexpr (std::is_same_v<T, ForStmt>) {
                    if (!matchExpr(*x.range, *y.range)) return false;
                    if (!matchDef(a, b)) return false;
                    return matchBlock(x.body, y.body);
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    if (!matchExpr(*x.cond, *y.cond) || !matchBlock(x.then, y.then)) return false;
                    if (x.elifs.size() != y.elifs.size()) return false;
                    for (size_t i = 0; i < x.elifs.size(); ++i) {
                        if (!matchExpr(*x.elifs[i].cond, *y.elifs[i].cond)) return false;
                        if (!matchBlock(x.elifs[i].body, y.elifs[i].body)) return false;
                    }
                    if (x.elseBlock.has_value() != y.elseBlock.has_value()) return false;
                    return !x.elseBlock || matchBlock(*x.elseBlock, *y.elseBlock);
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    return matchExpr(*x.value, *y.value);
                } else {
                    static_assert(std::is_same_v<T, CallStmt>);
                    return matchExpr(*x.call, *y.call);
                }
            },
            a.node);
    }

private:
    const SymbolTable& symbols_;
    std::map<SymbolId, SymbolId> forward_;
    std::map<SymbolId, SymbolId> backward_;

    bool matchDef(const Stmt& a, const Stmt& b) {
        auto da = symbols_.stmtDefs.find(&a);
        auto db = symbols_.stmtDefs.find(&b);
        if (da == symbols_.stmtDefs.end() || db == symbols_.stmtDefs.end()) return false;
        return matchSymbol(da->second, db->second);
    }

    bool matchSymbol(SymbolId a, SymbolId b) {
        const Symbol& sa = symbols_.symbol(a);
        const Symbol& sb = symbols_.symbol(b);
        if (sa.kind == SymbolKind::Callable || sb.kind == SymbolKind::Callable) return a == b;
        if (sa.kind != sb.kind || sa.type != sb.type || sa.isMutable != sb.isMutable) return false;
        auto f = forward_.find(a);
        auto g = backward_.find(b);
        if (f == forward_.end() && g == backward_.end()) {
            forward_[a] = b;
            backward_[b] = a;
            return true;
        }
        return f != forward_.end() && f->second == b && g != backward_.end() && g->second == a;
    }

    bool matchBlock(const Block& a, const Block& b) {
        if (a.stmts.size() != b.stmts.size()) return false;
        for (size_t i = 0; i < a.stmts.size(); ++i)
            if (!matchStmt(*a.stmts[i], *b.stmts[i])) return false;
        return true;
    }

    bool matchExpr(const Expr& a, const Expr& b) {
        if (a.node.index() != b.node.index()) return false;
        return std::visit(
            [this, &a, &b](const auto& x) -> bool {
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
                            if (!matchExpr(*px.expr, *py.expr)) return false;
                        } else if (px.text != py.text) {
                            return false;
                        }
                    }
                    return true;
                } else if constexpr (std::is_same_v<T, Ident>) {
                    return matchIdent(a, b);
                } else if constexpr (std::is_same_v<T, ArrayLit>) {
                    if (x.items.size() != y.items.size()) return false;
                    for (size_t i = 0; i < x.items.size(); ++i)
                        if (!matchExpr(*x.items[i], *y.items[i])) return false;
                    return true;
                } else if constexpr (std::is_same_v<T, IndexExpr>) {
                    return matchExpr(*x.base, *y.base) && matchExpr(*x.index, *y.index);
                } else if constexpr (std::is_same_v<T, SliceExpr>) {
                    return matchExpr(*x.base, *y.base) && matchExpr(*x.range, *y.range);
                } else if constexpr (std::is_same_v<T, RangeExpr>) {
                    return matchExpr(*x.lo, *y.lo) && matchExpr(*x.hi, *y.hi);
                } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                    return x.op == y.op && matchExpr(*x.lhs, *y.lhs) && matchExpr(*x.rhs, *y.rhs);
                } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                    return x.op == y.op && matchExpr(*x.operand, *y.operand);
                } else if constexpr (std::is_same_v<T, CallExpr>) {
                    if (!matchExpr(*x.callee, *y.callee)) return false;
                    if (x.args.size() != y.args.size()) return false;
                    for (size_t i = 0; i < x.args.size(); ++i)
                        if (!matchExpr(*x.args[i], *y.args[i])) return false;
                    return true;
                } else {
                    static_assert(std::is_same_v<T, ControlledApply>);
                    if (x.gate != y.gate) return false;
                    if (!matchExpr(*x.controls, *y.controls)) return false;
                    if (x.args.size() != y.args.size()) return false;
                    for (size_t i = 0; i < x.args.size(); ++i)
                        if (!matchExpr(*x.args[i], *y.args[i])) return false;
                    return true;
                }
            },
            a.node);
    }

    bool matchIdent(const Expr& a, const Expr& b) {
        auto ba = symbols_.builtinUses.find(&a);
        auto bb = symbols_.builtinUses.find(&b);
        bool isBuiltinA = ba != symbols_.builtinUses.end();
        bool isBuiltinB = bb != symbols_.builtinUses.end();
        if (isBuiltinA != isBuiltinB) return false;
        if (isBuiltinA) return ba->second == bb->second;
        auto ua = symbols_.uses.find(&a);
        auto ub = symbols_.uses.find(&b);
        if (ua == symbols_.uses.end() || ub == symbols_.uses.end())
            return ua == symbols_.uses.end() && ub == symbols_.uses.end() &&
                   std::get<Ident>(a.node).name == std::get<Ident>(b.node).name;
        return matchSymbol(ua->second, ub->second);
    }
};

struct Position {
    const Block* block;
    int index;
};

void collectBlocks(const Block& b, std::vector<const Block*>& out) {
    out.push_back(&b);
    for (const auto& s : b.stmts)
        for (const Block* sub : subBlocks(*s)) collectBlocks(*sub, out);
}

/// Longest rename-consistent match of the sequences starting at the two
/// positions, honoring the non-overlap rule.
int matchLength(const SymbolTable& symbols, const Position& a, const Position& b) {
    int maxLen = static_cast<int>(a.block->stmts.size()) - a.index;
    int maxLenB = static_cast<int>(b.block->stmts.size()) - b.index;
    maxLen = std::min(maxLen, maxLenB);
    if (a.block == b.block) maxLen = std::min(maxLen, b.index - a.index);
    RenameMatcher matcher(symbols);
    int len = 0;
    while (len < maxLen) {
        if (!matcher.matchStmt(*a.block->stmts[static_cast<size_t>(a.index + len)],
                               *b.block->stmts[static_cast<size_t>(b.index + len)]))
            break;
        ++len;
    }
    return len;
}

}  // namespace

bool sequencesMatchUpToRenaming(const SymbolTable& symbols, const std::vector<const Stmt*>& a,
                                const std::vector<const Stmt*>& b) {
    if (a.size() != b.size()) return false;
    RenameMatcher matcher(symbols);
    for (size_t i = 0; i < a.size(); ++i)
        if (!matcher.matchStmt(*a[i], *b[i])) return false;
    return true;
}

std::vector<ClonePair> findDuplicates(const Program& p, const Callable& c,
                                      const SymbolTable& symbols, int minLen) {
    std::vector<ClonePair> pairs;
    if (minLen < 2) minLen = 2;
    std::vector<const Block*> blocks;
    collectBlocks(c.body, blocks);

    StatementIndex index = indexStatements(p);

    std::vector<Position> positions;
    for (const Block* b : blocks)
        for (int i = 0; i < static_cast<int>(b->stmts.size()); ++i) positions.push_back({b, i});

    for (size_t pa = 0; pa < positions.size(); ++pa) {
        for (size_t pb = pa + 1; pb < positions.size(); ++pb) {
            const Position& a = positions[pa];
            const Position& b = positions[pb];
            int len = matchLength(symbols, a, b);
            if (len < minLen) continue;
            // drop pairs contained in a longer pair starting one earlier
            if (a.index > 0 && b.index > 0) {
                Position prevA{a.block, a.index - 1};
                Position prevB{b.block, b.index - 1};
                if (matchLength(symbols, prevA, prevB) >= len + 1) continue;
            }
            auto pathA = index.pathOf(a.block->stmts[static_cast<size_t>(a.index)].get());
            auto pathB = index.pathOf(b.block->stmts[static_cast<size_t>(b.index)].get());
            if (!pathA || !pathB) continue;
            pairs.push_back({*pathA, *pathB, len});
        }
    }
    return pairs;
}

}  // namespace qrt::analysis
