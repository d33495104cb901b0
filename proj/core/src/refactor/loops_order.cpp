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

#include "qrt/analysis/pdg.hpp"
#include "qrt/consteval.hpp"

#include "ops.hpp"

#include <charconv>
#include <functional>

namespace qrt::refactor {

using namespace syntax;
using analysis::SymbolId;

namespace {

std::optional<std::vector<int>> parseIntList(std::string_view text) {
    std::vector<int> out;
    size_t i = 0;
    while (i < text.size()) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
        if (ec != std::errc()) return std::nullopt;
        out.push_back(value);
        i = static_cast<size_t>(ptr - text.data());
        if (i < text.size()) {
            if (text[i] != ',') return std::nullopt;
            ++i;
        }
    }
    return out;
}

bool isPermutation(const std::vector<int>& perm) {
    std::vector<bool> seen(perm.size(), false);
    for (int v : perm) {
        if (v < 0 || static_cast<size_t>(v) >= perm.size() || seen[static_cast<size_t>(v)])
            return false;
        seen[static_cast<size_t>(v)] = true;
    }
    return true;
}

}  // namespace

void applyReorderInstructions(Ctx& ctx) {
    auto withArg = ctx.request.arg("with");
    if (!withArg) {
        ctx.fail({}, "reorder-instructions requires the 'with' argument");
        return;
    }
    auto target = resolveCallableTarget(ctx);
    if (!target) return;
    if (!ctx.request.target.isRange()) {
        ctx.fail({}, "reorder-instructions targets a statement path");
        return;
    }
    auto pathB = analysis::parsePath(*withArg);
    if (!pathB) {
        ctx.fail({}, "malformed path '" + *withArg + "'");
        return;
    }
    auto locA = locate(*target->callable, *ctx.request.target.pathLo);
    auto locB = locate(*target->callable, *pathB);
    if (!locA || !locB) {
        ctx.fail({}, "path does not address a statement");
        return;
    }
    if (locA->block != locB->block) {
        ctx.fail({}, "statements are not in the same block");
        return;
    }
    if (locA->index == locB->index) return;  // no-op

    analysis::Pdg pdg = analysis::buildPdg(ctx.program, *target->callable, ctx.symbols);
    int a = pdg.nodeOf(locA->block->stmts[locA->index].get());
    int b = pdg.nodeOf(locB->block->stmts[locB->index].get());
    if (a < 0 || b < 0) {
        ctx.fail({}, "statements missing from the dependence graph");
        return;
    }
    auto refuse = [&](int x, int y) {
        auto edge = pdg.blockingEdge(x, y);
        std::string kind = edge ? std::string(analysis::edgeKindName(edge->kind)) : "unknown";
        std::string note = edge && !edge->note.empty() ? " (" + edge->note + ")" : "";
        ctx.fail(locA->block->stmts[locA->index]->span,
                 "statements are dependent: " + kind + " edge" + note);
    };
    if (!pdg.independent(a, b)) {
        refuse(a, b);
        return;
    }
    // a swap moves both statements across everything between them, so each
    // must also be independent of the whole corridor
    size_t lo = std::min(locA->index, locB->index);
    size_t hi = std::max(locA->index, locB->index);
    for (size_t k = lo + 1; k < hi; ++k) {
        int mid = pdg.nodeOf(locA->block->stmts[k].get());
        if (mid < 0) continue;
        if (!pdg.independent(a, mid)) {
            refuse(a, mid);
            return;
        }
        if (!pdg.independent(mid, b)) {
            refuse(mid, b);
            return;
        }
    }
    std::swap(locA->block->stmts[locA->index], locB->block->stmts[locB->index]);
    ctx.note("swapped independent statements " +
             analysis::pathToString(*ctx.request.target.pathLo) + " and " + *withArg);
}

void applyOrderQubits(Ctx& ctx) {
    auto permArg = ctx.request.arg("permutation");
    if (!permArg) {
        ctx.fail({}, "order-qubits requires the 'permutation' argument");
        return;
    }
    auto target = resolveCallableTarget(ctx);
    if (!target) return;
    if (!ctx.request.target.isRange()) {
        ctx.fail({}, "order-qubits targets a using statement");
        return;
    }
    auto loc = locate(*target->callable, *ctx.request.target.pathLo);
    if (!loc) {
        ctx.fail({}, "target path does not address a statement");
        return;
    }
    Stmt& stmt = *loc->block->stmts[loc->index];
    auto* use = stmt.as<UsingStmt>();
    if (!use || !use->count) {
        ctx.fail(stmt.span, "target is not a qubit-array allocation");
        return;
    }
    auto count = evalConstInt(*use->count);
    if (!count) {
        ctx.fail(use->count->span, "qubit array size is not a constant");
        return;
    }
    auto perm = parseIntList(*permArg);
    if (!perm || static_cast<long long>(perm->size()) != *count || !isPermutation(*perm)) {
        ctx.fail({}, "'" + *permArg + "' is not a permutation of 0.." +
                         std::to_string(*count - 1));
        return;
    }
    bool identity = true;
    for (size_t i = 0; i < perm->size(); ++i)
        if ((*perm)[i] != static_cast<int>(i)) identity = false;

    SymbolId binding = ctx.symbols.stmtDefs.at(&stmt);

    // classify every reference to the binding inside the block; identifiers
    // serving as index/slice bases are not whole-array uses
    std::vector<Expr*> indexSites;  // IndexExpr nodes with constant indices
    std::set<const Expr*> baseIdents;
    bool wholeOrSlice = false;
    bool dynamicIndex = false;
    std::function<void(Block&)> scan = [&](Block& b) {
        for (auto& sp : b.stmts) {
            forEachOwnExpr(*sp, [&](Expr& e) {
                if (auto* idx = e.as<IndexExpr>()) {
                    auto it = ctx.symbols.uses.find(idx->base.get());
                    if (it != ctx.symbols.uses.end() && it->second == binding) {
                        baseIdents.insert(idx->base.get());
                        if (evalConstInt(*idx->index))
                            indexSites.push_back(&e);
                        else
                            dynamicIndex = true;
                    }
                    return;
                }
                if (auto* slice = e.as<SliceExpr>()) {
                    auto it = ctx.symbols.uses.find(slice->base.get());
                    if (it != ctx.symbols.uses.end() && it->second == binding) {
                        baseIdents.insert(slice->base.get());
                        wholeOrSlice = true;
                    }
                    return;
                }
                if (e.is<Ident>()) {
                    auto it = ctx.symbols.uses.find(&e);
                    if (it == ctx.symbols.uses.end() || it->second != binding) return;
                    if (!baseIdents.count(&e)) wholeOrSlice = true;
                }
            });
            for (Block* sub : subBlocks(*sp)) scan(*sub);
        }
    };
    scan(use->body);

    if (dynamicIndex) {
        ctx.fail(stmt.span, "binding '" + use->name + "' is indexed with a non-constant index");
        return;
    }
    if (identity || indexSites.empty()) {
        ctx.note("permutation requires no index rewrites");
        return;
    }
    if (wholeOrSlice) {
        ctx.fail(stmt.span, "binding '" + use->name +
                                "' is also used as a whole array; relabeling only constant "
                                "indices would change behavior");
        return;
    }
    for (Expr* site : indexSites) {
        auto* idx = site->as<IndexExpr>();
        long long k = *evalConstInt(*idx->index);
        if (k < 0 || k >= *count) {
            ctx.fail(idx->index->span, "index " + std::to_string(k) + " outside 0.." +
                                           std::to_string(*count - 1));
            return;
        }
        ExprPtr replacement = makeIntExpr((*perm)[static_cast<size_t>(k)]);
        idx->index = std::move(replacement);
    }
    ctx.note("relabeled " + std::to_string(indexSites.size()) + " index reference(s) of " +
             use->name);
}

void applyConsolidateMeasurements(Ctx& ctx) {
    auto target = resolveCallableTarget(ctx);
    if (!target) return;
    auto range = resolveRange(ctx, *target->callable);
    if (!range) return;
    if (range->count < 2) {
        ctx.fail({}, "consolidation requires at least two measurement statements");
        return;
    }
    struct Entry {
        std::string name;
        const Expr* qubit;
        std::vector<std::string> comments;
    };
    std::vector<Entry> entries;
    for (size_t i = 0; i < range->count; ++i) {
        const Stmt& s = *range->block->stmts[range->begin + i];
        const auto* let = s.as<LetStmt>();
        const CallExpr* call = let ? let->value->as<CallExpr>() : nullptr;
        bool isM = false;
        if (call) {
            auto it = ctx.symbols.builtinUses.find(call->callee.get());
            isM = it != ctx.symbols.builtinUses.end() && it->second->name == "M";
        }
        if (!let || !isM) {
            ctx.fail(s.span, "range statement is not of the form 'let r = M(q);'");
            return;
        }
        entries.push_back({let->name, call->args[0].get(), s.comments});
    }
    // pairwise distinct qubits
    for (size_t i = 0; i < entries.size(); ++i) {
        auto refsA = analysis::collectQubitRefs(*entries[i].qubit, ctx.symbols);
        for (size_t j = i + 1; j < entries.size(); ++j) {
            auto refsB = analysis::collectQubitRefs(*entries[j].qubit, ctx.symbols);
            for (const auto& a : refsA)
                for (const auto& b : refsB)
                    if (analysis::conflicts(a, b)) {
                        ctx.fail(entries[j].qubit->span,
                                 "measurements share qubit '" +
                                     ctx.symbols.symbol(a.binding).name + "'");
                        return;
                    }
        }
    }

    std::set<std::string> taken = allNames(ctx.program);
    std::string arrayName = freshName(taken, ctx.request.arg("name").value_or(""), "rs");

    std::vector<StmtPtr> replacement;
    ArrayLit qubits;
    for (const auto& entry : entries) qubits.items.push_back(clone(*entry.qubit));
    CallExpr multim;
    multim.callee = makeExpr({}, Ident{"MultiM"});
    multim.args.push_back(makeExpr({}, std::move(qubits)));
    auto first = makeStmt({}, LetStmt{arrayName, {}, makeExpr({}, std::move(multim))});
    first->comments = entries.front().comments;
    replacement.push_back(std::move(first));
    for (size_t i = 0; i < entries.size(); ++i) {
        IndexExpr idx;
        idx.base = makeExpr({}, Ident{arrayName});
        idx.index = makeExpr({}, IntLit{static_cast<long long>(i)});
        replacement.push_back(
            makeStmt({}, LetStmt{entries[i].name, {}, makeExpr({}, std::move(idx))}));
    }

    auto& stmts = range->block->stmts;
    stmts.erase(stmts.begin() + static_cast<long>(range->begin),
                stmts.begin() + static_cast<long>(range->begin + range->count));
    for (size_t k = 0; k < replacement.size(); ++k)
        stmts.insert(stmts.begin() + static_cast<long>(range->begin + k),
                     std::move(replacement[k]));
    ctx.note("consolidated " + std::to_string(entries.size()) + " measurements into MultiM via " +
             arrayName);
}

void applyUnrollLoop(Ctx& ctx) {
    auto target = resolveCallableTarget(ctx);
    if (!target) return;
    if (!ctx.request.target.isRange()) {
        ctx.fail({}, "unroll-loop targets a for statement");
        return;
    }
    auto loc = locate(*target->callable, *ctx.request.target.pathLo);
    if (!loc) {
        ctx.fail({}, "target path does not address a statement");
        return;
    }
    Stmt& stmt = *loc->block->stmts[loc->index];
    auto* loop = stmt.as<ForStmt>();
    if (!loop) {
        ctx.fail(stmt.span, "target is not a for statement");
        return;
    }
    const auto* range = loop->range->as<RangeExpr>();
    std::optional<long long> lo, hi;
    if (range) {
        lo = evalConstInt(*range->lo);
        hi = evalConstInt(*range->hi);
    }
    if (!lo || !hi) {
        ctx.fail(loop->range->span, "loop bounds are not integer constants");
        return;
    }
    long long iterations = *hi >= *lo ? *hi - *lo + 1 : 0;
    long long limit = 64;
    if (auto limitArg = ctx.request.arg("limit")) {
        try {
            limit = std::stoll(*limitArg);
        } catch (const std::exception&) {
            ctx.fail({}, "malformed unroll limit '" + *limitArg + "'");
            return;
        }
    }
    if (iterations > limit) {
        ctx.fail(stmt.span, "loop has " + std::to_string(iterations) +
                                " iterations, above the unroll limit " + std::to_string(limit));
        return;
    }

    std::set<std::string> taken = allNames(ctx.program);
    std::vector<StmtPtr> replacement;
    for (long long v = *lo; v <= *hi; ++v) {
        Block copy = clone(loop->body);
        ExprPtr value = makeIntExpr(v);
        substituteInBlock(copy, {{loop->var, value.get()}});
        // locals redeclared per copy must stay unique
        std::map<std::string, std::string> renames;
        for (const std::string& name : declaredNames(copy))
            renames[name] = freshName(taken, "", name);
        if (!renames.empty()) renameAll(copy, renames);
        for (auto& sp : copy.stmts) replacement.push_back(std::move(sp));
    }
    if (!replacement.empty()) replacement.front()->comments = stmt.comments;

    auto& stmts = loc->block->stmts;
    stmts.erase(stmts.begin() + static_cast<long>(loc->index));
    for (size_t k = 0; k < replacement.size(); ++k)
        stmts.insert(stmts.begin() + static_cast<long>(loc->index + k),
                     std::move(replacement[k]));
    ctx.note("unrolled loop into " + std::to_string(iterations) + " copies");
}

void applyRollLoop(Ctx& ctx) {
    auto target = resolveCallableTarget(ctx);
    if (!target) return;
    auto range = resolveRange(ctx, *target->callable);
    if (!range) return;
    if (range->count < 2) {
        ctx.fail({}, "rolling requires at least two statements");
        return;
    }
    auto stmts = rangeStmts(*range);

    // none of the statements may define a symbol used later
    size_t rangeEnd = stmts.back()->span.end;
    for (const Stmt* s : stmts) {
        auto it = ctx.symbols.stmtDefs.find(s);
        if (it == ctx.symbols.stmtDefs.end()) continue;
        auto uses = ctx.symbols.useSites.find(it->second);
        if (uses == ctx.symbols.useSites.end()) continue;
        for (const Expr* use : uses->second)
            if (use->span.begin >= rangeEnd) {
                ctx.fail(s->span, "statement defines a symbol used after the range");
                return;
            }
    }

    // find the varying Int literal position (if any) by pairwise comparison
    // against the first statement
    auto literalsOf = [](const Stmt& s) {
        std::vector<const Expr*> out;
        forEachExpr(s, [&out](const Expr& e) {
            if (e.is<IntLit>()) out.push_back(&e);
        });
        return out;
    };

    bool allIdentical = true;
    for (size_t i = 1; i < stmts.size(); ++i)
        if (!astEqual(*stmts[0], *stmts[i])) allIdentical = false;

    std::set<std::string> taken = allNames(ctx.program);
    std::string var = freshName(taken, ctx.request.arg("var").value_or(""), "i");

    StmtPtr body;
    long long lo = 1, hi = static_cast<long long>(stmts.size());
    if (allIdentical) {
        body = clone(*stmts[0]);
    } else {
        // locate the single differing literal position
        auto base = literalsOf(*stmts[0]);
        std::optional<size_t> varying;
        for (size_t i = 1; i < stmts.size(); ++i) {
            auto other = literalsOf(*stmts[i]);
            if (other.size() != base.size()) {
                ctx.fail(stmts[i]->span, "statements are not uniform");
                return;
            }
            // compare with literals masked: temporarily require equal shape
            // by checking that replacing literal j by the first statement's
            // value makes them equal
            std::optional<size_t> diff;
            for (size_t j = 0; j < base.size(); ++j) {
                if (base[j]->as<IntLit>()->value != other[j]->as<IntLit>()->value) {
                    if (diff) {
                        ctx.fail(stmts[i]->span, "statements differ at more than one literal");
                        return;
                    }
                    diff = j;
                }
            }
            if (!diff) {
                ctx.fail(stmts[i]->span, "statements are not uniform");
                return;
            }
            if (varying && *varying != *diff) {
                ctx.fail(stmts[i]->span, "statements vary at inconsistent positions");
                return;
            }
            varying = diff;
        }
        if (!varying) {
            ctx.fail(stmts[0]->span, "statements are not uniform");
            return;
        }
        // beyond the literal, structures must match: verify by cloning the
        // first statement with the literal swapped in
        std::vector<long long> values;
        for (const Stmt* s : stmts)
            values.push_back(literalsOf(*s)[*varying]->as<IntLit>()->value);
        for (size_t i = 1; i < stmts.size(); ++i) {
            StmtPtr probe = clone(*stmts[0]);
            std::vector<Expr*> probeLits;
            forEachExpr(*probe, [&probeLits](Expr& e) {
                if (e.is<IntLit>()) probeLits.push_back(&e);
            });
            probeLits[*varying]->node = IntLit{values[i]};
            if (!astEqual(*probe, *stmts[i])) {
                ctx.fail(stmts[i]->span, "statements are not uniform");
                return;
            }
        }
        for (size_t i = 1; i < values.size(); ++i) {
            if (values[i] != values[i - 1] + 1) {
                ctx.fail(stmts[i]->span,
                         "literals do not progress arithmetically with step 1");
                return;
            }
        }
        lo = values.front();
        hi = values.back();
        body = clone(*stmts[0]);
        std::vector<Expr*> bodyLits;
        forEachExpr(*body, [&bodyLits](Expr& e) {
            if (e.is<IntLit>()) bodyLits.push_back(&e);
        });
        bodyLits[*varying]->node = Ident{var};
    }

    ForStmt loop;
    loop.var = var;
    loop.range = makeExpr({}, RangeExpr{makeIntExpr(lo), makeIntExpr(hi)});
    body->comments.clear();
    loop.body.stmts.push_back(std::move(body));
    auto loopStmt = makeStmt({}, std::move(loop));
    loopStmt->comments = range->block->stmts[range->begin]->comments;

    auto& blockStmts = range->block->stmts;
    blockStmts.erase(blockStmts.begin() + static_cast<long>(range->begin),
                     blockStmts.begin() + static_cast<long>(range->begin + range->count));
    blockStmts.insert(blockStmts.begin() + static_cast<long>(range->begin), std::move(loopStmt));
    ctx.note("rolled " + std::to_string(stmts.size()) + " statements into for (" + var + " in " +
             std::to_string(lo) + ".." + std::to_string(hi) + ")");
}

}  // namespace qrt::refactor
