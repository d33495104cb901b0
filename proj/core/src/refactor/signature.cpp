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

#include "qrt/consteval.hpp"
#include "qrt/lexer.hpp"
#include "qrt/parser.hpp"

#include "ops.hpp"

#include <charconv>
#include <sstream>

namespace qrt::refactor {

using namespace syntax;
using analysis::SymbolId;

namespace {

std::optional<Type> parseTypeName(std::string_view text) {
    int arrayDepth = 0;
    while (text.size() >= 2 && text.substr(text.size() - 2) == "[]") {
        text.remove_suffix(2);
        ++arrayDepth;
    }
    Type t;
    if (text == "Int")
        t = Type::integer();
    else if (text == "Double")
        t = Type::real();
    else if (text == "Bool")
        t = Type::boolean();
    else if (text == "String")
        t = Type::string();
    else if (text == "Result")
        t = Type::result();
    else if (text == "Range")
        t = Type::range();
    else if (text == "Qubit")
        t = Type::qubit();
    else
        return std::nullopt;
    for (int i = 0; i < arrayDepth; ++i) t = Type::array(std::move(t));
    return t;
}

std::optional<std::vector<int>> parsePermutation(std::string_view text, size_t size) {
    std::vector<int> perm;
    size_t i = 0;
    while (i < text.size()) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
        if (ec != std::errc()) return std::nullopt;
        perm.push_back(value);
        i = static_cast<size_t>(ptr - text.data());
        if (i < text.size()) {
            if (text[i] != ',') return std::nullopt;
            ++i;
        }
    }
    if (perm.size() != size) return std::nullopt;
    std::vector<bool> seen(size, false);
    for (int v : perm) {
        if (v < 0 || static_cast<size_t>(v) >= size || seen[static_cast<size_t>(v)])
            return std::nullopt;
        seen[static_cast<size_t>(v)] = true;
    }
    return perm;
}

/// Mutable pointers to every call of the target callable, collected before
/// any mutation.
std::vector<CallExpr*> collectCallSites(Ctx& ctx, SymbolId callableId) {
    std::vector<CallExpr*> sites;
    for (auto& ns : ctx.program.namespaces) {
        for (auto& c : ns.callables) {
            std::function<void(Block&)> walk = [&](Block& b) {
                for (auto& sp : b.stmts) {
                    forEachOwnExpr(*sp, [&](Expr& e) {
                        auto* call = e.as<CallExpr>();
                        if (!call) return;
                        auto it = ctx.symbols.uses.find(call->callee.get());
                        if (it != ctx.symbols.uses.end() && it->second == callableId)
                            sites.push_back(call);
                    });
                    for (Block* sub : subBlocks(*sp)) walk(*sub);
                }
            };
            walk(c.body);
        }
    }
    return sites;
}

}  // namespace

void applyChangeSignature(Ctx& ctx) {
    auto target = resolveCallableTarget(ctx);
    if (!target) return;
    Callable& callable = *target->callable;
    SymbolId callableId = ctx.symbols.callableSymbols.at(&callable);
    auto mode = ctx.request.arg("mode");
    if (!mode) {
        ctx.fail({}, "change-signature requires mode=add|remove|reorder");
        return;
    }
    std::vector<CallExpr*> sites = collectCallSites(ctx, callableId);

    if (*mode == "add") {
        auto name = ctx.request.arg("name");
        auto typeText = ctx.request.arg("type");
        auto defaultText = ctx.request.arg("default");
        if (!name || !typeText || !defaultText) {
            ctx.fail({}, "add requires name, type, and default arguments");
            return;
        }
        if (!isValidIdentifier(*name)) {
            ctx.fail({}, "'" + *name + "' is not a valid identifier");
            return;
        }
        for (const auto& p : callable.params)
            if (p.name == *name) {
                ctx.fail(p.span, "parameter '" + *name + "' already exists");
                return;
            }
        auto type = parseTypeName(*typeText);
        if (!type) {
            ctx.fail({}, "unknown type '" + *typeText + "'");
            return;
        }
        auto defaultExpr = parseExpression(*defaultText);
        if (!defaultExpr.ok()) {
            ctx.fail({}, "default argument does not parse: " + *defaultText);
            return;
        }
        if (!isClosedClassical(**defaultExpr)) {
            ctx.fail({}, "default argument must be a closed classical expression");
            return;
        }
        callable.params.push_back({*name, *type, {}});
        for (CallExpr* site : sites) site->args.push_back(clone(**defaultExpr));
        ctx.note("added parameter " + *name + " : " + typeName(*type) + " to " + callable.name +
                 " and threaded '" + *defaultText + "' through " + std::to_string(sites.size()) +
                 " call site(s)");
        return;
    }

    if (*mode == "remove") {
        auto name = ctx.request.arg("name");
        if (!name) {
            ctx.fail({}, "remove requires the name argument");
            return;
        }
        size_t position = callable.params.size();
        for (size_t i = 0; i < callable.params.size(); ++i)
            if (callable.params[i].name == *name) position = i;
        if (position == callable.params.size()) {
            ctx.fail({}, "no parameter named '" + *name + "' in " + callable.name);
            return;
        }
        SymbolId paramId = ctx.symbols.paramSymbols.at(&callable.params[position]);
        auto usesIt = ctx.symbols.useSites.find(paramId);
        if (usesIt != ctx.symbols.useSites.end() && !usesIt->second.empty()) {
            ctx.fail(callable.params[position].span,
                     "parameter '" + *name + "' is used in the body");
            return;
        }
        for (CallExpr* site : sites) {
            if (site->args.size() != callable.params.size()) continue;  // arity error elsewhere
            if (exprHasEffects(*site->args[position], ctx.symbols)) {
                ctx.fail(site->args[position]->span,
                         "argument for removed parameter has effects and cannot be dropped");
                return;
            }
        }
        callable.params.erase(callable.params.begin() + static_cast<long>(position));
        for (CallExpr* site : sites)
            if (position < site->args.size())
                site->args.erase(site->args.begin() + static_cast<long>(position));
        ctx.note("removed parameter " + *name + " from " + callable.name + " and " +
                 std::to_string(sites.size()) + " call site(s)");
        return;
    }

    if (*mode == "reorder") {
        auto permText = ctx.request.arg("permutation");
        if (!permText) {
            ctx.fail({}, "reorder requires the permutation argument");
            return;
        }
        auto perm = parsePermutation(*permText, callable.params.size());
        if (!perm) {
            ctx.fail({}, "'" + *permText + "' is not a permutation of 0.." +
                             std::to_string(callable.params.size() ? callable.params.size() - 1
                                                                   : 0));
            return;
        }
        bool identity = true;
        for (size_t i = 0; i < perm->size(); ++i)
            if ((*perm)[i] != static_cast<int>(i)) identity = false;
        if (identity) return;  // no-op
        // argument evaluation order changes with the call-site rewrite
        for (CallExpr* site : sites) {
            for (const auto& arg : site->args) {
                if (exprHasEffects(*arg, ctx.symbols)) {
                    ctx.fail(arg->span,
                             "reordering would change the evaluation order of an effectful "
                             "argument");
                    return;
                }
            }
        }
        // position i of the new list takes old position perm[i]
        std::vector<Param> newParams;
        for (size_t i = 0; i < perm->size(); ++i)
            newParams.push_back(callable.params[static_cast<size_t>((*perm)[i])]);
        callable.params = std::move(newParams);
        for (CallExpr* site : sites) {
            if (site->args.size() != perm->size()) continue;
            std::vector<ExprPtr> newArgs;
            for (size_t i = 0; i < perm->size(); ++i)
                newArgs.push_back(std::move(site->args[static_cast<size_t>((*perm)[i])]));
            site->args = std::move(newArgs);
        }
        ctx.note("reordered parameters of " + callable.name + " by (" + *permText + ") across " +
                 std::to_string(sites.size()) + " call site(s)");
        return;
    }

    ctx.fail({}, "unknown change-signature mode '" + *mode + "'");
}

}  // namespace qrt::refactor
