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

#include "ops.hpp"

#include <algorithm>
#include <functional>

namespace qrt::refactor {

using namespace syntax;
using analysis::SymbolId;
using analysis::SymbolKind;

void applyExtractNamespace(Ctx& ctx) {
    auto newNsName = ctx.request.arg("namespace");
    auto callablesArg = ctx.request.arg("callables");
    if (!newNsName || !callablesArg) {
        ctx.fail({}, "extract-namespace requires 'namespace' and 'callables' arguments");
        return;
    }
    // the target names the source namespace
    Namespace* source = nullptr;
    for (auto& ns : ctx.program.namespaces)
        if (ns.name == ctx.request.target.qualifiedName) source = &ns;
    if (!source) {
        ctx.fail({}, "no namespace named '" + ctx.request.target.qualifiedName + "'");
        return;
    }
    for (const auto& ns : ctx.program.namespaces) {
        if (ns.name == *newNsName) {
            ctx.fail(ns.nameSpan, "namespace '" + *newNsName + "' already exists");
            return;
        }
    }

    std::vector<std::string> names;
    std::string_view text = *callablesArg;
    while (!text.empty()) {
        size_t comma = text.find(',');
        std::string name(text.substr(0, comma));
        if (!name.empty()) names.push_back(name);
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    }
    if (names.empty()) {
        ctx.note("no callables listed; program unchanged");
        return;
    }

    std::vector<size_t> moveIndices;
    std::set<SymbolId> movedIds;
    for (const std::string& name : names) {
        bool found = false;
        for (size_t i = 0; i < source->callables.size(); ++i) {
            if (source->callables[i].name == name) {
                moveIndices.push_back(i);
                movedIds.insert(ctx.symbols.callableSymbols.at(&source->callables[i]));
                found = true;
            }
        }
        if (!found) {
            ctx.fail({}, "'" + name + "' is not a callable of namespace " + source->name);
            return;
        }
    }
    std::sort(moveIndices.begin(), moveIndices.end());
    moveIndices.erase(std::unique(moveIndices.begin(), moveIndices.end()), moveIndices.end());

    // which namespaces reference the moved callables, and whether the moved
    // callables reference anything staying behind
    std::set<std::string> referencingNamespaces;
    bool movedReferenceRemaining = false;
    for (const auto& ns : ctx.program.namespaces) {
        for (const auto& c : ns.callables) {
            SymbolId selfId = ctx.symbols.callableSymbols.at(&c);
            bool selfMoved = movedIds.count(selfId) > 0;
            forEachStmt(c.body, [&](const Stmt& s) {
                forEachOwnExpr(s, [&](const Expr& e) {
                    auto it = ctx.symbols.uses.find(&e);
                    if (it == ctx.symbols.uses.end()) return;
                    const auto& sym = ctx.symbols.symbol(it->second);
                    if (sym.kind != SymbolKind::Callable) return;
                    if (movedIds.count(it->second) && !selfMoved)
                        referencingNamespaces.insert(ns.name);
                    if (selfMoved && !movedIds.count(it->second) &&
                        sym.namespaceName == source->name)
                        movedReferenceRemaining = true;
                });
            });
        }
    }

    Namespace fresh;
    fresh.name = *newNsName;
    // carry the source's opens so moved bodies keep resolving, plus the
    // source itself when they reference callables staying behind
    fresh.opens = source->opens;
    if (movedReferenceRemaining) fresh.opens.push_back(source->name);

    for (auto it = moveIndices.rbegin(); it != moveIndices.rend(); ++it) {
        fresh.callables.insert(fresh.callables.begin(),
                               std::move(source->callables[*it]));
        source->callables.erase(source->callables.begin() + static_cast<long>(*it));
    }

    for (auto& ns : ctx.program.namespaces) {
        if (!referencingNamespaces.count(ns.name)) continue;
        if (std::find(ns.opens.begin(), ns.opens.end(), *newNsName) == ns.opens.end()) {
            ns.opens.push_back(*newNsName);
            ctx.note("opened " + *newNsName + " in namespace " + ns.name);
        }
    }

    ctx.program.namespaces.push_back(std::move(fresh));
    std::string moved;
    for (const auto& name : names) moved += (moved.empty() ? "" : ", ") + name;
    ctx.note("moved " + moved + " into namespace " + *newNsName);
}

}  // namespace qrt::refactor
