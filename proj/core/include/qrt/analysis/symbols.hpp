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

#include "qrt/ast.hpp"
#include "qrt/builtins.hpp"
#include "qrt/diag.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace qrt::analysis {

using SymbolId = int;

enum class SymbolKind { Variable, Parameter, Callable, LoopVar, QubitBinding };

struct Symbol {
    SymbolId id = -1;
    SymbolKind kind = SymbolKind::Variable;
    std::string name;
    SourceSpan declSpan;
    syntax::Type type;  // for callables, the return type
    bool isMutable = false;
    // callable-only fields
    syntax::CallableKind callableKind = syntax::CallableKind::Operation;
    std::string namespaceName;
    const syntax::Callable* decl = nullptr;
};

/// Name binding and type information for one resolved program. Node keys are
/// addresses into the resolved Program, which must outlive the table.
struct SymbolTable {
    std::vector<Symbol> symbols;

    std::unordered_map<const syntax::Expr*, SymbolId> uses;  // Ident reads
    std::unordered_map<const syntax::Expr*, const syntax::Builtin*> builtinUses;
    std::unordered_map<const syntax::Stmt*, SymbolId> stmtDefs;    // let/mutable/using/for
    std::unordered_map<const syntax::Stmt*, SymbolId> setTargets;  // set statements
    std::unordered_map<const syntax::Param*, SymbolId> paramSymbols;
    std::unordered_map<const syntax::Callable*, SymbolId> callableSymbols;
    std::unordered_map<const syntax::Expr*, syntax::Type> exprTypes;

    std::unordered_map<SymbolId, std::vector<const syntax::Expr*>> useSites;
    std::unordered_map<SymbolId, std::vector<const syntax::Stmt*>> setSites;

    const Symbol& symbol(SymbolId id) const { return symbols[static_cast<size_t>(id)]; }

    SymbolId symbolOf(const syntax::Expr& identExpr) const {
        auto it = uses.find(&identExpr);
        return it == uses.end() ? -1 : it->second;
    }

    /// Whether a callable may emit trace output (Message, directly or via
    /// callees). Conservative on recursion.
    std::unordered_map<const syntax::Callable*, bool> mayEmit;
};

/// Binds every identifier, type-checks against the builtin registry, and
/// flags qubit-scope violations.
Outcome<SymbolTable> resolve(const syntax::Program& p);

}  // namespace qrt::analysis
