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

#include <optional>
#include <string>
#include <vector>

namespace qrt::analysis {

/// Ordinal path from a callable body to one statement: the sequence of child
/// indices, where a compound statement's children are the statements of its
/// sub-blocks in source order.
using StmtPath = std::vector<int>;

std::string pathToString(const StmtPath& p);
std::optional<StmtPath> parsePath(std::string_view text);

/// Bijection between ordinal paths and the statements of each callable.
struct StatementIndex {
    struct Entry {
        std::string namespaceName;
        std::string callableName;
        StmtPath path;
        const syntax::Stmt* stmt = nullptr;
        SourceSpan span;
    };

    std::vector<Entry> entries;  // pre-order within each callable

    const Entry* find(std::string_view ns, std::string_view callable, const StmtPath& path) const;
    std::optional<StmtPath> pathOf(const syntax::Stmt* stmt) const;
};

StatementIndex indexStatements(const syntax::Program& p);

/// Resolves a path inside one callable body to the statement, or null.
const syntax::Stmt* stmtAt(const syntax::Callable& c, const StmtPath& path);

/// Ordered children of a statement across its sub-blocks.
std::vector<const syntax::Stmt*> childStmts(const syntax::Stmt& s);

}  // namespace qrt::analysis
