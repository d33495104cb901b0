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

#include "qrt/analysis/stmt_index.hpp"

#include <charconv>
#include <sstream>

namespace qrt::analysis {

using namespace syntax;

std::string pathToString(const StmtPath& p) {
    std::ostringstream out;
    for (size_t i = 0; i < p.size(); ++i) {
        if (i > 0) out << '.';
        out << p[i];
    }
    return out.str();
}

std::optional<StmtPath> parsePath(std::string_view text) {
    StmtPath path;
    size_t i = 0;
    while (i < text.size()) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
        if (ec != std::errc() || value < 0) return std::nullopt;
        path.push_back(value);
        i = static_cast<size_t>(ptr - text.data());
        if (i == text.size()) break;
        if (text[i] != '.') return std::nullopt;
        ++i;
        if (i == text.size()) return std::nullopt;  // trailing dot
    }
    if (path.empty()) return std::nullopt;
    return path;
}

std::vector<const Stmt*> childStmts(const Stmt& s) {
    std::vector<const Stmt*> out;
    for (const Block* b : subBlocks(s))
        for (const auto& child : b->stmts) out.push_back(child.get());
    return out;
}

namespace {

void indexStmts(StatementIndex& index, const std::string& ns, const std::string& callable,
                const std::vector<const Stmt*>& stmts, StmtPath& prefix) {
    for (size_t i = 0; i < stmts.size(); ++i) {
        prefix.push_back(static_cast<int>(i));
        index.entries.push_back({ns, callable, prefix, stmts[i], stmts[i]->span});
        indexStmts(index, ns, callable, childStmts(*stmts[i]), prefix);
        prefix.pop_back();
    }
}

}  // namespace

StatementIndex indexStatements(const Program& p) {
    StatementIndex index;
    for (const auto& ns : p.namespaces) {
        for (const auto& c : ns.callables) {
            StmtPath prefix;
            std::vector<const Stmt*> top;
            for (const auto& s : c.body.stmts) top.push_back(s.get());
            indexStmts(index, ns.name, c.name, top, prefix);
        }
    }
    return index;
}

const StatementIndex::Entry* StatementIndex::find(std::string_view ns, std::string_view callable,
                                                  const StmtPath& path) const {
    for (const auto& e : entries)
        if (e.namespaceName == ns && e.callableName == callable && e.path == path) return &e;
    return nullptr;
}

std::optional<StmtPath> StatementIndex::pathOf(const Stmt* stmt) const {
    for (const auto& e : entries)
        if (e.stmt == stmt) return e.path;
    return std::nullopt;
}

const Stmt* stmtAt(const Callable& c, const StmtPath& path) {
    if (path.empty()) return nullptr;
    const std::vector<StmtPtr>* stmts = &c.body.stmts;
    const Stmt* current = nullptr;
    for (size_t depth = 0; depth < path.size(); ++depth) {
        int ordinal = path[depth];
        if (depth == 0) {
            if (ordinal < 0 || static_cast<size_t>(ordinal) >= stmts->size()) return nullptr;
            current = (*stmts)[static_cast<size_t>(ordinal)].get();
        } else {
            auto children = childStmts(*current);
            if (ordinal < 0 || static_cast<size_t>(ordinal) >= children.size()) return nullptr;
            current = children[static_cast<size_t>(ordinal)];
        }
    }
    return current;
}

}  // namespace qrt::analysis
