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

#include "qrt/analysis/symbols.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qrt::analysis {

enum class EdgeKind { Control, Data, QubitOrder };

std::string_view edgeKindName(EdgeKind k);

struct PdgNode {
    int id = -1;           // pre-order position within the callable body
    int parent = -1;       // enclosing statement node, -1 at body top level
    const syntax::Stmt* stmt = nullptr;
    std::string label;     // one-line statement rendering
};

/// Finer-grained reason behind an edge; exported formats only show the kind.
enum class EdgeDetail { Structured, TrueDep, WriteOrder, OutputOrder, ReturnOrder, Qubit };

struct PdgEdge {
    int from = -1;
    int to = -1;
    EdgeKind kind = EdgeKind::Data;
    EdgeDetail detail = EdgeDetail::TrueDep;
    std::string note;  // symbol or resource the edge is about
};

/// Per-callable program dependence graph over statement nodes. Besides
/// def-use data dependences it carries every ordering needed for a sound
/// "independent statements may swap" query: write-after-read and
/// write-after-write on classical variables, qubit-order edges between
/// operations touching a common binding, output order between trace-emitting
/// statements, and return-order edges.
struct Pdg {
    std::string namespaceName;
    std::string callableName;
    std::vector<PdgNode> nodes;
    std::vector<PdgEdge> edges;

    int nodeOf(const syntax::Stmt* s) const;
    bool isAncestor(int a, int b) const;  // a strictly encloses b
    bool hasPath(int from, int to) const;
    bool independent(int a, int b) const;

    /// First edge on some path between the two nodes (either direction);
    /// null when independent.
    std::optional<PdgEdge> blockingEdge(int a, int b) const;

    /// `n<id> "<stmt>"` and `e <from> <to> <kind>` lines.
    std::string toText() const;
    std::string toDot() const;
};

Pdg buildPdg(const syntax::Program& program, const syntax::Callable& callable,
             const SymbolTable& symbols);

}  // namespace qrt::analysis
