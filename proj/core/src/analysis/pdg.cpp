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

#include "qrt/analysis/safety.hpp"
#include "qrt/printer.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace qrt::analysis {

using namespace syntax;

std::string_view edgeKindName(EdgeKind k) {
    switch (k) {
        case EdgeKind::Control: return "ctrl";
        case EdgeKind::Data: return "data";
        case EdgeKind::QubitOrder: return "qubit";
    }
    return "?";
}

int Pdg::nodeOf(const Stmt* s) const {
    for (const auto& n : nodes)
        if (n.stmt == s) return n.id;
    return -1;
}

bool Pdg::isAncestor(int a, int b) const {
    int cur = b;
    while (cur >= 0) {
        cur = nodes[static_cast<size_t>(cur)].parent;
        if (cur == a) return true;
    }
    return false;
}

bool Pdg::hasPath(int from, int to) const {
    if (from == to) return true;
    std::vector<std::vector<int>> adj(nodes.size());
    for (const auto& e : edges) adj[static_cast<size_t>(e.from)].push_back(e.to);
    std::vector<bool> seen(nodes.size(), false);
    std::queue<int> q;
    q.push(from);
    seen[static_cast<size_t>(from)] = true;
    while (!q.empty()) {
        int cur = q.front();
        q.pop();
        if (cur == to) return true;
        for (int next : adj[static_cast<size_t>(cur)]) {
            if (!seen[static_cast<size_t>(next)]) {
                seen[static_cast<size_t>(next)] = true;
                q.push(next);
            }
        }
    }
    return false;
}

bool Pdg::independent(int a, int b) const {
    return !hasPath(a, b) && !hasPath(b, a);
}

std::optional<PdgEdge> Pdg::blockingEdge(int a, int b) const {
    // prefer a direct edge between the two nodes
    for (const auto& e : edges) {
        if ((e.from == a && e.to == b) || (e.from == b && e.to == a)) return e;
    }
    // otherwise the first edge leaving either endpoint on a connecting path
    for (const auto& e : edges) {
        if (e.from == a && hasPath(e.to, b)) return e;
        if (e.from == b && hasPath(e.to, a)) return e;
    }
    return std::nullopt;
}

std::string Pdg::toText() const {
    std::ostringstream out;
    for (const auto& n : nodes) {
        std::string label = n.label;
        std::string escaped;
        for (char c : label) {
            if (c == '"' || c == '\\') escaped += '\\';
            escaped += c;
        }
        out << 'n' << n.id << " \"" << escaped << "\"\n";
    }
    for (const auto& e : edges)
        out << "e " << e.from << ' ' << e.to << ' ' << edgeKindName(e.kind) << '\n';
    return out.str();
}

std::string Pdg::toDot() const {
    std::ostringstream out;
    out << "digraph pdg {\n";
    out << "    label=\"" << namespaceName << '.' << callableName << "\";\n";
    for (const auto& n : nodes) {
        std::string escaped;
        for (char c : n.label) {
            if (c == '"' || c == '\\') escaped += '\\';
            escaped += c;
        }
        out << "    n" << n.id << " [shape=box, label=\"" << n.id << ": " << escaped << "\"];\n";
    }
    for (const auto& e : edges) {
        const char* color = e.kind == EdgeKind::Control  ? "black"
                            : e.kind == EdgeKind::Data   ? "blue"
                                                         : "red";
        out << "    n" << e.from << " -> n" << e.to << " [color=" << color << ", label=\""
            << edgeKindName(e.kind) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

namespace {

/// Accumulates everything known about one statement node while building.
struct NodeInfo {
    std::vector<QubitRef> touched;  // aggregate over the subtree
    bool operates = false;          // subtree contains gate/measurement/reset/op call
    bool emits = false;             // subtree may produce trace output
    bool isReturn = false;
};

class PdgBuilder {
public:
    PdgBuilder(const Program& program, const Callable& callable, const SymbolTable& symbols)
        : program_(program), callable_(callable), symbols_(symbols) {}

    Pdg run() {
        pdg_.namespaceName = owningNamespace();
        pdg_.callableName = callable_.name;
        collectNodes(callable_.body, -1);
        info_.resize(pdg_.nodes.size());
        for (const auto& n : pdg_.nodes) computeNodeInfo(n.id);
        addControlEdges();
        addClassicalEdges();
        addQubitOrderEdges();
        addTraceOrderEdges();
        addReturnOrderEdges();
        dedupeEdges();
        return std::move(pdg_);
    }

private:
    const Program& program_;
    const Callable& callable_;
    const SymbolTable& symbols_;
    Pdg pdg_;
    std::vector<NodeInfo> info_;
    // reaching definitions environment: symbol -> defining nodes
    using Reach = std::map<SymbolId, std::set<int>>;
    // classical accesses in source order: (node, symbol, isDef)
    struct Access {
        int node;
        SymbolId symbol;
        bool isDef;
    };
    std::vector<Access> accesses_;

    void collectNodes(const Block& b, int parent) {
        for (const auto& s : b.stmts) {
            int id = static_cast<int>(pdg_.nodes.size());
            pdg_.nodes.push_back({id, parent, s.get(), summarize(*s)});
            for (const Block* sub : subBlocks(*s)) collectNodes(*sub, id);
        }
    }

    std::string owningNamespace() const {
        for (const auto& ns : program_.namespaces)
            for (const auto& c : ns.callables)
                if (&c == &callable_) return ns.name;
        return {};
    }

    bool nonAncestorPair(int a, int b) const {
        return !pdg_.isAncestor(a, b) && !pdg_.isAncestor(b, a);
    }

    void addEdge(int from, int to, EdgeKind kind, EdgeDetail detail, std::string note) {
        if (from == to) return;
        if (!nonAncestorPair(from, to)) return;
        pdg_.edges.push_back({from, to, kind, detail, std::move(note)});
    }

    // ------------------------------------------------------------------
    // per-node facts
    // ------------------------------------------------------------------

    void computeNodeInfo(int id) {
        NodeInfo& info = info_[static_cast<size_t>(id)];
        const Stmt& s = *pdg_.nodes[static_cast<size_t>(id)].stmt;
        info.isReturn = s.is<ReturnStmt>();
        // own expressions only; children contribute via aggregation below
        visitOwnExprs(s, [&](const Expr& e) {
            if (const auto* ctl = e.as<ControlledApply>()) {
                info.operates = true;
                auto refs = collectQubitRefs(*ctl->controls, symbols_);
                for (const auto& a : ctl->args) {
                    auto t = collectQubitRefs(*a, symbols_);
                    refs.insert(refs.end(), t.begin(), t.end());
                }
                info.touched.insert(info.touched.end(), refs.begin(), refs.end());
                return;
            }
            const auto* call = e.as<CallExpr>();
            if (!call) return;
            auto bIt = symbols_.builtinUses.find(call->callee.get());
            if (bIt != symbols_.builtinUses.end()) {
                const Builtin& b = *bIt->second;
                if (b.isQuantum()) {
                    info.operates = true;
                    for (const auto& arg : call->args) {
                        auto refs = collectQubitRefs(*arg, symbols_);
                        info.touched.insert(info.touched.end(), refs.begin(), refs.end());
                    }
                }
                if (b.kind == Builtin::Kind::Message) info.emits = true;
                return;
            }
            auto uIt = symbols_.uses.find(call->callee.get());
            if (uIt != symbols_.uses.end()) {
                const Symbol& sym = symbols_.symbol(uIt->second);
                if (sym.kind == SymbolKind::Callable) {
                    // summarized callee effects: touches all argument qubits
                    if (sym.callableKind == CallableKind::Operation) info.operates = true;
                    for (const auto& arg : call->args) {
                        auto refs = collectQubitRefs(*arg, symbols_);
                        if (!refs.empty()) info.operates = true;
                        info.touched.insert(info.touched.end(), refs.begin(), refs.end());
                    }
                    auto emitIt = symbols_.mayEmit.find(sym.decl);
                    if (emitIt == symbols_.mayEmit.end() || emitIt->second) info.emits = true;
                }
            }
        });
        // `using` headers own their binding: treat the allocation itself as a
        // touch so sibling blocks on the same binding (impossible) or later
        // uses order correctly; scoping already confines real uses.
        // aggregate children into ancestors
        int parent = pdg_.nodes[static_cast<size_t>(id)].parent;
        (void)parent;
    }

    /// Visits expressions owned by the statement itself (header expressions
    /// and simple-statement bodies), not those of nested statements.
    template <typename Fn>
    void visitOwnExprs(const Stmt& s, Fn fn) {
        std::visit(
            [&fn](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, LetStmt> || std::is_same_v<T, MutableStmt> ||
                              std::is_same_v<T, SetStmt>) {
                    forEachExpr(*n.value, fn);
                } else if constexpr (std::is_same_v<T, UsingStmt>) {
                    if (n.count) forEachExpr(*n.count, fn);
                } else if constexpr (std::is_same_v<T, ForStmt>) {
                    forEachExpr(*n.range, fn);
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    forEachExpr(*n.cond, fn);
                    for (const auto& arm : n.elifs) forEachExpr(*arm.cond, fn);
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    forEachExpr(*n.value, fn);
                } else if constexpr (std::is_same_v<T, CallStmt>) {
                    forEachExpr(*n.call, fn);
                }
            },
            s.node);
    }

    NodeInfo aggregateInfo(int id) const {
        NodeInfo out = info_[static_cast<size_t>(id)];
        for (const auto& n : pdg_.nodes) {
            if (n.id != id && pdg_.isAncestor(id, n.id)) {
                const NodeInfo& child = info_[static_cast<size_t>(n.id)];
                out.operates |= child.operates;
                out.emits |= child.emits;
                out.touched.insert(out.touched.end(), child.touched.begin(), child.touched.end());
            }
        }
        return out;
    }

    // ------------------------------------------------------------------
    // edges
    // ------------------------------------------------------------------

    void addControlEdges() {
        for (const auto& n : pdg_.nodes)
            if (n.parent >= 0)
                pdg_.edges.push_back(
                    {n.parent, n.id, EdgeKind::Control, EdgeDetail::Structured,
                     "structured control"});
    }

    // Classical def-use via reaching definitions over the structured control
    // flow, plus write-after-read and write-after-write orderings.
    void addClassicalEdges() {
        Reach env;
        processBlock(callable_.body, env, /*record=*/true);
        // anti and output dependences from the source-order access list
        for (size_t i = 0; i < accesses_.size(); ++i) {
            for (size_t j = i + 1; j < accesses_.size(); ++j) {
                const Access& a = accesses_[i];
                const Access& b = accesses_[j];
                if (a.symbol != b.symbol || a.node == b.node) continue;
                if (!a.isDef && !b.isDef) continue;
                if (a.isDef && !b.isDef) continue;  // true dependence: reaching defs handle it
                addEdge(a.node, b.node, EdgeKind::Data, EdgeDetail::WriteOrder,
                        "write order on '" + symbols_.symbol(a.symbol).name + "'");
            }
        }
    }

    void recordUse(int node, SymbolId sym, const Reach& env) {
        accesses_.push_back({node, sym, false});
        auto it = env.find(sym);
        if (it == env.end()) return;  // parameter or out-of-scope def
        for (int def : it->second)
            addEdge(def, node, EdgeKind::Data, EdgeDetail::TrueDep,
                    "'" + symbols_.symbol(sym).name + "'");
    }

    void recordUsesOfOwnExprs(int node, const Stmt& s, const Reach& env) {
        visitOwnExprs(s, [&](const Expr& e) {
            if (!e.is<Ident>()) return;
            auto it = symbols_.uses.find(&e);
            if (it == symbols_.uses.end()) return;
            const Symbol& sym = symbols_.symbol(it->second);
            if (sym.kind == SymbolKind::Variable || sym.kind == SymbolKind::LoopVar ||
                sym.kind == SymbolKind::Parameter)
                recordUse(node, it->second, env);
        });
    }

    void define(int node, SymbolId sym, Reach& env) {
        accesses_.push_back({node, sym, true});
        env[sym] = {node};
    }

    static Reach merged(const Reach& a, const Reach& b) {
        Reach out = a;
        for (const auto& [sym, defs] : b) out[sym].insert(defs.begin(), defs.end());
        return out;
    }

    void processBlock(const Block& b, Reach& env, bool record) {
        for (const auto& s : b.stmts) processStmt(*s, env, record);
    }

    void processStmt(const Stmt& s, Reach& env, bool record) {
        int node = pdg_.nodeOf(&s);
        recordUsesOfOwnExprs(node, s, env);
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, LetStmt> || std::is_same_v<T, MutableStmt>) {
                    auto it = symbols_.stmtDefs.find(&s);
                    if (it != symbols_.stmtDefs.end()) define(node, it->second, env);
                } else if constexpr (std::is_same_v<T, SetStmt>) {
                    auto it = symbols_.setTargets.find(&s);
                    if (it != symbols_.setTargets.end()) define(node, it->second, env);
                } else if constexpr (std::is_same_v<T, UsingStmt>) {
                    processBlock(n.body, env, record);
                } else if constexpr (std::is_same_v<T, ForStmt>) {
                    auto it = symbols_.stmtDefs.find(&s);
                    if (it != symbols_.stmtDefs.end()) define(node, it->second, env);
                    // loop bodies may feed themselves; iterate to a fixpoint
                    Reach preLoop = env;
                    for (int round = 0; round < 3; ++round) {
                        Reach iter = env;
                        processBlock(n.body, iter, record);
                        Reach next = merged(env, iter);
                        if (next == env) break;
                        env = std::move(next);
                    }
                    env = merged(env, preLoop);
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    Reach out = env;  // fall-through when no else
                    {
                        Reach arm = env;
                        processBlock(n.then, arm, record);
                        out = merged(out, arm);
                    }
                    for (const auto& e : n.elifs) {
                        Reach arm = env;
                        processBlock(e.body, arm, record);
                        out = merged(out, arm);
                    }
                    if (n.elseBlock) {
                        Reach arm = env;
                        processBlock(*n.elseBlock, arm, record);
                        out = merged(out, arm);
                    }
                    env = std::move(out);
                }
            },
            s.node);
    }

    void addQubitOrderEdges() {
        std::vector<NodeInfo> agg;
        agg.reserve(pdg_.nodes.size());
        for (const auto& n : pdg_.nodes) agg.push_back(aggregateInfo(n.id));
        for (size_t i = 0; i < pdg_.nodes.size(); ++i) {
            for (size_t j = i + 1; j < pdg_.nodes.size(); ++j) {
                if (!nonAncestorPair(static_cast<int>(i), static_cast<int>(j))) continue;
                if (!agg[i].operates && !agg[j].operates) continue;
                bool conflict = false;
                std::string binding;
                for (const auto& a : agg[i].touched) {
                    for (const auto& b : agg[j].touched) {
                        if (conflicts(a, b)) {
                            conflict = true;
                            binding = symbols_.symbol(a.binding).name;
                            break;
                        }
                    }
                    if (conflict) break;
                }
                if (conflict)
                    pdg_.edges.push_back({static_cast<int>(i), static_cast<int>(j),
                                          EdgeKind::QubitOrder, EdgeDetail::Qubit,
                                          "'" + binding + "'"});
            }
        }
    }

    void addTraceOrderEdges() {
        std::vector<int> emitters;
        for (const auto& n : pdg_.nodes)
            if (aggregateInfo(n.id).emits) emitters.push_back(n.id);
        for (size_t i = 0; i < emitters.size(); ++i)
            for (size_t j = i + 1; j < emitters.size(); ++j)
                addEdge(emitters[i], emitters[j], EdgeKind::Data, EdgeDetail::OutputOrder,
                        "output order");
    }

    void addReturnOrderEdges() {
        for (const auto& r : pdg_.nodes) {
            if (!info_[static_cast<size_t>(r.id)].isReturn) continue;
            for (const auto& other : pdg_.nodes) {
                if (other.id == r.id) continue;
                if (other.id < r.id)
                    addEdge(other.id, r.id, EdgeKind::Control, EdgeDetail::ReturnOrder,
                            "return order");
                else
                    addEdge(r.id, other.id, EdgeKind::Control, EdgeDetail::ReturnOrder,
                            "return order");
            }
        }
    }

    void dedupeEdges() {
        std::set<std::tuple<int, int, EdgeKind, EdgeDetail>> seen;
        std::vector<PdgEdge> unique;
        for (auto& e : pdg_.edges) {
            if (seen.insert({e.from, e.to, e.kind, e.detail}).second)
                unique.push_back(std::move(e));
        }
        std::sort(unique.begin(), unique.end(), [](const PdgEdge& a, const PdgEdge& b) {
            return std::tie(a.from, a.to, a.kind) < std::tie(b.from, b.to, b.kind);
        });
        pdg_.edges = std::move(unique);
    }
};

}  // namespace

Pdg buildPdg(const Program& program, const Callable& callable, const SymbolTable& symbols) {
    return PdgBuilder(program, callable, symbols).run();
}

}  // namespace qrt::analysis
