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

#include "qrt/analysis/usage.hpp"

namespace qrt::analysis {

using namespace syntax;

std::vector<SymbolId> findUnused(const Program& p, const SymbolTable& symbols) {
    bool hasMain = false;
    for (const auto& ns : p.namespaces)
        for (const auto& c : ns.callables)
            if (c.name == "Main") hasMain = true;

    std::vector<SymbolId> unused;
    for (const auto& sym : symbols.symbols) {
        bool read = symbols.useSites.count(sym.id) && !symbols.useSites.at(sym.id).empty();
        bool written = symbols.setSites.count(sym.id) && !symbols.setSites.at(sym.id).empty();
        switch (sym.kind) {
            case SymbolKind::Variable:
            case SymbolKind::Parameter:
                if (!read && !written) unused.push_back(sym.id);
                break;
            case SymbolKind::Callable: {
                if (read) break;  // has call sites
                if (sym.name == "Main") break;
                // with no Main, parameterless operations are runnable entry
                // points and stay exempt
                if (!hasMain && sym.callableKind == CallableKind::Operation && sym.decl &&
                    sym.decl->params.empty())
                    break;
                unused.push_back(sym.id);
                break;
            }
            case SymbolKind::LoopVar:
            case SymbolKind::QubitBinding: break;
        }
    }
    return unused;
}

}  // namespace qrt::analysis
