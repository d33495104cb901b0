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

#include "qrt/analysis/stmt_index.hpp"
#include "qrt/analysis/symbols.hpp"

#include <vector>

namespace qrt::analysis {

struct ClonePair {
    StmtPath pathA;  // path of the first statement of each occurrence
    StmtPath pathB;
    int length = 0;
};

/// Maximal pairs of non-overlapping statement sequences of length >= minLen
/// inside one callable that are structurally identical up to a consistent
/// bijective renaming of callable-local symbols. Literals and references to
/// callables or builtins must match exactly.
std::vector<ClonePair> findDuplicates(const syntax::Program& p, const syntax::Callable& c,
                                      const SymbolTable& symbols, int minLen = 3);

/// Rename-consistency check for two explicit sequences (used to validate
/// externally supplied clone pairs).
bool sequencesMatchUpToRenaming(const SymbolTable& symbols,
                                const std::vector<const syntax::Stmt*>& a,
                                const std::vector<const syntax::Stmt*>& b);

}  // namespace qrt::analysis
