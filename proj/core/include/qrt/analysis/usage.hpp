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

#include <vector>

namespace qrt::analysis {

/// Variables and parameters with zero reads, plus callables with zero call
/// sites. `Main` is always exempt; when the program has no `Main`,
/// parameterless operations are treated as potential entry points and are
/// exempt as well. Results in declaration order.
std::vector<SymbolId> findUnused(const syntax::Program& p, const SymbolTable& symbols);

}  // namespace qrt::analysis
