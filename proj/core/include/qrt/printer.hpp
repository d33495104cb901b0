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

#include <string>

namespace qrt::syntax {

/// Canonical-form pretty printer: 4-space indent, one statement per line,
/// one blank line between callables, LF line endings. Output re-parses to a
/// structurally equal program.
std::string print(const Program& p);

std::string print(const Expr& e);
std::string print(const Type& t);

/// One-line rendering of a statement (compound bodies elided as `...`),
/// used for PDG node labels and messages.
std::string summarize(const Stmt& s);

}  // namespace qrt::syntax
