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
#include "qrt/diag.hpp"

#include <string_view>

namespace qrt::syntax {

/// Parses a whole source file. Returns either a Program whose every node
/// carries a faithful span, or at least one diagnostic — never both.
Outcome<Program> parse(std::string_view source, FileId file = 0);

/// Parses a single expression (used for CLI-supplied argument expressions).
Outcome<ExprPtr> parseExpression(std::string_view source, FileId file = 0);

}  // namespace qrt::syntax
