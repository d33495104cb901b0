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

namespace qrt::syntax {

/// Evaluates a closed integer expression (literals, unary minus, integer
/// arithmetic on constants). Division/modulo by zero and overflow-prone
/// cases yield nullopt.
std::optional<long long> evalConstInt(const Expr& e);

std::optional<bool> evalConstBool(const Expr& e);

/// True when the expression contains no identifiers, calls, or quantum
/// constructs — safe to duplicate into any scope.
bool isClosedClassical(const Expr& e);

/// Builds a literal expression for an integer (negative values become a
/// unary minus around the absolute literal, matching what the parser
/// produces).
ExprPtr makeIntExpr(long long value);

}  // namespace qrt::syntax
