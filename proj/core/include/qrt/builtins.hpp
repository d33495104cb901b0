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
#include <string_view>
#include <vector>

namespace qrt::syntax {

/// One entry of the fixed builtin registry. The registry is immutable:
/// gates H..CCNOT, measurement M/MultiM, Reset, ApplyToEach, Message and
/// ResultArrayAsInt, with fixed arities and signatures.
struct Builtin {
    enum class Kind { Gate, Measurement, Reset, ApplyToEach, Message, ResultArrayAsInt };

    std::string_view name;
    Kind kind;
    int qubitArity = 0;  // gates: number of qubit operands
    std::vector<Type> paramTypes;
    Type returnType;

    bool isGate() const { return kind == Kind::Gate; }
    /// True when calling it from a `function` body is illegal.
    bool isQuantum() const {
        return kind == Kind::Gate || kind == Kind::Measurement || kind == Kind::Reset ||
               kind == Kind::ApplyToEach;
    }
};

const std::vector<Builtin>& builtinRegistry();
const Builtin* findBuiltin(std::string_view name);

/// Single-qubit gates usable as the first argument of ApplyToEach.
bool isSingleQubitGate(std::string_view name);

}  // namespace qrt::syntax
