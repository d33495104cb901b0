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

#include "qrt/builtins.hpp"

namespace qrt::syntax {

const std::vector<Builtin>& builtinRegistry() {
    using K = Builtin::Kind;
    static const std::vector<Builtin> registry = [] {
        std::vector<Builtin> r;
        auto gate = [&r](std::string_view name, int arity) {
            std::vector<Type> params(arity, Type::qubit());
            r.push_back(Builtin{name, K::Gate, arity, std::move(params), Type::unit()});
        };
        gate("H", 1);
        gate("X", 1);
        gate("Y", 1);
        gate("Z", 1);
        gate("S", 1);
        gate("T", 1);
        gate("CNOT", 2);
        gate("CCNOT", 3);
        r.push_back(Builtin{"M", K::Measurement, 1, {Type::qubit()}, Type::result()});
        r.push_back(
            Builtin{"MultiM", K::Measurement, 0, {Type::array(Type::qubit())},
                    Type::array(Type::result())});
        r.push_back(Builtin{"Reset", K::Reset, 1, {Type::qubit()}, Type::unit()});
        // First parameter is a single-qubit gate name, checked specially.
        r.push_back(
            Builtin{"ApplyToEach", K::ApplyToEach, 0, {Type::unit(), Type::array(Type::qubit())},
                    Type::unit()});
        r.push_back(Builtin{"Message", K::Message, 0, {Type::string()}, Type::unit()});
        r.push_back(Builtin{"ResultArrayAsInt", K::ResultArrayAsInt, 0,
                            {Type::array(Type::result())}, Type::integer()});
        return r;
    }();
    return registry;
}

const Builtin* findBuiltin(std::string_view name) {
    for (const auto& b : builtinRegistry())
        if (b.name == name) return &b;
    return nullptr;
}

bool isSingleQubitGate(std::string_view name) {
    const Builtin* b = findBuiltin(name);
    return b && b->isGate() && b->qubitArity == 1;
}

}  // namespace qrt::syntax
