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

#include "qrt/refactor/request.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qrt::refactor {

/// Catalog entry: engine name, what it does, which catalog rows it covers,
/// and the arguments it takes.
struct RefactoringInfo {
    RefactoringKind kind;
    std::string name;         // kebab-case CLI name
    std::string description;
    std::vector<std::string> catalogRows;
    std::vector<std::string> requiredArgs;
    std::vector<std::string> optionalArgs;
};

/// All engine entries, sorted by name.
const std::vector<RefactoringInfo>& catalog();

const RefactoringInfo* findRefactoring(std::string_view name);

/// Applies one refactoring. The input must parse; resolution and
/// quantum-safety are re-checked here. On any failure the returned program
/// is structurally equal to the input and diagnostics are set; on success
/// the result re-resolves cleanly and passes the safety checks.
EditResult apply(const syntax::Program& input, const RefactoringRequest& request);

/// Builds a request from the JSON document form
/// {"refactoring": name, "target": text, "args": {k: v}}.
Outcome<RefactoringRequest> requestFromJson(const std::string& json);

}  // namespace qrt::refactor
