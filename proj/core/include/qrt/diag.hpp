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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qrt {

using FileId = int;

/// Half-open byte range into one source file, with 1-based line/column
/// endpoints kept in sync with the offsets.
struct SourceSpan {
    FileId file = 0;
    size_t begin = 0;
    size_t end = 0;
    int line = 1;
    int col = 1;
    int endLine = 1;
    int endCol = 1;

    bool operator==(const SourceSpan&) const = default;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    std::string code;
    Severity severity = Severity::Error;
    SourceSpan span;
    std::string message;
};

// Stable diagnostic codes. Codes are plain strings on the wire; these
// constants keep producers and tests in sync.
namespace diag_code {
inline constexpr const char* Syntax = "E_SYNTAX";
inline constexpr const char* Unsupported = "E_UNSUPPORTED";
inline constexpr const char* UnknownType = "E_UNKNOWN_TYPE";
inline constexpr const char* Unbalanced = "E_UNBALANCED";
inline constexpr const char* Unresolved = "E_UNRESOLVED";
inline constexpr const char* Arity = "E_ARITY";
inline constexpr const char* TypeError = "E_TYPE";
inline constexpr const char* QubitEscape = "E_QUBIT_ESCAPE";
inline constexpr const char* Duplicate = "E_DUPLICATE";
inline constexpr const char* DuplicateQubit = "E_DUPLICATE_QUBIT";
inline constexpr const char* OverlapControl = "E_OVERLAP_CONTROL";
inline constexpr const char* QuantumInFunction = "E_QUANTUM_IN_FUNCTION";
inline constexpr const char* Precondition = "E_PRECONDITION";
inline constexpr const char* Limit = "E_LIMIT";
inline constexpr const char* ReleaseNonzero = "E_RELEASE_NONZERO";
inline constexpr const char* Runtime = "E_RUNTIME";
}  // namespace diag_code

Diagnostic makeError(std::string code, SourceSpan span, std::string message);

/// `file:line:col: error[CODE]: message`
std::string formatDiagnostic(const Diagnostic& d, std::string_view fileName);

/// Structured form: {code, severity, span:{file,line,col,endLine,endCol}, message}
std::string diagnosticToJson(const Diagnostic& d, std::string_view fileName);

std::string diagnosticsToJson(const std::vector<Diagnostic>& diags, std::string_view fileName);

/// Carrier for "value or diagnostics" API results.
template <typename T>
struct Outcome {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return value.has_value(); }
    T& operator*() { return *value; }
    const T& operator*() const { return *value; }
    T* operator->() { return &*value; }
    const T* operator->() const { return &*value; }

    static Outcome success(T v) { return Outcome{std::move(v), {}}; }
    static Outcome failure(std::vector<Diagnostic> diags) { return Outcome{std::nullopt, std::move(diags)}; }
};

}  // namespace qrt
