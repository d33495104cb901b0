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

#include "qrt/diag.hpp"

#include <json.hpp>

#include <sstream>

namespace qrt {

Diagnostic makeError(std::string code, SourceSpan span, std::string message) {
    return Diagnostic{std::move(code), Severity::Error, span, std::move(message)};
}

std::string formatDiagnostic(const Diagnostic& d, std::string_view fileName) {
    std::ostringstream out;
    out << fileName << ':' << d.span.line << ':' << d.span.col << ": "
        << (d.severity == Severity::Error ? "error" : "warning") << '[' << d.code
        << "]: " << d.message;
    return out.str();
}

namespace {

nlohmann::json diagnosticJson(const Diagnostic& d, std::string_view fileName) {
    return nlohmann::json{
        {"code", d.code},
        {"severity", d.severity == Severity::Error ? "error" : "warning"},
        {"span",
         {{"file", std::string(fileName)},
          {"line", d.span.line},
          {"col", d.span.col},
          {"endLine", d.span.endLine},
          {"endCol", d.span.endCol}}},
        {"message", d.message},
    };
}

}  // namespace

std::string diagnosticToJson(const Diagnostic& d, std::string_view fileName) {
    return diagnosticJson(d, fileName).dump();
}

std::string diagnosticsToJson(const std::vector<Diagnostic>& diags, std::string_view fileName) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& d : diags) arr.push_back(diagnosticJson(d, fileName));
    return arr.dump();
}

}  // namespace qrt
