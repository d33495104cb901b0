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

#include "corpus.hpp"

#include "qrt/parser.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qrt::testing {

std::string corpusDir() {
    return QRT_CORPUS_DIR;
}

std::string readCorpusFile(const std::string& name) {
    std::ifstream in(corpusDir() + "/" + name, std::ios::binary);
    if (!in) ADD_FAILURE() << "cannot open corpus file " << name;
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<std::string> corpusFileNames() {
    std::vector<std::string> names;
    for (const auto& entry : std::filesystem::directory_iterator(corpusDir())) {
        if (entry.path().extension() == ".qs") names.push_back(entry.path().filename().string());
    }
    std::sort(names.begin(), names.end());
    return names;
}

syntax::Program parseCorpus(const std::string& name) {
    return parseSource(readCorpusFile(name));
}

syntax::Program parseSource(const std::string& source) {
    auto result = syntax::parse(source);
    if (!result.ok()) {
        for (const auto& d : result.diagnostics)
            ADD_FAILURE() << formatDiagnostic(d, "<test>");
        return {};
    }
    return std::move(*result);
}

std::string defaultEntry(const syntax::Program& p) {
    for (const auto& ns : p.namespaces)
        for (const auto& c : ns.callables)
            if (c.name == "Main") return "Main";
    std::string found;
    for (const auto& ns : p.namespaces) {
        for (const auto& c : ns.callables) {
            if (c.kind == syntax::CallableKind::Operation && c.params.empty()) {
                if (!found.empty()) return {};  // ambiguous
                found = c.name;
            }
        }
    }
    return found;
}

}  // namespace qrt::testing
