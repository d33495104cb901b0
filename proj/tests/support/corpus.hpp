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
#include <vector>

namespace qrt::testing {

std::string corpusDir();

/// Reads one corpus file (by bare name, e.g. "hello_entangled.qs").
std::string readCorpusFile(const std::string& name);

/// All .qs files in the corpus directory, sorted by name.
std::vector<std::string> corpusFileNames();

/// Parses a corpus file, aborting the test on failure.
syntax::Program parseCorpus(const std::string& name);

syntax::Program parseSource(const std::string& source);

/// Default simulation entry point of a corpus program: `Main` when present,
/// otherwise the unique parameterless operation.
std::string defaultEntry(const syntax::Program& p);

}  // namespace qrt::testing
