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

#include <json.hpp>

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qrt::testing {
namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exitCode = -1;
    std::string output;  // stdout only
};

RunResult runCli(const std::string& args) {
    std::string command = std::string(QRT_BIN) + " " + args + " 2>/tmp/qrt_cli_stderr.txt";
    RunResult result;
    FILE* pipe = popen(command.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    if (!pipe) return result;
    std::array<char, 4096> buffer;
    size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), n);
    int status = pclose(pipe);
    result.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

class TempDir {
public:
    TempDir() {
        dir_ = fs::temp_directory_path() / ("qrt_cli_test_" + std::to_string(::getpid()) + "_" +
                                            std::to_string(counter_++));
        fs::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(dir_, ec);
    }
    fs::path path(const std::string& name) const { return dir_ / name; }

private:
    static inline int counter_ = 0;
    fs::path dir_;
};

fs::path corpusPath(const std::string& name) {
    return fs::path(corpusDir()) / name;
}

// ============================================================================
// list
// ============================================================================

TEST(CliListTest, CoversAllCatalogRows) {
    RunResult result = runCli("list --json");
    ASSERT_EQ(result.exitCode, 0);
    auto doc = nlohmann::json::parse(result.output);
    ASSERT_TRUE(doc.is_array());
    EXPECT_EQ(doc.size(), 19u);
    std::set<std::string> rows;
    std::string previous;
    for (const auto& entry : doc) {
        EXPECT_GT(entry["name"].get<std::string>(), previous);  // alphabetical
        previous = entry["name"].get<std::string>();
        for (const auto& row : entry["catalogRows"]) rows.insert(row.get<std::string>());
    }
    EXPECT_EQ(rows.size(), 25u);
}

TEST(CliListTest, HumanReadable) {
    RunResult result = runCli("list");
    ASSERT_EQ(result.exitCode, 0);
    EXPECT_NE(result.output.find("split-operation"), std::string::npos);
    EXPECT_NE(result.output.find("covers: Split Operation"), std::string::npos);
}

// ============================================================================
// apply
// ============================================================================

TEST(CliApplyTest, SplitDiffAndExitZero) {
    TempDir tmp;
    fs::copy_file(corpusPath("split_demo_before.qs"), tmp.path("before.qs"));
    RunResult result = runCli(
        "apply --refactoring split-operation --target MyNamespace.PerformQuantumSimulation "
        "--split \"0.0..0.3:PerformQuantumOperations,0.4..0.6:MeasureAndDisplayResult\" " +
        tmp.path("before.qs").string());
    EXPECT_EQ(result.exitCode, 0);
    EXPECT_NE(result.output.find("+    operation PerformQuantumOperations(qubits : Qubit[]) : "
                                 "Unit {"),
              std::string::npos)
        << result.output;
    // without --write the file is untouched
    EXPECT_EQ(slurp(tmp.path("before.qs")), slurp(corpusPath("split_demo_before.qs")));
}

TEST(CliApplyTest, WriteProducesAfterFixture) {
    TempDir tmp;
    fs::copy_file(corpusPath("split_demo_before.qs"), tmp.path("prog.qs"));
    RunResult result = runCli(
        "apply --refactoring split-operation --target MyNamespace.PerformQuantumSimulation "
        "--split \"0.0..0.3:PerformQuantumOperations,0.4..0.6:MeasureAndDisplayResult\" "
        "--write " +
        tmp.path("prog.qs").string());
    ASSERT_EQ(result.exitCode, 0);
    EXPECT_EQ(slurp(tmp.path("prog.qs")), slurp(corpusPath("split_demo_after.qs")));
}

TEST(CliApplyTest, PreconditionFailureLeavesFileByteIdentical) {
    TempDir tmp;
    fs::copy_file(corpusPath("hello_entangled.qs"), tmp.path("prog.qs"));
    std::string original = slurp(tmp.path("prog.qs"));
    RunResult result = runCli(
        "apply --refactoring rename --target MyNamespace.HelloWorld --symbol result "
        "--new-name entanglementResult --write " +
        tmp.path("prog.qs").string());
    EXPECT_EQ(result.exitCode, 2);
    EXPECT_EQ(slurp(tmp.path("prog.qs")), original);
}

TEST(CliApplyTest, ParseErrorExitsFour) {
    TempDir tmp;
    {
        std::ofstream out(tmp.path("bad.qs"));
        out << "namespace N { operation F() : Unit { let x = ; } }";
    }
    RunResult result = runCli("apply --refactoring merge-gates --target N.F " +
                              tmp.path("bad.qs").string());
    EXPECT_EQ(result.exitCode, 4);
}

TEST(CliApplyTest, VerificationCatchesUnsoundEdit) {
    // an inequivalent "edit" smuggled in via --no-verify must be caught by a
    // later `qrt check`
    TempDir tmp;
    {
        std::ofstream out(tmp.path("a.qs"));
        out << "namespace T {\n    operation Main() : Unit {\n        using (q = Qubit()) {\n"
               "            let r = M(q);\n            Message($\"{r}\");\n        }\n    }\n}\n";
    }
    {
        std::ofstream out(tmp.path("b.qs"));
        out << "namespace T {\n    operation Main() : Unit {\n        using (q = Qubit()) {\n"
               "            X(q);\n            let r = M(q);\n            Message($\"{r}\");\n"
               "        }\n    }\n}\n";
    }
    RunResult check = runCli("check " + tmp.path("a.qs").string() + " " +
                             tmp.path("b.qs").string());
    EXPECT_EQ(check.exitCode, 3);
    EXPECT_NE(check.output.find("Inequivalent"), std::string::npos);
}

TEST(CliApplyTest, NoVerifySkipsSimulation) {
    TempDir tmp;
    fs::copy_file(corpusPath("hello_entangled.qs"), tmp.path("prog.qs"));
    RunResult result = runCli(
        "apply --refactoring rename --target MyNamespace.HelloWorld --symbol result "
        "--new-name outcome --no-verify " +
        tmp.path("prog.qs").string());
    EXPECT_EQ(result.exitCode, 0);
    EXPECT_NE(result.output.find("-                let result = M(qubit);"), std::string::npos)
        << result.output;
}

TEST(CliApplyTest, EntryFlagRequiredWithoutMain) {
    TempDir tmp;
    fs::copy_file(corpusPath("hello_entangled.qs"), tmp.path("prog.qs"));
    // helloProgram has no Main but HelloWorld is the only parameterless operation,
    // so verification still proceeds
    RunResult result = runCli(
        "apply --refactoring merge-gates --target MyNamespace.HelloWorld " +
        tmp.path("prog.qs").string());
    EXPECT_EQ(result.exitCode, 0);
}

TEST(CliApplyTest, BatchAppliesSequentially) {
    TempDir tmp;
    fs::copy_file(corpusPath("hello_entangled.qs"), tmp.path("prog.qs"));
    {
        std::ofstream out(tmp.path("batch.json"));
        out << R"([
            {"refactoring": "rename", "target": "MyNamespace.HelloWorld",
             "symbol": "result", "args": {"name": "outcome"}},
            {"refactoring": "rename", "target": "MyNamespace.MultiplyByTwo",
             "args": {"name": "TimesTwo"}}
        ])";
    }
    RunResult result = runCli("apply --batch " + tmp.path("batch.json").string() + " --write " +
                              tmp.path("prog.qs").string());
    ASSERT_EQ(result.exitCode, 0);
    std::string text = slurp(tmp.path("prog.qs"));
    EXPECT_NE(text.find("let outcome = M(qubit);"), std::string::npos);
    EXPECT_NE(text.find("function TimesTwo"), std::string::npos);
}

TEST(CliApplyTest, JsonOutput) {
    TempDir tmp;
    fs::copy_file(corpusPath("hello_entangled.qs"), tmp.path("prog.qs"));
    RunResult result = runCli(
        "--json apply --refactoring rename --target MyNamespace.HelloWorld --symbol result "
        "--new-name outcome " +
        tmp.path("prog.qs").string());
    ASSERT_EQ(result.exitCode, 0);
    auto doc = nlohmann::json::parse(result.output, nullptr, false);
    ASSERT_FALSE(doc.is_discarded()) << result.output;
    EXPECT_NE(doc["verification"].get<std::string>().find("Equivalent"), std::string::npos);
    EXPECT_FALSE(doc["diff"].get<std::string>().empty());
}

// ============================================================================
// check
// ============================================================================

TEST(CliCheckTest, SplitDemoFixtures) {
    RunResult result = runCli("check " + corpusPath("split_demo_before.qs").string() + " " +
                              corpusPath("split_demo_after.qs").string());
    EXPECT_EQ(result.exitCode, 0);
    EXPECT_NE(result.output.find("Equivalent"), std::string::npos);
}

TEST(CliCheckTest, FileAgainstItself) {
    RunResult result = runCli("check " + corpusPath("bell_pair.qs").string() + " " +
                              corpusPath("bell_pair.qs").string());
    EXPECT_EQ(result.exitCode, 0);
}

TEST(CliCheckTest, ParseFailureExitsFour) {
    TempDir tmp;
    {
        std::ofstream out(tmp.path("bad.qs"));
        out << "namespace {";
    }
    RunResult result = runCli("check " + tmp.path("bad.qs").string() + " " +
                              corpusPath("bell_pair.qs").string());
    EXPECT_EQ(result.exitCode, 4);
}

// ============================================================================
// pdg
// ============================================================================

TEST(CliPdgTest, TextFormat) {
    RunResult result = runCli("pdg " + corpusPath("split_demo_before.qs").string() +
                              " --callable MyNamespace.PerformQuantumSimulation");
    ASSERT_EQ(result.exitCode, 0);
    EXPECT_NE(result.output.find("n0 \"for (i in 1..iterations) { ... }\""), std::string::npos)
        << result.output;
    EXPECT_NE(result.output.find("e 0 1 ctrl"), std::string::npos);
    EXPECT_NE(result.output.find("qubit"), std::string::npos);
}

TEST(CliPdgTest, DotFormatIsBalanced) {
    RunResult result = runCli("pdg " + corpusPath("split_demo_before.qs").string() +
                              " --callable MyNamespace.PerformQuantumSimulation --format dot");
    ASSERT_EQ(result.exitCode, 0);
    EXPECT_EQ(result.output.rfind("digraph", 0), 0u);
    EXPECT_EQ(std::count(result.output.begin(), result.output.end(), '{'),
              std::count(result.output.begin(), result.output.end(), '}'));
    // every label is quoted
    EXPECT_NE(result.output.find("label=\""), std::string::npos);
}

TEST(CliPdgTest, EmptyBodyHasNoNodes) {
    TempDir tmp;
    {
        std::ofstream out(tmp.path("empty.qs"));
        out << "namespace T { operation Noop() : Unit { } }";
    }
    RunResult result = runCli("pdg " + tmp.path("empty.qs").string() + " --callable T.Noop");
    EXPECT_EQ(result.exitCode, 0);
    EXPECT_TRUE(result.output.empty()) << result.output;
}

// ============================================================================
// fmt
// ============================================================================

TEST(CliFmtTest, CanonicalFilePassesCheck) {
    RunResult result = runCli("fmt --check " + corpusPath("bell_pair.qs").string());
    EXPECT_EQ(result.exitCode, 0);
}

TEST(CliFmtTest, NonCanonicalFileFailsCheck) {
    TempDir tmp;
    {
        std::ofstream out(tmp.path("messy.qs"));
        out << "namespace T { operation F(q:Qubit) : Unit { H(q);\n\n\n X(q); } }";
    }
    RunResult check = runCli("fmt --check " + tmp.path("messy.qs").string());
    EXPECT_EQ(check.exitCode, 1);
    // canonicalizing and re-checking passes
    RunResult write = runCli("fmt --write " + tmp.path("messy.qs").string());
    EXPECT_EQ(write.exitCode, 0);
    RunResult again = runCli("fmt --check " + tmp.path("messy.qs").string());
    EXPECT_EQ(again.exitCode, 0);
}

TEST(CliFmtTest, FmtIsIdempotent) {
    TempDir tmp;
    fs::copy_file(corpusPath("mixed_types.qs"), tmp.path("prog.qs"));
    RunResult once = runCli("fmt " + tmp.path("prog.qs").string());
    ASSERT_EQ(once.exitCode, 0);
    {
        std::ofstream out(tmp.path("prog.qs"), std::ios::binary | std::ios::trunc);
        out << once.output;
    }
    RunResult twice = runCli("fmt " + tmp.path("prog.qs").string());
    ASSERT_EQ(twice.exitCode, 0);
    EXPECT_EQ(once.output, twice.output);
}

TEST(CliFmtTest, ParseFailureExitsFour) {
    TempDir tmp;
    {
        std::ofstream out(tmp.path("bad.qs"));
        out << "operation F";
    }
    RunResult result = runCli("fmt " + tmp.path("bad.qs").string());
    EXPECT_EQ(result.exitCode, 4);
}

// ============================================================================
// limits plumbing
// ============================================================================

TEST(CliLimitsTest, MaxBranchesFlagForcesInconclusive) {
    RunResult result = runCli("check --max-branches 1 " + corpusPath("bell_pair.qs").string() +
                              " " + corpusPath("bell_pair.qs").string());
    EXPECT_EQ(result.exitCode, 5);
    EXPECT_NE(result.output.find("Inconclusive"), std::string::npos);
}

}  // namespace
}  // namespace qrt::testing
