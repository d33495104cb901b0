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

#include "qrt/refactor/engine.hpp"
#include "qrt/refactor/gate_rules.hpp"
#include "qrt/sim/equivalence.hpp"
#include "qrt/sim/rule_check.hpp"

#include "qrt/parser.hpp"
#include "qrt/printer.hpp"

#include "corpus.hpp"

#include <gtest/gtest.h>

namespace qrt::refactor {
namespace {

using qrt::testing::defaultEntry;
using qrt::testing::parseCorpus;
using qrt::testing::parseSource;
using syntax::Program;

RefactoringRequest makeRequest(RefactoringKind kind, const std::string& targetText,
                               std::map<std::string, std::string> args = {}) {
    RefactoringRequest request;
    request.kind = kind;
    auto target = parseTarget(targetText);
    EXPECT_TRUE(target.has_value()) << targetText;
    if (target) request.target = *target;
    request.args = std::move(args);
    return request;
}

RefactoringRequest withSymbol(RefactoringRequest request, const std::string& symbol) {
    request.target.symbolName = symbol;
    return request;
}

void expectPrecondition(const Program& input, const EditResult& result) {
    ASSERT_FALSE(result.ok());
    EXPECT_EQ(result.diagnostics.front().code, diag_code::Precondition);
    // failure atomicity
    EXPECT_TRUE(astEqual(input, result.program));
}

void expectEquivalent(const Program& before, const EditResult& result,
                      const std::string& entry) {
    ASSERT_TRUE(result.ok()) << (result.diagnostics.empty()
                                     ? "no diagnostics"
                                     : result.diagnostics.front().message);
    auto verdict = sim::checkEquivalence(before, result.program, entry);
    EXPECT_TRUE(verdict.equivalent()) << describe(verdict) << "\n"
                                      << syntax::print(result.program);
}

// ============================================================================
// rename
// ============================================================================

TEST(RenameTest, HelloEntangledRename) {
    Program p = parseCorpus("hello_entangled.qs");
    auto request = withSymbol(makeRequest(RefactoringKind::Rename, "MyNamespace.HelloWorld",
                                          {{"name", "outcome"}}),
                              "result");
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("let outcome = M(qubit);"), std::string::npos);
    EXPECT_NE(printed.find("Measured qubit: {outcome}"), std::string::npos);
    EXPECT_NE(printed.find("ResultArrayAsInt([outcome])"), std::string::npos);
    EXPECT_EQ(printed.find("{result}"), std::string::npos);
    expectEquivalent(p, result, "HelloWorld");
}

TEST(RenameTest, RenameToSameNameIsNoop) {
    Program p = parseCorpus("hello_entangled.qs");
    auto request = withSymbol(
        makeRequest(RefactoringKind::Rename, "MyNamespace.HelloWorld", {{"name", "result"}}),
        "result");
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok());
    EXPECT_TRUE(astEqual(p, result.program));
}

TEST(RenameTest, CollisionRejected) {
    Program p = parseCorpus("hello_entangled.qs");
    auto request = withSymbol(makeRequest(RefactoringKind::Rename, "MyNamespace.HelloWorld",
                                          {{"name", "entanglementResult"}}),
                              "result");
    expectPrecondition(p, apply(p, request));
}

TEST(RenameTest, BuiltinNameRejected) {
    Program p = parseCorpus("hello_entangled.qs");
    auto request = withSymbol(
        makeRequest(RefactoringKind::Rename, "MyNamespace.HelloWorld", {{"name", "H"}}), "result");
    expectPrecondition(p, apply(p, request));
}

TEST(RenameTest, CallableRenameUpdatesCallSites) {
    Program p = parseCorpus("split_demo_before.qs");
    auto request = makeRequest(RefactoringKind::Rename,
                               "MyNamespace.PerformQuantumSimulation", {{"name", "RunSim"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok());
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("operation RunSim("), std::string::npos);
    EXPECT_NE(printed.find("RunSim(qubits, 5);"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(RenameTest, CaptureByInnerDeclarationRejected) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { let a = 1; using (q = Qubit()) { let b = 2; "
        "Message($\"{a} {b}\"); let r = M(q); } } }");
    auto request =
        withSymbol(makeRequest(RefactoringKind::Rename, "T.Main", {{"name", "b"}}), "a");
    expectPrecondition(p, apply(p, request));
}

TEST(RenameTest, RoundTripRename) {
    Program p = parseCorpus("hello_entangled.qs");
    auto there = withSymbol(
        makeRequest(RefactoringKind::Rename, "MyNamespace.HelloWorld", {{"name", "outcome"}}),
        "result");
    EditResult first = apply(p, there);
    ASSERT_TRUE(first.ok());
    auto back = withSymbol(makeRequest(RefactoringKind::Rename, "MyNamespace.HelloWorld",
                                       {{"name", "result"}}),
                           "outcome");
    EditResult second = apply(first.program, back);
    ASSERT_TRUE(second.ok());
    EXPECT_TRUE(astEqual(p, second.program));
}

// ============================================================================
// change-signature
// ============================================================================

TEST(ChangeSignatureTest, AddThreadsDefaultThroughCallSites) {
    Program p = parseCorpus("split_demo_before.qs");
    auto request = makeRequest(
        RefactoringKind::ChangeSignature, "MyNamespace.PerformQuantumSimulation",
        {{"mode", "add"}, {"name", "shots"}, {"type", "Int"}, {"default", "1"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("iterations : Int, shots : Int"), std::string::npos) << printed;
    EXPECT_NE(printed.find("PerformQuantumSimulation(qubits, 5, 1);"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(ChangeSignatureTest, IdentityReorderIsNoop) {
    Program p = parseCorpus("split_demo_before.qs");
    auto request = makeRequest(RefactoringKind::ChangeSignature,
                               "MyNamespace.PerformQuantumSimulation",
                               {{"mode", "reorder"}, {"permutation", "0,1"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok());
    EXPECT_TRUE(astEqual(p, result.program));
}

TEST(ChangeSignatureTest, ReorderSwapsDeclarationAndCalls) {
    Program p = parseCorpus("split_demo_before.qs");
    auto request = makeRequest(RefactoringKind::ChangeSignature,
                               "MyNamespace.PerformQuantumSimulation",
                               {{"mode", "reorder"}, {"permutation", "1,0"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("PerformQuantumSimulation(iterations : Int, qubits : Qubit[])"),
              std::string::npos)
        << printed;
    EXPECT_NE(printed.find("PerformQuantumSimulation(5, qubits);"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(ChangeSignatureTest, RemoveUsedParameterRejected) {
    Program p = parseCorpus("split_demo_before.qs");
    auto request =
        makeRequest(RefactoringKind::ChangeSignature, "MyNamespace.PerformQuantumSimulation",
                    {{"mode", "remove"}, {"name", "iterations"}});
    expectPrecondition(p, apply(p, request));
}

TEST(ChangeSignatureTest, RemoveUnusedParameter) {
    Program p = parseSource(
        "namespace T { operation F(q : Qubit, junk : Int) : Unit { H(q); let r = M(q); "
        "Message($\"{r}\"); } "
        "operation Main() : Unit { using (q = Qubit()) { F(q, 42); } } }");
    auto request = makeRequest(RefactoringKind::ChangeSignature, "T.F",
                               {{"mode", "remove"}, {"name", "junk"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok());
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("F(q);"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(ChangeSignatureTest, NotAPermutationRejected) {
    Program p = parseCorpus("split_demo_before.qs");
    auto request = makeRequest(RefactoringKind::ChangeSignature,
                               "MyNamespace.PerformQuantumSimulation",
                               {{"mode", "reorder"}, {"permutation", "0,0"}});
    expectPrecondition(p, apply(p, request));
}

// ============================================================================
// extract
// ============================================================================

TEST(ExtractOperationTest, MeasurementWithLiveOut) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { H(q); let r = M(q); "
        "Message($\"{r}\"); } } }");
    // extract `let r = M(q);` (path 0.1): r is used afterwards, so the new
    // operation returns Result and the call rebinds it
    auto request = makeRequest(RefactoringKind::ExtractOperation, "T.Main:0.1..0.1",
                               {{"name", "MeasureIt"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("operation MeasureIt(q : Qubit) : Result {"), std::string::npos)
        << printed;
    EXPECT_NE(printed.find("let r = MeasureIt(q);"), std::string::npos);
    EXPECT_NE(printed.find("return r;"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(ExtractOperationTest, RangeWithReturnRejected) {
    Program p = parseCorpus("hello_entangled.qs");
    auto request = makeRequest(RefactoringKind::ExtractOperation,
                               "MyNamespace.MultiplyByTwo:0..0", {{"name", "Inner"}});
    expectPrecondition(p, apply(p, request));
}

TEST(ExtractOperationTest, TwoLiveOutsRejected) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { let a = 1; let b = 2; "
        "Message($\"{a} {b}\"); } }");
    auto request =
        makeRequest(RefactoringKind::ExtractOperation, "T.Main:0..1", {{"name", "MakeBoth"}});
    expectPrecondition(p, apply(p, request));
}

TEST(ExtractFunctionTest, ClassicalRangeBecomesFunction) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (qs = Qubit[2]) { "
        "let ms = MultiM(qs); let value = ResultArrayAsInt(ms); Message($\"v={value}\"); } } }");
    auto request = makeRequest(RefactoringKind::ExtractFunctionFromOperation, "T.Main:0.1..0.2",
                               {{"name", "Describe"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("function Describe(ms : Result[]) : Unit {"), std::string::npos)
        << printed;
    expectEquivalent(p, result, "Main");
}

TEST(ExtractFunctionTest, QuantumRangeRejected) {
    Program p = parseCorpus("split_demo_before.qs");
    auto request =
        makeRequest(RefactoringKind::ExtractFunctionFromOperation,
                    "MyNamespace.PerformQuantumSimulation:0.0..0.1", {{"name", "Gates"}});
    expectPrecondition(p, apply(p, request));
}

// ============================================================================
// extract-namespace
// ============================================================================

TEST(ExtractNamespaceTest, MoveFunctionAddsOpen) {
    Program p = parseCorpus("hello_entangled.qs");
    auto request =
        makeRequest(RefactoringKind::ExtractNamespace, "MyNamespace",
                    {{"namespace", "MyNamespace.Math"}, {"callables", "MultiplyByTwo"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("open MyNamespace.Math;"), std::string::npos) << printed;
    EXPECT_NE(printed.find("namespace MyNamespace.Math {"), std::string::npos);
    expectEquivalent(p, result, "HelloWorld");
}

TEST(ExtractNamespaceTest, ExistingNamespaceRejected) {
    Program p = parseCorpus("hello_entangled.qs");
    auto request = makeRequest(RefactoringKind::ExtractNamespace, "MyNamespace",
                               {{"namespace", "MyNamespace"}, {"callables", "MultiplyByTwo"}});
    expectPrecondition(p, apply(p, request));
}

TEST(ExtractNamespaceTest, MovingMainIsAllowed) {
    Program p = parseCorpus("split_demo_before.qs");
    auto request = makeRequest(RefactoringKind::ExtractNamespace, "MyNamespace",
                               {{"namespace", "Drivers"}, {"callables", "Main"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    // entry-point discovery follows the move
    auto verdict = sim::checkEquivalence(p, result.program, "Main");
    EXPECT_TRUE(verdict.equivalent()) << describe(verdict);
}

// ============================================================================
// inline
// ============================================================================

TEST(InlineTest, MultiplyByTwoHelper) {
    Program p = parseCorpus("hello_entangled.qs");
    auto request = makeRequest(RefactoringKind::InlineCallable, "MyNamespace.MultiplyByTwo");
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    // complex argument is bound to a fresh local, then the body substitutes
    EXPECT_NE(printed.find("let x_1 = ResultArrayAsInt([result]);"), std::string::npos)
        << printed;
    EXPECT_NE(printed.find("let multipliedResult = 2 * x_1;"), std::string::npos);
    EXPECT_EQ(printed.find("function MultiplyByTwo"), std::string::npos);  // removed
    expectEquivalent(p, result, "HelloWorld");
}

TEST(InlineTest, EmptyBodyCallDeleted) {
    Program p = parseSource(
        "namespace T { operation Nothing() : Unit { } "
        "operation Main() : Unit { Message(\"a\"); Nothing(); Message(\"b\"); } }");
    auto request = makeRequest(RefactoringKind::InlineCallable, "T.Nothing");
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok());
    std::string printed = syntax::print(result.program);
    EXPECT_EQ(printed.find("Nothing"), std::string::npos) << printed;
    expectEquivalent(p, result, "Main");
}

TEST(InlineTest, RecursionRejected) {
    Program p = parseSource(
        "namespace T { operation Loop() : Unit { Loop(); } "
        "operation Main() : Unit { Loop(); } }");
    auto request = makeRequest(RefactoringKind::InlineCallable, "T.Loop");
    expectPrecondition(p, apply(p, request));
}

TEST(InlineTest, SingleSiteByPath) {
    Program p = parseSource(
        "namespace T { operation Flip(q : Qubit) : Unit { X(q); } "
        "operation Main() : Unit { using (q = Qubit()) { Flip(q); Flip(q); let r = M(q); "
        "Message($\"{r}\"); } } }");
    auto request = makeRequest(RefactoringKind::InlineCallable, "T.Main:0.0");
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    // one site inlined, the other and the declaration remain
    EXPECT_NE(printed.find("X(q);"), std::string::npos);
    EXPECT_NE(printed.find("Flip(q);"), std::string::npos);
    EXPECT_NE(printed.find("operation Flip"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

// ============================================================================
// split-operation (the golden fixture pair)
// ============================================================================

TEST(SplitOperationTest, GoldenFixturePair) {
    Program before = parseCorpus("split_demo_before.qs");
    Program after = parseCorpus("split_demo_after.qs");
    auto request = makeRequest(
        RefactoringKind::SplitOperation, "MyNamespace.PerformQuantumSimulation",
        {{"split",
          "0.0..0.3:PerformQuantumOperations,0.4..0.6:MeasureAndDisplayResult"}});
    EditResult result = apply(before, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    EXPECT_TRUE(astEqual(result.program, after)) << syntax::print(result.program);
    auto verdict = sim::checkEquivalence(before, result.program, "Main");
    EXPECT_TRUE(verdict.equivalent()) << describe(verdict);
}

TEST(SplitOperationTest, WholeBodyBecomesDelegatingCall) {
    Program p = parseSource(
        "namespace T { operation Work(q : Qubit) : Unit { H(q); X(q); } "
        "operation Main() : Unit { using (q = Qubit()) { Work(q); Reset(q); } } }");
    auto request = makeRequest(RefactoringKind::SplitOperation, "T.Work",
                               {{"split", "0..1:Inner"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("operation Work(q : Qubit) : Unit {\n        Inner(q);\n    }"),
              std::string::npos)
        << printed;
    expectEquivalent(p, result, "Main");
}

TEST(SplitOperationTest, OverlappingRangesRejected) {
    Program p = parseCorpus("split_demo_before.qs");
    auto request = makeRequest(RefactoringKind::SplitOperation,
                               "MyNamespace.PerformQuantumSimulation",
                               {{"split", "0.0..0.3:A,0.2..0.6:B"}});
    expectPrecondition(p, apply(p, request));
}

// ============================================================================
// merge / parameterize / specialize
// ============================================================================

TEST(MergeOperationsTest, IdenticalBodies) {
    Program p = parseSource(
        "namespace T { "
        "operation ApplyBell1(a : Qubit, b : Qubit) : Unit { H(a); CNOT(a, b); } "
        "operation ApplyBell2(a : Qubit, b : Qubit) : Unit { H(a); CNOT(a, b); } "
        "operation Main() : Unit { using (qs = Qubit[2]) { ApplyBell1(qs[0], qs[1]); "
        "let rs = MultiM(qs); Message($\"{rs}\"); ApplyBell2(qs[0], qs[1]); "
        "let ss = MultiM(qs); Message($\"{ss}\"); } } }");
    auto request = makeRequest(RefactoringKind::MergeOperations, "T.ApplyBell1",
                               {{"other", "ApplyBell2"}, {"name", "ApplyBell"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_EQ(printed.find("ApplyBell1"), std::string::npos);
    EXPECT_EQ(printed.find("ApplyBell2"), std::string::npos);
    EXPECT_NE(printed.find("operation ApplyBell("), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(MergeOperationsTest, DifferentAritiesRejected) {
    Program p = parseSource(
        "namespace T { operation A(q : Qubit) : Unit { H(q); } "
        "operation B(q : Qubit, x : Int) : Unit { H(q); } "
        "operation Main() : Unit { using (q = Qubit()) { A(q); B(q, 1); Reset(q); } } }");
    auto request = makeRequest(RefactoringKind::MergeOperations, "T.A",
                               {{"other", "B"}, {"name", "AB"}});
    expectPrecondition(p, apply(p, request));
}

TEST(MergeOperationsTest, OneLiteralDifferenceDelegates) {
    Program p = parseSource(
        "namespace T { "
        "operation Spin3(q : Qubit) : Unit { for (i in 1..3) { X(q); } } "
        "operation Spin5(q : Qubit) : Unit { for (i in 1..5) { X(q); } } "
        "operation Main() : Unit { using (q = Qubit()) { Spin3(q); Spin5(q); "
        "let r = M(q); Message($\"{r}\"); } } }");
    auto request = makeRequest(RefactoringKind::MergeOperations, "T.Spin3",
                               {{"other", "Spin5"}, {"name", "Spin"}, {"param", "turns"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("operation Spin(q : Qubit, turns : Int)"), std::string::npos)
        << printed;
    EXPECT_NE(printed.find("Spin(q, 3);"), std::string::npos);
    EXPECT_NE(printed.find("Spin(q, 5);"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(ParameterizeTest, RepeatX3AndX5) {
    Program p = parseSource(
        "namespace T { "
        "operation RepeatX3(q : Qubit) : Unit { for (i in 1..3) { X(q); } } "
        "operation RepeatX5(q : Qubit) : Unit { for (i in 1..5) { X(q); } } "
        "operation Main() : Unit { using (q = Qubit()) { RepeatX3(q); RepeatX5(q); "
        "let r = M(q); Message($\"{r}\"); } } }");
    auto request = makeRequest(RefactoringKind::ParameterizeOperation, "T.RepeatX3",
                               {{"param", "n"}, {"others", "RepeatX5"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("for (i in 1..n)"), std::string::npos) << printed;
    EXPECT_NE(printed.find("RepeatX3(q, 3);"), std::string::npos);
    EXPECT_NE(printed.find("RepeatX3(q, 5);"), std::string::npos);
    EXPECT_EQ(printed.find("RepeatX5"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(ParameterizeTest, SingleTargetAbstractsFirstLiteral) {
    Program p = parseSource(
        "namespace T { operation Spin(q : Qubit) : Unit { for (i in 1..3) { X(q); } } "
        "operation Main() : Unit { using (q = Qubit()) { Spin(q); let r = M(q); "
        "Message($\"{r}\"); } } }");
    auto request = makeRequest(RefactoringKind::ParameterizeOperation, "T.Spin",
                               {{"param", "lo"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("for (i in lo..3)"), std::string::npos) << printed;
    EXPECT_NE(printed.find("Spin(q, 1);"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(ParameterizeTest, GateDifferenceRejected) {
    Program p = parseSource(
        "namespace T { operation A(q : Qubit) : Unit { H(q); } "
        "operation B(q : Qubit) : Unit { X(q); } "
        "operation Main() : Unit { using (q = Qubit()) { A(q); B(q); Reset(q); } } }");
    auto request = makeRequest(RefactoringKind::ParameterizeOperation, "T.A",
                               {{"param", "v"}, {"others", "B"}});
    expectPrecondition(p, apply(p, request));
}

TEST(SpecializeTest, SimulationIterationCount) {
    Program p = parseCorpus("split_demo_before.qs");
    auto request = makeRequest(RefactoringKind::SpecializeOperation, "MyNamespace.Main:0.0",
                               {{"name", "PerformQuantumSimulation_5"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("operation PerformQuantumSimulation_5(qubits : Qubit[]) : Unit"),
              std::string::npos)
        << printed;
    EXPECT_NE(printed.find("for (i in 1..5)"), std::string::npos);
    EXPECT_NE(printed.find("PerformQuantumSimulation_5(qubits);"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(SpecializeTest, VariableArgumentRejected) {
    Program p = parseSource(
        "namespace T { operation F(q : Qubit, n : Int) : Unit { for (i in 1..n) { X(q); } } "
        "operation Main() : Unit { using (q = Qubit()) { let n = 2; F(q, n); Reset(q); } } }");
    auto request =
        makeRequest(RefactoringKind::SpecializeOperation, "T.Main:0.1", {{"name", "F_n"}});
    expectPrecondition(p, apply(p, request));
}

TEST(SpecializeTest, ConstantConditionFolds) {
    Program p = parseSource(
        "namespace T { operation F(q : Qubit, fancy : Bool) : Unit { "
        "if (fancy) { H(q); } else { X(q); } } "
        "operation Main() : Unit { using (q = Qubit()) { F(q, true); let r = M(q); "
        "Message($\"{r}\"); } } }");
    auto request =
        makeRequest(RefactoringKind::SpecializeOperation, "T.Main:0.0", {{"name", "F_true"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("operation F_true(q : Qubit) : Unit {\n        H(q);\n    }"),
              std::string::npos)
        << printed;
    expectEquivalent(p, result, "Main");
}

// ============================================================================
// gate rules, merge-gates, replace-gate
// ============================================================================

TEST(GateRuleTest, TableVerifiesAgainstMatrixOracle) {
    for (const auto& rule : gateRuleTable())
        EXPECT_TRUE(sim::matrixRuleCheck(rule)) << rule.name;
    EXPECT_TRUE(sim::verifyGateRuleTable());
}

TEST(GateRuleTest, CorruptedRuleFails) {
    GateRule corrupted{"hx-bogus", GateRule::Kind::Reduction,
                       {{"H", {0}}, {"X", {0}}}, {}, 1};
    EXPECT_FALSE(sim::matrixRuleCheck(corrupted));
}

TEST(MergeGatesTest, SelfInverseCancels) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { H(q); H(q); "
        "let r = M(q); Message($\"{r}\"); } } }");
    auto request = makeRequest(RefactoringKind::MergeGates, "T.Main");
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok());
    std::string printed = syntax::print(result.program);
    EXPECT_EQ(printed.find("H(q);"), std::string::npos) << printed;
    expectEquivalent(p, result, "Main");
}

TEST(MergeGatesTest, SSBecomesZ) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { H(q); S(q); S(q); H(q); "
        "let r = M(q); Message($\"{r}\"); } } }");
    auto request = makeRequest(RefactoringKind::MergeGates, "T.Main");
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok());
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("Z(q);"), std::string::npos) << printed;
    EXPECT_EQ(printed.find("S(q);"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(MergeGatesTest, InterveningUnrelatedStatementDoesNotBlock) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (qs = Qubit[2]) { "
        "H(qs[0]); X(qs[1]); H(qs[0]); let rs = MultiM(qs); Message($\"{rs}\"); } } }");
    auto request = makeRequest(RefactoringKind::MergeGates, "T.Main");
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok());
    std::string printed = syntax::print(result.program);
    EXPECT_EQ(printed.find("H(qs[0]);"), std::string::npos) << printed;
    EXPECT_NE(printed.find("X(qs[1]);"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(MergeGatesTest, InterveningTouchBlocks) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { "
        "H(q); X(q); H(q); let r = M(q); Message($\"{r}\"); } } }");
    auto request = makeRequest(RefactoringKind::MergeGates, "T.Main");
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok());
    std::string printed = syntax::print(result.program);
    // HXH stays: X touches q between the H's and no HH pair is adjacent
    EXPECT_NE(printed.find("H(q);"), std::string::npos);
    EXPECT_NE(printed.find("X(q);"), std::string::npos);
    EXPECT_TRUE(astEqual(p, result.program));
}

TEST(MergeGatesTest, CnotPairCancels) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (qs = Qubit[2]) { "
        "CNOT(qs[0], qs[1]); CNOT(qs[0], qs[1]); let rs = MultiM(qs); Message($\"{rs}\"); } } }");
    auto request = makeRequest(RefactoringKind::MergeGates, "T.Main");
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok());
    EXPECT_EQ(syntax::print(result.program).find("CNOT"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(ReplaceGateTest, ZToHXH) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { H(q); Z(q); H(q); "
        "let r = M(q); Message($\"{r}\"); } } }");
    auto request = makeRequest(RefactoringKind::ReplaceGate, "T.Main:0.1",
                               {{"rule", "z-to-hxh"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_EQ(printed.find("Z(q);"), std::string::npos) << printed;
    expectEquivalent(p, result, "Main");
}

TEST(ReplaceGateTest, CnotToControlledX) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (qs = Qubit[2]) { "
        "H(qs[0]); CNOT(qs[0], qs[1]); let rs = MultiM(qs); Message($\"{rs}\"); } } }");
    auto request = makeRequest(RefactoringKind::ReplaceGate, "T.Main:0.1",
                               {{"rule", "cnot-to-controlled-x"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("Controlled X([qs[0]], qs[1]);"), std::string::npos) << printed;
    expectEquivalent(p, result, "Main");
}

TEST(ReplaceGateTest, RuleTargetMismatchRejected) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { X(q); Reset(q); } } }");
    auto request = makeRequest(RefactoringKind::ReplaceGate, "T.Main:0.0",
                               {{"rule", "z-to-hxh"}});
    expectPrecondition(p, apply(p, request));
}

// ============================================================================
// reorder-instructions / order-qubits
// ============================================================================

TEST(ReorderTest, IndependentStatementsSwap) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (qs = Qubit[2]) { "
        "H(qs[0]); X(qs[1]); let rs = MultiM(qs); Message($\"{rs}\"); } } }");
    auto request = makeRequest(RefactoringKind::ReorderInstructions, "T.Main:0.0",
                               {{"with", "0.1"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_LT(printed.find("X(qs[1]);"), printed.find("H(qs[0]);")) << printed;
    expectEquivalent(p, result, "Main");
}

TEST(ReorderTest, SharedQubitRejectedWithEdgeKind) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { H(q); let r = M(q); "
        "Message($\"{r}\"); } } }");
    auto request = makeRequest(RefactoringKind::ReorderInstructions, "T.Main:0.0",
                               {{"with", "0.1"}});
    EditResult result = apply(p, request);
    ASSERT_FALSE(result.ok());
    EXPECT_NE(result.diagnostics.front().message.find("qubit"), std::string::npos)
        << result.diagnostics.front().message;
    EXPECT_TRUE(astEqual(p, result.program));
}

TEST(ReorderTest, DefUseRejectedWithEdgeKind) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { let a = 1; Message($\"{a}\"); } }");
    auto request = makeRequest(RefactoringKind::ReorderInstructions, "T.Main:0",
                               {{"with", "1"}});
    EditResult result = apply(p, request);
    ASSERT_FALSE(result.ok());
    EXPECT_NE(result.diagnostics.front().message.find("data"), std::string::npos)
        << result.diagnostics.front().message;
}

TEST(OrderQubitsTest, WholeArrayUseNeedsNoRewrites) {
    Program p = parseCorpus("split_demo_before.qs");
    auto request = makeRequest(RefactoringKind::OrderQubits, "MyNamespace.Main:0",
                               {{"permutation", "1,0"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    EXPECT_TRUE(astEqual(p, result.program));
}

TEST(OrderQubitsTest, ConstantIndicesRelabeled) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (qs = Qubit[2]) { "
        "H(qs[0]); X(qs[1]); let r0 = M(qs[0]); let r1 = M(qs[1]); "
        "Message($\"{r0}{r1}\"); } } }");
    auto request =
        makeRequest(RefactoringKind::OrderQubits, "T.Main:0", {{"permutation", "1,0"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("H(qs[1]);"), std::string::npos) << printed;
    EXPECT_NE(printed.find("X(qs[0]);"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(OrderQubitsTest, DynamicIndexRejected) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (qs = Qubit[2]) { "
        "for (i in 0..1) { H(qs[i]); } let rs = MultiM(qs); Message($\"{rs}\"); } } }");
    auto request =
        makeRequest(RefactoringKind::OrderQubits, "T.Main:0", {{"permutation", "1,0"}});
    expectPrecondition(p, apply(p, request));
}

TEST(OrderQubitsTest, MixedIndexAndWholeUseRejected) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (qs = Qubit[2]) { "
        "X(qs[0]); let rs = MultiM(qs); Message($\"{rs}\"); } } }");
    auto request =
        makeRequest(RefactoringKind::OrderQubits, "T.Main:0", {{"permutation", "1,0"}});
    expectPrecondition(p, apply(p, request));
}

// ============================================================================
// consolidate-measurements
// ============================================================================

TEST(ConsolidateTest, HelloEntangledMeasurements) {
    Program p = parseCorpus("hello_entangled.qs");
    auto request = makeRequest(RefactoringKind::ConsolidateMeasurements,
                               "MyNamespace.HelloWorld:1.1.1..1.1.2", {{"name", "rs"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("let rs = MultiM([qubit, ancilla]);"), std::string::npos) << printed;
    EXPECT_NE(printed.find("let result = rs[0];"), std::string::npos);
    EXPECT_NE(printed.find("let entanglementResult = rs[1];"), std::string::npos);
    expectEquivalent(p, result, "HelloWorld");
}

TEST(ConsolidateTest, SingleStatementRejected) {
    Program p = parseCorpus("hello_entangled.qs");
    auto request = makeRequest(RefactoringKind::ConsolidateMeasurements,
                               "MyNamespace.HelloWorld:1.1.1..1.1.1", {{"name", "rs"}});
    expectPrecondition(p, apply(p, request));
}

TEST(ConsolidateTest, SameQubitTwiceRejected) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { H(q); "
        "let a = M(q); let b = M(q); Message($\"{a}{b}\"); } } }");
    auto request = makeRequest(RefactoringKind::ConsolidateMeasurements, "T.Main:0.1..0.2",
                               {{"name", "rs"}});
    expectPrecondition(p, apply(p, request));
}

// ============================================================================
// unroll-loop / roll-loop
// ============================================================================

TEST(UnrollTest, ConstantBounds) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { "
        "for (i in 1..3) { X(q); } let r = M(q); Message($\"{r}\"); } } }");
    auto request = makeRequest(RefactoringKind::UnrollLoop, "T.Main:0.0");
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_EQ(printed.find("for"), std::string::npos) << printed;
    size_t first = printed.find("X(q);");
    size_t second = printed.find("X(q);", first + 1);
    size_t third = printed.find("X(q);", second + 1);
    EXPECT_NE(third, std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(UnrollTest, LoopVariableSubstituted) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { for (i in 1..2) { Message($\"{i}\"); } } }");
    auto request = makeRequest(RefactoringKind::UnrollLoop, "T.Main:0");
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok());
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("Message($\"{1}\");"), std::string::npos) << printed;
    EXPECT_NE(printed.find("Message($\"{2}\");"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(UnrollTest, NonConstantBoundsRejected) {
    Program p = parseCorpus("split_demo_before.qs");
    auto request = makeRequest(RefactoringKind::UnrollLoop,
                               "MyNamespace.PerformQuantumSimulation:0");
    expectPrecondition(p, apply(p, request));
}

TEST(UnrollTest, LimitRespected) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { for (i in 1..100) { Message(\"x\"); } } }");
    auto request = makeRequest(RefactoringKind::UnrollLoop, "T.Main:0");
    expectPrecondition(p, apply(p, request));
}

TEST(RollTest, IdenticalStatements) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { "
        "X(q); X(q); X(q); let r = M(q); Message($\"{r}\"); } } }");
    auto request = makeRequest(RefactoringKind::RollLoop, "T.Main:0.0..0.2", {{"var", "i"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("for (i in 1..3) {"), std::string::npos) << printed;
    expectEquivalent(p, result, "Main");
}

TEST(RollTest, ArithmeticLiteralProgression) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { Message($\"{1}\"); Message($\"{2}\"); } }");
    auto request = makeRequest(RefactoringKind::RollLoop, "T.Main:0..1", {{"var", "i"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("for (i in 1..2) {"), std::string::npos) << printed;
    EXPECT_NE(printed.find("Message($\"{i}\");"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(RollTest, NonUniformRejected) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { H(q); X(q); "
        "let r = M(q); Message($\"{r}\"); } } }");
    auto request = makeRequest(RefactoringKind::RollLoop, "T.Main:0.0..0.1", {{"var", "i"}});
    expectPrecondition(p, apply(p, request));
}

TEST(RollTest, RollAfterUnrollIsEquivalent) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { "
        "for (k in 1..3) { X(q); } let r = M(q); Message($\"{r}\"); } } }");
    EditResult unrolled = apply(p, makeRequest(RefactoringKind::UnrollLoop, "T.Main:0.0"));
    ASSERT_TRUE(unrolled.ok());
    EditResult rolled = apply(unrolled.program, makeRequest(RefactoringKind::RollLoop,
                                                            "T.Main:0.0..0.2", {{"var", "k"}}));
    ASSERT_TRUE(rolled.ok()) << rolled.diagnostics.front().message;
    auto verdict = sim::checkEquivalence(p, rolled.program, "Main");
    EXPECT_TRUE(verdict.equivalent()) << describe(verdict);
}

// ============================================================================
// remove-unused
// ============================================================================

TEST(RemoveUnusedTest, PureUnusedVariableDeleted) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { let x = 1; Message(\"hi\"); } }");
    auto request = withSymbol(makeRequest(RefactoringKind::RemoveUnused, "T.Main"), "x");
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok());
    EXPECT_EQ(syntax::print(result.program).find("let x"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(RemoveUnusedTest, EffectfulInitializerDemoted) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (qs = Qubit[2]) { "
        "H(qs[0]); CNOT(qs[0], qs[1]); let r = M(qs[0]); let s = M(qs[1]); "
        "Message($\"{s}\"); } } }");
    auto request = withSymbol(makeRequest(RefactoringKind::RemoveUnused, "T.Main"), "r");
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_EQ(printed.find("let r ="), std::string::npos) << printed;
    EXPECT_NE(printed.find("M(qs[0]);"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(RemoveUnusedTest, UsedVariableRejected) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { let x = 1; Message($\"{x}\"); } }");
    auto request = withSymbol(makeRequest(RefactoringKind::RemoveUnused, "T.Main"), "x");
    expectPrecondition(p, apply(p, request));
}

TEST(RemoveUnusedTest, MainRejected) {
    Program p = parseSource("namespace T { operation Main() : Unit { Message(\"x\"); } }");
    auto request = makeRequest(RefactoringKind::RemoveUnused, "T.Main");
    expectPrecondition(p, apply(p, request));
}

TEST(RemoveUnusedTest, UncalledOperationRemoved) {
    Program p = parseSource(
        "namespace T { operation Orphan(q : Qubit) : Unit { H(q); } "
        "operation Main() : Unit { Message(\"x\"); } }");
    auto request = makeRequest(RefactoringKind::RemoveUnused, "T.Orphan");
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok());
    EXPECT_EQ(syntax::print(result.program).find("Orphan"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

// ============================================================================
// remove-code-duplication
// ============================================================================

TEST(RemoveDuplicationTest, ExactClones) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { "
        "H(q); X(q); Message(\"mid\"); H(q); X(q); let r = M(q); Message($\"{r}\"); } } }");
    auto request = makeRequest(RefactoringKind::RemoveCodeDuplication, "T.Main:0.0..0.1",
                               {{"name", "ApplyHX"}, {"other", "0.3..0.4"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("operation ApplyHX(q : Qubit) : Unit"), std::string::npos) << printed;
    size_t first = printed.find("ApplyHX(q);");
    size_t second = printed.find("ApplyHX(q);", first + 1);
    EXPECT_NE(second, std::string::npos) << printed;
    expectEquivalent(p, result, "Main");
}

TEST(RemoveDuplicationTest, RenameConsistentClones) {
    // the occurrences differ only in the local binding (a vs b) and the free
    // qubit binding (q0 vs q1)
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q0 = Qubit()) { using (q1 = Qubit()) { "
        "let a = M(q0); Message($\"{a}\"); let b = M(q1); Message($\"{b}\"); } } } }");
    auto request = makeRequest(RefactoringKind::RemoveCodeDuplication, "T.Main:0.0.0..0.0.1",
                               {{"name", "MeasureAndShow"}, {"other", "0.0.2..0.0.3"}});
    EditResult result = apply(p, request);
    ASSERT_TRUE(result.ok()) << result.diagnostics.front().message;
    std::string printed = syntax::print(result.program);
    EXPECT_NE(printed.find("MeasureAndShow(q0);"), std::string::npos) << printed;
    EXPECT_NE(printed.find("MeasureAndShow(q1);"), std::string::npos);
    expectEquivalent(p, result, "Main");
}

TEST(RemoveDuplicationTest, NonClonesRejected) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { "
        "H(q); X(q); Y(q); Z(q); let r = M(q); Message($\"{r}\"); } } }");
    auto request = makeRequest(RefactoringKind::RemoveCodeDuplication, "T.Main:0.0..0.1",
                               {{"name", "Pair"}, {"other", "0.2..0.3"}});
    expectPrecondition(p, apply(p, request));
}

// ============================================================================
// engine-level behavior
// ============================================================================

TEST(EngineTest, CatalogCoversAllRows) {
    std::set<std::string> rows;
    for (const auto& info : catalog())
        for (const auto& row : info.catalogRows) rows.insert(row);
    EXPECT_EQ(rows.size(), 25u);
    EXPECT_EQ(catalog().size(), 19u);
    // alphabetical order
    for (size_t i = 1; i < catalog().size(); ++i)
        EXPECT_LT(catalog()[i - 1].name, catalog()[i].name);
}

TEST(EngineTest, RequestFromJson) {
    auto parsed = requestFromJson(
        R"({"refactoring": "rename", "target": "MyNamespace.HelloWorld", "symbol": "result",
            "args": {"name": "outcome"}})");
    ASSERT_TRUE(parsed.ok());
    EXPECT_EQ(parsed->kind, RefactoringKind::Rename);
    EXPECT_EQ(parsed->target.qualifiedName, "MyNamespace.HelloWorld");
    EXPECT_EQ(parsed->target.symbolName, "result");
    EXPECT_EQ(parsed->args.at("name"), "outcome");
}

TEST(EngineTest, RequestFromJsonRejectsUnknown) {
    EXPECT_FALSE(requestFromJson(R"({"refactoring": "teleport"})").ok());
    EXPECT_FALSE(requestFromJson("not json").ok());
    EXPECT_FALSE(requestFromJson(R"({"refactoring": "rename"})").ok());  // missing args
}

TEST(EngineTest, TargetGrammar) {
    auto symbol = parseTarget("NS.Op");
    ASSERT_TRUE(symbol);
    EXPECT_EQ(symbol->qualifiedName, "NS.Op");
    EXPECT_FALSE(symbol->isRange());

    auto path = parseTarget("NS.Op:1.0");
    ASSERT_TRUE(path);
    EXPECT_TRUE(path->isRange());
    EXPECT_EQ(*path->pathLo, (analysis::StmtPath{1, 0}));

    auto range = parseTarget("NS.Op:0.1..0.3");
    ASSERT_TRUE(range);
    EXPECT_EQ(*range->pathLo, (analysis::StmtPath{0, 1}));
    EXPECT_EQ(*range->pathHi, (analysis::StmtPath{0, 3}));

    EXPECT_FALSE(parseTarget(":0").has_value());
    EXPECT_FALSE(parseTarget("NS.Op:").has_value());
}

TEST(EngineTest, UnresolvedInputFails) {
    auto parsed = syntax::parse("namespace T { operation F() : Unit { X(nope); } }");
    ASSERT_TRUE(parsed.ok());
    auto request = makeRequest(RefactoringKind::MergeGates, "T.F");
    EditResult result = apply(*parsed, request);
    ASSERT_FALSE(result.ok());
    EXPECT_EQ(result.diagnostics.front().code, diag_code::Unresolved);
}

}  // namespace
}  // namespace qrt::refactor
