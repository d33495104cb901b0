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

#include "qrt/consteval.hpp"
#include "qrt/sim/equivalence.hpp"
#include "qrt/sim/simulator.hpp"
#include "qrt/sim/state_vector.hpp"
#include "qrt/sim/unitary.hpp"

#include "brute_sim.hpp"
#include "corpus.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace qrt::sim {
namespace {

using qrt::testing::bruteForceDistribution;
using qrt::testing::parseCorpus;
using qrt::testing::parseSource;
using syntax::Program;

// ============================================================================
// StateVector
// ============================================================================

TEST(StateVectorTest, RegistryGatesAreUnitary) {
    for (const char* name : {"H", "X", "Y", "Z", "S", "T"}) {
        const Gate1& g = gateMatrix(name);
        // columns of U^dagger U
        Amplitude c00 = std::conj(g.m00) * g.m00 + std::conj(g.m10) * g.m10;
        Amplitude c01 = std::conj(g.m00) * g.m01 + std::conj(g.m10) * g.m11;
        Amplitude c10 = std::conj(g.m01) * g.m00 + std::conj(g.m11) * g.m10;
        Amplitude c11 = std::conj(g.m01) * g.m01 + std::conj(g.m11) * g.m11;
        EXPECT_NEAR(std::abs(c00 - 1.0), 0.0, kMatrixTolerance) << name;
        EXPECT_NEAR(std::abs(c01), 0.0, kMatrixTolerance) << name;
        EXPECT_NEAR(std::abs(c10), 0.0, kMatrixTolerance) << name;
        EXPECT_NEAR(std::abs(c11 - 1.0), 0.0, kMatrixTolerance) << name;
    }
}

TEST(StateVectorTest, BellState) {
    StateVector sv;
    sv.allocate(2);
    sv.apply1(0, gateMatrix("H"));
    sv.applyControlledX({0}, 1);
    const auto& amps = sv.amplitudes();
    double isq2 = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(amps[0] - isq2), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(amps[3] - isq2), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(amps[1]), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(amps[2]), 0.0, 1e-12);
    EXPECT_NEAR(sv.probOne(0), 0.5, 1e-12);
    EXPECT_NEAR(sv.probOne(1), 0.5, 1e-12);
}

TEST(StateVectorTest, CollapseRenormalizes) {
    StateVector sv;
    sv.allocate(2);
    sv.apply1(0, gateMatrix("H"));
    sv.applyControlledX({0}, 1);
    sv.collapse(0, true, 0.5);
    EXPECT_NEAR(sv.norm(), 1.0, kNormTolerance);
    EXPECT_NEAR(sv.probOne(1), 1.0, 1e-12);  // entangled partner follows
}

// ============================================================================
// run_distribution
// ============================================================================

TEST(RunDistributionTest, MessageOnly) {
    Program p = parseSource("namespace T { operation Main() : Unit { Message(\"hi\"); } }");
    auto dist = runDistribution(p, "Main");
    ASSERT_TRUE(dist.ok());
    ASSERT_EQ(dist->probabilities.size(), 1u);
    const auto& [trace, prob] = *dist->probabilities.begin();
    EXPECT_EQ(trace, std::vector<std::string>{"hi"});
    EXPECT_NEAR(prob, 1.0, kProbTolerance);
}

// Bell correlation, from the 4-amplitude hand computation: H then CNOT gives
// (|00> + |11>)/sqrt(2); both measurements agree, each branch at 1/2.
TEST(RunDistributionTest, HelloEntangledBellCorrelation) {
    Program p = parseCorpus("hello_entangled.qs");
    auto dist = runDistribution(p, "HelloWorld");
    ASSERT_TRUE(dist.ok());
    ASSERT_EQ(dist->probabilities.size(), 2u);

    std::vector<std::string> zeroTrace = {
        "Hello, quantum world!",
        "Measured qubit: Zero",
        "Measured ancilla: Zero",
        "Multiplied result: 0",
    };
    std::vector<std::string> oneTrace = {
        "Hello, quantum world!",
        "Measured qubit: One",
        "Measured ancilla: One",
        "Multiplied result: 2",
    };
    ASSERT_TRUE(dist->probabilities.count(zeroTrace));
    ASSERT_TRUE(dist->probabilities.count(oneTrace));
    EXPECT_NEAR(dist->probabilities.at(zeroTrace), 0.5, kProbTolerance);
    EXPECT_NEAR(dist->probabilities.at(oneTrace), 0.5, kProbTolerance);
    EXPECT_NEAR(dist->total(), 1.0, kProbTolerance);
}

TEST(RunDistributionTest, ReleaseWithoutMeasurementFails) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { H(q); } } }");
    auto dist = runDistribution(p, "Main");
    ASSERT_FALSE(dist.ok());
    EXPECT_EQ(dist.diagnostics.front().code, diag_code::ReleaseNonzero);
}

TEST(RunDistributionTest, MeasuredQubitReleases) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { H(q); let r = M(q); "
        "Message($\"{r}\"); } } }");
    auto dist = runDistribution(p, "Main");
    ASSERT_TRUE(dist.ok());
    EXPECT_EQ(dist->probabilities.size(), 2u);
    EXPECT_NEAR(dist->total(), 1.0, kProbTolerance);
}

TEST(RunDistributionTest, ResetAllowsRelease) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { H(q); Reset(q); } "
        "Message(\"done\"); } }");
    auto dist = runDistribution(p, "Main");
    ASSERT_TRUE(dist.ok());
    ASSERT_EQ(dist->probabilities.size(), 1u);
    EXPECT_NEAR(dist->total(), 1.0, kProbTolerance);
}

TEST(RunDistributionTest, DeterministicAcrossRuns) {
    Program p = parseCorpus("hello_entangled.qs");
    auto a = runDistribution(p, "HelloWorld");
    auto b = runDistribution(p, "HelloWorld");
    ASSERT_TRUE(a.ok());
    ASSERT_TRUE(b.ok());
    ASSERT_EQ(a->probabilities.size(), b->probabilities.size());
    auto ia = a->probabilities.begin();
    auto ib = b->probabilities.begin();
    for (; ia != a->probabilities.end(); ++ia, ++ib) {
        EXPECT_EQ(ia->first, ib->first);
        // bit-identical, not merely close
        EXPECT_EQ(ia->second, ib->second);
    }
}

TEST(RunDistributionTest, BranchLimit) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (qs = Qubit[3]) { "
        "ApplyToEach(H, qs); let rs = MultiM(qs); Message($\"{rs}\"); } } }");
    Limits limits;
    limits.maxBranches = 4;
    auto dist = runDistribution(p, "Main", limits);
    ASSERT_FALSE(dist.ok());
    EXPECT_EQ(dist.diagnostics.front().code, diag_code::Limit);
}

TEST(RunDistributionTest, QubitLimit) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (qs = Qubit[13]) { "
        "let rs = MultiM(qs); } } }");
    auto dist = runDistribution(p, "Main");
    ASSERT_FALSE(dist.ok());
    EXPECT_EQ(dist.diagnostics.front().code, diag_code::Limit);
}

TEST(RunDistributionTest, StepLimitOnRecursion) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { Loop(); } "
        "operation Loop() : Unit { Loop(); } }");
    auto dist = runDistribution(p, "Main");
    ASSERT_FALSE(dist.ok());
    EXPECT_EQ(dist.diagnostics.front().code, diag_code::Limit);
}

TEST(RunDistributionTest, IndexOutOfRange) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (qs = Qubit[2]) { "
        "let rs = MultiM(qs); Message($\"{rs[5]}\"); } } }");
    auto dist = runDistribution(p, "Main");
    ASSERT_FALSE(dist.ok());
    EXPECT_EQ(dist.diagnostics.front().code, diag_code::Runtime);
}

TEST(RunDistributionTest, JsonSerialization) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { H(q); let r = M(q); "
        "Message($\"{r}\"); } } }");
    auto dist = runDistribution(p, "Main");
    ASSERT_TRUE(dist.ok());
    std::string json = toJson(*dist);
    // lexicographically sorted by trace: One before Zero
    EXPECT_EQ(json.find("[{\"p\":0."), 0u) << json;
    size_t one = json.find("\"trace\":[\"One\"]");
    size_t zero = json.find("\"trace\":[\"Zero\"]");
    ASSERT_NE(one, std::string::npos) << json;
    ASSERT_NE(zero, std::string::npos) << json;
    EXPECT_LT(one, zero);
}

// ============================================================================
// unitary_of
// ============================================================================

TEST(UnitaryTest, HadamardMatrix) {
    Program p = parseSource("namespace T { operation G(q : Qubit) : Unit { H(q); } }");
    auto u = unitaryOf(p, "G", 1);
    ASSERT_TRUE(u.ok());
    double isq2 = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(u->at(0, 0) - isq2), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(u->at(0, 1) - isq2), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(u->at(1, 0) - isq2), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(u->at(1, 1) + isq2), 0.0, 1e-12);
}

TEST(UnitaryTest, DoubleHadamardIsIdentity) {
    Program p = parseSource("namespace T { operation G(q : Qubit) : Unit { H(q); H(q); } }");
    auto u = unitaryOf(p, "G", 1);
    ASSERT_TRUE(u.ok());
    EXPECT_TRUE(equalUpToGlobalPhase(*u, Matrix::identity(2), kMatrixTolerance));
    // and exactly, entrywise
    EXPECT_NEAR(std::abs(u->at(0, 0) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(u->at(1, 1) - 1.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(u->at(0, 1)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(u->at(1, 0)), 0.0, 1e-12);
}

// CNOT truth table: |a b> -> |a, b xor a>; with wire 0 the LSB this swaps
// basis states 1 <-> 3 (|10> and |11> in (a,b) notation).
TEST(UnitaryTest, CnotPermutation) {
    Program p = parseSource(
        "namespace T { operation G(a : Qubit, b : Qubit) : Unit { CNOT(a, b); } }");
    auto u = unitaryOf(p, "G", 2);
    ASSERT_TRUE(u.ok());
    auto expectOne = [&](int r, int c) {
        EXPECT_NEAR(std::abs(u->at(r, c) - 1.0), 0.0, 1e-12) << r << "," << c;
    };
    expectOne(0, 0);
    expectOne(2, 2);
    expectOne(3, 1);
    expectOne(1, 3);
}

TEST(UnitaryTest, MeasurementRejected) {
    Program p = parseSource(
        "namespace T { operation G(q : Qubit) : Unit { let r = M(q); } }");
    auto u = unitaryOf(p, "G", 1);
    ASSERT_FALSE(u.ok());
    EXPECT_EQ(u.diagnostics.front().code, diag_code::Precondition);
}

TEST(UnitaryTest, IsUnitaryCheck) {
    Matrix notUnitary = Matrix::identity(2);
    notUnitary.at(0, 0) = 2.0;
    EXPECT_FALSE(isUnitary(notUnitary));
    EXPECT_TRUE(isUnitary(Matrix::identity(4)));
}

// ============================================================================
// check_equivalence
// ============================================================================

TEST(EquivalenceTest, SplitDemoBeforeAfter) {
    Program before = parseCorpus("split_demo_before.qs");
    Program after = parseCorpus("split_demo_after.qs");
    EquivalenceVerdict v = checkEquivalence(before, after, "Main");
    EXPECT_TRUE(v.equivalent()) << describe(v);
}

TEST(EquivalenceTest, Reflexive) {
    for (const auto& name : {"hello_entangled.qs", "split_demo_before.qs"}) {
        Program p = parseCorpus(name);
        std::string entry = qrt::testing::defaultEntry(p);
        ASSERT_FALSE(entry.empty());
        EquivalenceVerdict v = checkEquivalence(p, p, entry);
        EXPECT_TRUE(v.equivalent()) << name << ": " << describe(v);
    }
}

// 1-qubit hand simulation: with the X the measurement reads One, without it
// Zero.
TEST(EquivalenceTest, DetectsInequivalence) {
    Program withX = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { X(q); let r = M(q); "
        "Message($\"{r}\"); } } }");
    Program withoutX = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { let r = M(q); "
        "Message($\"{r}\"); } } }");
    EquivalenceVerdict v = checkEquivalence(withX, withoutX, "Main");
    ASSERT_EQ(v.kind, EquivalenceVerdict::Kind::Inequivalent);
    EXPECT_EQ(v.witnessTrace, std::vector<std::string>{"One"});
    EXPECT_NEAR(v.probA, 1.0, kProbTolerance);
    EXPECT_NEAR(v.probB, 0.0, kProbTolerance);
}

TEST(EquivalenceTest, ProbabilityShiftDetected) {
    Program fair = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { H(q); let r = M(q); "
        "Message($\"{r}\"); } } }");
    Program biased = parseSource(
        "namespace T { operation Main() : Unit { using (q = Qubit()) { let r = M(q); "
        "Message($\"{r}\"); } } }");
    EquivalenceVerdict v = checkEquivalence(fair, biased, "Main");
    EXPECT_EQ(v.kind, EquivalenceVerdict::Kind::Inequivalent);
}

TEST(EquivalenceTest, UnitaryRouteUpToGlobalPhase) {
    // Z versus HXH: equal up to a global phase of 1 (exactly equal), and
    // X versus Z must differ
    Program z = parseSource("namespace T { operation G(q : Qubit) : Unit { Z(q); } }");
    Program hxh = parseSource(
        "namespace T { operation G(q : Qubit) : Unit { H(q); X(q); H(q); } }");
    EXPECT_TRUE(checkEquivalence(z, hxh, "G").equivalent());

    Program x = parseSource("namespace T { operation G(q : Qubit) : Unit { X(q); } }");
    EXPECT_EQ(checkEquivalence(z, x, "G").kind, EquivalenceVerdict::Kind::Inequivalent);
}

TEST(EquivalenceTest, EntryRenamedAcrossSides) {
    Program a = parseSource("namespace T { operation Main() : Unit { Message(\"x\"); } }");
    Program b = parseSource("namespace T { operation Start() : Unit { Message(\"x\"); } }");
    EXPECT_TRUE(checkEquivalence(a, "Main", b, "Start", {}).equivalent());
}

TEST(EquivalenceTest, InconclusiveOnLimits) {
    Program p = parseSource(
        "namespace T { operation Main() : Unit { using (qs = Qubit[4]) { "
        "ApplyToEach(H, qs); let rs = MultiM(qs); Message($\"{rs}\"); } } }");
    Limits limits;
    limits.maxBranches = 2;
    EquivalenceVerdict v = checkEquivalence(p, p, "Main", limits);
    EXPECT_EQ(v.kind, EquivalenceVerdict::Kind::Inconclusive);
}

// ============================================================================
// Brute-force oracle cross-check
// ============================================================================

// Small-instance oracle: the production simulator must match an independent
// full-matrix path enumerator on every corpus program with <= 3 qubits.
TEST(OracleTest, CorpusDistributionsMatchBruteForce) {
    int compared = 0;
    for (const auto& name : qrt::testing::corpusFileNames()) {
        Program p = parseCorpus(name);
        std::string entry = qrt::testing::defaultEntry(p);
        if (entry.empty()) continue;
        Limits limits;
        auto dist = runDistribution(p, entry, limits);
        if (!dist.ok()) continue;  // limit-bound programs are not oracle targets

        // count peak qubits by scanning using statements conservatively
        bool small = true;
        for (const auto& ns : p.namespaces)
            for (const auto& c : ns.callables)
                syntax::forEachStmt(c.body, [&](const syntax::Stmt& s) {
                    if (const auto* use = s.as<syntax::UsingStmt>()) {
                        if (!use->count) return;
                        auto v = syntax::evalConstInt(*use->count);
                        if (!v || *v > 3) small = false;
                    }
                });
        if (!small || dist->probabilities.size() > 64) continue;

        auto brute = bruteForceDistribution(p, entry);
        ASSERT_EQ(dist->probabilities.size(), brute.probabilities.size()) << name;
        for (const auto& [trace, prob] : dist->probabilities) {
            ASSERT_TRUE(brute.probabilities.count(trace)) << name;
            EXPECT_NEAR(prob, brute.probabilities.at(trace), 1e-9) << name;
        }
        ++compared;
    }
    EXPECT_GE(compared, 3);
}

// Branch completeness: probabilities plus any pruned mass account for the
// whole distribution, and pruning stays negligible on the corpus.
TEST(OracleTest, BranchCompletenessOnCorpus) {
    for (const auto& name : qrt::testing::corpusFileNames()) {
        Program p = parseCorpus(name);
        std::string entry = qrt::testing::defaultEntry(p);
        if (entry.empty()) continue;
        auto dist = runDistribution(p, entry);
        if (!dist.ok()) continue;
        EXPECT_LE(dist->prunedMass, 1e-9) << name;
        EXPECT_NEAR(dist->total() + dist->prunedMass, 1.0, kProbTolerance) << name;
    }
}

TEST(OracleTest, BellAgainstBruteForce) {
    Program p = parseCorpus("hello_entangled.qs");
    auto fast = runDistribution(p, "HelloWorld");
    ASSERT_TRUE(fast.ok());
    auto brute = bruteForceDistribution(p, "HelloWorld");
    ASSERT_EQ(fast->probabilities.size(), brute.probabilities.size());
    for (const auto& [trace, prob] : fast->probabilities)
        EXPECT_NEAR(prob, brute.probabilities.at(trace), 1e-9);
}

}  // namespace
}  // namespace qrt::sim
