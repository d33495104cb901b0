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

#include "qrt/analysis/pdg.hpp"
#include "qrt/analysis/symbols.hpp"
#include "qrt/parser.hpp"
#include "qrt/printer.hpp"
#include "qrt/refactor/engine.hpp"
#include "qrt/sim/equivalence.hpp"
#include "qrt/sim/simulator.hpp"

#include <benchmark/benchmark.h>

#include <sstream>
#include <string>

namespace {

// Representative workload: a gate loop plus measurement and reporting.
std::string sampleSource(int iterations) {
    std::ostringstream src;
    src << "namespace Bench {\n"
        << "    operation Work(qubits : Qubit[], iterations : Int) : Unit {\n"
        << "        for (i in 1..iterations) {\n"
        << "            ApplyToEach(H, qubits);\n"
        << "            Controlled X([qubits[0]], qubits[1]);\n"
        << "            Controlled X([qubits[1]], qubits[0]);\n"
        << "            ApplyToEach(H, qubits);\n"
        << "            let measurements = MultiM(qubits);\n"
        << "            let result = ResultArrayAsInt(measurements);\n"
        << "            Message($\"Iteration {i}: {result}\");\n"
        << "        }\n"
        << "    }\n"
        << "    operation Main() : Unit {\n"
        << "        using (qubits = Qubit[2]) {\n"
        << "            Work(qubits, " << iterations << ");\n"
        << "        }\n"
        << "    }\n"
        << "}\n";
    return src.str();
}

void Parse(benchmark::State& state) {
    std::string source = sampleSource(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto program = qrt::syntax::parse(source);
        benchmark::DoNotOptimize(program);
    }
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(source.size()));
}
BENCHMARK(Parse)->Arg(5)->Arg(50);

void PrintCanonical(benchmark::State& state) {
    auto program = qrt::syntax::parse(sampleSource(5));
    for (auto _ : state) {
        std::string text = qrt::syntax::print(*program);
        benchmark::DoNotOptimize(text);
    }
}
BENCHMARK(PrintCanonical);

void ResolveAndPdg(benchmark::State& state) {
    auto program = qrt::syntax::parse(sampleSource(5));
    for (auto _ : state) {
        auto symbols = qrt::analysis::resolve(*program);
        for (const auto& ns : program->namespaces)
            for (const auto& c : ns.callables) {
                auto pdg = qrt::analysis::buildPdg(*program, c, *symbols);
                benchmark::DoNotOptimize(pdg);
            }
    }
}
BENCHMARK(ResolveAndPdg);

void SimulateDistribution(benchmark::State& state) {
    auto program = qrt::syntax::parse(sampleSource(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        auto dist = qrt::sim::runDistribution(*program, "Main");
        benchmark::DoNotOptimize(dist);
    }
}
BENCHMARK(SimulateDistribution)->Arg(5)->Arg(20);

void ApplyAndVerifySplit(benchmark::State& state) {
    auto program = qrt::syntax::parse(sampleSource(5));
    qrt::refactor::RefactoringRequest request;
    request.kind = qrt::refactor::RefactoringKind::SplitOperation;
    request.target = *qrt::refactor::parseTarget("Bench.Work");
    request.args["split"] = "0.0..0.3:Gates,0.4..0.6:Measure";
    for (auto _ : state) {
        auto result = qrt::refactor::apply(*program, request);
        auto verdict = qrt::sim::checkEquivalence(*program, result.program, "Main");
        benchmark::DoNotOptimize(verdict);
    }
}
BENCHMARK(ApplyAndVerifySplit);

}  // namespace

BENCHMARK_MAIN();
