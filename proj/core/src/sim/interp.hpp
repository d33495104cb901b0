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

// Internal tree-walking interpreter executing one measurement script.
// Not installed; shared by the distribution driver and the unitary
// extractor.

#pragma once

#include "qrt/ast.hpp"
#include "qrt/builtins.hpp"
#include "qrt/diag.hpp"
#include "qrt/sim/simulator.hpp"
#include "qrt/sim/state_vector.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qrt::sim {

/// Runtime failure (limits, release violations, index errors). Escapes the
/// whole enumeration.
struct SimError {
    Diagnostic diag;
};

/// One run's result: either completed with a trace, or stopped at the first
/// unscripted measurement.
struct RunOutcome {
    bool completed = false;
    std::vector<std::string> trace;
    double pathProb = 1.0;
    double branchProbOne = 0.0;  // valid when !completed
};

struct UnitVal {
    bool operator==(const UnitVal&) const = default;
};
struct ResultVal {
    bool one = false;
    bool operator==(const ResultVal&) const = default;
};
struct RangeVal {
    long long lo = 0;
    long long hi = 0;
    bool operator==(const RangeVal&) const = default;
};
struct QubitVal {
    int wire = -1;
};
struct QubitArrayVal {
    std::vector<int> wires;
};
struct Value;
using ValueList = std::vector<Value>;
struct Value {
    std::variant<UnitVal, long long, double, bool, std::string, ResultVal, RangeVal, QubitVal,
                 QubitArrayVal, ValueList>
        v;
};

std::string renderValue(const Value& value);

class Interp {
public:
    Interp(const syntax::Program& program, const Limits& limits, std::vector<bool> script);

    /// Runs the entry with Int arguments from a fresh empty state.
    RunOutcome execute(const syntax::Callable& entry, const std::vector<long long>& args);

    /// Runs the entry with its qubit parameters bound to pre-allocated wires
    /// prepared in basis state `basisIndex`. Measurements and Messages are
    /// rejected. Returns the final amplitudes.
    std::vector<Amplitude> executeOnBasis(const syntax::Callable& entry, int wires,
                                          size_t basisIndex);

private:
    struct BranchSignal {
        double pathProb;
        double probOne;
    };

    struct Frame {
        const syntax::Namespace* ns = nullptr;
        std::vector<std::map<std::string, Value>> scopes;
    };

    const syntax::Program& program_;
    Limits limits_;
    std::vector<bool> script_;
    size_t scriptPos_ = 0;

    StateVector sv_;
    std::vector<bool> measuredLast_;
    std::vector<Frame> frames_;
    std::vector<std::string> trace_;
    double pathProb_ = 1.0;
    long long steps_ = 0;
    bool forbidMeasurement_ = false;

    [[noreturn]] void fail(const char* code, SourceSpan span, std::string msg) const;
    void step(const syntax::Stmt& s);

    const syntax::Callable* lookupCallable(const std::string& name, SourceSpan span) const;
    const syntax::Namespace* namespaceOf(const syntax::Callable& c) const;

    Value* findVar(const std::string& name);

    bool measureWire(int wire);
    void touchWire(int wire, SourceSpan span);

    Value callCallable(const syntax::Callable& callee, std::vector<Value> args, SourceSpan span);
    std::optional<Value> execBlock(const syntax::Block& b);
    std::optional<Value> execStmt(const syntax::Stmt& s);
    std::optional<Value> execUsing(const syntax::Stmt& s, const syntax::UsingStmt& n);
    Value evalExpr(const syntax::Expr& e);
    Value evalBinary(const syntax::Expr& e, const syntax::BinaryExpr& n);
    Value evalCall(const syntax::Expr& e, const syntax::CallExpr& call);
    Value evalBuiltin(const syntax::Expr& e, const syntax::Builtin& b,
                      const syntax::CallExpr& call);
    std::vector<int> qubitArrayOf(const Value& v, SourceSpan span) const;
    int qubitOf(const Value& v, SourceSpan span) const;
};

}  // namespace qrt::sim
