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

#include "qrt/sim/equivalence.hpp"

#include "qrt/sim/unitary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qrt::sim {

using namespace syntax;

std::string describe(const EquivalenceVerdict& v) {
    switch (v.kind) {
        case EquivalenceVerdict::Kind::Equivalent: return "Equivalent";
        case EquivalenceVerdict::Kind::Inequivalent: {
            std::ostringstream out;
            out << "Inequivalent: trace [";
            for (size_t i = 0; i < v.witnessTrace.size(); ++i) {
                if (i > 0) out << " | ";
                out << v.witnessTrace[i];
            }
            out << "] has probability " << v.probA << " vs " << v.probB;
            return out.str();
        }
        case EquivalenceVerdict::Kind::Inconclusive: return "Inconclusive: " + v.reason;
    }
    return "?";
}

namespace {

bool qubitOnlySignature(const Callable& c) {
    if (c.params.empty()) return false;
    bool scalars = std::all_of(c.params.begin(), c.params.end(),
                               [](const Param& p) { return p.type == Type::qubit(); });
    bool array = c.params.size() == 1 && c.params[0].type == Type::array(Type::qubit());
    return scalars || array;
}

int unitaryWires(const Callable& c) {
    if (c.params.size() == 1 && c.params[0].type == Type::array(Type::qubit()))
        return 3;  // representative width for array-parameterized entries
    return static_cast<int>(c.params.size());
}

EquivalenceVerdict inconclusive(std::string reason) {
    EquivalenceVerdict v;
    v.kind = EquivalenceVerdict::Kind::Inconclusive;
    v.reason = std::move(reason);
    return v;
}

EquivalenceVerdict compareDistributions(const TraceDistribution& a, const TraceDistribution& b) {
    EquivalenceVerdict v;
    auto ia = a.probabilities.begin();
    auto ib = b.probabilities.begin();
    while (ia != a.probabilities.end() || ib != b.probabilities.end()) {
        if (ia == a.probabilities.end() || (ib != b.probabilities.end() && ib->first < ia->first)) {
            v.kind = EquivalenceVerdict::Kind::Inequivalent;
            v.witnessTrace = ib->first;
            v.probA = 0.0;
            v.probB = ib->second;
            return v;
        }
        if (ib == b.probabilities.end() || ia->first < ib->first) {
            v.kind = EquivalenceVerdict::Kind::Inequivalent;
            v.witnessTrace = ia->first;
            v.probA = ia->second;
            v.probB = 0.0;
            return v;
        }
        if (std::abs(ia->second - ib->second) > kProbTolerance) {
            v.kind = EquivalenceVerdict::Kind::Inequivalent;
            v.witnessTrace = ia->first;
            v.probA = ia->second;
            v.probB = ib->second;
            return v;
        }
        ++ia;
        ++ib;
    }
    v.kind = EquivalenceVerdict::Kind::Equivalent;
    return v;
}

}  // namespace

EquivalenceVerdict checkEquivalence(const Program& a, const std::string& entryA, const Program& b,
                                    const std::string& entryB, const Limits& limits) {
    return checkEquivalence(a, entryA, {}, b, entryB, {}, limits);
}

EquivalenceVerdict checkEquivalence(const Program& a, const std::string& entryA,
                                    const std::vector<long long>& argsA, const Program& b,
                                    const std::string& entryB,
                                    const std::vector<long long>& argsB, const Limits& limits) {
    const Callable* ca = findCallableByName(a, entryA);
    const Callable* cb = findCallableByName(b, entryB);
    if (!ca) return inconclusive("entry '" + entryA + "' not found in the first program");
    if (!cb) return inconclusive("entry '" + entryB + "' not found in the second program");

    if (qubitOnlySignature(*ca) && qubitOnlySignature(*cb)) {
        int wires = unitaryWires(*ca);
        if (wires != unitaryWires(*cb)) {
            EquivalenceVerdict v;
            v.kind = EquivalenceVerdict::Kind::Inequivalent;
            v.witnessTrace = {"<signature mismatch>"};
            return v;
        }
        auto ua = unitaryOf(a, entryA, wires);
        auto ub = unitaryOf(b, entryB, wires);
        if (!ua.ok()) return inconclusive(ua.diagnostics.front().message);
        if (!ub.ok()) return inconclusive(ub.diagnostics.front().message);
        EquivalenceVerdict v;
        if (equalUpToGlobalPhase(*ua, *ub, kProbTolerance)) {
            v.kind = EquivalenceVerdict::Kind::Equivalent;
        } else {
            v.kind = EquivalenceVerdict::Kind::Inequivalent;
            v.witnessTrace = {"<unitaries differ beyond global phase>"};
        }
        return v;
    }

    auto runnable = [](const Callable& c, const std::vector<long long>& args) {
        if (c.params.size() != args.size()) return false;
        for (const auto& p : c.params)
            if (p.type != Type::integer()) return false;
        return true;
    };
    if (!(ca->params.empty() || runnable(*ca, argsA)) ||
        !(cb->params.empty() || runnable(*cb, argsB)))
        return inconclusive("entry requires arguments that cannot be supplied automatically");

    auto da = runDistribution(a, entryA, limits, ca->params.empty() ? std::vector<long long>{} : argsA);
    auto db = runDistribution(b, entryB, limits, cb->params.empty() ? std::vector<long long>{} : argsB);
    auto classify = [](const Outcome<TraceDistribution>& d) -> std::string {
        return d.ok() ? std::string{} : d.diagnostics.front().code;
    };
    std::string errA = classify(da);
    std::string errB = classify(db);
    if (errA == diag_code::Limit || errB == diag_code::Limit)
        return inconclusive((errA == diag_code::Limit ? da : db).diagnostics.front().message);
    if (!errA.empty() || !errB.empty()) {
        if (errA == errB) {
            // both sides fail identically: observable behavior agrees
            EquivalenceVerdict v;
            v.kind = EquivalenceVerdict::Kind::Equivalent;
            return v;
        }
        EquivalenceVerdict v;
        v.kind = EquivalenceVerdict::Kind::Inequivalent;
        v.witnessTrace = {"<runtime: " + (errA.empty() ? "ok" : errA) + " vs " +
                          (errB.empty() ? "ok" : errB) + ">"};
        v.probA = errA.empty() ? 0.0 : 1.0;
        v.probB = errB.empty() ? 0.0 : 1.0;
        return v;
    }
    return compareDistributions(*da, *db);
}

EquivalenceVerdict checkEquivalence(const Program& a, const Program& b, const std::string& entry,
                                    const Limits& limits) {
    return checkEquivalence(a, entry, b, entry, limits);
}

}  // namespace qrt::sim
