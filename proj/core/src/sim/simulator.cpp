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

#include "qrt/sim/simulator.hpp"

#include "qrt/builtins.hpp"

#include "interp.hpp"

#include <json.hpp>

#include <algorithm>

namespace qrt::sim {

using namespace syntax;

double TraceDistribution::total() const {
    double t = 0;
    for (const auto& [trace, p] : probabilities) t += p;
    return t;
}

std::string toJson(const TraceDistribution& dist) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [trace, p] : dist.probabilities) {
        nlohmann::json entry;
        entry["trace"] = trace;
        entry["p"] = p;
        arr.push_back(std::move(entry));
    }
    return arr.dump();
}

// Exhaustive branch enumeration by script replay: each run follows a fixed
// list of measurement outcomes; hitting an unscripted measurement reports
// the branch point and the driver re-runs with both extensions. Replaying
// from the start keeps the interpreter free of state snapshots and makes the
// whole enumeration deterministic.
Outcome<TraceDistribution> runDistribution(const Program& p, const std::string& entry,
                                           const Limits& limits,
                                           const std::vector<long long>& entryArgs) {
    const Callable* entryDecl = findCallableByName(p, entry);
    if (!entryDecl)
        return Outcome<TraceDistribution>::failure(
            {makeError(diag_code::Runtime, {}, "entry '" + entry + "' not found or ambiguous")});
    for (const auto& param : entryDecl->params) {
        if (param.type != Type::integer())
            return Outcome<TraceDistribution>::failure(
                {makeError(diag_code::Precondition, entryDecl->nameSpan,
                           "entry '" + entry + "' must take no parameters or Int parameters")});
    }
    if (entryDecl->params.size() != entryArgs.size())
        return Outcome<TraceDistribution>::failure(
            {makeError(diag_code::Precondition, entryDecl->nameSpan,
                       "entry '" + entry + "' expects " + std::to_string(entryDecl->params.size()) +
                           " Int argument(s)")});

    TraceDistribution dist;
    long long leaves = 0;
    std::vector<std::vector<bool>> pending;
    pending.push_back({});
    try {
        while (!pending.empty()) {
            std::vector<bool> script = std::move(pending.back());
            pending.pop_back();
            Interp run(p, limits, script);
            RunOutcome out = run.execute(*entryDecl, entryArgs);
            if (out.completed) {
                dist.probabilities[out.trace] += out.pathProb;
                if (++leaves > limits.maxBranches)
                    throw SimError{makeError(diag_code::Limit, {},
                                             "branch limit exceeded (maxBranches=" +
                                                 std::to_string(limits.maxBranches) + ")")};
                continue;
            }
            // unscripted measurement: extend the script both ways, pruning
            // branches below the probability threshold; explore Zero first
            double pOne = out.branchProbOne;
            double pZero = 1.0 - pOne;
            if (pending.size() + static_cast<size_t>(leaves) >
                static_cast<size_t>(limits.maxBranches))
                throw SimError{makeError(diag_code::Limit, {},
                                         "branch limit exceeded (maxBranches=" +
                                             std::to_string(limits.maxBranches) + ")")};
            std::vector<bool> one = script;
            one.push_back(true);
            std::vector<bool> zero = std::move(script);
            zero.push_back(false);
            if (out.pathProb * pOne >= kBranchPruneThreshold)
                pending.push_back(std::move(one));
            else
                dist.prunedMass += out.pathProb * pOne;
            if (out.pathProb * pZero >= kBranchPruneThreshold)
                pending.push_back(std::move(zero));
            else
                dist.prunedMass += out.pathProb * pZero;
        }
    } catch (const SimError& err) {
        return Outcome<TraceDistribution>::failure({err.diag});
    }
    return Outcome<TraceDistribution>::success(std::move(dist));
}

}  // namespace qrt::sim
