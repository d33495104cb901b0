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

#include "rewrite.hpp"

namespace qrt::refactor {

void applyRename(Ctx& ctx);
void applyChangeSignature(Ctx& ctx);
void applyExtractOperation(Ctx& ctx);
void applyExtractFunction(Ctx& ctx);
void applyExtractNamespace(Ctx& ctx);
void applyInlineCallable(Ctx& ctx);
void applySplitOperation(Ctx& ctx);
void applyMergeOperations(Ctx& ctx);
void applyParameterizeOperation(Ctx& ctx);
void applySpecializeOperation(Ctx& ctx);
void applyMergeGates(Ctx& ctx);
void applyReplaceGate(Ctx& ctx);
void applyReorderInstructions(Ctx& ctx);
void applyOrderQubits(Ctx& ctx);
void applyConsolidateMeasurements(Ctx& ctx);
void applyUnrollLoop(Ctx& ctx);
void applyRollLoop(Ctx& ctx);
void applyRemoveUnused(Ctx& ctx);
void applyRemoveCodeDuplication(Ctx& ctx);

}  // namespace qrt::refactor
