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
#include "qrt/diag.hpp"
#include "qrt/sim/state_vector.hpp"

#include <vector>

namespace qrt::sim {

/// Dense square matrix, row-major; basis index bit j corresponds to the
/// j-th qubit wire (little-endian).
struct Matrix {
    int dim = 0;
    std::vector<Amplitude> data;

    Amplitude& at(int row, int col) { return data[static_cast<size_t>(row) * dim + col]; }
    const Amplitude& at(int row, int col) const {
        return data[static_cast<size_t>(row) * dim + col];
    }
    static Matrix identity(int dim);
};

/// True when the matrix is unitary within the tolerance.
bool isUnitary(const Matrix& m, double tol = kNormTolerance);

/// |tr(A^dagger B)| / dim >= 1 - tol, i.e. equality up to a global phase.
bool equalUpToGlobalPhase(const Matrix& a, const Matrix& b, double tol);

/// Extracts the unitary implemented by a measurement- and Message-free
/// entry whose parameters are qubits: either scalar Qubit parameters (one
/// wire each, in order) or a single Qubit[] parameter covering all n wires.
/// Columns are obtained by simulating each computational basis state.
Outcome<Matrix> unitaryOf(const syntax::Program& p, const std::string& entry, int wires);

}  // namespace qrt::sim
