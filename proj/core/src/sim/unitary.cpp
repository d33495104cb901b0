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

#include "qrt/sim/unitary.hpp"

#include "interp.hpp"

#include <cmath>

namespace qrt::sim {

using namespace syntax;

Matrix Matrix::identity(int dim) {
    Matrix m;
    m.dim = dim;
    m.data.assign(static_cast<size_t>(dim) * dim, Amplitude(0, 0));
    for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
    return m;
}

bool isUnitary(const Matrix& m, double tol) {
    // max-norm of U^dagger U - I
    for (int i = 0; i < m.dim; ++i) {
        for (int j = 0; j < m.dim; ++j) {
            Amplitude sum(0, 0);
            for (int k = 0; k < m.dim; ++k) sum += std::conj(m.at(k, i)) * m.at(k, j);
            Amplitude expected = i == j ? Amplitude(1, 0) : Amplitude(0, 0);
            if (std::abs(sum - expected) > tol) return false;
        }
    }
    return true;
}

bool equalUpToGlobalPhase(const Matrix& a, const Matrix& b, double tol) {
    if (a.dim != b.dim) return false;
    Amplitude traceProduct(0, 0);
    for (int i = 0; i < a.dim; ++i)
        for (int k = 0; k < a.dim; ++k) traceProduct += std::conj(a.at(k, i)) * b.at(k, i);
    double fidelity = std::abs(traceProduct) / a.dim;
    return fidelity >= 1.0 - tol;
}

Outcome<Matrix> unitaryOf(const Program& p, const std::string& entry, int wires) {
    const Callable* decl = findCallableByName(p, entry);
    if (!decl)
        return Outcome<Matrix>::failure(
            {makeError(diag_code::Runtime, {}, "entry '" + entry + "' not found or ambiguous")});
    if (wires < 1 || wires > 6)
        return Outcome<Matrix>::failure(
            {makeError(diag_code::Limit, decl->nameSpan, "unitary extraction supports 1..6 wires")});

    bool scalarParams = !decl->params.empty() &&
                        static_cast<int>(decl->params.size()) == wires &&
                        std::all_of(decl->params.begin(), decl->params.end(),
                                    [](const Param& q) { return q.type == Type::qubit(); });
    bool arrayParam = decl->params.size() == 1 &&
                      decl->params[0].type == Type::array(Type::qubit());
    if (!scalarParams && !arrayParam)
        return Outcome<Matrix>::failure({makeError(
            diag_code::Precondition, decl->nameSpan,
            "entry '" + entry + "' must take Qubit parameters or a single Qubit[] parameter")});

    size_t dim = size_t{1} << wires;
    Matrix m;
    m.dim = static_cast<int>(dim);
    m.data.assign(dim * dim, Amplitude(0, 0));
    Limits limits;
    try {
        for (size_t col = 0; col < dim; ++col) {
            Interp run(p, limits, {});
            std::vector<Amplitude> state = run.executeOnBasis(*decl, wires, col);
            for (size_t row = 0; row < dim; ++row)
                m.at(static_cast<int>(row), static_cast<int>(col)) = state[row];
        }
    } catch (const SimError& err) {
        return Outcome<Matrix>::failure({err.diag});
    }
    if (!isUnitary(m, kNormTolerance))
        return Outcome<Matrix>::failure({makeError(diag_code::Runtime, decl->nameSpan,
                                                   "extracted matrix is not unitary")});
    return Outcome<Matrix>::success(std::move(m));
}

}  // namespace qrt::sim
