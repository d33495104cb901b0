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

#include "qrt/analysis/safety.hpp"

#include "qrt/consteval.hpp"
#include "qrt/printer.hpp"

namespace qrt::analysis {

using namespace syntax;

bool conflicts(const QubitRef& a, const QubitRef& b) {
    if (a.binding != b.binding || a.binding < 0) return false;
    if (a.kind == QubitRef::Kind::ConstIndex && b.kind == QubitRef::Kind::ConstIndex)
        return a.index == b.index;
    return true;  // whole, slice, or dynamic index: conservative
}

std::vector<QubitRef> collectQubitRefs(const Expr& e, const SymbolTable& symbols) {
    std::vector<QubitRef> refs;
    auto bindingOf = [&symbols](const Expr& base) -> SymbolId {
        const Expr* root = &base;
        while (true) {
            if (const auto* idx = root->as<IndexExpr>()) {
                root = idx->base.get();
            } else if (const auto* slice = root->as<SliceExpr>()) {
                root = slice->base.get();
            } else {
                break;
            }
        }
        auto it = symbols.uses.find(root);
        return it == symbols.uses.end() ? -1 : it->second;
    };
    std::function<void(const Expr&, bool)> walk = [&](const Expr& x, bool direct) {
        if (const auto* id = x.as<Ident>()) {
            SymbolId sym = symbols.symbolOf(x);
            if (sym < 0) return;
            const Symbol& s = symbols.symbol(sym);
            bool qubitLike = s.kind == SymbolKind::QubitBinding ||
                             ((s.kind == SymbolKind::Parameter) &&
                              (s.type == Type::qubit() || s.type == Type::array(Type::qubit())));
            (void)id;
            if (qubitLike) refs.push_back({sym, QubitRef::Kind::Whole, 0, &x});
            return;
        }
        if (const auto* idx = x.as<IndexExpr>()) {
            SymbolId sym = bindingOf(*idx->base);
            if (sym >= 0 && idx->base->is<Ident>()) {
                if (auto c = evalConstInt(*idx->index)) {
                    refs.push_back({sym, QubitRef::Kind::ConstIndex, *c, &x});
                } else {
                    refs.push_back({sym, QubitRef::Kind::DynIndex, 0, &x});
                }
            } else if (sym >= 0) {
                refs.push_back({sym, QubitRef::Kind::DynIndex, 0, &x});
            }
            walk(*idx->index, false);
            return;
        }
        if (const auto* slice = x.as<SliceExpr>()) {
            SymbolId sym = bindingOf(*slice->base);
            if (sym >= 0) refs.push_back({sym, QubitRef::Kind::Slice, 0, &x});
            return;
        }
        if (const auto* arr = x.as<ArrayLit>()) {
            for (const auto& item : arr->items) walk(*item, direct);
            return;
        }
        // other expression forms cannot produce qubit values in the subset
    };
    walk(e, true);
    return refs;
}

namespace {

class SafetyChecker {
public:
    SafetyChecker(const Program& p, const SymbolTable& symbols) : program_(p), symbols_(symbols) {}

    std::vector<Diagnostic> run() {
        for (const auto& ns : program_.namespaces) {
            for (const auto& c : ns.callables) {
                inFunction_ = c.kind == CallableKind::Function;
                forEachStmt(c.body, [this](const Stmt& s) { checkStmt(s); });
            }
        }
        return std::move(diags_);
    }

private:
    const Program& program_;
    const SymbolTable& symbols_;
    std::vector<Diagnostic> diags_;
    bool inFunction_ = false;

    void error(const char* code, SourceSpan span, std::string msg) {
        diags_.push_back(makeError(code, span, std::move(msg)));
    }

    void checkStmt(const Stmt& s) {
        if (inFunction_ && s.is<UsingStmt>())
            error(diag_code::QuantumInFunction, s.span,
                  "functions cannot allocate qubits");
        forEachExpr(s, [this](const Expr& e) { checkExpr(e); });
    }

    void checkExpr(const Expr& e) {
        if (const auto* ctl = e.as<ControlledApply>()) {
            checkControlled(e, *ctl);
            return;
        }
        const auto* call = e.as<CallExpr>();
        if (!call) return;
        auto bIt = symbols_.builtinUses.find(call->callee.get());
        if (bIt != symbols_.builtinUses.end()) {
            const Builtin& b = *bIt->second;
            if (inFunction_ && b.isQuantum())
                error(diag_code::QuantumInFunction, e.span,
                      std::string(b.name) + " cannot be used inside a function");
            if (b.isGate() && b.qubitArity >= 2) checkDistinctOperands(e, *call);
            return;
        }
        auto uIt = symbols_.uses.find(call->callee.get());
        if (uIt != symbols_.uses.end()) {
            const Symbol& sym = symbols_.symbol(uIt->second);
            if (inFunction_ && sym.kind == SymbolKind::Callable &&
                sym.callableKind == CallableKind::Operation)
                error(diag_code::QuantumInFunction, e.span,
                      "operation '" + sym.name + "' cannot be called from a function");
        }
    }

    void checkDistinctOperands(const Expr& e, const CallExpr& call) {
        std::vector<QubitRef> all;
        for (const auto& arg : call.args) {
            auto refs = collectQubitRefs(*arg, symbols_);
            all.insert(all.end(), refs.begin(), refs.end());
        }
        for (size_t i = 0; i < all.size(); ++i) {
            for (size_t j = i + 1; j < all.size(); ++j) {
                if (conflicts(all[i], all[j])) {
                    error(diag_code::DuplicateQubit, e.span,
                          "gate application may receive the same qubit twice ('" +
                              symbols_.symbol(all[i].binding).name + "')");
                    return;
                }
            }
        }
    }

    void checkControlled(const Expr& e, const ControlledApply& ctl) {
        if (inFunction_)
            error(diag_code::QuantumInFunction, e.span,
                  "Controlled application cannot be used inside a function");
        auto controls = collectQubitRefs(*ctl.controls, symbols_);
        // duplicate controls
        for (size_t i = 0; i < controls.size(); ++i)
            for (size_t j = i + 1; j < controls.size(); ++j)
                if (conflicts(controls[i], controls[j])) {
                    error(diag_code::DuplicateQubit, ctl.controls->span,
                          "duplicate qubit in control set");
                    return;
                }
        for (const auto& arg : ctl.args) {
            auto targets = collectQubitRefs(*arg, symbols_);
            for (const auto& t : targets) {
                for (const auto& c : controls) {
                    if (conflicts(c, t)) {
                        error(diag_code::OverlapControl, e.span,
                              "control set and target of Controlled application overlap ('" +
                                  symbols_.symbol(t.binding).name + "')");
                        return;
                    }
                }
            }
        }
    }
};

}  // namespace

std::vector<Diagnostic> checkQuantumSafety(const Program& p, const SymbolTable& symbols) {
    return SafetyChecker(p, symbols).run();
}

}  // namespace qrt::analysis
