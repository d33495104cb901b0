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

#include "interp.hpp"

#include "qrt/builtins.hpp"

#include <charconv>
#include <cmath>

namespace qrt::sim {

using namespace syntax;

namespace {

constexpr int kMaxCallDepth = 200;

std::string formatDouble(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, ptr);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

}  // namespace

std::string renderValue(const Value& value) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, UnitVal>) {
                return "()";
            } else if constexpr (std::is_same_v<T, long long>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                return formatDouble(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else if constexpr (std::is_same_v<T, ResultVal>) {
                return v.one ? "One" : "Zero";
            } else if constexpr (std::is_same_v<T, RangeVal>) {
                return std::to_string(v.lo) + ".." + std::to_string(v.hi);
            } else if constexpr (std::is_same_v<T, QubitVal>) {
                return "<qubit>";
            } else if constexpr (std::is_same_v<T, QubitArrayVal>) {
                return "<qubits>";
            } else {
                static_assert(std::is_same_v<T, ValueList>);
                std::string out = "[";
                for (size_t i = 0; i < v.size(); ++i) {
                    if (i > 0) out += ", ";
                    out += renderValue(v[i]);
                }
                return out + "]";
            }
        },
        value.v);
}

Interp::Interp(const Program& program, const Limits& limits, std::vector<bool> script)
    : program_(program), limits_(limits), script_(std::move(script)) {}

void Interp::fail(const char* code, SourceSpan span, std::string msg) const {
    throw SimError{makeError(code, span, std::move(msg))};
}

void Interp::step(const Stmt& s) {
    if (++steps_ > limits_.maxSteps)
        fail(diag_code::Limit, s.span,
             "step limit exceeded (maxSteps=" + std::to_string(limits_.maxSteps) + ")");
}

const Namespace* Interp::namespaceOf(const Callable& c) const {
    for (const auto& ns : program_.namespaces)
        for (const auto& cand : ns.callables)
            if (&cand == &c) return &ns;
    return nullptr;
}

const Callable* Interp::lookupCallable(const std::string& name, SourceSpan span) const {
    const Namespace* ns = frames_.empty() ? nullptr : frames_.back().ns;
    const Callable* found = nullptr;
    auto searchIn = [&](const Namespace& cand) {
        for (const auto& c : cand.callables) {
            if (c.name != name) continue;
            if (found && found != &c) fail(diag_code::Runtime, span, "ambiguous callable " + name);
            found = &c;
        }
    };
    if (ns) {
        searchIn(*ns);
        for (const auto& open : ns->opens)
            for (const auto& cand : program_.namespaces)
                if (cand.name == open) searchIn(cand);
    } else {
        for (const auto& cand : program_.namespaces) searchIn(cand);
    }
    if (!found) fail(diag_code::Runtime, span, "unresolved callable '" + name + "'");
    return found;
}

Value* Interp::findVar(const std::string& name) {
    auto& scopes = frames_.back().scopes;
    for (auto it = scopes.rbegin(); it != scopes.rend(); ++it) {
        auto found = it->find(name);
        if (found != it->end()) return &found->second;
    }
    return nullptr;
}

bool Interp::measureWire(int wire) {
    if (forbidMeasurement_)
        fail(diag_code::Precondition, {}, "entry must be measurement-free for unitary extraction");
    double pOne = sv_.probOne(wire);
    bool outcome;
    if (scriptPos_ < script_.size()) {
        outcome = script_[scriptPos_++];
    } else {
        throw BranchSignal{pathProb_, pOne};
    }
    double p = outcome ? pOne : 1.0 - pOne;
    sv_.collapse(wire, outcome, p);
    pathProb_ *= p;
    measuredLast_[static_cast<size_t>(wire)] = true;
    return outcome;
}

void Interp::touchWire(int wire, SourceSpan span) {
    if (wire < 0 || wire >= sv_.wireCount()) fail(diag_code::Runtime, span, "invalid qubit");
    measuredLast_[static_cast<size_t>(wire)] = false;
}

RunOutcome Interp::execute(const Callable& entry, const std::vector<long long>& args) {
    RunOutcome out;
    frames_.push_back({namespaceOf(entry), {}});
    frames_.back().scopes.emplace_back();
    for (size_t i = 0; i < entry.params.size(); ++i)
        frames_.back().scopes.back()[entry.params[i].name] = Value{args[i]};
    try {
        execBlock(entry.body);
    } catch (const BranchSignal& branch) {
        out.completed = false;
        out.pathProb = branch.pathProb;
        out.branchProbOne = branch.probOne;
        return out;
    }
    out.completed = true;
    out.trace = std::move(trace_);
    out.pathProb = pathProb_;
    return out;
}

std::vector<Amplitude> Interp::executeOnBasis(const Callable& entry, int wires,
                                              size_t basisIndex) {
    forbidMeasurement_ = true;
    sv_.allocate(wires);
    measuredLast_.assign(static_cast<size_t>(wires), false);
    auto& amps = sv_.amplitudes();
    amps.assign(amps.size(), Amplitude(0, 0));
    amps[basisIndex] = 1.0;

    frames_.push_back({namespaceOf(entry), {}});
    frames_.back().scopes.emplace_back();
    if (entry.params.size() == 1 && entry.params[0].type == Type::array(Type::qubit())) {
        QubitArrayVal all;
        for (int w = 0; w < wires; ++w) all.wires.push_back(w);
        frames_.back().scopes.back()[entry.params[0].name] = Value{all};
    } else {
        for (size_t i = 0; i < entry.params.size(); ++i)
            frames_.back().scopes.back()[entry.params[i].name] =
                Value{QubitVal{static_cast<int>(i)}};
    }
    try {
        execBlock(entry.body);
    } catch (const BranchSignal&) {
        fail(diag_code::Precondition, entry.nameSpan,
             "entry must be measurement-free for unitary extraction");
    }
    if (!trace_.empty())
        fail(diag_code::Precondition, entry.nameSpan,
             "entry must be Message-free for unitary extraction");
    if (sv_.wireCount() != wires)
        fail(diag_code::Runtime, entry.nameSpan, "wire count changed during unitary extraction");
    return sv_.amplitudes();
}

Value Interp::callCallable(const Callable& callee, std::vector<Value> args, SourceSpan span) {
    if (frames_.size() >= kMaxCallDepth)
        fail(diag_code::Limit, span, "call depth limit exceeded");
    if (args.size() != callee.params.size())
        fail(diag_code::Runtime, span, "arity mismatch calling '" + callee.name + "'");
    Frame frame;
    frame.ns = namespaceOf(callee);
    frame.scopes.emplace_back();
    for (size_t i = 0; i < args.size(); ++i)
        frame.scopes.back()[callee.params[i].name] = std::move(args[i]);
    frames_.push_back(std::move(frame));
    std::optional<Value> returned = execBlock(callee.body);
    frames_.pop_back();
    if (returned) return std::move(*returned);
    if (callee.returnType != Type::unit())
        fail(diag_code::Runtime, span,
             "callable '" + callee.name + "' ended without returning a value");
    return Value{UnitVal{}};
}

std::optional<Value> Interp::execBlock(const Block& b) {
    frames_.back().scopes.emplace_back();
    std::optional<Value> returned;
    for (const auto& s : b.stmts) {
        returned = execStmt(*s);
        if (returned) break;
    }
    frames_.back().scopes.pop_back();
    return returned;
}

std::optional<Value> Interp::execStmt(const Stmt& s) {
    step(s);
    return std::visit(
        [this, &s](const auto& n) -> std::optional<Value> {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, LetStmt> || std::is_same_v<T, MutableStmt>) {
                Value v = evalExpr(*n.value);
                frames_.back().scopes.back()[n.name] = std::move(v);
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, SetStmt>) {
                Value v = evalExpr(*n.value);
                Value* slot = findVar(n.name);
                if (!slot) fail(diag_code::Runtime, s.span, "unresolved variable " + n.name);
                *slot = std::move(v);
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, UsingStmt>) {
                return execUsing(s, n);
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                Value rangeValue = evalExpr(*n.range);
                const auto* range = std::get_if<RangeVal>(&rangeValue.v);
                if (!range) fail(diag_code::Runtime, n.range->span, "for expects a Range value");
                for (long long i = range->lo; i <= range->hi; ++i) {
                    step(s);
                    frames_.back().scopes.emplace_back();
                    frames_.back().scopes.back()[n.var] = Value{i};
                    std::optional<Value> returned = execBlock(n.body);
                    frames_.back().scopes.pop_back();
                    if (returned) return returned;
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                auto truthy = [this](const Expr& e) {
                    Value c = evalExpr(e);
                    const bool* b = std::get_if<bool>(&c.v);
                    if (!b) fail(diag_code::Runtime, e.span, "condition must be Bool");
                    return *b;
                };
                if (truthy(*n.cond)) return execBlock(n.then);
                for (const auto& arm : n.elifs)
                    if (truthy(*arm.cond)) return execBlock(arm.body);
                if (n.elseBlock) return execBlock(*n.elseBlock);
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                return evalExpr(*n.value);
            } else {
                static_assert(std::is_same_v<T, CallStmt>);
                evalExpr(*n.call);
                return std::nullopt;
            }
        },
        s.node);
}

std::optional<Value> Interp::execUsing(const Stmt& s, const UsingStmt& n) {
    long long count = 1;
    if (n.count) {
        Value c = evalExpr(*n.count);
        const long long* v = std::get_if<long long>(&c.v);
        if (!v) fail(diag_code::Runtime, n.count->span, "qubit array size must be Int");
        if (*v < 0) fail(diag_code::Runtime, n.count->span, "negative qubit array size");
        count = *v;
    }
    if (sv_.wireCount() + count > limits_.maxQubits)
        fail(diag_code::Limit, s.span,
             "qubit limit exceeded (maxQubits=" + std::to_string(limits_.maxQubits) + ")");
    int first = sv_.allocate(static_cast<int>(count));
    measuredLast_.resize(static_cast<size_t>(sv_.wireCount()), false);

    frames_.back().scopes.emplace_back();
    if (n.count) {
        QubitArrayVal arr;
        for (int w = 0; w < count; ++w) arr.wires.push_back(first + w);
        frames_.back().scopes.back()[n.name] = Value{arr};
    } else {
        frames_.back().scopes.back()[n.name] = Value{QubitVal{first}};
    }
    std::optional<Value> returned = execBlock(n.body);
    frames_.back().scopes.pop_back();

    // release check: each allocated wire must be |0> or have been measured
    // last (its state is then a classical basis value)
    for (int w = sv_.wireCount() - 1; w >= first; --w) {
        double pOne = sv_.probOne(w);
        if (pOne <= kNormTolerance) {
            sv_.release(w, false);
        } else if (pOne >= 1.0 - kNormTolerance && measuredLast_[static_cast<size_t>(w)]) {
            sv_.release(w, true);
        } else {
            fail(diag_code::ReleaseNonzero, s.span,
                 "qubit '" + n.name + "' released in a non-|0> state without measurement");
        }
        measuredLast_.pop_back();
    }
    return returned;
}

// ------------------------------------------------------------------
// expressions
// ------------------------------------------------------------------

int Interp::qubitOf(const Value& v, SourceSpan span) const {
    if (const auto* q = std::get_if<QubitVal>(&v.v)) return q->wire;
    fail(diag_code::Runtime, span, "expected a qubit value");
}

std::vector<int> Interp::qubitArrayOf(const Value& v, SourceSpan span) const {
    if (const auto* a = std::get_if<QubitArrayVal>(&v.v)) return a->wires;
    fail(diag_code::Runtime, span, "expected a qubit array value");
}

Value Interp::evalExpr(const Expr& e) {
    return std::visit(
        [this, &e](const auto& n) -> Value {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntLit>) {
                return Value{n.value};
            } else if constexpr (std::is_same_v<T, DoubleLit>) {
                return Value{n.value};
            } else if constexpr (std::is_same_v<T, BoolLit>) {
                return Value{n.value};
            } else if constexpr (std::is_same_v<T, StringLit>) {
                return Value{n.value};
            } else if constexpr (std::is_same_v<T, InterpString>) {
                std::string out;
                for (const auto& part : n.parts) {
                    if (part.expr)
                        out += renderValue(evalExpr(*part.expr));
                    else
                        out += part.text;
                }
                return Value{out};
            } else if constexpr (std::is_same_v<T, Ident>) {
                if (Value* v = findVar(n.name)) return *v;
                fail(diag_code::Runtime, e.span, "unresolved name '" + n.name + "'");
            } else if constexpr (std::is_same_v<T, ArrayLit>) {
                // qubit-element arrays collapse to a wire list
                std::vector<Value> items;
                items.reserve(n.items.size());
                for (const auto& item : n.items) items.push_back(evalExpr(*item));
                if (!items.empty() && std::holds_alternative<QubitVal>(items[0].v)) {
                    QubitArrayVal arr;
                    for (const auto& item : items) arr.wires.push_back(qubitOf(item, e.span));
                    return Value{arr};
                }
                return Value{ValueList{std::move(items)}};
            } else if constexpr (std::is_same_v<T, IndexExpr>) {
                Value base = evalExpr(*n.base);
                Value idx = evalExpr(*n.index);
                const long long* i = std::get_if<long long>(&idx.v);
                if (!i) fail(diag_code::Runtime, n.index->span, "index must be Int");
                if (const auto* qa = std::get_if<QubitArrayVal>(&base.v)) {
                    if (*i < 0 || static_cast<size_t>(*i) >= qa->wires.size())
                        fail(diag_code::Runtime, e.span,
                             "index " + std::to_string(*i) + " out of range");
                    return Value{QubitVal{qa->wires[static_cast<size_t>(*i)]}};
                }
                if (const auto* list = std::get_if<ValueList>(&base.v)) {
                    if (*i < 0 || static_cast<size_t>(*i) >= list->size())
                        fail(diag_code::Runtime, e.span,
                             "index " + std::to_string(*i) + " out of range");
                    return (*list)[static_cast<size_t>(*i)];
                }
                fail(diag_code::Runtime, n.base->span, "cannot index this value");
            } else if constexpr (std::is_same_v<T, SliceExpr>) {
                Value base = evalExpr(*n.base);
                Value rv = evalExpr(*n.range);
                const auto* range = std::get_if<RangeVal>(&rv.v);
                if (!range) fail(diag_code::Runtime, n.range->span, "slice expects a Range");
                auto checked = [&](size_t size) {
                    if (range->lo > range->hi) return std::pair<long long, long long>{0, -1};
                    if (range->lo < 0 || static_cast<size_t>(range->hi) >= size)
                        fail(diag_code::Runtime, e.span, "slice out of range");
                    return std::pair<long long, long long>{range->lo, range->hi};
                };
                if (const auto* qa = std::get_if<QubitArrayVal>(&base.v)) {
                    auto [lo, hi] = checked(qa->wires.size());
                    QubitArrayVal out;
                    for (long long i = lo; i <= hi; ++i)
                        out.wires.push_back(qa->wires[static_cast<size_t>(i)]);
                    return Value{out};
                }
                if (const auto* list = std::get_if<ValueList>(&base.v)) {
                    auto [lo, hi] = checked(list->size());
                    ValueList out;
                    for (long long i = lo; i <= hi; ++i)
                        out.push_back((*list)[static_cast<size_t>(i)]);
                    return Value{out};
                }
                fail(diag_code::Runtime, n.base->span, "cannot slice this value");
            } else if constexpr (std::is_same_v<T, RangeExpr>) {
                Value lo = evalExpr(*n.lo);
                Value hi = evalExpr(*n.hi);
                const long long* l = std::get_if<long long>(&lo.v);
                const long long* h = std::get_if<long long>(&hi.v);
                if (!l || !h) fail(diag_code::Runtime, e.span, "range bounds must be Int");
                return Value{RangeVal{*l, *h}};
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                return evalBinary(e, n);
            } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                Value v = evalExpr(*n.operand);
                if (n.op == UnaryOp::Neg) {
                    if (const long long* i = std::get_if<long long>(&v.v)) return Value{-*i};
                    if (const double* d = std::get_if<double>(&v.v)) return Value{-*d};
                    fail(diag_code::Runtime, e.span, "cannot negate this value");
                }
                if (const bool* b = std::get_if<bool>(&v.v)) return Value{!*b};
                fail(diag_code::Runtime, e.span, "'not' expects Bool");
            } else if constexpr (std::is_same_v<T, CallExpr>) {
                return evalCall(e, n);
            } else {
                static_assert(std::is_same_v<T, ControlledApply>);
                Value controls = evalExpr(*n.controls);
                std::vector<int> ctlWires = qubitArrayOf(controls, n.controls->span);
                if (n.args.size() != 1)
                    fail(diag_code::Runtime, e.span, "Controlled X expects one target");
                int target = qubitOf(evalExpr(*n.args[0]), n.args[0]->span);
                for (int c : ctlWires)
                    if (c == target)
                        fail(diag_code::Runtime, e.span,
                             "Controlled operands overlap: control equals target");
                for (int c : ctlWires) touchWire(c, e.span);
                touchWire(target, e.span);
                sv_.applyControlledX(ctlWires, target);
                return Value{UnitVal{}};
            }
        },
        e.node);
}

Value Interp::evalBinary(const Expr& e, const BinaryExpr& n) {
    // short-circuit booleans first
    if (n.op == BinaryOp::And || n.op == BinaryOp::Or) {
        Value lhs = evalExpr(*n.lhs);
        const bool* lb = std::get_if<bool>(&lhs.v);
        if (!lb) fail(diag_code::Runtime, n.lhs->span, "boolean operand expected");
        if (n.op == BinaryOp::And && !*lb) return Value{false};
        if (n.op == BinaryOp::Or && *lb) return Value{true};
        Value rhs = evalExpr(*n.rhs);
        const bool* rb = std::get_if<bool>(&rhs.v);
        if (!rb) fail(diag_code::Runtime, n.rhs->span, "boolean operand expected");
        return Value{*rb};
    }
    Value lhs = evalExpr(*n.lhs);
    Value rhs = evalExpr(*n.rhs);
    const long long* li = std::get_if<long long>(&lhs.v);
    const long long* ri = std::get_if<long long>(&rhs.v);
    const double* ld = std::get_if<double>(&lhs.v);
    const double* rd = std::get_if<double>(&rhs.v);
    switch (n.op) {
        case BinaryOp::Add:
        case BinaryOp::Sub:
        case BinaryOp::Mul:
        case BinaryOp::Div:
        case BinaryOp::Mod: {
            if (li && ri) {
                long long out = 0;
                bool overflow = false;
                switch (n.op) {
                    case BinaryOp::Add: overflow = __builtin_add_overflow(*li, *ri, &out); break;
                    case BinaryOp::Sub: overflow = __builtin_sub_overflow(*li, *ri, &out); break;
                    case BinaryOp::Mul: overflow = __builtin_mul_overflow(*li, *ri, &out); break;
                    case BinaryOp::Div:
                    case BinaryOp::Mod:
                        if (*ri == 0) fail(diag_code::Runtime, e.span, "division by zero");
                        if (*li == std::numeric_limits<long long>::min() && *ri == -1)
                            fail(diag_code::Runtime, e.span, "integer overflow");
                        out = n.op == BinaryOp::Div ? *li / *ri : *li % *ri;
                        break;
                    default: break;
                }
                if (overflow) fail(diag_code::Runtime, e.span, "integer overflow");
                return Value{out};
            }
            if (ld && rd && n.op != BinaryOp::Mod) {
                switch (n.op) {
                    case BinaryOp::Add: return Value{*ld + *rd};
                    case BinaryOp::Sub: return Value{*ld - *rd};
                    case BinaryOp::Mul: return Value{*ld * *rd};
                    case BinaryOp::Div: return Value{*ld / *rd};
                    default: break;
                }
            }
            fail(diag_code::Runtime, e.span, "numeric operands expected");
        }
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: {
            double a, b;
            if (li && ri) {
                a = static_cast<double>(*li);
                b = static_cast<double>(*ri);
                // exact for comparisons within the subset's literal ranges;
                // compare integers directly to be safe
                switch (n.op) {
                    case BinaryOp::Lt: return Value{*li < *ri};
                    case BinaryOp::Le: return Value{*li <= *ri};
                    case BinaryOp::Gt: return Value{*li > *ri};
                    default: return Value{*li >= *ri};
                }
            }
            if (ld && rd) {
                a = *ld;
                b = *rd;
                switch (n.op) {
                    case BinaryOp::Lt: return Value{a < b};
                    case BinaryOp::Le: return Value{a <= b};
                    case BinaryOp::Gt: return Value{a > b};
                    default: return Value{a >= b};
                }
            }
            fail(diag_code::Runtime, e.span, "numeric operands expected");
        }
        case BinaryOp::Eq:
        case BinaryOp::Ne: {
            bool eq;
            if (li && ri) {
                eq = *li == *ri;
            } else if (ld && rd) {
                eq = *ld == *rd;
            } else if (const bool* lb = std::get_if<bool>(&lhs.v)) {
                const bool* rb = std::get_if<bool>(&rhs.v);
                if (!rb) fail(diag_code::Runtime, e.span, "mismatched comparison");
                eq = *lb == *rb;
            } else if (const auto* ls = std::get_if<std::string>(&lhs.v)) {
                const auto* rs = std::get_if<std::string>(&rhs.v);
                if (!rs) fail(diag_code::Runtime, e.span, "mismatched comparison");
                eq = *ls == *rs;
            } else if (const auto* lr = std::get_if<ResultVal>(&lhs.v)) {
                const auto* rr = std::get_if<ResultVal>(&rhs.v);
                if (!rr) fail(diag_code::Runtime, e.span, "mismatched comparison");
                eq = lr->one == rr->one;
            } else {
                fail(diag_code::Runtime, e.span, "values cannot be compared");
            }
            return Value{n.op == BinaryOp::Eq ? eq : !eq};
        }
        default: fail(diag_code::Runtime, e.span, "unsupported operator");
    }
}

Value Interp::evalCall(const Expr& e, const CallExpr& call) {
    const auto* calleeIdent = call.callee->as<Ident>();
    if (!calleeIdent) fail(diag_code::Runtime, e.span, "expression is not callable");
    const std::string& name = calleeIdent->name;
    if (const Builtin* b = findBuiltin(name)) {
        // a local binding would shadow a builtin, but resolution already
        // rejects that for callables; locals cannot be called
        return evalBuiltin(e, *b, call);
    }
    const Callable* callee = lookupCallable(name, e.span);
    std::vector<Value> args;
    args.reserve(call.args.size());
    for (const auto& a : call.args) args.push_back(evalExpr(*a));
    return callCallable(*callee, std::move(args), e.span);
}

Value Interp::evalBuiltin(const Expr& e, const Builtin& b, const CallExpr& call) {
    using K = Builtin::Kind;
    switch (b.kind) {
        case K::Gate: {
            std::vector<int> wires;
            for (const auto& a : call.args) wires.push_back(qubitOf(evalExpr(*a), a->span));
            for (size_t i = 0; i < wires.size(); ++i)
                for (size_t j = i + 1; j < wires.size(); ++j)
                    if (wires[i] == wires[j])
                        fail(diag_code::Runtime, e.span,
                             std::string(b.name) + " applied to the same qubit twice");
            for (int w : wires) touchWire(w, e.span);
            if (b.name == "CNOT") {
                sv_.applyControlledX({wires[0]}, wires[1]);
            } else if (b.name == "CCNOT") {
                sv_.applyControlledX({wires[0], wires[1]}, wires[2]);
            } else {
                sv_.apply1(wires[0], gateMatrix(b.name));
            }
            return Value{UnitVal{}};
        }
        case K::Measurement: {
            if (b.name == "M") {
                int w = qubitOf(evalExpr(*call.args[0]), call.args[0]->span);
                return Value{ResultVal{measureWire(w)}};
            }
            std::vector<int> wires = qubitArrayOf(evalExpr(*call.args[0]), call.args[0]->span);
            ValueList results;
            for (int w : wires) results.push_back(Value{ResultVal{measureWire(w)}});
            return Value{ValueList{std::move(results)}};
        }
        case K::Reset: {
            int w = qubitOf(evalExpr(*call.args[0]), call.args[0]->span);
            bool one = measureWire(w);
            if (one) sv_.apply1(w, gateMatrix("X"));
            return Value{UnitVal{}};
        }
        case K::ApplyToEach: {
            const auto* gateIdent = call.args[0]->as<Ident>();
            if (!gateIdent || !isSingleQubitGate(gateIdent->name))
                fail(diag_code::Runtime, call.args[0]->span,
                     "ApplyToEach expects a single-qubit gate name");
            std::vector<int> wires = qubitArrayOf(evalExpr(*call.args[1]), call.args[1]->span);
            const Gate1& g = gateMatrix(gateIdent->name);
            for (int w : wires) {
                touchWire(w, e.span);
                sv_.apply1(w, g);
            }
            return Value{UnitVal{}};
        }
        case K::Message: {
            Value v = evalExpr(*call.args[0]);
            const auto* s = std::get_if<std::string>(&v.v);
            if (!s) fail(diag_code::Runtime, e.span, "Message expects a String");
            trace_.push_back(*s);
            return Value{UnitVal{}};
        }
        case K::ResultArrayAsInt: {
            Value v = evalExpr(*call.args[0]);
            const auto* list = std::get_if<ValueList>(&v.v);
            if (!list) fail(diag_code::Runtime, e.span, "ResultArrayAsInt expects Result[]");
            if (list->size() > 62) fail(diag_code::Runtime, e.span, "result array too long");
            long long out = 0;
            // little-endian: element 0 is the least significant bit
            for (size_t i = 0; i < list->size(); ++i) {
                const auto* r = std::get_if<ResultVal>(&(*list)[i].v);
                if (!r) fail(diag_code::Runtime, e.span, "ResultArrayAsInt expects Result[]");
                if (r->one) out |= 1LL << i;
            }
            return Value{out};
        }
    }
    fail(diag_code::Runtime, e.span, "unknown builtin");
}

}  // namespace qrt::sim
