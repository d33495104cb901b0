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

#include "brute_sim.hpp"

#include <charconv>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <stdexcept>
#include <variant>

namespace qrt::testing {

using namespace syntax;

namespace {

using C = std::complex<double>;
using State = std::vector<C>;  // unnormalized

struct BUnit {};
struct BResult {
    bool one;
};
struct BRange {
    long long lo, hi;
};
struct BQubit {
    int wire;
};
struct BQubits {
    std::vector<int> wires;
};
struct BVal;
using BList = std::vector<BVal>;
struct BVal {
    std::variant<BUnit, long long, double, bool, std::string, BResult, BRange, BQubit, BQubits,
                 BList>
        v;
};

[[noreturn]] void die(const std::string& msg) {
    throw std::runtime_error("brute oracle: " + msg);
}

// Full 2^n x 2^n single-qubit gate operator, built entry by entry.
std::vector<std::vector<C>> fullGate(int n, int wire, const C g[2][2]) {
    size_t dim = size_t{1} << n;
    std::vector<std::vector<C>> m(dim, std::vector<C>(dim, C(0, 0)));
    size_t bit = size_t{1} << wire;
    for (size_t r = 0; r < dim; ++r)
        for (size_t c = 0; c < dim; ++c)
            if ((r & ~bit) == (c & ~bit)) m[r][c] = g[(r & bit) ? 1 : 0][(c & bit) ? 1 : 0];
    return m;
}

std::vector<std::vector<C>> fullControlledX(int n, const std::vector<int>& controls, int target) {
    size_t dim = size_t{1} << n;
    std::vector<std::vector<C>> m(dim, std::vector<C>(dim, C(0, 0)));
    size_t controlMask = 0;
    for (int c : controls) controlMask |= size_t{1} << c;
    size_t targetBit = size_t{1} << target;
    for (size_t c = 0; c < dim; ++c) {
        size_t r = ((c & controlMask) == controlMask) ? (c ^ targetBit) : c;
        m[r][c] = 1;
    }
    return m;
}

State applyMatrix(const std::vector<std::vector<C>>& m, const State& s) {
    State out(s.size(), C(0, 0));
    for (size_t r = 0; r < s.size(); ++r)
        for (size_t c = 0; c < s.size(); ++c) out[r] += m[r][c] * s[c];
    return out;
}

double normSquared(const State& s) {
    double n = 0;
    for (const auto& a : s) n += std::norm(a);
    return n;
}

const C kH[2][2] = {{1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2},
                    {1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2}};
const C kX[2][2] = {{0, 1}, {1, 0}};
const C kY[2][2] = {{0, C(0, -1)}, {C(0, 1), 0}};
const C kZ[2][2] = {{1, 0}, {0, -1}};
const C kS[2][2] = {{1, 0}, {0, C(0, 1)}};
const C kT[2][2] = {{1, 0}, {0, C(1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2)}};

const C (*gateByName(const std::string& name))[2] {
    if (name == "H") return kH;
    if (name == "X") return kX;
    if (name == "Y") return kY;
    if (name == "Z") return kZ;
    if (name == "S") return kS;
    if (name == "T") return kT;
    die("unknown gate " + name);
}

/// Whole-machine snapshot, including the variable environment; forked bodily
/// at measurements. Scopes are a flat stack (sound for resolver-checked
/// programs).
struct Machine {
    State state{C(1, 0)};
    int wires = 0;
    std::vector<bool> measured;
    std::vector<std::string> trace;
    std::vector<std::map<std::string, BVal>> scopes;
};

BVal* findVar(Machine& m, const std::string& name) {
    for (auto it = m.scopes.rbegin(); it != m.scopes.rend(); ++it) {
        auto found = it->find(name);
        if (found != it->end()) return &found->second;
    }
    return nullptr;
}

class BruteInterp {
public:
    BruteInterp(const Program& p, BruteDistribution& out) : program_(p), out_(out) {}

    void start(const Callable& entry) {
        Machine m;
        m.scopes.emplace_back();
        runBlock(std::move(m), entry.body, namespaceOf(entry),
                 [this](Machine final, std::optional<BVal>) {
                     out_.probabilities[final.trace] += normSquared(final.state);
                 });
    }

private:
    const Program& program_;
    BruteDistribution& out_;

    // Execution is continuation-passing so one measurement can fork the
    // entire remaining computation per outcome. All continuations run
    // synchronously.
    using BlockCont = std::function<void(Machine, std::optional<BVal>)>;
    using ValCont = std::function<void(Machine, BVal)>;

    const Namespace& namespaceOf(const Callable& c) const {
        for (const auto& ns : program_.namespaces)
            for (const auto& cand : ns.callables)
                if (&cand == &c) return ns;
        die("callable without namespace");
    }

    void runBlock(Machine m, const Block& b, const Namespace& ns, const BlockCont& done) {
        m.scopes.emplace_back();
        runStmts(std::move(m), b.stmts, 0, ns, [done](Machine after, std::optional<BVal> ret) {
            after.scopes.pop_back();
            done(std::move(after), std::move(ret));
        });
    }

    void runStmts(Machine m, const std::vector<StmtPtr>& stmts, size_t i, const Namespace& ns,
                  const BlockCont& done) {
        if (i == stmts.size()) {
            done(std::move(m), std::nullopt);
            return;
        }
        runStmt(std::move(m), *stmts[i], ns,
                [this, &stmts, i, &ns, done](Machine after, std::optional<BVal> ret) {
                    if (ret) {
                        done(std::move(after), std::move(ret));
                        return;
                    }
                    runStmts(std::move(after), stmts, i + 1, ns, done);
                });
    }

    void runStmt(Machine m, const Stmt& s, const Namespace& ns, const BlockCont& done) {
        if (const auto* let = s.as<LetStmt>()) {
            evalExpr(std::move(m), *let->value, ns, [let, done](Machine after, BVal v) {
                after.scopes.back()[let->name] = std::move(v);
                done(std::move(after), std::nullopt);
            });
            return;
        }
        if (const auto* mut = s.as<MutableStmt>()) {
            evalExpr(std::move(m), *mut->value, ns, [mut, done](Machine after, BVal v) {
                after.scopes.back()[mut->name] = std::move(v);
                done(std::move(after), std::nullopt);
            });
            return;
        }
        if (const auto* set = s.as<SetStmt>()) {
            evalExpr(std::move(m), *set->value, ns, [set, done](Machine after, BVal v) {
                BVal* slot = findVar(after, set->name);
                if (!slot) die("unresolved set target " + set->name);
                *slot = std::move(v);
                done(std::move(after), std::nullopt);
            });
            return;
        }
        if (const auto* use = s.as<UsingStmt>()) {
            auto allocAndRun = [this, use, &ns, done](Machine after, long long count) {
                int first = after.wires;
                for (long long k = 0; k < count; ++k) {
                    State grown(after.state.size() * 2, C(0, 0));
                    for (size_t i = 0; i < after.state.size(); ++i) grown[i] = after.state[i];
                    after.state = std::move(grown);
                    after.wires += 1;
                    after.measured.push_back(false);
                }
                after.scopes.emplace_back();
                if (use->count) {
                    BQubits qs;
                    for (long long k = 0; k < count; ++k)
                        qs.wires.push_back(first + static_cast<int>(k));
                    after.scopes.back()[use->name] = BVal{qs};
                } else {
                    after.scopes.back()[use->name] = BVal{BQubit{first}};
                }
                runBlock(std::move(after), use->body, ns,
                         [this, first, done](Machine finished, std::optional<BVal> ret) {
                             finished.scopes.pop_back();
                             releaseDownTo(finished, first);
                             done(std::move(finished), std::move(ret));
                         });
            };
            if (use->count) {
                evalExpr(std::move(m), *use->count, ns, [allocAndRun](Machine after, BVal v) {
                    const auto* i = std::get_if<long long>(&v.v);
                    if (!i || *i < 0) die("bad qubit count");
                    allocAndRun(std::move(after), *i);
                });
            } else {
                allocAndRun(std::move(m), 1);
            }
            return;
        }
        if (const auto* loop = s.as<ForStmt>()) {
            evalExpr(std::move(m), *loop->range, ns,
                     [this, loop, &ns, done](Machine after, BVal v) {
                         const auto* r = std::get_if<BRange>(&v.v);
                         if (!r) die("for expects range");
                         runLoop(std::move(after), *loop, r->lo, r->hi, ns, done);
                     });
            return;
        }
        if (const auto* cond = s.as<IfStmt>()) {
            runIf(std::move(m), *cond, 0, ns, done);
            return;
        }
        if (const auto* ret = s.as<ReturnStmt>()) {
            evalExpr(std::move(m), *ret->value, ns, [done](Machine after, BVal v) {
                done(std::move(after), std::move(v));
            });
            return;
        }
        const auto* call = s.as<CallStmt>();
        if (!call) die("unsupported statement");
        evalExpr(std::move(m), *call->call, ns,
                 [done](Machine after, BVal) { done(std::move(after), std::nullopt); });
    }

    void runLoop(Machine m, const ForStmt& loop, long long i, long long hi, const Namespace& ns,
                 const BlockCont& done) {
        if (i > hi) {
            done(std::move(m), std::nullopt);
            return;
        }
        m.scopes.emplace_back();
        m.scopes.back()[loop.var] = BVal{i};
        runBlock(std::move(m), loop.body, ns,
                 [this, &loop, i, hi, &ns, done](Machine after, std::optional<BVal> ret) {
                     after.scopes.pop_back();
                     if (ret) {
                         done(std::move(after), std::move(ret));
                         return;
                     }
                     runLoop(std::move(after), loop, i + 1, hi, ns, done);
                 });
    }

    void runIf(Machine m, const IfStmt& s, size_t armIndex, const Namespace& ns,
               const BlockCont& done) {
        const Expr* cond = armIndex == 0                  ? s.cond.get()
                           : armIndex <= s.elifs.size()   ? s.elifs[armIndex - 1].cond.get()
                                                          : nullptr;
        if (!cond) {
            if (s.elseBlock) {
                runBlock(std::move(m), *s.elseBlock, ns, done);
            } else {
                done(std::move(m), std::nullopt);
            }
            return;
        }
        evalExpr(std::move(m), *cond, ns,
                 [this, &s, armIndex, &ns, done](Machine after, BVal v) {
                     const bool* b = std::get_if<bool>(&v.v);
                     if (!b) die("condition must be Bool");
                     if (*b) {
                         const Block& body = armIndex == 0 ? s.then : s.elifs[armIndex - 1].body;
                         runBlock(std::move(after), body, ns, done);
                     } else {
                         runIf(std::move(after), s, armIndex + 1, ns, done);
                     }
                 });
    }

    void releaseDownTo(Machine& m, int first) {
        double total = normSquared(m.state);
        for (int w = m.wires - 1; w >= first; --w) {
            size_t bit = size_t{1} << w;
            double pOne = 0;
            for (size_t k = 0; k < m.state.size(); ++k)
                if (k & bit) pOne += std::norm(m.state[k]);
            bool value;
            if (total <= 0 || pOne <= 1e-9 * total) {
                value = false;
            } else if (pOne >= (1 - 1e-9) * total && m.measured[static_cast<size_t>(w)]) {
                value = true;
            } else {
                die("release of a non-zero unmeasured qubit");
            }
            State next(m.state.size() / 2);
            for (size_t k = 0; k < next.size(); ++k) {
                size_t low = k & (bit - 1);
                size_t high = (k & ~(bit - 1)) << 1;
                next[k] = m.state[high | (value ? bit : 0) | low];
            }
            m.state = std::move(next);
            m.wires -= 1;
            m.measured.pop_back();
        }
    }

    void evalList(Machine m, const std::vector<ExprPtr>& exprs, size_t i, std::vector<BVal> acc,
                  const Namespace& ns,
                  const std::function<void(Machine, std::vector<BVal>)>& done) {
        if (i == exprs.size()) {
            done(std::move(m), std::move(acc));
            return;
        }
        evalExpr(std::move(m), *exprs[i], ns,
                 [this, &exprs, i, acc = std::move(acc), &ns, done](Machine after,
                                                                    BVal v) mutable {
                     acc.push_back(std::move(v));
                     evalList(std::move(after), exprs, i + 1, std::move(acc), ns, done);
                 });
    }

    void measure(Machine m, int wire, const std::function<void(Machine, bool)>& done) {
        size_t bit = size_t{1} << wire;
        // fork: project onto both outcomes without renormalizing
        Machine zero = m;
        Machine one = std::move(m);
        for (size_t k = 0; k < zero.state.size(); ++k) {
            if (k & bit)
                zero.state[k] = 0;
            else
                one.state[k] = 0;
        }
        zero.measured[static_cast<size_t>(wire)] = true;
        one.measured[static_cast<size_t>(wire)] = true;
        if (normSquared(zero.state) > 0) done(std::move(zero), false);
        if (normSquared(one.state) > 0) done(std::move(one), true);
    }

    void measureSeq(Machine m, std::vector<int> wires, size_t i, BList acc, const ValCont& done) {
        if (i == wires.size()) {
            done(std::move(m), BVal{std::move(acc)});
            return;
        }
        int wire = wires[i];
        measure(std::move(m), wire,
                [this, wires, i, acc, done](Machine forked, bool one) {
                    BList next = acc;
                    next.push_back(BVal{BResult{one}});
                    measureSeq(std::move(forked), wires, i + 1, std::move(next), done);
                });
    }

    void evalInterp(Machine m, const InterpString& interp, size_t i, std::string acc,
                    const Namespace& ns, const ValCont& done) {
        if (i == interp.parts.size()) {
            done(std::move(m), BVal{acc});
            return;
        }
        const auto& part = interp.parts[i];
        if (!part.expr) {
            evalInterp(std::move(m), interp, i + 1, acc + part.text, ns, done);
            return;
        }
        evalExpr(std::move(m), *part.expr, ns,
                 [this, &interp, i, acc = std::move(acc), &ns, done](Machine after,
                                                                     BVal v) mutable {
                     evalInterp(std::move(after), interp, i + 1, acc + render(v), ns, done);
                 });
    }

    static std::string render(const BVal& v) {
        return std::visit(
            [](const auto& x) -> std::string {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, BUnit>) {
                    return "()";
                } else if constexpr (std::is_same_v<T, long long>) {
                    return std::to_string(x);
                } else if constexpr (std::is_same_v<T, double>) {
                    char buf[64];
                    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
                    std::string s(buf, p);
                    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos)
                        s += ".0";
                    return s;
                } else if constexpr (std::is_same_v<T, bool>) {
                    return x ? "true" : "false";
                } else if constexpr (std::is_same_v<T, std::string>) {
                    return x;
                } else if constexpr (std::is_same_v<T, BResult>) {
                    return x.one ? "One" : "Zero";
                } else if constexpr (std::is_same_v<T, BRange>) {
                    return std::to_string(x.lo) + ".." + std::to_string(x.hi);
                } else if constexpr (std::is_same_v<T, BQubit> || std::is_same_v<T, BQubits>) {
                    return "<qubit>";
                } else {
                    static_assert(std::is_same_v<T, BList>);
                    std::string out = "[";
                    for (size_t i = 0; i < x.size(); ++i) {
                        if (i > 0) out += ", ";
                        out += render(x[i]);
                    }
                    return out + "]";
                }
            },
            v.v);
    }

    static BVal applyBinary(BinaryOp op, const BVal& lhs, const BVal& rhs) {
        const auto* li = std::get_if<long long>(&lhs.v);
        const auto* ri = std::get_if<long long>(&rhs.v);
        if (li && ri) {
            switch (op) {
                case BinaryOp::Add: return BVal{*li + *ri};
                case BinaryOp::Sub: return BVal{*li - *ri};
                case BinaryOp::Mul: return BVal{*li * *ri};
                case BinaryOp::Div:
                    if (*ri == 0) die("division by zero");
                    return BVal{*li / *ri};
                case BinaryOp::Mod:
                    if (*ri == 0) die("division by zero");
                    return BVal{*li % *ri};
                case BinaryOp::Eq: return BVal{*li == *ri};
                case BinaryOp::Ne: return BVal{*li != *ri};
                case BinaryOp::Lt: return BVal{*li < *ri};
                case BinaryOp::Le: return BVal{*li <= *ri};
                case BinaryOp::Gt: return BVal{*li > *ri};
                case BinaryOp::Ge: return BVal{*li >= *ri};
                default: die("bad int op");
            }
        }
        const auto* lb = std::get_if<bool>(&lhs.v);
        const auto* rb = std::get_if<bool>(&rhs.v);
        if (lb && rb) {
            switch (op) {
                case BinaryOp::And: return BVal{*lb && *rb};
                case BinaryOp::Or: return BVal{*lb || *rb};
                case BinaryOp::Eq: return BVal{*lb == *rb};
                case BinaryOp::Ne: return BVal{*lb != *rb};
                default: die("bad bool op");
            }
        }
        const auto* lr = std::get_if<BResult>(&lhs.v);
        const auto* rr = std::get_if<BResult>(&rhs.v);
        if (lr && rr) {
            if (op == BinaryOp::Eq) return BVal{lr->one == rr->one};
            if (op == BinaryOp::Ne) return BVal{lr->one != rr->one};
            die("bad result op");
        }
        const auto* ls = std::get_if<std::string>(&lhs.v);
        const auto* rs = std::get_if<std::string>(&rhs.v);
        if (ls && rs) {
            if (op == BinaryOp::Eq) return BVal{*ls == *rs};
            if (op == BinaryOp::Ne) return BVal{*ls != *rs};
            die("bad string op");
        }
        const auto* ld = std::get_if<double>(&lhs.v);
        const auto* rd = std::get_if<double>(&rhs.v);
        if (ld && rd) {
            switch (op) {
                case BinaryOp::Add: return BVal{*ld + *rd};
                case BinaryOp::Sub: return BVal{*ld - *rd};
                case BinaryOp::Mul: return BVal{*ld * *rd};
                case BinaryOp::Div: return BVal{*ld / *rd};
                case BinaryOp::Eq: return BVal{*ld == *rd};
                case BinaryOp::Ne: return BVal{*ld != *rd};
                case BinaryOp::Lt: return BVal{*ld < *rd};
                case BinaryOp::Le: return BVal{*ld <= *rd};
                case BinaryOp::Gt: return BVal{*ld > *rd};
                case BinaryOp::Ge: return BVal{*ld >= *rd};
                default: die("bad double op");
            }
        }
        die("mismatched operands");
    }

    void evalExpr(Machine m, const Expr& e, const Namespace& ns, const ValCont& done) {
        if (const auto* lit = e.as<IntLit>()) {
            done(std::move(m), BVal{lit->value});
            return;
        }
        if (const auto* lit = e.as<DoubleLit>()) {
            done(std::move(m), BVal{lit->value});
            return;
        }
        if (const auto* lit = e.as<BoolLit>()) {
            done(std::move(m), BVal{lit->value});
            return;
        }
        if (const auto* lit = e.as<StringLit>()) {
            done(std::move(m), BVal{lit->value});
            return;
        }
        if (const auto* id = e.as<Ident>()) {
            BVal* v = findVar(m, id->name);
            if (!v) die("unresolved " + id->name);
            BVal copy = *v;
            done(std::move(m), std::move(copy));
            return;
        }
        if (const auto* interp = e.as<InterpString>()) {
            evalInterp(std::move(m), *interp, 0, "", ns, done);
            return;
        }
        if (const auto* arr = e.as<ArrayLit>()) {
            evalList(std::move(m), arr->items, 0, {}, ns,
                     [done](Machine after, std::vector<BVal> items) {
                         if (!items.empty() && std::holds_alternative<BQubit>(items[0].v)) {
                             BQubits qs;
                             for (const auto& item : items)
                                 qs.wires.push_back(std::get<BQubit>(item.v).wire);
                             done(std::move(after), BVal{qs});
                             return;
                         }
                         done(std::move(after), BVal{BList{std::move(items)}});
                     });
            return;
        }
        if (const auto* idx = e.as<IndexExpr>()) {
            evalExpr(std::move(m), *idx->base, ns,
                     [this, idx, &ns, done](Machine after, BVal base) {
                         evalExpr(std::move(after), *idx->index, ns,
                                  [base = std::move(base), done](Machine after2, BVal iv) {
                                      const auto* i = std::get_if<long long>(&iv.v);
                                      if (!i) die("index must be Int");
                                      if (const auto* qs = std::get_if<BQubits>(&base.v)) {
                                          done(std::move(after2),
                                               BVal{BQubit{qs->wires.at(static_cast<size_t>(*i))}});
                                          return;
                                      }
                                      const auto* list = std::get_if<BList>(&base.v);
                                      if (!list) die("cannot index");
                                      done(std::move(after2), list->at(static_cast<size_t>(*i)));
                                  });
                     });
            return;
        }
        if (const auto* slice = e.as<SliceExpr>()) {
            evalExpr(std::move(m), *slice->base, ns,
                     [this, slice, &ns, done](Machine after, BVal base) {
                         evalExpr(std::move(after), *slice->range, ns,
                                  [base = std::move(base), done](Machine after2, BVal rv) {
                                      const auto* r = std::get_if<BRange>(&rv.v);
                                      if (!r) die("slice expects range");
                                      if (const auto* qs = std::get_if<BQubits>(&base.v)) {
                                          BQubits out;
                                          for (long long i = r->lo; i <= r->hi; ++i)
                                              out.wires.push_back(
                                                  qs->wires.at(static_cast<size_t>(i)));
                                          done(std::move(after2), BVal{out});
                                          return;
                                      }
                                      const auto* list = std::get_if<BList>(&base.v);
                                      if (!list) die("cannot slice");
                                      BList out;
                                      for (long long i = r->lo; i <= r->hi; ++i)
                                          out.push_back(list->at(static_cast<size_t>(i)));
                                      done(std::move(after2), BVal{out});
                                  });
                     });
            return;
        }
        if (const auto* range = e.as<RangeExpr>()) {
            evalExpr(std::move(m), *range->lo, ns,
                     [this, range, &ns, done](Machine after, BVal lo) {
                         evalExpr(std::move(after), *range->hi, ns,
                                  [lo = std::move(lo), done](Machine after2, BVal hi) {
                                      const auto* l = std::get_if<long long>(&lo.v);
                                      const auto* h = std::get_if<long long>(&hi.v);
                                      if (!l || !h) die("range bounds must be Int");
                                      done(std::move(after2), BVal{BRange{*l, *h}});
                                  });
                     });
            return;
        }
        if (const auto* bin = e.as<BinaryExpr>()) {
            evalExpr(std::move(m), *bin->lhs, ns,
                     [this, bin, &ns, done](Machine after, BVal lhs) {
                         evalExpr(std::move(after), *bin->rhs, ns,
                                  [bin, lhs = std::move(lhs), done](Machine after2, BVal rhs) {
                                      done(std::move(after2), applyBinary(bin->op, lhs, rhs));
                                  });
                     });
            return;
        }
        if (const auto* un = e.as<UnaryExpr>()) {
            evalExpr(std::move(m), *un->operand, ns, [un, done](Machine after, BVal v) {
                if (un->op == UnaryOp::Neg) {
                    if (const auto* i = std::get_if<long long>(&v.v)) {
                        done(std::move(after), BVal{-*i});
                        return;
                    }
                    if (const auto* d = std::get_if<double>(&v.v)) {
                        done(std::move(after), BVal{-*d});
                        return;
                    }
                    die("cannot negate");
                }
                const bool* b = std::get_if<bool>(&v.v);
                if (!b) die("not expects Bool");
                done(std::move(after), BVal{!*b});
            });
            return;
        }
        if (const auto* ctl = e.as<ControlledApply>()) {
            evalExpr(std::move(m), *ctl->controls, ns,
                     [this, ctl, &ns, done](Machine after, BVal controls) {
                         evalExpr(std::move(after), *ctl->args.at(0), ns,
                                  [controls = std::move(controls), done](Machine after2,
                                                                          BVal target) {
                                      const auto* cs = std::get_if<BQubits>(&controls.v);
                                      const auto* t = std::get_if<BQubit>(&target.v);
                                      if (!cs || !t) die("Controlled expects qubits");
                                      for (int c : cs->wires)
                                          if (c == t->wire) die("controls overlap target");
                                      auto op = fullControlledX(after2.wires, cs->wires, t->wire);
                                      after2.state = applyMatrix(op, after2.state);
                                      for (int c : cs->wires)
                                          after2.measured[static_cast<size_t>(c)] = false;
                                      after2.measured[static_cast<size_t>(t->wire)] = false;
                                      done(std::move(after2), BVal{BUnit{}});
                                  });
                     });
            return;
        }
        const auto* call = e.as<CallExpr>();
        if (!call) die("unsupported expression");
        evalCall(std::move(m), *call, ns, done);
    }

    void evalCall(Machine m, const CallExpr& call, const Namespace& ns, const ValCont& done) {
        const auto* calleeIdent = call.callee->as<Ident>();
        if (!calleeIdent) die("callee must be a name");
        const std::string& name = calleeIdent->name;

        if (name == "M") {
            evalExpr(std::move(m), *call.args.at(0), ns, [this, done](Machine after, BVal q) {
                const auto* qq = std::get_if<BQubit>(&q.v);
                if (!qq) die("M expects a qubit");
                measure(std::move(after), qq->wire, [done](Machine forked, bool one) {
                    done(std::move(forked), BVal{BResult{one}});
                });
            });
            return;
        }
        if (name == "MultiM") {
            // expanded into a sequence of single-qubit measurements
            evalExpr(std::move(m), *call.args.at(0), ns, [this, done](Machine after, BVal qs) {
                const auto* arr = std::get_if<BQubits>(&qs.v);
                if (!arr) die("MultiM expects a qubit array");
                measureSeq(std::move(after), arr->wires, 0, BList{}, done);
            });
            return;
        }
        if (name == "Reset") {
            evalExpr(std::move(m), *call.args.at(0), ns, [this, done](Machine after, BVal q) {
                const auto* qq = std::get_if<BQubit>(&q.v);
                if (!qq) die("Reset expects a qubit");
                int wire = qq->wire;
                measure(std::move(after), wire, [wire, done](Machine forked, bool one) {
                    if (one) {
                        auto op = fullGate(forked.wires, wire, kX);
                        forked.state = applyMatrix(op, forked.state);
                        forked.measured[static_cast<size_t>(wire)] = false;
                    }
                    done(std::move(forked), BVal{BUnit{}});
                });
            });
            return;
        }
        if (name == "Message") {
            evalExpr(std::move(m), *call.args.at(0), ns, [done](Machine after, BVal v) {
                const auto* s = std::get_if<std::string>(&v.v);
                if (!s) die("Message expects a string");
                after.trace.push_back(*s);
                done(std::move(after), BVal{BUnit{}});
            });
            return;
        }
        if (name == "ResultArrayAsInt") {
            evalExpr(std::move(m), *call.args.at(0), ns, [done](Machine after, BVal v) {
                const auto* list = std::get_if<BList>(&v.v);
                if (!list) die("ResultArrayAsInt expects Result[]");
                long long out = 0;
                for (size_t i = 0; i < list->size(); ++i)
                    if (std::get<BResult>((*list)[i].v).one) out |= 1LL << i;
                done(std::move(after), BVal{out});
            });
            return;
        }
        if (name == "ApplyToEach") {
            const auto* gateIdent = call.args.at(0)->as<Ident>();
            if (!gateIdent) die("ApplyToEach expects a gate name");
            auto g = gateByName(gateIdent->name);
            evalExpr(std::move(m), *call.args.at(1), ns, [g, done](Machine after, BVal v) {
                const auto* qs = std::get_if<BQubits>(&v.v);
                if (!qs) die("ApplyToEach expects qubits");
                for (int w : qs->wires) {
                    auto op = fullGate(after.wires, w, g);
                    after.state = applyMatrix(op, after.state);
                    after.measured[static_cast<size_t>(w)] = false;
                }
                done(std::move(after), BVal{BUnit{}});
            });
            return;
        }
        if (name == "CNOT" || name == "CCNOT") {
            evalList(std::move(m), call.args, 0, {}, ns,
                     [done](Machine after, std::vector<BVal> args) {
                         std::vector<int> wires;
                         for (const auto& a : args) wires.push_back(std::get<BQubit>(a.v).wire);
                         for (size_t i = 0; i < wires.size(); ++i)
                             for (size_t j = i + 1; j < wires.size(); ++j)
                                 if (wires[i] == wires[j]) die("duplicate operand");
                         std::vector<int> controls(wires.begin(), wires.end() - 1);
                         auto op = fullControlledX(after.wires, controls, wires.back());
                         after.state = applyMatrix(op, after.state);
                         for (int w : wires) after.measured[static_cast<size_t>(w)] = false;
                         done(std::move(after), BVal{BUnit{}});
                     });
            return;
        }
        if (name == "H" || name == "X" || name == "Y" || name == "Z" || name == "S" ||
            name == "T") {
            auto g = gateByName(name);
            evalExpr(std::move(m), *call.args.at(0), ns, [g, done](Machine after, BVal v) {
                const auto* q = std::get_if<BQubit>(&v.v);
                if (!q) die("gate expects a qubit");
                auto op = fullGate(after.wires, q->wire, g);
                after.state = applyMatrix(op, after.state);
                after.measured[static_cast<size_t>(q->wire)] = false;
                done(std::move(after), BVal{BUnit{}});
            });
            return;
        }

        // user callable: search the calling namespace and its opens
        const Callable* callee = nullptr;
        auto searchIn = [&](const Namespace& cand) {
            for (const auto& c : cand.callables)
                if (c.name == name) callee = &c;
        };
        searchIn(ns);
        for (const auto& open : ns.opens)
            for (const auto& cand : program_.namespaces)
                if (cand.name == open) searchIn(cand);
        if (!callee) die("unresolved callable " + name);
        const Callable* resolved = callee;
        evalList(std::move(m), call.args, 0, {}, ns,
                 [this, resolved, done](Machine after, std::vector<BVal> args) {
                     // flat scope stack: push a frame barrier scope with the
                     // parameters; valid programs only reference names that
                     // resolve correctly this way
                     after.scopes.emplace_back();
                     for (size_t i = 0; i < resolved->params.size(); ++i)
                         after.scopes.back()[resolved->params[i].name] = std::move(args[i]);
                     const Namespace& calleeNs = namespaceOf(*resolved);
                     runBlock(std::move(after), resolved->body, calleeNs,
                              [resolved, done](Machine finished, std::optional<BVal> ret) {
                                  finished.scopes.pop_back();
                                  if (ret) {
                                      done(std::move(finished), std::move(*ret));
                                      return;
                                  }
                                  if (resolved->returnType != Type::unit())
                                      die(resolved->name + " ended without return");
                                  done(std::move(finished), BVal{BUnit{}});
                              });
                 });
    }
};

}  // namespace

BruteDistribution bruteForceDistribution(const Program& p, const std::string& entry) {
    const Callable* entryDecl = nullptr;
    for (const auto& ns : p.namespaces)
        for (const auto& c : ns.callables)
            if (c.name == entry) entryDecl = &c;
    if (!entryDecl) die("entry not found");
    if (!entryDecl->params.empty()) die("entry must be parameterless");
    BruteDistribution out;
    BruteInterp interp(p, out);
    interp.start(*entryDecl);
    return out;
}

}  // namespace qrt::testing
