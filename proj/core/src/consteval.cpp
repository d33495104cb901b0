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

#include "qrt/consteval.hpp"

#include <limits>

namespace qrt::syntax {

std::optional<long long> evalConstInt(const Expr& e) {
    if (const auto* lit = e.as<IntLit>()) return lit->value;
    if (const auto* u = e.as<UnaryExpr>()) {
        if (u->op != UnaryOp::Neg) return std::nullopt;
        auto v = evalConstInt(*u->operand);
        if (!v || *v == std::numeric_limits<long long>::min()) return std::nullopt;
        return -*v;
    }
    if (const auto* b = e.as<BinaryExpr>()) {
        auto l = evalConstInt(*b->lhs);
        auto r = evalConstInt(*b->rhs);
        if (!l || !r) return std::nullopt;
        switch (b->op) {
            case BinaryOp::Add:
                if (__builtin_add_overflow_p(*l, *r, (long long)0)) return std::nullopt;
                return *l + *r;
            case BinaryOp::Sub:
                if (__builtin_sub_overflow_p(*l, *r, (long long)0)) return std::nullopt;
                return *l - *r;
            case BinaryOp::Mul:
                if (__builtin_mul_overflow_p(*l, *r, (long long)0)) return std::nullopt;
                return *l * *r;
            case BinaryOp::Div:
                if (*r == 0 || (*l == std::numeric_limits<long long>::min() && *r == -1))
                    return std::nullopt;
                return *l / *r;
            case BinaryOp::Mod:
                if (*r == 0 || (*l == std::numeric_limits<long long>::min() && *r == -1))
                    return std::nullopt;
                return *l % *r;
            default: return std::nullopt;
        }
    }
    return std::nullopt;
}

std::optional<bool> evalConstBool(const Expr& e) {
    if (const auto* lit = e.as<BoolLit>()) return lit->value;
    if (const auto* u = e.as<UnaryExpr>()) {
        if (u->op != UnaryOp::Not) return std::nullopt;
        auto v = evalConstBool(*u->operand);
        if (!v) return std::nullopt;
        return !*v;
    }
    if (const auto* b = e.as<BinaryExpr>()) {
        switch (b->op) {
            case BinaryOp::And:
            case BinaryOp::Or: {
                auto l = evalConstBool(*b->lhs);
                auto r = evalConstBool(*b->rhs);
                if (!l || !r) return std::nullopt;
                return b->op == BinaryOp::And ? (*l && *r) : (*l || *r);
            }
            case BinaryOp::Eq:
            case BinaryOp::Ne:
            case BinaryOp::Lt:
            case BinaryOp::Le:
            case BinaryOp::Gt:
            case BinaryOp::Ge: {
                auto l = evalConstInt(*b->lhs);
                auto r = evalConstInt(*b->rhs);
                if (!l || !r) {
                    auto lb = evalConstBool(*b->lhs);
                    auto rb = evalConstBool(*b->rhs);
                    if (lb && rb && b->op == BinaryOp::Eq) return *lb == *rb;
                    if (lb && rb && b->op == BinaryOp::Ne) return *lb != *rb;
                    return std::nullopt;
                }
                switch (b->op) {
                    case BinaryOp::Eq: return *l == *r;
                    case BinaryOp::Ne: return *l != *r;
                    case BinaryOp::Lt: return *l < *r;
                    case BinaryOp::Le: return *l <= *r;
                    case BinaryOp::Gt: return *l > *r;
                    case BinaryOp::Ge: return *l >= *r;
                    default: return std::nullopt;
                }
            }
            default: return std::nullopt;
        }
    }
    return std::nullopt;
}

bool isClosedClassical(const Expr& e) {
    bool closed = true;
    forEachExpr(e, [&closed](const Expr& sub) {
        if (sub.is<Ident>() || sub.is<CallExpr>() || sub.is<ControlledApply>()) closed = false;
    });
    return closed;
}

ExprPtr makeIntExpr(long long value) {
    if (value < 0 && value != std::numeric_limits<long long>::min()) {
        return makeExpr({}, UnaryExpr{UnaryOp::Neg, makeExpr({}, IntLit{-value})});
    }
    return makeExpr({}, IntLit{value});
}

}  // namespace qrt::syntax
