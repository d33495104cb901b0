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

#include "qrt/printer.hpp"

#include <charconv>
#include <sstream>

namespace qrt::syntax {

namespace {

// Binding strength used to decide where parentheses are required.
// Larger binds tighter.
int precedenceOf(const Expr& e) {
    if (const auto* b = e.as<BinaryExpr>()) {
        switch (b->op) {
            case BinaryOp::Or: return 1;
            case BinaryOp::And: return 2;
            case BinaryOp::Eq:
            case BinaryOp::Ne:
            case BinaryOp::Lt:
            case BinaryOp::Le:
            case BinaryOp::Gt:
            case BinaryOp::Ge: return 4;
            case BinaryOp::Add:
            case BinaryOp::Sub: return 6;
            case BinaryOp::Mul:
            case BinaryOp::Div:
            case BinaryOp::Mod: return 7;
        }
    }
    if (e.is<RangeExpr>()) return 5;
    if (const auto* u = e.as<UnaryExpr>()) return u->op == UnaryOp::Not ? 3 : 8;
    return 9;  // literals, idents, postfix forms
}

std::string escapeString(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '\\': out += "\\\\"; break;
            case '"': out += "\\\""; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    return out;
}

std::string formatDouble(double v) {
    // shortest round-tripping form
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, ptr);
    if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
        s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
        s += ".0";
    return s;
}

class Printer {
public:
    std::string run(const Program& p) {
        for (size_t i = 0; i < p.namespaces.size(); ++i) {
            if (i > 0) out_ << "\n";
            printNamespace(p.namespaces[i]);
        }
        return out_.str();
    }

    void printExpr(const Expr& e, int parentPrec = 0) {
        int prec = precedenceOf(e);
        bool parens = prec < parentPrec;
        if (parens) out_ << '(';
        std::visit(
            [this, prec](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, IntLit>) {
                    out_ << n.value;
                } else if constexpr (std::is_same_v<T, DoubleLit>) {
                    out_ << formatDouble(n.value);
                } else if constexpr (std::is_same_v<T, BoolLit>) {
                    out_ << (n.value ? "true" : "false");
                } else if constexpr (std::is_same_v<T, StringLit>) {
                    out_ << '"' << escapeString(n.value) << '"';
                } else if constexpr (std::is_same_v<T, InterpString>) {
                    out_ << "$\"";
                    for (const auto& part : n.parts) {
                        if (part.expr) {
                            out_ << '{';
                            printExpr(*part.expr);
                            out_ << '}';
                        } else {
                            out_ << escapeString(part.text);
                        }
                    }
                    out_ << '"';
                } else if constexpr (std::is_same_v<T, Ident>) {
                    out_ << n.name;
                } else if constexpr (std::is_same_v<T, ArrayLit>) {
                    out_ << '[';
                    for (size_t i = 0; i < n.items.size(); ++i) {
                        if (i > 0) out_ << ", ";
                        printExpr(*n.items[i]);
                    }
                    out_ << ']';
                } else if constexpr (std::is_same_v<T, IndexExpr>) {
                    printExpr(*n.base, 9);
                    out_ << '[';
                    printExpr(*n.index);
                    out_ << ']';
                } else if constexpr (std::is_same_v<T, SliceExpr>) {
                    printExpr(*n.base, 9);
                    out_ << '[';
                    printExpr(*n.range);
                    out_ << ']';
                } else if constexpr (std::is_same_v<T, RangeExpr>) {
                    printExpr(*n.lo, prec + 1);
                    out_ << "..";
                    printExpr(*n.hi, prec + 1);
                } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                    printExpr(*n.lhs, prec);
                    out_ << ' ' << binaryOpToken(n.op) << ' ';
                    printExpr(*n.rhs, prec + 1);
                } else if constexpr (std::is_same_v<T, UnaryExpr>) {
                    out_ << unaryOpToken(n.op);
                    if (n.op == UnaryOp::Not) out_ << ' ';
                    printExpr(*n.operand, prec);
                } else if constexpr (std::is_same_v<T, CallExpr>) {
                    printExpr(*n.callee, 9);
                    out_ << '(';
                    for (size_t i = 0; i < n.args.size(); ++i) {
                        if (i > 0) out_ << ", ";
                        printExpr(*n.args[i]);
                    }
                    out_ << ')';
                } else {
                    static_assert(std::is_same_v<T, ControlledApply>);
                    out_ << "Controlled " << n.gate << '(';
                    printExpr(*n.controls);
                    for (const auto& a : n.args) {
                        out_ << ", ";
                        printExpr(*a);
                    }
                    out_ << ')';
                }
            },
            e.node);
        if (parens) out_ << ')';
    }

    std::string take() { return out_.str(); }

private:
    std::ostringstream out_;
    int indent_ = 0;

    void newline() {
        out_ << '\n';
        for (int i = 0; i < indent_; ++i) out_ << "    ";
    }

    void printComments(const std::vector<std::string>& comments) {
        for (const auto& c : comments) {
            out_ << (c.empty() ? "//" : "// " + c);
            newline();
        }
    }

    void printNamespace(const Namespace& ns) {
        out_ << "namespace " << ns.name << " {";
        ++indent_;
        bool first = true;
        if (!ns.opens.empty()) {
            newline();
            for (size_t i = 0; i < ns.opens.size(); ++i) {
                if (i > 0) newline();
                out_ << "open " << ns.opens[i] << ';';
            }
            first = false;
        }
        for (const auto& c : ns.callables) {
            if (!first) {
                out_ << '\n';  // blank separator line
                newline();
            } else {
                newline();
                first = false;
            }
            printCallable(c);
        }
        --indent_;
        out_ << '\n';
        out_ << "}\n";
    }

    void printCallable(const Callable& c) {
        out_ << (c.kind == CallableKind::Operation ? "operation " : "function ") << c.name << '(';
        for (size_t i = 0; i < c.params.size(); ++i) {
            if (i > 0) out_ << ", ";
            out_ << c.params[i].name << " : " << typeName(c.params[i].type);
        }
        out_ << ") : " << typeName(c.returnType) << ' ';
        printBlock(c.body);
    }

    void printBlock(const Block& b) {
        out_ << '{';
        ++indent_;
        for (const auto& s : b.stmts) {
            newline();
            printStmt(*s);
        }
        for (const auto& c : b.trailingComments) {
            newline();
            out_ << (c.empty() ? "//" : "// " + c);
        }
        --indent_;
        newline();
        out_ << '}';
    }

    void printStmt(const Stmt& s) {
        printComments(s.comments);
        std::visit(
            [this](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, LetStmt>) {
                    out_ << "let " << n.name << " = ";
                    printExpr(*n.value);
                    out_ << ';';
                } else if constexpr (std::is_same_v<T, MutableStmt>) {
                    out_ << "mutable " << n.name << " = ";
                    printExpr(*n.value);
                    out_ << ';';
                } else if constexpr (std::is_same_v<T, SetStmt>) {
                    out_ << "set " << n.name << " = ";
                    printExpr(*n.value);
                    out_ << ';';
                } else if constexpr (std::is_same_v<T, UsingStmt>) {
                    out_ << "using (" << n.name << " = Qubit";
                    if (n.count) {
                        out_ << '[';
                        printExpr(*n.count);
                        out_ << ']';
                    } else {
                        out_ << "()";
                    }
                    out_ << ") ";
                    printBlock(n.body);
                } else if constexpr (std::is_same_v<T, ForStmt>) {
                    out_ << "for (" << n.var << " in ";
                    printExpr(*n.range);
                    out_ << ") ";
                    printBlock(n.body);
                } else if constexpr (std::is_same_v<T, IfStmt>) {
                    out_ << "if (";
                    printExpr(*n.cond);
                    out_ << ") ";
                    printBlock(n.then);
                    for (const auto& arm : n.elifs) {
                        out_ << " elif (";
                        printExpr(*arm.cond);
                        out_ << ") ";
                        printBlock(arm.body);
                    }
                    if (n.elseBlock) {
                        out_ << " else ";
                        printBlock(*n.elseBlock);
                    }
                } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                    out_ << "return ";
                    printExpr(*n.value);
                    out_ << ';';
                } else {
                    static_assert(std::is_same_v<T, CallStmt>);
                    printExpr(*n.call);
                    out_ << ';';
                }
            },
            s.node);
    }
};

}  // namespace

std::string print(const Program& p) {
    Printer printer;
    return printer.run(p);
}

std::string print(const Expr& e) {
    Printer printer;
    printer.printExpr(e);
    return printer.take();
}

std::string print(const Type& t) {
    return typeName(t);
}

std::string summarize(const Stmt& s) {
    std::string line;
    std::visit(
        [&line](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, LetStmt>) {
                line = "let " + n.name + " = " + print(*n.value) + ";";
            } else if constexpr (std::is_same_v<T, MutableStmt>) {
                line = "mutable " + n.name + " = " + print(*n.value) + ";";
            } else if constexpr (std::is_same_v<T, SetStmt>) {
                line = "set " + n.name + " = " + print(*n.value) + ";";
            } else if constexpr (std::is_same_v<T, UsingStmt>) {
                line = "using (" + n.name + " = Qubit" +
                       (n.count ? "[" + print(*n.count) + "]" : std::string("()")) + ") { ... }";
            } else if constexpr (std::is_same_v<T, ForStmt>) {
                line = "for (" + n.var + " in " + print(*n.range) + ") { ... }";
            } else if constexpr (std::is_same_v<T, IfStmt>) {
                line = "if (" + print(*n.cond) + ") { ... }";
            } else if constexpr (std::is_same_v<T, ReturnStmt>) {
                line = "return " + print(*n.value) + ";";
            } else {
                static_assert(std::is_same_v<T, CallStmt>);
                line = print(*n.call) + ";";
            }
        },
        s.node);
    return line;
}

}  // namespace qrt::syntax
