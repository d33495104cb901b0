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

#include "qrt/parser.hpp"

#include "qrt/lexer.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace qrt::syntax {

namespace {

constexpr int kMaxExprDepth = 200;
constexpr int kMaxBlockDepth = 100;
constexpr size_t kMaxDiagnostics = 100;

// Q# constructs recognized but outside the supported subset.
bool isKnownUnsupportedKeyword(std::string_view text) {
    static const std::set<std::string_view> kWords = {
        "use",    "borrow",  "borrowing", "repeat",  "until",   "fixup", "within",
        "apply",  "while",   "newtype",   "adjoint", "Adjoint", "body",  "internal",
        "is",     "auto",    "fail",      "when",    "w/",
    };
    return kWords.count(text) > 0;
}

struct ParseBailout {};

class Parser {
public:
    Parser(std::vector<Token> tokens, std::vector<Diagnostic> lexDiags, std::string_view source,
           FileId file)
        : tokens_(std::move(tokens)), diags_(std::move(lexDiags)), source_(source), file_(file) {}

    Outcome<Program> parseProgram() {
        Program program;
        try {
            while (!check(TokenKind::Eof)) {
                if (check(TokenKind::KwNamespace)) {
                    parseNamespace(program);
                } else {
                    errorHere("'namespace'");
                    advance();
                }
            }
        } catch (const ParseBailout&) {
            // diagnostics already recorded
        }
        checkProgramInvariants(program);
        if (!diags_.empty()) return Outcome<Program>::failure(std::move(diags_));
        return Outcome<Program>::success(std::move(program));
    }

    Outcome<ExprPtr> parseSingleExpression() {
        try {
            ExprPtr e = parseExpr();
            expect(TokenKind::Eof, "end of expression");
            if (diags_.empty()) return Outcome<ExprPtr>::success(std::move(e));
        } catch (const ParseBailout&) {
        }
        if (diags_.empty()) errorHere("invalid expression");
        return Outcome<ExprPtr>::failure(std::move(diags_));
    }

private:
    std::vector<Token> tokens_;
    std::vector<Diagnostic> diags_;
    std::string_view source_;
    FileId file_;
    size_t pos_ = 0;
    int exprDepth_ = 0;
    int blockDepth_ = 0;

    // ------------------------------------------------------------------
    // token plumbing
    // ------------------------------------------------------------------

    const Token& peek(size_t ahead = 0) const {
        size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
        return tokens_[i];
    }

    const Token& previous() const { return tokens_[pos_ > 0 ? pos_ - 1 : 0]; }

    bool check(TokenKind k) const { return peek().kind == k; }

    const Token& advance() {
        if (pos_ + 1 < tokens_.size()) ++pos_;
        return tokens_[pos_ - 1];
    }

    bool match(TokenKind k) {
        if (!check(k)) return false;
        advance();
        return true;
    }

    void report(const char* code, SourceSpan span, std::string msg) {
        diags_.push_back(makeError(code, span, std::move(msg)));
        if (diags_.size() >= kMaxDiagnostics) throw ParseBailout{};
    }

    void errorHere(std::string expected) {
        const Token& t = peek();
        std::ostringstream msg;
        msg << "expected " << expected << ", got " << tokenKindName(t.kind);
        if (t.kind == TokenKind::Ident) msg << " '" << t.text << "'";
        const char* code = diag_code::Syntax;
        if (t.kind == TokenKind::Ident && isKnownUnsupportedKeyword(t.text)) {
            code = diag_code::Unsupported;
            msg.str("");
            msg << "'" << t.text << "' is outside the supported language subset";
        }
        report(code, t.span, msg.str());
    }

    const Token& expect(TokenKind k, std::string what) {
        if (check(k)) return advance();
        bool closer = k == TokenKind::RBrace || k == TokenKind::RParen || k == TokenKind::RBracket;
        if (closer && check(TokenKind::Eof)) {
            report(diag_code::Unbalanced, peek().span,
                   "unbalanced delimiters: expected " + what + " before end of input");
            throw ParseBailout{};
        }
        errorHere(what);
        throw ParseBailout{};
    }

    // Skips ahead to a statement boundary after an error.
    void synchronizeStatement() {
        while (!check(TokenKind::Eof)) {
            if (match(TokenKind::Semicolon)) return;
            if (check(TokenKind::RBrace)) return;
            advance();
        }
    }

    SourceSpan spanFrom(const SourceSpan& start) const {
        SourceSpan s = start;
        const SourceSpan& end = previous().span;
        s.end = end.end;
        s.endLine = end.endLine;
        s.endCol = end.endCol;
        return s;
    }

    // ------------------------------------------------------------------
    // declarations
    // ------------------------------------------------------------------

    std::string parseDottedName() {
        std::string name = expect(TokenKind::Ident, "identifier").text;
        while (match(TokenKind::Dot)) name += "." + expect(TokenKind::Ident, "identifier").text;
        return name;
    }

    void parseNamespace(Program& program) {
        const Token& kw = expect(TokenKind::KwNamespace, "'namespace'");
        Namespace ns;
        SourceSpan start = kw.span;
        const Token& nameTok = peek();
        ns.name = parseDottedName();
        ns.nameSpan = spanFrom(nameTok.span);
        expect(TokenKind::LBrace, "'{'");
        while (match(TokenKind::KwOpen)) {
            ns.opens.push_back(parseDottedName());
            expect(TokenKind::Semicolon, "';'");
        }
        while (!check(TokenKind::RBrace) && !check(TokenKind::Eof)) {
            if (check(TokenKind::KwOperation) || check(TokenKind::KwFunction)) {
                try {
                    ns.callables.push_back(parseCallable());
                } catch (const ParseBailout&) {
                    if (diags_.size() >= kMaxDiagnostics) throw;
                    // skip to the next declaration, stepping over balanced braces
                    int depth = 0;
                    while (!check(TokenKind::Eof)) {
                        if (depth == 0 &&
                            (check(TokenKind::RBrace) || check(TokenKind::KwOperation) ||
                             check(TokenKind::KwFunction)))
                            break;
                        if (check(TokenKind::LBrace)) ++depth;
                        if (check(TokenKind::RBrace)) --depth;
                        advance();
                    }
                }
            } else {
                errorHere("'operation' or 'function'");
                advance();
                while (!check(TokenKind::Eof) && !check(TokenKind::RBrace) &&
                       !check(TokenKind::KwOperation) && !check(TokenKind::KwFunction))
                    advance();
            }
        }
        expect(TokenKind::RBrace, "'}'");
        ns.span = spanFrom(start);
        program.namespaces.push_back(std::move(ns));
    }

    Callable parseCallable() {
        Callable c;
        const Token& kw = advance();  // operation | function
        c.kind = kw.kind == TokenKind::KwOperation ? CallableKind::Operation
                                                   : CallableKind::Function;
        const Token& name = expect(TokenKind::Ident, "callable name");
        c.name = name.text;
        c.nameSpan = name.span;
        expect(TokenKind::LParen, "'('");
        if (!check(TokenKind::RParen)) {
            do {
                Param p;
                const Token& pn = expect(TokenKind::Ident, "parameter name");
                p.name = pn.text;
                p.span = pn.span;
                expect(TokenKind::Colon, "':'");
                p.type = parseType();
                c.params.push_back(std::move(p));
            } while (match(TokenKind::Comma));
        }
        expect(TokenKind::RParen, "')'");
        expect(TokenKind::Colon, "':'");
        c.returnType = parseType();
        c.body = parseBlock();
        c.span = spanFrom(kw.span);
        // duplicate parameter names
        for (size_t i = 0; i < c.params.size(); ++i)
            for (size_t j = i + 1; j < c.params.size(); ++j)
                if (c.params[i].name == c.params[j].name)
                    report(diag_code::Duplicate, c.params[j].span,
                           "duplicate parameter name '" + c.params[j].name + "'");
        return c;
    }

    Type parseType() {
        Type t;
        const Token& tok = peek();
        switch (tok.kind) {
            case TokenKind::KwUnit: t = Type::unit(); break;
            case TokenKind::KwInt: t = Type::integer(); break;
            case TokenKind::KwDouble: t = Type::real(); break;
            case TokenKind::KwBool: t = Type::boolean(); break;
            case TokenKind::KwString: t = Type::string(); break;
            case TokenKind::KwResult: t = Type::result(); break;
            case TokenKind::KwRange: t = Type::range(); break;
            case TokenKind::KwQubit: t = Type::qubit(); break;
            default:
                report(diag_code::UnknownType, tok.span,
                       "unknown type " + std::string(tokenKindName(tok.kind)) +
                           (tok.kind == TokenKind::Ident ? " '" + tok.text + "'" : ""));
                throw ParseBailout{};
        }
        advance();
        while (check(TokenKind::LBracket) && peek(1).kind == TokenKind::RBracket) {
            advance();
            advance();
            if (t.kind == TypeKind::Unit) {
                report(diag_code::UnknownType, tok.span, "array element type cannot be Unit");
                throw ParseBailout{};
            }
            t = Type::array(std::move(t));
        }
        return t;
    }

    // ------------------------------------------------------------------
    // statements
    // ------------------------------------------------------------------

    struct BlockDepthGuard {
        Parser& p;
        explicit BlockDepthGuard(Parser& parser) : p(parser) {
            if (++p.blockDepth_ > kMaxBlockDepth) {
                --p.blockDepth_;
                p.report(diag_code::Syntax, p.peek().span, "blocks nested too deeply");
                throw ParseBailout{};
            }
        }
        ~BlockDepthGuard() { --p.blockDepth_; }
    };

    Block parseBlock() {
        BlockDepthGuard depth(*this);
        Block b;
        const Token& open = expect(TokenKind::LBrace, "'{'");
        SourceSpan start = open.span;
        while (!check(TokenKind::RBrace) && !check(TokenKind::Eof)) {
            size_t before = pos_;
            try {
                b.stmts.push_back(parseStatement());
            } catch (const ParseBailout&) {
                if (diags_.size() >= kMaxDiagnostics) throw;
                synchronizeStatement();
                if (pos_ == before) advance();  // guarantee progress
            }
        }
        const Token& close = expect(TokenKind::RBrace, "'}'");
        b.trailingComments = close.comments;
        b.span = spanFrom(start);
        return b;
    }

    StmtPtr parseStatement() {
        const Token& first = peek();
        std::vector<std::string> comments = first.comments;
        StmtPtr s = parseStatementInner();
        s->comments = std::move(comments);
        return s;
    }

    StmtPtr parseStatementInner() {
        const Token& tok = peek();
        SourceSpan start = tok.span;
        switch (tok.kind) {
            case TokenKind::KwLet:
            case TokenKind::KwMutable:
            case TokenKind::KwSet: {
                advance();
                const Token& name = expect(TokenKind::Ident, "identifier");
                expect(TokenKind::Assign, "'='");
                ExprPtr value = parseExpr();
                expect(TokenKind::Semicolon, "';'");
                StmtNode node;
                if (tok.kind == TokenKind::KwLet)
                    node = LetStmt{name.text, name.span, std::move(value)};
                else if (tok.kind == TokenKind::KwMutable)
                    node = MutableStmt{name.text, name.span, std::move(value)};
                else
                    node = SetStmt{name.text, name.span, std::move(value)};
                return makeStmt(spanFrom(start), std::move(node));
            }
            case TokenKind::KwUsing: {
                advance();
                expect(TokenKind::LParen, "'('");
                const Token& name = expect(TokenKind::Ident, "identifier");
                expect(TokenKind::Assign, "'='");
                expect(TokenKind::KwQubit, "'Qubit'");
                ExprPtr count;
                if (match(TokenKind::LParen)) {
                    expect(TokenKind::RParen, "')'");
                } else if (match(TokenKind::LBracket)) {
                    count = parseExpr();
                    expect(TokenKind::RBracket, "']'");
                } else {
                    errorHere("'(' or '['");
                    throw ParseBailout{};
                }
                expect(TokenKind::RParen, "')'");
                Block body = parseBlock();
                return makeStmt(spanFrom(start),
                                UsingStmt{name.text, name.span, std::move(count), std::move(body)});
            }
            case TokenKind::KwFor: {
                advance();
                expect(TokenKind::LParen, "'('");
                const Token& var = expect(TokenKind::Ident, "loop variable");
                expect(TokenKind::KwIn, "'in'");
                ExprPtr range = parseExpr();
                expect(TokenKind::RParen, "')'");
                Block body = parseBlock();
                return makeStmt(spanFrom(start),
                                ForStmt{var.text, var.span, std::move(range), std::move(body)});
            }
            case TokenKind::KwIf: {
                advance();
                IfStmt node;
                expect(TokenKind::LParen, "'('");
                node.cond = parseExpr();
                expect(TokenKind::RParen, "')'");
                node.then = parseBlock();
                while (match(TokenKind::KwElif)) {
                    IfStmt::Arm arm;
                    expect(TokenKind::LParen, "'('");
                    arm.cond = parseExpr();
                    expect(TokenKind::RParen, "')'");
                    arm.body = parseBlock();
                    node.elifs.push_back(std::move(arm));
                }
                if (match(TokenKind::KwElse)) node.elseBlock = parseBlock();
                return makeStmt(spanFrom(start), std::move(node));
            }
            case TokenKind::KwReturn: {
                advance();
                ExprPtr value = parseExpr();
                expect(TokenKind::Semicolon, "';'");
                return makeStmt(spanFrom(start), ReturnStmt{std::move(value)});
            }
            default: {
                if (tok.kind == TokenKind::Ident && isKnownUnsupportedKeyword(tok.text)) {
                    report(diag_code::Unsupported, tok.span,
                           "'" + tok.text + "' is outside the supported language subset");
                    throw ParseBailout{};
                }
                ExprPtr e = parseExpr();
                expect(TokenKind::Semicolon, "';'");
                if (!e->is<CallExpr>() && !e->is<ControlledApply>()) {
                    report(diag_code::Syntax, e->span, "expression statement must be a call");
                    throw ParseBailout{};
                }
                return makeStmt(spanFrom(start), CallStmt{std::move(e)});
            }
        }
    }

    // ------------------------------------------------------------------
    // expressions
    // ------------------------------------------------------------------

    struct DepthGuard {
        Parser& p;
        explicit DepthGuard(Parser& parser) : p(parser) {
            if (++p.exprDepth_ > kMaxExprDepth) {
                p.report(diag_code::Syntax, p.peek().span, "expression nested too deeply");
                --p.exprDepth_;
                throw ParseBailout{};
            }
        }
        ~DepthGuard() { --p.exprDepth_; }
    };

    ExprPtr parseExpr() {
        DepthGuard guard(*this);
        return parseOr();
    }

    ExprPtr parseOr() {
        ExprPtr lhs = parseAnd();
        while (check(TokenKind::KwOr)) {
            advance();
            ExprPtr rhs = parseAnd();
            SourceSpan s = join(lhs->span, rhs->span);
            lhs = makeExpr(s, BinaryExpr{BinaryOp::Or, std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    ExprPtr parseAnd() {
        ExprPtr lhs = parseNot();
        while (check(TokenKind::KwAnd)) {
            advance();
            ExprPtr rhs = parseNot();
            SourceSpan s = join(lhs->span, rhs->span);
            lhs = makeExpr(s, BinaryExpr{BinaryOp::And, std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    ExprPtr parseNot() {
        DepthGuard guard(*this);
        if (check(TokenKind::KwNot)) {
            SourceSpan start = peek().span;
            advance();
            ExprPtr operand = parseNot();
            SourceSpan s = join(start, operand->span);
            return makeExpr(s, UnaryExpr{UnaryOp::Not, std::move(operand)});
        }
        return parseComparison();
    }

    static std::optional<BinaryOp> comparisonOp(TokenKind k) {
        switch (k) {
            case TokenKind::EqEq: return BinaryOp::Eq;
            case TokenKind::NotEq: return BinaryOp::Ne;
            case TokenKind::Lt: return BinaryOp::Lt;
            case TokenKind::Le: return BinaryOp::Le;
            case TokenKind::Gt: return BinaryOp::Gt;
            case TokenKind::Ge: return BinaryOp::Ge;
            default: return std::nullopt;
        }
    }

    ExprPtr parseComparison() {
        ExprPtr lhs = parseRange();
        if (auto op = comparisonOp(peek().kind)) {
            advance();
            ExprPtr rhs = parseRange();
            SourceSpan s = join(lhs->span, rhs->span);
            lhs = makeExpr(s, BinaryExpr{*op, std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    ExprPtr parseRange() {
        ExprPtr lhs = parseAdditive();
        if (check(TokenKind::DotDot)) {
            advance();
            ExprPtr hi = parseAdditive();
            SourceSpan s = join(lhs->span, hi->span);
            lhs = makeExpr(s, RangeExpr{std::move(lhs), std::move(hi)});
        }
        return lhs;
    }

    ExprPtr parseAdditive() {
        ExprPtr lhs = parseMultiplicative();
        while (check(TokenKind::Plus) || check(TokenKind::Minus)) {
            BinaryOp op = peek().kind == TokenKind::Plus ? BinaryOp::Add : BinaryOp::Sub;
            advance();
            ExprPtr rhs = parseMultiplicative();
            SourceSpan s = join(lhs->span, rhs->span);
            lhs = makeExpr(s, BinaryExpr{op, std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    ExprPtr parseMultiplicative() {
        ExprPtr lhs = parseUnary();
        while (check(TokenKind::Star) || check(TokenKind::Slash) || check(TokenKind::Percent)) {
            BinaryOp op = peek().kind == TokenKind::Star    ? BinaryOp::Mul
                          : peek().kind == TokenKind::Slash ? BinaryOp::Div
                                                            : BinaryOp::Mod;
            advance();
            ExprPtr rhs = parseUnary();
            SourceSpan s = join(lhs->span, rhs->span);
            lhs = makeExpr(s, BinaryExpr{op, std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    ExprPtr parseUnary() {
        DepthGuard guard(*this);
        if (check(TokenKind::Minus)) {
            SourceSpan start = peek().span;
            advance();
            ExprPtr operand = parseUnary();
            SourceSpan s = join(start, operand->span);
            return makeExpr(s, UnaryExpr{UnaryOp::Neg, std::move(operand)});
        }
        return parsePostfix();
    }

    ExprPtr parsePostfix() {
        ExprPtr e = parsePrimary();
        while (true) {
            if (check(TokenKind::LParen)) {
                advance();
                std::vector<ExprPtr> args;
                if (!check(TokenKind::RParen)) {
                    do {
                        args.push_back(parseExpr());
                    } while (match(TokenKind::Comma));
                }
                expect(TokenKind::RParen, "')'");
                SourceSpan s = spanFrom(e->span);
                e = makeExpr(s, CallExpr{std::move(e), std::move(args)});
            } else if (check(TokenKind::LBracket)) {
                advance();
                ExprPtr inner = parseExpr();
                expect(TokenKind::RBracket, "']'");
                SourceSpan s = spanFrom(e->span);
                if (inner->is<RangeExpr>())
                    e = makeExpr(s, SliceExpr{std::move(e), std::move(inner)});
                else
                    e = makeExpr(s, IndexExpr{std::move(e), std::move(inner)});
            } else {
                break;
            }
        }
        return e;
    }

    ExprPtr parsePrimary() {
        DepthGuard guard(*this);
        const Token& tok = peek();
        switch (tok.kind) {
            case TokenKind::IntLit: {
                advance();
                return makeExpr(tok.span, IntLit{tok.intValue});
            }
            case TokenKind::DoubleLit: {
                advance();
                return makeExpr(tok.span, DoubleLit{tok.doubleValue});
            }
            case TokenKind::KwTrue:
            case TokenKind::KwFalse: {
                advance();
                return makeExpr(tok.span, BoolLit{tok.kind == TokenKind::KwTrue});
            }
            case TokenKind::StringLit: {
                advance();
                return makeExpr(tok.span, StringLit{tok.text});
            }
            case TokenKind::InterpStringLit: {
                advance();
                return parseInterpolated(tok);
            }
            case TokenKind::Ident: {
                if (isKnownUnsupportedKeyword(tok.text)) {
                    report(diag_code::Unsupported, tok.span,
                           "'" + tok.text + "' is outside the supported language subset");
                    throw ParseBailout{};
                }
                advance();
                return makeExpr(tok.span, Ident{tok.text});
            }
            case TokenKind::LParen: {
                advance();
                ExprPtr e = parseExpr();
                expect(TokenKind::RParen, "')'");
                return e;
            }
            case TokenKind::LBracket: {
                SourceSpan start = tok.span;
                advance();
                ArrayLit lit;
                if (!check(TokenKind::RBracket)) {
                    do {
                        lit.items.push_back(parseExpr());
                    } while (match(TokenKind::Comma));
                }
                expect(TokenKind::RBracket, "']'");
                return makeExpr(spanFrom(start), std::move(lit));
            }
            case TokenKind::KwControlled: {
                SourceSpan start = tok.span;
                advance();
                const Token& gate = expect(TokenKind::Ident, "gate name");
                expect(TokenKind::LParen, "'('");
                std::vector<ExprPtr> all;
                if (!check(TokenKind::RParen)) {
                    do {
                        all.push_back(parseExpr());
                    } while (match(TokenKind::Comma));
                }
                expect(TokenKind::RParen, "')'");
                if (all.size() < 2) {
                    report(diag_code::Syntax, spanFrom(start),
                           "Controlled application requires controls and a target");
                    throw ParseBailout{};
                }
                ControlledApply node;
                node.gate = gate.text;
                node.gateSpan = gate.span;
                node.controls = std::move(all.front());
                for (size_t i = 1; i < all.size(); ++i) node.args.push_back(std::move(all[i]));
                return makeExpr(spanFrom(start), std::move(node));
            }
            default:
                errorHere("expression");
                throw ParseBailout{};
        }
    }

    // Splits the raw body of `$"..."` into literal and `{expr}` parts. Hole
    // expressions are re-lexed from the body slice with spans shifted to
    // their true file positions.
    ExprPtr parseInterpolated(const Token& tok) {
        InterpString node;
        const std::string& raw = tok.text;
        size_t bodyBegin = tok.span.begin + 2;  // past `$"`
        std::string literal;
        size_t i = 0;
        auto flushLiteral = [&]() {
            if (!literal.empty()) {
                node.parts.push_back({std::move(literal), nullptr});
                literal.clear();
            }
        };
        while (i < raw.size()) {
            char c = raw[i];
            if (c == '\\' && i + 1 < raw.size()) {
                char esc = raw[i + 1];
                switch (esc) {
                    case 'n': literal += '\n'; break;
                    case 't': literal += '\t'; break;
                    case 'r': literal += '\r'; break;
                    case '\\': literal += '\\'; break;
                    case '"': literal += '"'; break;
                    default: literal += esc; break;
                }
                i += 2;
                continue;
            }
            if (c == '}') {
                report(diag_code::Syntax, tok.span, "unmatched '}' in interpolated string");
                throw ParseBailout{};
            }
            if (c != '{') {
                literal += c;
                ++i;
                continue;
            }
            // hole
            size_t holeStart = i + 1;
            int depth = 1;
            size_t j = holeStart;
            while (j < raw.size() && depth > 0) {
                if (raw[j] == '{') ++depth;
                if (raw[j] == '}') --depth;
                ++j;
            }
            if (depth != 0) {
                report(diag_code::Unbalanced, tok.span, "unbalanced '{' in interpolated string");
                throw ParseBailout{};
            }
            size_t holeEnd = j - 1;  // at the matching '}'
            flushLiteral();
            std::string holeText = raw.substr(holeStart, holeEnd - holeStart);
            ExprPtr holeExpr =
                parseHole(holeText, bodyBegin + holeStart, tok.span.line,
                          tok.span.col + 2 + static_cast<int>(holeStart));
            node.parts.push_back({"", std::move(holeExpr)});
            i = j;
        }
        flushLiteral();
        return makeExpr(tok.span, std::move(node));
    }

    ExprPtr parseHole(const std::string& text, size_t absOffset, int line, int col) {
        LexResult sub = lex(text, file_);
        for (auto& st : sub.tokens) shiftSpan(st.span, absOffset, line, col);
        for (auto& d : sub.diagnostics) {
            shiftSpan(d.span, absOffset, line, col);
            diags_.push_back(d);
        }
        if (!sub.diagnostics.empty()) throw ParseBailout{};
        Parser sp(std::move(sub.tokens), {}, source_, file_);
        sp.exprDepth_ = exprDepth_;
        auto result = sp.parseSingleExpression();
        for (auto& d : result.diagnostics) diags_.push_back(std::move(d));
        if (!result.ok()) throw ParseBailout{};
        return std::move(*result);
    }

    static void shiftSpan(SourceSpan& s, size_t absOffset, int line, int col) {
        s.begin += absOffset;
        s.end += absOffset;
        // interpolated strings cannot span lines, so columns shift linearly
        s.line = line;
        s.endLine = line;
        s.col += col - 1;
        s.endCol += col - 1;
    }

    static SourceSpan join(const SourceSpan& a, const SourceSpan& b) {
        SourceSpan s = a;
        s.end = b.end;
        s.endLine = b.endLine;
        s.endCol = b.endCol;
        return s;
    }

    void checkProgramInvariants(const Program& program) {
        std::set<std::string> nsNames;
        for (const auto& ns : program.namespaces) {
            if (!nsNames.insert(ns.name).second)
                report(diag_code::Duplicate, ns.nameSpan,
                       "duplicate namespace '" + ns.name + "'");
            std::set<std::string> names;
            for (const auto& c : ns.callables) {
                if (!names.insert(c.name).second)
                    report(diag_code::Duplicate, c.nameSpan,
                           "duplicate callable '" + c.name + "' in namespace '" + ns.name + "'");
            }
        }
    }
};

}  // namespace

Outcome<Program> parse(std::string_view source, FileId file) {
    LexResult lexed = lex(source, file);
    if (!lexed.diagnostics.empty())
        return Outcome<Program>::failure(std::move(lexed.diagnostics));
    return Parser(std::move(lexed.tokens), {}, source, file).parseProgram();
}

Outcome<ExprPtr> parseExpression(std::string_view source, FileId file) {
    LexResult lexed = lex(source, file);
    if (!lexed.diagnostics.empty())
        return Outcome<ExprPtr>::failure(std::move(lexed.diagnostics));
    return Parser(std::move(lexed.tokens), {}, source, file).parseSingleExpression();
}

}  // namespace qrt::syntax
