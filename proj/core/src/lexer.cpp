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

#include "qrt/lexer.hpp"

#include <cctype>
#include <charconv>
#include <unordered_map>

namespace qrt::syntax {

std::string_view tokenKindName(TokenKind k) {
    switch (k) {
        case TokenKind::Ident: return "identifier";
        case TokenKind::IntLit: return "integer literal";
        case TokenKind::DoubleLit: return "double literal";
        case TokenKind::StringLit: return "string literal";
        case TokenKind::InterpStringLit: return "interpolated string";
        case TokenKind::KwNamespace: return "'namespace'";
        case TokenKind::KwOpen: return "'open'";
        case TokenKind::KwOperation: return "'operation'";
        case TokenKind::KwFunction: return "'function'";
        case TokenKind::KwLet: return "'let'";
        case TokenKind::KwMutable: return "'mutable'";
        case TokenKind::KwSet: return "'set'";
        case TokenKind::KwUsing: return "'using'";
        case TokenKind::KwFor: return "'for'";
        case TokenKind::KwIn: return "'in'";
        case TokenKind::KwIf: return "'if'";
        case TokenKind::KwElif: return "'elif'";
        case TokenKind::KwElse: return "'else'";
        case TokenKind::KwReturn: return "'return'";
        case TokenKind::KwTrue: return "'true'";
        case TokenKind::KwFalse: return "'false'";
        case TokenKind::KwAnd: return "'and'";
        case TokenKind::KwOr: return "'or'";
        case TokenKind::KwNot: return "'not'";
        case TokenKind::KwControlled: return "'Controlled'";
        case TokenKind::KwUnit: return "'Unit'";
        case TokenKind::KwInt: return "'Int'";
        case TokenKind::KwDouble: return "'Double'";
        case TokenKind::KwBool: return "'Bool'";
        case TokenKind::KwString: return "'String'";
        case TokenKind::KwResult: return "'Result'";
        case TokenKind::KwRange: return "'Range'";
        case TokenKind::KwQubit: return "'Qubit'";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::LBracket: return "'['";
        case TokenKind::RBracket: return "']'";
        case TokenKind::Semicolon: return "';'";
        case TokenKind::Colon: return "':'";
        case TokenKind::Comma: return "','";
        case TokenKind::Dot: return "'.'";
        case TokenKind::DotDot: return "'..'";
        case TokenKind::Assign: return "'='";
        case TokenKind::EqEq: return "'=='";
        case TokenKind::NotEq: return "'!='";
        case TokenKind::Lt: return "'<'";
        case TokenKind::Le: return "'<='";
        case TokenKind::Gt: return "'>'";
        case TokenKind::Ge: return "'>='";
        case TokenKind::Plus: return "'+'";
        case TokenKind::Minus: return "'-'";
        case TokenKind::Star: return "'*'";
        case TokenKind::Slash: return "'/'";
        case TokenKind::Percent: return "'%'";
        case TokenKind::Eof: return "end of input";
        case TokenKind::Error: return "invalid token";
    }
    return "?";
}

namespace {

const std::unordered_map<std::string_view, TokenKind>& keywordTable() {
    static const std::unordered_map<std::string_view, TokenKind> table = {
        {"namespace", TokenKind::KwNamespace},
        {"open", TokenKind::KwOpen},
        {"operation", TokenKind::KwOperation},
        {"function", TokenKind::KwFunction},
        {"let", TokenKind::KwLet},
        {"mutable", TokenKind::KwMutable},
        {"set", TokenKind::KwSet},
        {"using", TokenKind::KwUsing},
        {"for", TokenKind::KwFor},
        {"in", TokenKind::KwIn},
        {"if", TokenKind::KwIf},
        {"elif", TokenKind::KwElif},
        {"else", TokenKind::KwElse},
        {"return", TokenKind::KwReturn},
        {"true", TokenKind::KwTrue},
        {"false", TokenKind::KwFalse},
        {"and", TokenKind::KwAnd},
        {"or", TokenKind::KwOr},
        {"not", TokenKind::KwNot},
        {"Controlled", TokenKind::KwControlled},
        {"Unit", TokenKind::KwUnit},
        {"Int", TokenKind::KwInt},
        {"Double", TokenKind::KwDouble},
        {"Bool", TokenKind::KwBool},
        {"String", TokenKind::KwString},
        {"Result", TokenKind::KwResult},
        {"Range", TokenKind::KwRange},
        {"Qubit", TokenKind::KwQubit},
    };
    return table;
}

bool isIdentStart(unsigned char c) {
    return std::isalpha(c) || c == '_';
}
bool isIdentCont(unsigned char c) {
    return std::isalnum(c) || c == '_';
}

class Lexer {
public:
    Lexer(std::string_view src, FileId file) : src_(src), file_(file) {}

    LexResult run() {
        std::vector<std::string> pendingComments;
        while (true) {
            skipWhitespaceAndComments(pendingComments);
            if (pos_ >= src_.size()) {
                Token eof = startToken();
                eof.kind = TokenKind::Eof;
                eof.comments = std::move(pendingComments);
                finishToken(eof);
                result_.tokens.push_back(std::move(eof));
                break;
            }
            Token tok = next();
            tok.comments = std::move(pendingComments);
            pendingComments.clear();
            result_.tokens.push_back(std::move(tok));
        }
        return std::move(result_);
    }

private:
    std::string_view src_;
    FileId file_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    LexResult result_;

    char peek(size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    Token startToken() const {
        Token t;
        t.span.file = file_;
        t.span.begin = pos_;
        t.span.line = line_;
        t.span.col = col_;
        return t;
    }

    void finishToken(Token& t, bool captureText = true) const {
        t.span.end = pos_;
        t.span.endLine = line_;
        t.span.endCol = col_;
        if (captureText) t.text = std::string(src_.substr(t.span.begin, pos_ - t.span.begin));
    }

    void error(Token& t, std::string msg, const char* code = diag_code::Syntax) {
        t.kind = TokenKind::Error;
        finishToken(t);
        result_.diagnostics.push_back(makeError(code, t.span, std::move(msg)));
    }

    void skipWhitespaceAndComments(std::vector<std::string>& comments) {
        while (pos_ < src_.size()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                advance();
                advance();
                size_t start = pos_;
                while (pos_ < src_.size() && peek() != '\n' && peek() != '\r') advance();
                std::string text(src_.substr(start, pos_ - start));
                // trim leading space and trailing whitespace
                size_t b = text.find_first_not_of(' ');
                if (b == std::string::npos)
                    text.clear();
                else
                    text = text.substr(b, text.find_last_not_of(" \t") - b + 1);
                comments.push_back(std::move(text));
            } else {
                break;
            }
        }
    }

    Token next() {
        Token t = startToken();
        char c = advance();
        switch (c) {
            case '{': t.kind = TokenKind::LBrace; break;
            case '}': t.kind = TokenKind::RBrace; break;
            case '(': t.kind = TokenKind::LParen; break;
            case ')': t.kind = TokenKind::RParen; break;
            case '[': t.kind = TokenKind::LBracket; break;
            case ']': t.kind = TokenKind::RBracket; break;
            case ';': t.kind = TokenKind::Semicolon; break;
            case ':': t.kind = TokenKind::Colon; break;
            case ',': t.kind = TokenKind::Comma; break;
            case '+': t.kind = TokenKind::Plus; break;
            case '-': t.kind = TokenKind::Minus; break;
            case '*': t.kind = TokenKind::Star; break;
            case '/': t.kind = TokenKind::Slash; break;
            case '%': t.kind = TokenKind::Percent; break;
            case '.':
                if (peek() == '.') {
                    advance();
                    t.kind = TokenKind::DotDot;
                } else {
                    t.kind = TokenKind::Dot;
                }
                break;
            case '=':
                if (peek() == '=') {
                    advance();
                    t.kind = TokenKind::EqEq;
                } else {
                    t.kind = TokenKind::Assign;
                }
                break;
            case '!':
                if (peek() == '=') {
                    advance();
                    t.kind = TokenKind::NotEq;
                } else {
                    error(t, "unexpected character '!'");
                    return t;
                }
                break;
            case '<':
                if (peek() == '=') {
                    advance();
                    t.kind = TokenKind::Le;
                } else {
                    t.kind = TokenKind::Lt;
                }
                break;
            case '>':
                if (peek() == '=') {
                    advance();
                    t.kind = TokenKind::Ge;
                } else {
                    t.kind = TokenKind::Gt;
                }
                break;
            case '"': return stringToken(t, /*interpolated=*/false);
            case '$':
                if (peek() == '"') {
                    advance();
                    return stringToken(t, /*interpolated=*/true);
                }
                error(t, "expected '\"' after '$'");
                return t;
            default:
                if (std::isdigit(static_cast<unsigned char>(c))) return numberToken(t);
                if (isIdentStart(static_cast<unsigned char>(c))) return identToken(t);
                error(t, std::string("unexpected character '") + c + "'");
                return t;
        }
        finishToken(t);
        return t;
    }

    Token identToken(Token& t) {
        while (pos_ < src_.size() && isIdentCont(static_cast<unsigned char>(peek()))) advance();
        finishToken(t);
        auto it = keywordTable().find(t.text);
        t.kind = it != keywordTable().end() ? it->second : TokenKind::Ident;
        return t;
    }

    Token numberToken(Token& t) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
        bool isDouble = false;
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            isDouble = true;
            advance();
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
        }
        if (peek() == 'e' || peek() == 'E') {
            size_t save = pos_;
            int saveLine = line_, saveCol = col_;
            advance();
            if (peek() == '+' || peek() == '-') advance();
            if (std::isdigit(static_cast<unsigned char>(peek()))) {
                isDouble = true;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(peek())))
                    advance();
            } else {
                pos_ = save;
                line_ = saveLine;
                col_ = saveCol;
            }
        }
        finishToken(t);
        if (isDouble) {
            t.kind = TokenKind::DoubleLit;
            try {
                t.doubleValue = std::stod(t.text);
            } catch (const std::exception&) {
                error(t, "double literal out of range");
            }
        } else {
            t.kind = TokenKind::IntLit;
            auto [ptr, ec] =
                std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.intValue);
            if (ec != std::errc() || ptr != t.text.data() + t.text.size())
                error(t, "integer literal out of range");
        }
        return t;
    }

    // Opening quote already consumed. For interpolated strings the stored
    // text is the raw body (escapes left intact, holes unparsed); the parser
    // splits it into parts.
    Token stringToken(Token& t, bool interpolated) {
        std::string value;
        size_t bodyStart = pos_;
        int braceDepth = 0;
        while (true) {
            if (pos_ >= src_.size() || peek() == '\n') {
                error(t, "unterminated string literal", diag_code::Unbalanced);
                return t;
            }
            char c = advance();
            if (c == '\\') {
                if (pos_ >= src_.size()) {
                    error(t, "unterminated string literal", diag_code::Unbalanced);
                    return t;
                }
                char esc = advance();
                switch (esc) {
                    case 'n': value += '\n'; break;
                    case 't': value += '\t'; break;
                    case 'r': value += '\r'; break;
                    case '\\': value += '\\'; break;
                    case '"': value += '"'; break;
                    default:
                        error(t, std::string("unknown escape '\\") + esc + "'");
                        return t;
                }
                continue;
            }
            if (interpolated && c == '{') ++braceDepth;
            if (interpolated && c == '}') --braceDepth;
            if (c == '"' && braceDepth <= 0) break;
            value += c;
        }
        size_t bodyEnd = pos_ - 1;  // closing quote excluded
        finishToken(t, /*captureText=*/false);
        if (interpolated) {
            t.kind = TokenKind::InterpStringLit;
            // raw body kept verbatim so hole expressions can be re-lexed
            // with correct spans
            t.text = std::string(src_.substr(bodyStart, bodyEnd - bodyStart));
        } else {
            t.kind = TokenKind::StringLit;
            t.text = std::move(value);
        }
        return t;
    }
};

}  // namespace

LexResult lex(std::string_view source, FileId file) {
    return Lexer(source, file).run();
}

bool isValidIdentifier(std::string_view text) {
    if (text.empty() || !isIdentStart(static_cast<unsigned char>(text[0]))) return false;
    for (char c : text)
        if (!isIdentCont(static_cast<unsigned char>(c))) return false;
    return keywordTable().find(text) == keywordTable().end();
}

}  // namespace qrt::syntax
