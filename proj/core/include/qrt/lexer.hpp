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

#include "qrt/diag.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qrt::syntax {

enum class TokenKind {
    // literals / names
    Ident,
    IntLit,
    DoubleLit,
    StringLit,
    InterpStringLit,  // raw $"..." content, parts split by the parser
    // keywords
    KwNamespace,
    KwOpen,
    KwOperation,
    KwFunction,
    KwLet,
    KwMutable,
    KwSet,
    KwUsing,
    KwFor,
    KwIn,
    KwIf,
    KwElif,
    KwElse,
    KwReturn,
    KwTrue,
    KwFalse,
    KwAnd,
    KwOr,
    KwNot,
    KwControlled,
    // type keywords
    KwUnit,
    KwInt,
    KwDouble,
    KwBool,
    KwString,
    KwResult,
    KwRange,
    KwQubit,
    // punctuation
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Semicolon,
    Colon,
    Comma,
    Dot,
    DotDot,
    Assign,
    EqEq,
    NotEq,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Eof,
    Error,
};

std::string_view tokenKindName(TokenKind k);

struct Token {
    TokenKind kind = TokenKind::Eof;
    SourceSpan span;
    std::string text;                   // verbatim source slice (unquoted for strings)
    long long intValue = 0;             // IntLit
    double doubleValue = 0.0;           // DoubleLit
    std::vector<std::string> comments;  // `//` lines preceding this token
};

/// Tokenizes the whole input. Never throws: malformed input yields Error
/// tokens plus diagnostics. CRLF is accepted; spans are byte-based.
struct LexResult {
    std::vector<Token> tokens;  // always terminated by Eof
    std::vector<Diagnostic> diagnostics;
};

LexResult lex(std::string_view source, FileId file);

bool isValidIdentifier(std::string_view text);

}  // namespace qrt::syntax
