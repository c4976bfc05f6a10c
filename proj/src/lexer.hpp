#pragma once

#include <string>
#include <vector>

#include "ast.hpp"

namespace molars {

enum class Tok {
    End,
    Ident,
    Int,
    String,
    // keywords
    KwProcedure, KwVar, KwRule, KwElse, KwForeach, KwIn, KwDo, KwWhile, KwCall,
    KwElement, KwLink, KwNot, KwCreate, KwDelete, KwWhere, KwSet, KwTrue, KwFalse,
    KwAnd, KwOr,
    // punctuation
    LBrace, RBrace, LParen, RParen, Comma, Semi, Colon, Dot, At, Tilde,
    Assign,      // :=
    LinkStart,   // -[
    LinkEnd,     // ]->
    Plus, Minus, Star,
    Eq, Ne, Lt, Le, Gt, Ge,
    Error,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::int64_t int_val = 0;
    SourcePos pos;
};

// Tokenizes the whole input; lexical problems become Error tokens and a
// diagnostic, scanning continues afterwards.
std::vector<Token> lex(const std::string& text, std::vector<Diagnostic>& diags);

const char* token_name(Tok t);

} // namespace molars
