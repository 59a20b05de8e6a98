#pragma once

#include "biorw/diagnostics.hpp"

#include <string>
#include <vector>

namespace biorw::detail {

enum class Tok {
    Ident,   // letters, digits, underscore (digit-only names serve as labels)
    ElemVar, // ?name
    SeqVar,  // ~name
    TermVar, // $name
    String,  // "…"
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Dot,
    Pipe,
    Plus,
    Arrow,      // ->
    BidirArrow, // <->
    Gt,
    Star,
    Newline,
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    Span span{};
};

const char* tok_name(Tok t);

/// `#` starts a line comment. Newlines are significant (rule lines end
/// there) and are emitted as tokens.
std::vector<Token> lex(const std::string& text, Diagnostics& diags);

} // namespace biorw::detail
