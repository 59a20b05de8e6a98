#include "lexer.hpp"

namespace biorw::detail {

const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::ElemVar: return "element variable";
        case Tok::SeqVar: return "sequence variable";
        case Tok::TermVar: return "term variable";
        case Tok::String: return "string";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBracket: return "'['";
        case Tok::RBracket: return "']'";
        case Tok::Comma: return "','";
        case Tok::Semi: return "';'";
        case Tok::Colon: return "':'";
        case Tok::Dot: return "'.'";
        case Tok::Pipe: return "'|'";
        case Tok::Plus: return "'+'";
        case Tok::Arrow: return "'->'";
        case Tok::BidirArrow: return "'<->'";
        case Tok::Gt: return "'>'";
        case Tok::Star: return "'*'";
        case Tok::Newline: return "end of line";
        case Tok::End: return "end of file";
    }
    return "token";
}

namespace {

bool ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

} // namespace

std::vector<Token> lex(const std::string& text, Diagnostics& diags) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    const std::size_t n = text.size();

    auto push = [&](Tok kind, std::string t, Span sp) { out.push_back({kind, std::move(t), sp}); };

    while (i < n) {
        char c = text[i];
        Span sp{line, col};
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            ++col;
            continue;
        }
        if (c == '#') {
            while (i < n && text[i] != '\n') ++i;
            continue;
        }
        if (c == '\n') {
            push(Tok::Newline, "\n", sp);
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (ident_char(c)) {
            std::size_t start = i;
            while (i < n && ident_char(text[i])) {
                ++i;
                ++col;
            }
            push(Tok::Ident, text.substr(start, i - start), sp);
            continue;
        }
        if (c == '~' || c == '?' || c == '$') {
            ++i;
            ++col;
            std::size_t start = i;
            while (i < n && ident_char(text[i])) {
                ++i;
                ++col;
            }
            if (start == i) {
                diags.push_back(make_error(
                    "syntax", std::string("expected a name after '") + c + "'", sp));
                continue;
            }
            Tok kind = c == '~' ? Tok::SeqVar : c == '?' ? Tok::ElemVar : Tok::TermVar;
            push(kind, text.substr(start, i - start), sp);
            continue;
        }
        if (c == '"') {
            ++i;
            ++col;
            std::size_t start = i;
            while (i < n && text[i] != '"' && text[i] != '\n') {
                ++i;
                ++col;
            }
            if (i == n || text[i] == '\n') {
                diags.push_back(make_error("syntax", "unterminated string", sp));
                push(Tok::String, text.substr(start, i - start), sp);
                continue;
            }
            push(Tok::String, text.substr(start, i - start), sp);
            ++i;
            ++col;
            continue;
        }
        if (c == '-') {
            if (i + 1 < n && text[i + 1] == '>') {
                push(Tok::Arrow, "->", sp);
                i += 2;
                col += 2;
                continue;
            }
            diags.push_back(make_error("syntax", "stray '-' (expected '->')", sp));
            ++i;
            ++col;
            continue;
        }
        if (c == '<') {
            if (i + 2 < n && text[i + 1] == '-' && text[i + 2] == '>') {
                push(Tok::BidirArrow, "<->", sp);
                i += 3;
                col += 3;
                continue;
            }
            diags.push_back(make_error("syntax", "stray '<' (expected '<->')", sp));
            ++i;
            ++col;
            continue;
        }
        Tok kind;
        switch (c) {
            case '{': kind = Tok::LBrace; break;
            case '}': kind = Tok::RBrace; break;
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case '[': kind = Tok::LBracket; break;
            case ']': kind = Tok::RBracket; break;
            case ',': kind = Tok::Comma; break;
            case ';': kind = Tok::Semi; break;
            case ':': kind = Tok::Colon; break;
            case '.': kind = Tok::Dot; break;
            case '|': kind = Tok::Pipe; break;
            case '+': kind = Tok::Plus; break;
            case '>': kind = Tok::Gt; break;
            case '*': kind = Tok::Star; break;
            default:
                diags.push_back(
                    make_error("syntax", std::string("unexpected character '") + c + "'", sp));
                ++i;
                ++col;
                continue;
        }
        push(kind, std::string(1, c), sp);
        ++i;
        ++col;
    }
    // end-of-file diagnostics should point at something inside the file
    Span end_span{line, col};
    for (auto it = out.rbegin(); it != out.rend(); ++it) {
        if (it->kind != Tok::Newline) {
            end_span = it->span;
            break;
        }
    }
    out.push_back({Tok::End, "", end_span});
    return out;
}

} // namespace biorw::detail
