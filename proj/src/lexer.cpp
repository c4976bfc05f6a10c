#include "lexer.hpp"

#include <cctype>
#include <map>

namespace molars {

const char* token_name(Tok t) {
    switch (t) {
        case Tok::End: return "end of file";
        case Tok::Ident: return "identifier";
        case Tok::Int: return "integer literal";
        case Tok::String: return "string literal";
        case Tok::KwProcedure: return "'procedure'";
        case Tok::KwVar: return "'var'";
        case Tok::KwRule: return "'rule'";
        case Tok::KwElse: return "'else'";
        case Tok::KwForeach: return "'foreach'";
        case Tok::KwIn: return "'in'";
        case Tok::KwDo: return "'do'";
        case Tok::KwWhile: return "'while'";
        case Tok::KwCall: return "'call'";
        case Tok::KwElement: return "'element'";
        case Tok::KwLink: return "'link'";
        case Tok::KwNot: return "'not'";
        case Tok::KwCreate: return "'create'";
        case Tok::KwDelete: return "'delete'";
        case Tok::KwWhere: return "'where'";
        case Tok::KwSet: return "'set'";
        case Tok::KwTrue: return "'true'";
        case Tok::KwFalse: return "'false'";
        case Tok::KwAnd: return "'and'";
        case Tok::KwOr: return "'or'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::Comma: return "','";
        case Tok::Semi: return "';'";
        case Tok::Colon: return "':'";
        case Tok::Dot: return "'.'";
        case Tok::At: return "'@'";
        case Tok::Tilde: return "'~'";
        case Tok::Assign: return "':='";
        case Tok::LinkStart: return "'-['";
        case Tok::LinkEnd: return "']->'";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Eq: return "'='";
        case Tok::Ne: return "'<>'";
        case Tok::Lt: return "'<'";
        case Tok::Le: return "'<='";
        case Tok::Gt: return "'>'";
        case Tok::Ge: return "'>='";
        case Tok::Error: return "invalid token";
    }
    return "?";
}

namespace {

const std::map<std::string, Tok>& keywords() {
    static const std::map<std::string, Tok> kw = {
        {"procedure", Tok::KwProcedure}, {"var", Tok::KwVar},       {"rule", Tok::KwRule},
        {"else", Tok::KwElse},           {"foreach", Tok::KwForeach}, {"in", Tok::KwIn},
        {"do", Tok::KwDo},               {"while", Tok::KwWhile},   {"call", Tok::KwCall},
        {"element", Tok::KwElement},     {"link", Tok::KwLink},     {"not", Tok::KwNot},
        {"create", Tok::KwCreate},       {"delete", Tok::KwDelete}, {"where", Tok::KwWhere},
        {"set", Tok::KwSet},             {"true", Tok::KwTrue},     {"false", Tok::KwFalse},
        {"and", Tok::KwAnd},             {"or", Tok::KwOr},
    };
    return kw;
}

} // namespace

std::vector<Token> lex(const std::string& text, std::vector<Diagnostic>& diags) {
    std::vector<Token> out;
    size_t i = 0;
    int line = 1, col = 1;

    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n && i < text.size(); ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    auto peek = [&](size_t off = 0) -> char { return i + off < text.size() ? text[i + off] : '\0'; };

    while (i < text.size()) {
        char c = peek();
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        if (c == '/' && peek(1) == '/') {
            while (i < text.size() && peek() != '\n') advance(1);
            continue;
        }

        Token t;
        t.pos = {line, col};

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string word;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                word += peek();
                advance(1);
            }
            auto kw = keywords().find(word);
            t.kind = kw == keywords().end() ? Tok::Ident : kw->second;
            t.text = word;
            out.push_back(std::move(t));
            continue;
        }

        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                num += peek();
                advance(1);
            }
            t.kind = Tok::Int;
            t.text = num;
            try {
                t.int_val = std::stoll(num);
            } catch (const std::exception&) {
                diags.push_back({t.pos, "integer literal '" + num + "' does not fit in 64 bits"});
                t.kind = Tok::Error;
            }
            out.push_back(std::move(t));
            continue;
        }

        if (c == '"') {
            advance(1);
            std::string s;
            bool closed = false;
            while (i < text.size()) {
                char d = peek();
                if (d == '"') {
                    advance(1);
                    closed = true;
                    break;
                }
                if (d == '\n') break;
                if (d == '\\') {
                    char esc = peek(1);
                    switch (esc) {
                        case 'n': s += '\n'; break;
                        case 't': s += '\t'; break;
                        case '"': s += '"'; break;
                        case '\\': s += '\\'; break;
                        default:
                            diags.push_back({{line, col}, std::string("unknown escape '\\") + esc + "'"});
                    }
                    advance(2);
                    continue;
                }
                s += d;
                advance(1);
            }
            if (!closed) diags.push_back({t.pos, "unterminated string literal"});
            t.kind = closed ? Tok::String : Tok::Error;
            t.text = s;
            out.push_back(std::move(t));
            continue;
        }

        auto two = [&](char a, char b) { return c == a && peek(1) == b; };
        if (two('-', '[')) { t.kind = Tok::LinkStart; advance(2); }
        else if (c == ']' && peek(1) == '-' && peek(2) == '>') { t.kind = Tok::LinkEnd; advance(3); }
        else if (two(':', '=')) { t.kind = Tok::Assign; advance(2); }
        else if (two('<', '>')) { t.kind = Tok::Ne; advance(2); }
        else if (two('<', '=')) { t.kind = Tok::Le; advance(2); }
        else if (two('>', '=')) { t.kind = Tok::Ge; advance(2); }
        else {
            switch (c) {
                case '{': t.kind = Tok::LBrace; break;
                case '}': t.kind = Tok::RBrace; break;
                case '(': t.kind = Tok::LParen; break;
                case ')': t.kind = Tok::RParen; break;
                case ',': t.kind = Tok::Comma; break;
                case ';': t.kind = Tok::Semi; break;
                case ':': t.kind = Tok::Colon; break;
                case '.': t.kind = Tok::Dot; break;
                case '@': t.kind = Tok::At; break;
                case '~': t.kind = Tok::Tilde; break;
                case '+': t.kind = Tok::Plus; break;
                case '-': t.kind = Tok::Minus; break;
                case '*': t.kind = Tok::Star; break;
                case '=': t.kind = Tok::Eq; break;
                case '<': t.kind = Tok::Lt; break;
                case '>': t.kind = Tok::Gt; break;
                default:
                    t.kind = Tok::Error;
                    diags.push_back({t.pos, std::string("unexpected character '") + c + "'"});
            }
            advance(1);
        }
        out.push_back(std::move(t));
    }

    Token end;
    end.kind = Tok::End;
    end.pos = {line, col};
    out.push_back(end);
    return out;
}

} // namespace molars
