#include "parser.hpp"

#include <sstream>

#include "lexer.hpp"

namespace molars {

namespace {

class Parser {
public:
    Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags) : toks_(std::move(toks)), diags_(diags) {}

    AstProgram program() {
        AstProgram prog;
        while (!at(Tok::End)) {
            if (at(Tok::KwProcedure)) {
                auto proc = procedure();
                if (proc) prog.procedures.push_back(std::move(*proc));
            } else {
                error("expected 'procedure'");
                sync_to_procedure();
            }
        }
        return prog;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& ahead(size_t n = 1) const { return toks_[std::min(pos_ + n, toks_.size() - 1)]; }
    bool at(Tok k) const { return cur().kind == k; }
    Token take() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
    bool accept(Tok k) {
        if (!at(k)) return false;
        take();
        return true;
    }

    void error(const std::string& msg) { diags_.push_back({cur().pos, msg + ", found " + token_name(cur().kind)}); }

    bool expect(Tok k, const std::string& what) {
        if (accept(k)) return true;
        error("expected " + std::string(token_name(k)) + " " + what);
        return false;
    }

    std::optional<std::string> expect_ident(const std::string& what) {
        if (at(Tok::Ident)) return take().text;
        error("expected identifier " + what);
        return std::nullopt;
    }

    // Recovery points: statement and pattern-item boundaries.
    void sync_stmt() {
        while (!at(Tok::End) && !at(Tok::Semi) && !at(Tok::RBrace)) take();
        accept(Tok::Semi);
    }
    void sync_to_procedure() {
        while (!at(Tok::End) && !at(Tok::KwProcedure)) take();
    }

    std::optional<AstProcedure> procedure() {
        AstProcedure proc;
        proc.pos = cur().pos;
        expect(Tok::KwProcedure, "");
        auto name = expect_ident("after 'procedure'");
        if (!name) {
            sync_to_procedure();
            return std::nullopt;
        }
        proc.name = *name;
        if (!expect(Tok::LParen, "after procedure name")) {
            sync_to_procedure();
            return std::nullopt;
        }
        if (!at(Tok::RParen)) {
            do {
                AstParam p;
                p.pos = cur().pos;
                auto pn = expect_ident("as parameter name");
                if (!pn) break;
                p.name = *pn;
                expect(Tok::Colon, "after parameter name");
                auto tn = expect_ident("as parameter type");
                if (!tn) break;
                p.type_name = *tn;
                proc.params.push_back(std::move(p));
            } while (accept(Tok::Comma));
        }
        expect(Tok::RParen, "to close the parameter list");
        proc.body = block();
        return proc;
    }

    AstBlock block() {
        AstBlock b;
        if (!expect(Tok::LBrace, "to open a block")) return b;
        while (!at(Tok::RBrace) && !at(Tok::End)) {
            auto s = statement();
            if (s) b.stmts.push_back(std::move(*s));
        }
        expect(Tok::RBrace, "to close the block");
        return b;
    }

    std::optional<AstStmt> statement() {
        AstStmt s;
        s.pos = cur().pos;
        switch (cur().kind) {
            case Tok::KwVar: {
                take();
                s.kind = AstStmt::Kind::Var;
                auto n = expect_ident("after 'var'");
                if (!n) { sync_stmt(); return std::nullopt; }
                s.name = *n;
                expect(Tok::Colon, "after variable name");
                auto tn = expect_ident("as variable type");
                if (!tn) { sync_stmt(); return std::nullopt; }
                s.type_name = *tn;
                if (accept(Tok::Assign)) s.value = expression();
                expect(Tok::Semi, "after variable declaration");
                return s;
            }
            case Tok::KwRule: {
                take();
                s.kind = AstStmt::Kind::Rule;
                if (at(Tok::Ident)) s.pattern.rule_name = take().text;
                s.pattern = pattern_block(std::move(s.pattern));
                if (accept(Tok::KwElse)) s.else_body = block();
                return s;
            }
            case Tok::KwWhile: {
                take();
                s.kind = AstStmt::Kind::While;
                expect(Tok::KwRule, "after 'while'");
                if (at(Tok::Ident)) s.pattern.rule_name = take().text;
                s.pattern = pattern_block(std::move(s.pattern));
                return s;
            }
            case Tok::KwForeach: {
                take();
                s.kind = AstStmt::Kind::Foreach;
                auto lv = expect_ident("as loop variable after 'foreach'");
                if (!lv) { sync_stmt(); return std::nullopt; }
                s.loop_var = *lv;
                s.pattern = pattern_block({});
                expect(Tok::KwDo, "after the loophead pattern");
                s.body = block();
                return s;
            }
            case Tok::KwCall: {
                take();
                s.kind = AstStmt::Kind::Call;
                auto n = expect_ident("after 'call'");
                if (!n) { sync_stmt(); return std::nullopt; }
                s.name = *n;
                expect(Tok::LParen, "after procedure name");
                if (!at(Tok::RParen)) {
                    do {
                        s.args.push_back(expression());
                    } while (accept(Tok::Comma));
                }
                expect(Tok::RParen, "to close the argument list");
                expect(Tok::Semi, "after the call");
                return s;
            }
            case Tok::Ident: {
                s.kind = AstStmt::Kind::Assign;
                s.name = take().text;
                if (!expect(Tok::Assign, "in assignment")) { sync_stmt(); return std::nullopt; }
                s.value = expression();
                expect(Tok::Semi, "after assignment");
                return s;
            }
            default:
                error("expected a statement");
                sync_stmt();
                return std::nullopt;
        }
    }

    AstPattern pattern_block(AstPattern pat) {
        pat.pos = cur().pos;
        if (!expect(Tok::LBrace, "to open the pattern")) return pat;
        while (!at(Tok::RBrace) && !at(Tok::End)) {
            AstPatItem item;
            if (at(Tok::KwElement)) {
                take();
                item.kind = AstPatItem::Kind::Element;
                AstElement& e = item.element;
                e.pos = cur().pos;
                if (accept(Tok::At)) {
                    e.is_ref = true;
                    auto n = expect_ident("after '@'");
                    if (!n) { sync_stmt(); continue; }
                    e.name = *n;
                } else {
                    auto n = expect_ident("as element name");
                    if (!n) { sync_stmt(); continue; }
                    e.name = *n;
                    expect(Tok::Colon, "after element name");
                    auto c = expect_ident("as element class");
                    if (!c) { sync_stmt(); continue; }
                    e.cls = *c;
                }
                e.action = action();
                if (accept(Tok::KwWhere)) e.where = expression();
                if (accept(Tok::KwSet)) {
                    do {
                        AstAssign as;
                        as.pos = cur().pos;
                        auto an = expect_ident("as attribute name");
                        if (!an) break;
                        as.attr = *an;
                        expect(Tok::Assign, "in attribute assignment");
                        as.value = expression();
                        e.sets.push_back(std::move(as));
                    } while (accept(Tok::Comma));
                }
                expect(Tok::Semi, "after the element");
                pat.items.push_back(std::move(item));
            } else if (at(Tok::KwLink)) {
                take();
                item.kind = AstPatItem::Kind::Link;
                AstLink& l = item.link;
                l.pos = cur().pos;
                if (!ref_name(l.from)) { sync_stmt(); continue; }
                if (!expect(Tok::LinkStart, "in link")) { sync_stmt(); continue; }
                auto c = expect_ident("as association class");
                if (!c) { sync_stmt(); continue; }
                l.cls = *c;
                expect(Tok::Dot, "in association end reference");
                std::string end;
                if (accept(Tok::Tilde)) end = "~";
                auto en = expect_ident("as association end");
                if (!en) { sync_stmt(); continue; }
                l.end = end + *en;
                if (!expect(Tok::LinkEnd, "after the association end")) { sync_stmt(); continue; }
                if (!ref_name(l.to)) { sync_stmt(); continue; }
                l.action = action();
                expect(Tok::Semi, "after the link");
                pat.items.push_back(std::move(item));
            } else if (at(Tok::KwNot)) {
                take();
                item.kind = AstPatItem::Kind::Nac;
                item.nac = std::make_shared<AstPattern>(pattern_block({}));
                pat.items.push_back(std::move(item));
            } else {
                error("expected 'element', 'link' or 'not' in pattern");
                sync_stmt();
            }
        }
        expect(Tok::RBrace, "to close the pattern");
        return pat;
    }

    AstAction action() {
        if (accept(Tok::KwCreate)) return AstAction::Create;
        if (accept(Tok::KwDelete)) return AstAction::Delete;
        return AstAction::None;
    }

    bool ref_name(AstRefName& out) {
        out.pos = cur().pos;
        if (accept(Tok::At)) {
            out.is_ref = true;
            auto n = expect_ident("after '@'");
            if (!n) return false;
            out.name = *n;
            return true;
        }
        auto n = expect_ident("as link endpoint");
        if (!n) return false;
        out.name = *n;
        return true;
    }

    AstExprPtr expression() { return or_expr(); }

    AstExprPtr make(AstExpr e) { return std::make_shared<AstExpr>(std::move(e)); }

    AstExprPtr or_expr() {
        auto lhs = and_expr();
        while (at(Tok::KwOr)) {
            SourcePos p = take().pos;
            AstExpr e;
            e.kind = AstExpr::Kind::Binary;
            e.op = BinOp::Or;
            e.pos = p;
            e.lhs = lhs;
            e.rhs = and_expr();
            lhs = make(std::move(e));
        }
        return lhs;
    }

    AstExprPtr and_expr() {
        auto lhs = not_expr();
        while (at(Tok::KwAnd)) {
            SourcePos p = take().pos;
            AstExpr e;
            e.kind = AstExpr::Kind::Binary;
            e.op = BinOp::And;
            e.pos = p;
            e.lhs = lhs;
            e.rhs = not_expr();
            lhs = make(std::move(e));
        }
        return lhs;
    }

    AstExprPtr not_expr() {
        if (at(Tok::KwNot)) {
            SourcePos p = take().pos;
            AstExpr e;
            e.kind = AstExpr::Kind::Not;
            e.pos = p;
            e.lhs = not_expr();
            return make(std::move(e));
        }
        return cmp_expr();
    }

    AstExprPtr cmp_expr() {
        auto lhs = add_expr();
        BinOp op;
        switch (cur().kind) {
            case Tok::Eq: op = BinOp::Eq; break;
            case Tok::Ne: op = BinOp::Ne; break;
            case Tok::Lt: op = BinOp::Lt; break;
            case Tok::Le: op = BinOp::Le; break;
            case Tok::Gt: op = BinOp::Gt; break;
            case Tok::Ge: op = BinOp::Ge; break;
            default: return lhs;
        }
        SourcePos p = take().pos;
        AstExpr e;
        e.kind = AstExpr::Kind::Binary;
        e.op = op;
        e.pos = p;
        e.lhs = lhs;
        e.rhs = add_expr(); // comparisons are non-associative
        return make(std::move(e));
    }

    AstExprPtr add_expr() {
        auto lhs = mul_expr();
        while (at(Tok::Plus) || at(Tok::Minus)) {
            BinOp op = at(Tok::Plus) ? BinOp::Add : BinOp::Sub;
            SourcePos p = take().pos;
            AstExpr e;
            e.kind = AstExpr::Kind::Binary;
            e.op = op;
            e.pos = p;
            e.lhs = lhs;
            e.rhs = mul_expr();
            lhs = make(std::move(e));
        }
        return lhs;
    }

    AstExprPtr mul_expr() {
        auto lhs = primary();
        while (at(Tok::Star)) {
            SourcePos p = take().pos;
            AstExpr e;
            e.kind = AstExpr::Kind::Binary;
            e.op = BinOp::Mul;
            e.pos = p;
            e.lhs = lhs;
            e.rhs = primary();
            lhs = make(std::move(e));
        }
        return lhs;
    }

    AstExprPtr primary() {
        AstExpr e;
        e.pos = cur().pos;
        switch (cur().kind) {
            case Tok::Int:
                e.kind = AstExpr::Kind::IntLit;
                e.int_val = take().int_val;
                return make(std::move(e));
            case Tok::String:
                e.kind = AstExpr::Kind::StrLit;
                e.str_val = take().text;
                return make(std::move(e));
            case Tok::KwTrue:
                take();
                e.kind = AstExpr::Kind::BoolLit;
                e.bool_val = true;
                return make(std::move(e));
            case Tok::KwFalse:
                take();
                e.kind = AstExpr::Kind::BoolLit;
                e.bool_val = false;
                return make(std::move(e));
            case Tok::Ident: {
                std::string n = take().text;
                if (accept(Tok::Dot)) {
                    auto an = expect_ident("as attribute name");
                    e.kind = AstExpr::Kind::Attr;
                    e.name = n;
                    e.attr = an.value_or("?");
                    return make(std::move(e));
                }
                e.kind = AstExpr::Kind::Name;
                e.name = n;
                return make(std::move(e));
            }
            case Tok::LParen: {
                take();
                auto inner = expression();
                expect(Tok::RParen, "to close the parenthesis");
                return inner;
            }
            default:
                error("expected an expression");
                // Poison value; the error diagnostic suppresses lowering.
                e.kind = AstExpr::Kind::IntLit;
                if (!at(Tok::Semi) && !at(Tok::RBrace) && !at(Tok::End)) take();
                return make(std::move(e));
        }
    }

    std::vector<Token> toks_;
    std::vector<Diagnostic>& diags_;
    size_t pos_ = 0;
};

} // namespace

SourceProgram parse(const std::string& text, const std::string& filename) {
    SourceProgram sp;
    sp.text = text;
    sp.filename = filename;
    auto tokens = lex(text, sp.diagnostics);
    Parser parser(std::move(tokens), sp.diagnostics);
    AstProgram prog = parser.program();
    std::stable_sort(sp.diagnostics.begin(), sp.diagnostics.end(), [](const Diagnostic& a, const Diagnostic& b) {
        return a.pos.line < b.pos.line || (a.pos.line == b.pos.line && a.pos.col < b.pos.col);
    });
    if (sp.diagnostics.empty()) sp.ast = std::move(prog);
    return sp;
}

} // namespace molars
