#include "ast.hpp"

#include <sstream>

namespace molars {

namespace {

int op_prec(BinOp op) {
    switch (op) {
        case BinOp::Or: return 1;
        case BinOp::And: return 2;
        case BinOp::Eq:
        case BinOp::Ne:
        case BinOp::Lt:
        case BinOp::Le:
        case BinOp::Gt:
        case BinOp::Ge: return 4;
        case BinOp::Add:
        case BinOp::Sub: return 5;
        case BinOp::Mul: return 6;
    }
    return 7;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

void print_expr(std::ostream& os, const AstExpr& e, int min_prec) {
    switch (e.kind) {
        case AstExpr::Kind::IntLit: os << e.int_val; return;
        case AstExpr::Kind::StrLit: os << '"' << escape(e.str_val) << '"'; return;
        case AstExpr::Kind::BoolLit: os << (e.bool_val ? "true" : "false"); return;
        case AstExpr::Kind::Name: os << e.name; return;
        case AstExpr::Kind::Attr: os << e.name << '.' << e.attr; return;
        case AstExpr::Kind::Not: {
            bool paren = 3 < min_prec;
            if (paren) os << '(';
            os << "not ";
            print_expr(os, *e.lhs, 3);
            if (paren) os << ')';
            return;
        }
        case AstExpr::Kind::Binary: {
            int p = op_prec(e.op);
            bool paren = p < min_prec;
            if (paren) os << '(';
            bool cmp = p == 4;
            print_expr(os, *e.lhs, cmp ? 5 : p);
            os << ' ' << binop_name(e.op) << ' ';
            print_expr(os, *e.rhs, cmp ? 5 : p + 1);
            if (paren) os << ')';
            return;
        }
    }
}

struct Printer {
    std::ostream& os;
    int level = 0;

    void indent() {
        for (int i = 0; i < level; ++i) os << "  ";
    }

    void pattern(const AstPattern& p) {
        os << "{\n";
        ++level;
        for (const auto& item : p.items) {
            indent();
            switch (item.kind) {
                case AstPatItem::Kind::Element: {
                    const AstElement& e = item.element;
                    os << "element ";
                    if (e.is_ref) os << '@' << e.name;
                    else os << e.name << " : " << e.cls;
                    if (e.action == AstAction::Create) os << " create";
                    if (e.action == AstAction::Delete) os << " delete";
                    if (e.where) {
                        os << " where ";
                        print_expr(os, *e.where, 0);
                    }
                    if (!e.sets.empty()) {
                        os << " set ";
                        for (size_t i = 0; i < e.sets.size(); ++i) {
                            if (i) os << ", ";
                            os << e.sets[i].attr << " := ";
                            print_expr(os, *e.sets[i].value, 0);
                        }
                    }
                    os << ";\n";
                    break;
                }
                case AstPatItem::Kind::Link: {
                    const AstLink& l = item.link;
                    os << "link ";
                    if (l.from.is_ref) os << '@';
                    os << l.from.name << " -[" << l.cls << '.' << l.end << "]-> ";
                    if (l.to.is_ref) os << '@';
                    os << l.to.name;
                    if (l.action == AstAction::Create) os << " create";
                    if (l.action == AstAction::Delete) os << " delete";
                    os << ";\n";
                    break;
                }
                case AstPatItem::Kind::Nac:
                    os << "not ";
                    pattern(*item.nac);
                    os << "\n";
                    break;
            }
        }
        --level;
        indent();
        os << "}";
    }

    void block(const AstBlock& b) {
        os << "{\n";
        ++level;
        for (const auto& s : b.stmts) stmt(s);
        --level;
        indent();
        os << "}";
    }

    void stmt(const AstStmt& s) {
        indent();
        switch (s.kind) {
            case AstStmt::Kind::Var:
                os << "var " << s.name << " : " << s.type_name;
                if (s.value) {
                    os << " := ";
                    print_expr(os, *s.value, 0);
                }
                os << ";\n";
                return;
            case AstStmt::Kind::Assign:
                os << s.name << " := ";
                print_expr(os, *s.value, 0);
                os << ";\n";
                return;
            case AstStmt::Kind::Call:
                os << "call " << s.name << "(";
                for (size_t i = 0; i < s.args.size(); ++i) {
                    if (i) os << ", ";
                    print_expr(os, *s.args[i], 0);
                }
                os << ");\n";
                return;
            case AstStmt::Kind::Rule:
                os << "rule ";
                if (!s.pattern.rule_name.empty()) os << s.pattern.rule_name << ' ';
                pattern(s.pattern);
                if (s.else_body) {
                    os << "\n";
                    indent();
                    os << "else ";
                    block(*s.else_body);
                }
                os << "\n";
                return;
            case AstStmt::Kind::While:
                os << "while rule ";
                if (!s.pattern.rule_name.empty()) os << s.pattern.rule_name << ' ';
                pattern(s.pattern);
                os << "\n";
                return;
            case AstStmt::Kind::Foreach:
                os << "foreach " << s.loop_var << ' ';
                pattern(s.pattern);
                os << " do ";
                block(s.body);
                os << "\n";
                return;
        }
    }
};

} // namespace

std::string pretty_print(const AstProgram& prog) {
    std::ostringstream os;
    Printer p{os};
    for (size_t i = 0; i < prog.procedures.size(); ++i) {
        const auto& proc = prog.procedures[i];
        if (i) os << "\n";
        os << "procedure " << proc.name << "(";
        for (size_t j = 0; j < proc.params.size(); ++j) {
            if (j) os << ", ";
            os << proc.params[j].name << " : " << proc.params[j].type_name;
        }
        os << ") ";
        p.block(proc.body);
        os << "\n";
    }
    return os.str();
}

} // namespace molars
