#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "expr.hpp"

namespace molars {

// Untyped syntax tree of a .mt file. Lowering resolves names against a
// metamodel and produces the interpreter IR.

struct AstExpr;
using AstExprPtr = std::shared_ptr<AstExpr>;

struct AstExpr {
    enum class Kind { IntLit, StrLit, BoolLit, Name, Attr, Binary, Not } kind = Kind::IntLit;
    SourcePos pos;
    std::int64_t int_val = 0;
    std::string str_val;
    bool bool_val = false;
    std::string name;
    std::string attr;
    BinOp op = BinOp::Add;
    AstExprPtr lhs, rhs;
};

struct AstAssign {
    std::string attr;
    AstExprPtr value;
    SourcePos pos;
};

enum class AstAction { None, Create, Delete };

struct AstRefName {
    bool is_ref = false; // written with '@'
    std::string name;
    SourcePos pos;
};

struct AstElement {
    bool is_ref = false; // "element @x ..." (no class annotation)
    std::string name;
    std::string cls; // empty for references
    AstAction action = AstAction::None;
    AstExprPtr where;
    std::vector<AstAssign> sets;
    SourcePos pos;
};

struct AstLink {
    AstRefName from;
    std::string cls; // navigation source class of "<cls>.<end>"
    std::string end; // may start with '~' for backward ends
    AstRefName to;
    AstAction action = AstAction::None;
    SourcePos pos;
};

struct AstPattern;

struct AstPatItem {
    enum class Kind { Element, Link, Nac } kind = Kind::Element;
    AstElement element;
    AstLink link;
    std::shared_ptr<AstPattern> nac;
};

struct AstPattern {
    std::string rule_name; // optional
    std::vector<AstPatItem> items;
    SourcePos pos;
};

struct AstStmt;

struct AstBlock {
    std::vector<AstStmt> stmts;
};

struct AstStmt {
    enum class Kind { Rule, While, Foreach, Var, Assign, Call } kind = Kind::Rule;
    SourcePos pos;

    AstPattern pattern;                 // Rule / While / Foreach
    std::optional<AstBlock> else_body;  // Rule
    std::string loop_var;               // Foreach
    AstBlock body;                      // Foreach

    std::string name;      // Var / Assign: variable; Call: procedure
    std::string type_name; // Var
    AstExprPtr value;      // Var (optional) / Assign
    std::vector<AstExprPtr> args; // Call
};

struct AstParam {
    std::string name;
    std::string type_name;
    SourcePos pos;
};

struct AstProcedure {
    std::string name;
    std::vector<AstParam> params;
    AstBlock body;
    SourcePos pos;
};

struct AstProgram {
    std::vector<AstProcedure> procedures;
};

struct Diagnostic {
    SourcePos pos;
    std::string message;

    std::string str() const {
        return std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + message;
    }
};

// Canonical textual form; reparsing it yields a structurally identical tree.
std::string pretty_print(const AstProgram& prog);

} // namespace molars
