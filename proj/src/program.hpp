#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pattern.hpp"

namespace molars {

// Parameter and variable types: a metamodel class or a primitive.
struct DeclType {
    bool is_object = false;
    int cls = -1;
    PrimType prim = PrimType::Integer;

    ExprType expr_type() const {
        return is_object ? ExprType{ExprType::K::Object, cls} : ExprType::prim(prim);
    }
};

struct Param {
    std::string name;
    DeclType type;
};

struct Statement;

struct Block {
    std::vector<Statement> stmts;
};

struct Statement {
    enum class K { Rule, Foreach, While, Assign, Call, Var } kind = K::Rule;
    SourcePos pos;

    // Rule / While / Foreach
    Pattern pattern;
    Block else_body;  // Rule only; empty means continue
    int loop_var = -1; // Foreach: element index in pattern
    Block body;        // Foreach only

    // Assign / Var
    std::string var_name;
    DeclType var_type; // Var only
    ExprPtr value;     // Assign: required; Var: optional initializer

    // Call
    std::string callee;
    int callee_index = -1;
    std::vector<ExprPtr> args;
};

struct Procedure {
    std::string name;
    std::vector<Param> params;
    Block body;
};

struct Program {
    std::vector<Procedure> procedures;

    int proc_index(const std::string& name) const {
        for (size_t i = 0; i < procedures.size(); ++i)
            if (procedures[i].name == name) return static_cast<int>(i);
        return -1;
    }
};

} // namespace molars
