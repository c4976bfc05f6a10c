#pragma once

#include <memory>
#include <string>
#include <vector>

#include "value.hpp"

namespace molars {

class Model;

struct SourcePos {
    int line = 0;
    int col = 0;
};

// Static type of an expression; object types carry the metamodel class index.
struct ExprType {
    enum class K { Int, Str, Bool, Object } k = K::Int;
    int cls = -1;

    static ExprType prim(PrimType t) {
        switch (t) {
            case PrimType::Integer: return {K::Int, -1};
            case PrimType::String: return {K::Str, -1};
            case PrimType::Boolean: return {K::Bool, -1};
        }
        return {K::Int, -1};
    }
    bool is_object() const { return k == K::Object; }
    friend bool operator==(const ExprType& a, const ExprType& b) { return a.k == b.k; }
};

enum class BinOp { Add, Sub, Mul, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

const char* binop_name(BinOp op);

struct Expr {
    enum class Kind { IntLit, StrLit, BoolLit, Name, Attr, Binary, Not } kind = Kind::IntLit;
    SourcePos pos;
    ExprType type; // filled in by lowering

    std::int64_t int_val = 0;
    std::string str_val;
    bool bool_val = false;
    std::string name;  // Name: binding name; Attr: base binding name
    std::string attr;  // Attr: attribute name
    BinOp op = BinOp::Add;
    std::shared_ptr<Expr> lhs, rhs; // Binary: both; Not: lhs only
};

using ExprPtr = std::shared_ptr<Expr>;

// Name resolution during evaluation; implementations chain interpreter scopes
// with pattern-local element bindings.
struct EvalScope {
    virtual ~EvalScope() = default;
    virtual const Value* lookup(const std::string& name) const = 0;
};

// Strict evaluation. Integer arithmetic is exact 64-bit signed; overflow,
// unbound names and absent attribute slots raise Error(Runtime).
Value eval(const Expr& e, const EvalScope& scope, const Model& m);

} // namespace molars
