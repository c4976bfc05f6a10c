#include "expr.hpp"

#include "model.hpp"

namespace molars {

const char* binop_name(BinOp op) {
    switch (op) {
        case BinOp::Add: return "+";
        case BinOp::Sub: return "-";
        case BinOp::Mul: return "*";
        case BinOp::Eq: return "=";
        case BinOp::Ne: return "<>";
        case BinOp::Lt: return "<";
        case BinOp::Le: return "<=";
        case BinOp::Gt: return ">";
        case BinOp::Ge: return ">=";
        case BinOp::And: return "and";
        case BinOp::Or: return "or";
    }
    return "?";
}

namespace {

std::int64_t checked_arith(BinOp op, std::int64_t a, std::int64_t b) {
    std::int64_t r = 0;
    bool ov = false;
    switch (op) {
        case BinOp::Add: ov = __builtin_add_overflow(a, b, &r); break;
        case BinOp::Sub: ov = __builtin_sub_overflow(a, b, &r); break;
        case BinOp::Mul: ov = __builtin_mul_overflow(a, b, &r); break;
        default: fail_runtime("not an arithmetic operator");
    }
    if (ov)
        fail_runtime("integer overflow in " + std::to_string(a) + " " + binop_name(op) + " " +
                     std::to_string(b));
    return r;
}

bool values_equal(const Value& a, const Value& b) {
    return a == b; // variants compare by alternative, then value
}

} // namespace

Value eval(const Expr& e, const EvalScope& scope, const Model& m) {
    switch (e.kind) {
        case Expr::Kind::IntLit: return Value(e.int_val);
        case Expr::Kind::StrLit: return Value(e.str_val);
        case Expr::Kind::BoolLit: return Value(e.bool_val);
        case Expr::Kind::Name: {
            const Value* v = scope.lookup(e.name);
            if (!v) fail_runtime("unbound name '" + e.name + "'");
            return *v;
        }
        case Expr::Kind::Attr: {
            const Value* v = scope.lookup(e.name);
            if (!v) fail_runtime("unbound name '" + e.name + "'");
            const ObjRef* ref = std::get_if<ObjRef>(v);
            if (!ref) fail_runtime("'" + e.name + "' is not an object");
            if (!m.alive(ref->id)) fail_runtime("'" + e.name + "' refers to a deleted object");
            const Value* slot = m.get_slot(ref->id, e.attr);
            if (!slot)
                fail_runtime("attribute '" + e.attr + "' of '" + e.name + "' was never set");
            return *slot;
        }
        case Expr::Kind::Not: {
            Value v = eval(*e.lhs, scope, m);
            const bool* b = std::get_if<bool>(&v);
            if (!b) fail_runtime("'not' applied to a non-boolean");
            return Value(!*b);
        }
        case Expr::Kind::Binary: break;
    }

    // Short-circuit booleans before evaluating the right operand.
    if (e.op == BinOp::And || e.op == BinOp::Or) {
        Value lv = eval(*e.lhs, scope, m);
        const bool* lb = std::get_if<bool>(&lv);
        if (!lb) fail_runtime(std::string("'") + binop_name(e.op) + "' applied to a non-boolean");
        if (e.op == BinOp::And && !*lb) return Value(false);
        if (e.op == BinOp::Or && *lb) return Value(true);
        Value rv = eval(*e.rhs, scope, m);
        const bool* rb = std::get_if<bool>(&rv);
        if (!rb) fail_runtime(std::string("'") + binop_name(e.op) + "' applied to a non-boolean");
        return Value(*rb);
    }

    Value lv = eval(*e.lhs, scope, m);
    Value rv = eval(*e.rhs, scope, m);

    switch (e.op) {
        case BinOp::Add:
            if (std::holds_alternative<std::string>(lv) && std::holds_alternative<std::string>(rv))
                return Value(std::get<std::string>(lv) + std::get<std::string>(rv));
            [[fallthrough]];
        case BinOp::Sub:
        case BinOp::Mul: {
            const auto* li = std::get_if<std::int64_t>(&lv);
            const auto* ri = std::get_if<std::int64_t>(&rv);
            if (!li || !ri)
                fail_runtime(std::string("operands of '") + binop_name(e.op) + "' have mismatched types");
            return Value(checked_arith(e.op, *li, *ri));
        }
        case BinOp::Eq: return Value(values_equal(lv, rv));
        case BinOp::Ne: return Value(!values_equal(lv, rv));
        case BinOp::Lt:
        case BinOp::Le:
        case BinOp::Gt:
        case BinOp::Ge: {
            const auto* li = std::get_if<std::int64_t>(&lv);
            const auto* ri = std::get_if<std::int64_t>(&rv);
            if (!li || !ri)
                fail_runtime(std::string("ordering '") + binop_name(e.op) + "' requires integers");
            switch (e.op) {
                case BinOp::Lt: return Value(*li < *ri);
                case BinOp::Le: return Value(*li <= *ri);
                case BinOp::Gt: return Value(*li > *ri);
                default: return Value(*li >= *ri);
            }
        }
        default: fail_runtime("unsupported operator");
    }
}

} // namespace molars
