#include <doctest.h>

#include <map>

#include "expr.hpp"
#include "model.hpp"

using namespace molars;

namespace {

struct MapScope : EvalScope {
    std::map<std::string, Value> values;
    const Value* lookup(const std::string& name) const override {
        auto it = values.find(name);
        return it == values.end() ? nullptr : &it->second;
    }
};

ExprPtr lit(std::int64_t v) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::IntLit;
    e->int_val = v;
    return e;
}

ExprPtr lit(const std::string& v) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::StrLit;
    e->str_val = v;
    return e;
}

ExprPtr name(const std::string& n) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Name;
    e->name = n;
    return e;
}

ExprPtr attr(const std::string& base, const std::string& a) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Attr;
    e->name = base;
    e->attr = a;
    return e;
}

ExprPtr bin(BinOp op, ExprPtr l, ExprPtr r) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Binary;
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
}

std::shared_ptr<const Metamodel> tiny_mm() {
    return std::make_shared<const Metamodel>(parse_metamodel(
        R"({"name":"t","classes":[{"name":"Thing","attrs":[
            {"name":"text","type":"String"},{"name":"num","type":"Integer"}]}]})"));
}

} // namespace

TEST_CASE("integer arithmetic: sk + 1 and sk + 3") {
    auto mm = tiny_mm();
    Model m(mm);
    MapScope scope;
    scope.values["sk"] = Value(std::int64_t(0));
    CHECK(eval(*bin(BinOp::Add, name("sk"), lit(1)), scope, m) == Value(std::int64_t(1)));
    scope.values["sk"] = Value(std::int64_t(3));
    CHECK(eval(*bin(BinOp::Add, name("sk"), lit(3)), scope, m) == Value(std::int64_t(6)));
    CHECK(eval(*bin(BinOp::Mul, lit(6), lit(7)), scope, m) == Value(std::int64_t(42)));
    CHECK(eval(*bin(BinOp::Sub, lit(1), lit(2)), scope, m) == Value(std::int64_t(-1)));
}

TEST_CASE("string concatenation builds the greeting text") {
    auto mm = tiny_mm();
    Model m(mm);
    ObjectId msg = m.create_object(0);
    ObjectId person = m.create_object(0);
    m.set_slot(msg, "text", Value(std::string("Hello")));
    m.set_slot(person, "text", Value(std::string("TTC Participants")));
    MapScope scope;
    scope.values["m"] = Value(ObjRef{msg});
    scope.values["p"] = Value(ObjRef{person});
    auto expr = bin(BinOp::Add, bin(BinOp::Add, bin(BinOp::Add, attr("m", "text"), lit(std::string(" "))),
                                    attr("p", "text")),
                    lit(std::string("!")));
    CHECK(eval(*expr, scope, m) == Value(std::string("Hello TTC Participants!")));
}

TEST_CASE("overflow is an error, not a wrap") {
    auto mm = tiny_mm();
    Model m(mm);
    MapScope scope;
    auto big = lit(std::int64_t(9223372036854775807LL));
    CHECK_THROWS_WITH_AS(eval(*bin(BinOp::Add, big, lit(1)), scope, m), doctest::Contains("overflow"),
                         Error);
    CHECK_THROWS_AS(eval(*bin(BinOp::Mul, big, lit(2)), scope, m), Error);
}

TEST_CASE("unbound names and absent slots fail loudly") {
    auto mm = tiny_mm();
    Model m(mm);
    MapScope scope;
    CHECK_THROWS_WITH_AS(eval(*name("ghost"), scope, m), doctest::Contains("unbound"), Error);

    ObjectId t = m.create_object(0);
    scope.values["t"] = Value(ObjRef{t});
    CHECK_THROWS_WITH_AS(eval(*attr("t", "num"), scope, m), doctest::Contains("never set"), Error);
    m.set_slot(t, "num", Value(std::int64_t(7)));
    CHECK(eval(*attr("t", "num"), scope, m) == Value(std::int64_t(7)));
}

TEST_CASE("comparisons and boolean operators") {
    auto mm = tiny_mm();
    Model m(mm);
    MapScope scope;
    CHECK(eval(*bin(BinOp::Lt, lit(1), lit(2)), scope, m) == Value(true));
    CHECK(eval(*bin(BinOp::Ge, lit(2), lit(2)), scope, m) == Value(true));
    CHECK(eval(*bin(BinOp::Ne, lit(std::string("a")), lit(std::string("b"))), scope, m) == Value(true));

    ObjectId a = m.create_object(0);
    ObjectId b = m.create_object(0);
    scope.values["a"] = Value(ObjRef{a});
    scope.values["a2"] = Value(ObjRef{a});
    scope.values["b"] = Value(ObjRef{b});
    CHECK(eval(*bin(BinOp::Eq, name("a"), name("a2")), scope, m) == Value(true));
    CHECK(eval(*bin(BinOp::Ne, name("a"), name("b")), scope, m) == Value(true));

    auto t = std::make_shared<Expr>();
    t->kind = Expr::Kind::BoolLit;
    t->bool_val = true;
    auto f = std::make_shared<Expr>();
    f->kind = Expr::Kind::BoolLit;
    f->bool_val = false;
    CHECK(eval(*bin(BinOp::And, t, f), scope, m) == Value(false));
    CHECK(eval(*bin(BinOp::Or, f, t), scope, m) == Value(true));
    auto notex = std::make_shared<Expr>();
    notex->kind = Expr::Kind::Not;
    notex->lhs = f;
    CHECK(eval(*notex, scope, m) == Value(true));
}

TEST_CASE("boolean operators short-circuit") {
    auto mm = tiny_mm();
    Model m(mm);
    MapScope scope;
    auto f = std::make_shared<Expr>();
    f->kind = Expr::Kind::BoolLit;
    f->bool_val = false;
    // rhs would fail if evaluated
    CHECK(eval(*bin(BinOp::And, f, name("ghost")), scope, m) == Value(false));
}
