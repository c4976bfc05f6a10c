#include "lower.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace molars {

namespace {

// Name resolution callback used by expression lowering; returns the static
// type or nullopt (after reporting its own diagnostic when appropriate).
using Resolver = std::function<std::optional<ExprType>(const std::string&, SourcePos)>;

class Lowerer {
public:
    Lowerer(const AstProgram& ast, const Metamodel& mm) : ast_(ast), mm_(mm) {}

    LowerResult run() {
        LowerResult res;
        collect_signatures();
        for (const auto& proc : ast_.procedures) res.program.procedures.push_back(lower_procedure(proc));
        std::stable_sort(diags_.begin(), diags_.end(), [](const Diagnostic& a, const Diagnostic& b) {
            return a.pos.line < b.pos.line || (a.pos.line == b.pos.line && a.pos.col < b.pos.col);
        });
        res.diagnostics = std::move(diags_);
        return res;
    }

private:
    struct SBinding {
        enum class Kind { Param, Var, Element } kind = Kind::Element;
        DeclType type;
    };
    using ScopeMap = std::map<std::string, SBinding>;

    void diag(SourcePos pos, const std::string& msg) { diags_.push_back({pos, msg}); }

    std::optional<DeclType> resolve_type(const std::string& name, SourcePos pos, bool prim_only) {
        DeclType t;
        PrimType pt;
        if (prim_type_from_name(name, pt)) {
            t.is_object = false;
            t.prim = pt;
            return t;
        }
        if (prim_only) {
            diag(pos, "variables must have a primitive type, got '" + name + "'");
            return std::nullopt;
        }
        int ci = mm_.class_index(name);
        if (ci < 0) {
            diag(pos, "unknown type '" + name + "'");
            return std::nullopt;
        }
        t.is_object = true;
        t.cls = ci;
        return t;
    }

    void collect_signatures() {
        std::set<std::string> names;
        for (const auto& proc : ast_.procedures) {
            if (!names.insert(proc.name).second)
                diag(proc.pos, "duplicate procedure '" + proc.name + "'");
            std::vector<Param> params;
            std::set<std::string> pnames;
            for (const auto& p : proc.params) {
                if (!pnames.insert(p.name).second)
                    diag(p.pos, "duplicate parameter '" + p.name + "' in '" + proc.name + "'");
                auto t = resolve_type(p.type_name, p.pos, false);
                Param lp;
                lp.name = p.name;
                if (t) lp.type = *t;
                params.push_back(std::move(lp));
            }
            signatures_.emplace(proc.name, std::move(params));
        }
    }

    const SBinding* lookup(const std::string& name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto f = it->find(name);
            if (f != it->end()) return &f->second;
        }
        return nullptr;
    }

    void bind(const std::string& name, SBinding b, SourcePos pos) {
        if (lookup(name)) {
            diag(pos, "name '" + name + "' is already bound in this scope");
            return;
        }
        scopes_.back().emplace(name, std::move(b));
    }

    Procedure lower_procedure(const AstProcedure& proc) {
        Procedure out;
        out.name = proc.name;
        out.params = signatures_.at(proc.name);
        if (proc.body.stmts.empty()) diag(proc.pos, "procedure '" + proc.name + "' has an empty body");

        scopes_.clear();
        scopes_.emplace_back();
        for (const auto& p : out.params)
            scopes_.back().emplace(p.name, SBinding{SBinding::Kind::Param, p.type});
        out.body = lower_block(proc.body, false);
        scopes_.pop_back();
        return out;
    }

    // `child_scope` pushes a fresh static scope (else bodies, foreach bodies).
    Block lower_block(const AstBlock& b, bool child_scope) {
        if (child_scope) scopes_.emplace_back();
        Block out;
        for (const auto& s : b.stmts) out.stmts.push_back(lower_statement(s));
        if (child_scope) scopes_.pop_back();
        return out;
    }

    Statement lower_statement(const AstStmt& s) {
        Statement out;
        out.pos = s.pos;
        switch (s.kind) {
            case AstStmt::Kind::Var: {
                out.kind = Statement::K::Var;
                out.var_name = s.name;
                auto t = resolve_type(s.type_name, s.pos, true);
                if (t) out.var_type = *t;
                if (s.value) {
                    out.value = lower_expr(s.value, scope_resolver());
                    if (t && out.value && !(out.value->type == t->expr_type()))
                        diag(s.pos, "initializer of '" + s.name + "' is not " + prim_type_name(t->prim));
                }
                if (t) bind(s.name, SBinding{SBinding::Kind::Var, *t}, s.pos);
                return out;
            }
            case AstStmt::Kind::Assign: {
                out.kind = Statement::K::Assign;
                out.var_name = s.name;
                const SBinding* b = lookup(s.name);
                if (!b) {
                    diag(s.pos, "unknown variable '" + s.name + "'");
                } else if (b->kind != SBinding::Kind::Var) {
                    diag(s.pos, "'" + s.name + "' is not an assignable variable");
                }
                out.value = lower_expr(s.value, scope_resolver());
                if (b && b->kind == SBinding::Kind::Var && out.value &&
                    !(out.value->type == b->type.expr_type()))
                    diag(s.pos, "assignment to '" + s.name + "' has the wrong type");
                return out;
            }
            case AstStmt::Kind::Call: {
                out.kind = Statement::K::Call;
                out.callee = s.name;
                auto sig = signatures_.find(s.name);
                if (sig == signatures_.end()) {
                    diag(s.pos, "unknown procedure '" + s.name + "'");
                } else {
                    int idx = 0;
                    for (const auto& pr : ast_.procedures) {
                        if (pr.name == s.name) break;
                        ++idx;
                    }
                    out.callee_index = idx;
                    if (sig->second.size() != s.args.size())
                        diag(s.pos, "procedure '" + s.name + "' expects " +
                                        std::to_string(sig->second.size()) + " argument(s), got " +
                                        std::to_string(s.args.size()));
                }
                for (size_t i = 0; i < s.args.size(); ++i) {
                    auto arg = lower_expr(s.args[i], scope_resolver());
                    if (sig != signatures_.end() && i < sig->second.size() && arg) {
                        const DeclType& pt = sig->second[i].type;
                        if (pt.is_object) {
                            if (!arg->type.is_object() || !mm_.is_kind_of(arg->type.cls, pt.cls))
                                diag(s.args[i]->pos, "argument " + std::to_string(i + 1) + " of '" + s.name +
                                                         "' must be a " + mm_.cls(pt.cls).name);
                        } else if (!(arg->type == ExprType::prim(pt.prim))) {
                            diag(s.args[i]->pos, "argument " + std::to_string(i + 1) + " of '" + s.name +
                                                     "' must be " + prim_type_name(pt.prim));
                        }
                    }
                    out.args.push_back(std::move(arg));
                }
                return out;
            }
            case AstStmt::Kind::Rule: {
                out.kind = Statement::K::Rule;
                out.pattern = lower_pattern(s.pattern, nullptr);
                // The else branch runs when nothing matched, so it must not
                // see the rule's bindings.
                if (s.else_body) out.else_body = lower_block(*s.else_body, true);
                publish_bindings(out.pattern);
                return out;
            }
            case AstStmt::Kind::While: {
                out.kind = Statement::K::While;
                out.pattern = lower_pattern(s.pattern, nullptr);
                bool progress = false;
                for (const auto& e : out.pattern.elements)
                    if (e.kind == ElemKind::Create || e.kind == ElemKind::Delete || !e.assigns.empty())
                        progress = true;
                for (const auto& l : out.pattern.links)
                    if (l.kind != ItemAction::Match) progress = true;
                if (!progress)
                    diag(s.pos, "while rule has no create/delete/assign action and could never terminate");
                return out;
            }
            case AstStmt::Kind::Foreach: {
                out.kind = Statement::K::Foreach;
                scopes_.emplace_back(); // loophead bindings live in the iteration scope
                out.pattern = lower_pattern(s.pattern, &s.loop_var);
                out.loop_var = out.pattern.element_index(s.loop_var);
                if (out.loop_var < 0) {
                    diag(s.pos, "loop variable '" + s.loop_var + "' is not an element of the loophead");
                } else {
                    const PatElem& lv = out.pattern.elements[static_cast<size_t>(out.loop_var)];
                    if (lv.kind != ElemKind::Match) {
                        diag(s.pos, "loop variable '" + s.loop_var + "' must be a plain match element");
                        out.loop_var = -1;
                    }
                }
                if (out.loop_var < 0 && !out.pattern.elements.empty()) out.loop_var = 0;
                publish_bindings(out.pattern);
                out.body = lower_block(s.body, false); // shares the iteration scope
                scopes_.pop_back();
                return out;
            }
        }
        return out;
    }

    void publish_bindings(const Pattern& p) {
        for (const auto& e : p.elements) {
            if (e.kind != ElemKind::Match && e.kind != ElemKind::Create) continue;
            if (lookup(e.name)) continue; // the shadowing diagnostic already fired
            DeclType t;
            t.is_object = true;
            t.cls = e.cls;
            scopes_.back().emplace(e.name, SBinding{SBinding::Kind::Element, t});
        }
    }

    Resolver scope_resolver() {
        return [this](const std::string& name, SourcePos pos) -> std::optional<ExprType> {
            const SBinding* b = lookup(name);
            if (!b) {
                diag(pos, "unknown name '" + name + "'");
                return std::nullopt;
            }
            return b->type.expr_type();
        };
    }

    // ---- patterns ----

    struct ElemInfo {
        const AstElement* ast = nullptr;
        int index = -1;
    };

    Pattern lower_pattern(const AstPattern& ap, const std::string* loop_var) {
        Pattern pat;
        pat.name = ap.rule_name;
        lower_pattern_into(ap, pat, nullptr, loop_var);
        return pat;
    }

    // `outer` is the enclosing positive pattern when lowering a NAC.
    void lower_pattern_into(const AstPattern& ap, Pattern& pat, Pattern* outer, const std::string* loop_var) {
        const bool in_nac = outer != nullptr;

        // Declared elements first; links may mention them in any order.
        std::vector<const AstElement*> decls;
        for (const auto& item : ap.items) {
            if (item.kind != AstPatItem::Kind::Element) continue;
            const AstElement& e = item.element;
            decls.push_back(&e);
            PatElem pe;
            pe.name = e.name;
            if (e.is_ref) {
                pe.ref = true;
                pe.kind = e.action == AstAction::Delete ? ElemKind::Delete : ElemKind::Reference;
                if (e.action == AstAction::Create) {
                    diag(e.pos, "reference element '@" + e.name + "' cannot be created");
                    pe.kind = ElemKind::Reference;
                }
                const SBinding* b = lookup(e.name);
                if (!b) {
                    diag(e.pos, "'@" + e.name + "' does not reference a bound name");
                } else if (!b->type.is_object) {
                    diag(e.pos, "'@" + e.name + "' references a primitive, not an object");
                } else {
                    pe.cls = b->type.cls;
                }
                // Delete-by-reference still needs the class for candidate checks.
                if (pe.kind == ElemKind::Delete && pe.cls < 0) pe.kind = ElemKind::Reference;
            } else {
                switch (e.action) {
                    case AstAction::None: pe.kind = ElemKind::Match; break;
                    case AstAction::Create: pe.kind = ElemKind::Create; break;
                    case AstAction::Delete: pe.kind = ElemKind::Delete; break;
                }
                int ci = mm_.class_index(e.cls);
                if (ci < 0) {
                    diag(e.pos, "unknown class '" + e.cls + "'");
                } else {
                    pe.cls = ci;
                    if (pe.kind == ElemKind::Create && mm_.cls(ci).abstract)
                        diag(e.pos, "cannot create an instance of abstract class '" + e.cls + "'");
                }
                if (!e.is_ref && lookup(e.name))
                    diag(e.pos, "element '" + e.name + "' shadows a bound name; use '@" + e.name +
                                    "' to reference it");
            }
            if (in_nac && (pe.kind == ElemKind::Create || pe.kind == ElemKind::Delete)) {
                diag(e.pos, "NOT patterns may only contain plain match elements");
                pe.kind = ElemKind::Match;
            }
            if (pat.element_index(pe.name) >= 0 || (outer && outer->element_index(pe.name) >= 0)) {
                diag(e.pos, "duplicate element name '" + pe.name + "' in this rule");
            }
            // Poisoned class: keep indices stable, diagnostics suppress execution.
            if (pe.cls < 0 && pe.kind != ElemKind::Reference && !mm_.classes.empty()) pe.cls = 0;
            pat.elements.push_back(std::move(pe));
        }

        // Reference elements resolved from an enclosing pattern or scope get
        // appended on demand.
        auto endpoint_index = [&](const AstRefName& r) -> int {
            if (!r.is_ref) {
                int idx = pat.element_index(r.name);
                if (idx >= 0) return idx;
                if (outer) {
                    int oidx = outer->element_index(r.name);
                    if (oidx >= 0) {
                        const PatElem& oe = outer->elements[static_cast<size_t>(oidx)];
                        if (oe.kind == ElemKind::Create) {
                            diag(r.pos, "'" + r.name + "' is created by the enclosing rule and cannot be "
                                        "matched inside its NOT pattern");
                        }
                        PatElem pe;
                        pe.name = r.name;
                        pe.kind = ElemKind::Reference;
                        pe.ref = true;
                        pe.cls = oe.cls;
                        pat.elements.push_back(std::move(pe));
                        return static_cast<int>(pat.elements.size() - 1);
                    }
                }
                diag(r.pos, "link endpoint '" + r.name + "' is not an element of this pattern");
                return -1;
            }
            int idx = pat.element_index(r.name);
            if (idx >= 0) {
                if (pat.elements[static_cast<size_t>(idx)].ref) return idx;
                diag(r.pos, "'@" + r.name + "' names an element of this pattern; drop the '@'");
                return idx;
            }
            const SBinding* b = lookup(r.name);
            if (!b) {
                diag(r.pos, "'@" + r.name + "' does not reference a bound name");
                return -1;
            }
            if (!b->type.is_object) {
                diag(r.pos, "'@" + r.name + "' references a primitive, not an object");
                return -1;
            }
            PatElem pe;
            pe.name = r.name;
            pe.kind = ElemKind::Reference;
            pe.ref = true;
            pe.cls = b->type.cls;
            pat.elements.push_back(std::move(pe));
            return static_cast<int>(pat.elements.size() - 1);
        };

        size_t decl_i = 0;
        for (const auto& item : ap.items) {
            switch (item.kind) {
                case AstPatItem::Kind::Element: {
                    const AstElement& e = *decls[decl_i];
                    int self = pat.element_index(e.name);
                    ++decl_i;
                    if (self < 0) break;
                    PatElem& pe = pat.elements[static_cast<size_t>(self)];
                    if (e.where) {
                        if (pe.kind == ElemKind::Create) {
                            diag(e.pos, "create elements cannot have constraints");
                        } else {
                            pe.constraint =
                                lower_expr(e.where, pattern_resolver(pat, outer, self, loop_var));
                            if (pe.constraint && !(pe.constraint->type == ExprType{ExprType::K::Bool, -1}))
                                diag(e.pos, "constraint of '" + e.name + "' must be boolean");
                        }
                    }
                    for (const auto& as : e.sets) {
                        if (in_nac) {
                            diag(as.pos, "NOT patterns cannot assign attributes");
                            continue;
                        }
                        PatAssign pa;
                        pa.attr = as.attr;
                        const MetaAttribute* at = pe.cls >= 0 ? mm_.find_attr(pe.cls, as.attr) : nullptr;
                        if (!at) {
                            diag(as.pos, "class '" + (pe.cls >= 0 ? mm_.cls(pe.cls).name : std::string("?")) +
                                             "' has no attribute '" + as.attr + "'");
                        }
                        pa.value = lower_expr(as.value, pattern_resolver(pat, outer, -1, loop_var));
                        if (at && pa.value && !(pa.value->type == ExprType::prim(at->type)))
                            diag(as.pos, "assignment to '" + as.attr + "' must be " + prim_type_name(at->type));
                        pe.assigns.push_back(std::move(pa));
                    }
                    break;
                }
                case AstPatItem::Kind::Link: {
                    const AstLink& l = item.link;
                    PatLink pl;
                    switch (l.action) {
                        case AstAction::None: pl.kind = ItemAction::Match; break;
                        case AstAction::Create: pl.kind = ItemAction::Create; break;
                        case AstAction::Delete: pl.kind = ItemAction::Delete; break;
                    }
                    if (in_nac && pl.kind != ItemAction::Match) {
                        diag(l.pos, "NOT patterns may only contain plain match links");
                        pl.kind = ItemAction::Match;
                    }
                    pl.from = endpoint_index(l.from);
                    pl.to = endpoint_index(l.to);
                    if (pl.from < 0 || pl.to < 0) break;

                    int nav_cls = mm_.class_index(l.cls);
                    if (nav_cls < 0) {
                        diag(l.pos, "unknown class '" + l.cls + "'");
                        break;
                    }
                    auto ends = mm_.resolve_end(nav_cls, l.end);
                    if (ends.empty()) {
                        diag(l.pos, "unknown association end '" + l.cls + "." + l.end + "'");
                        break;
                    }
                    if (ends.size() > 1) {
                        diag(l.pos, "association end '" + l.cls + "." + l.end + "' is ambiguous");
                        break;
                    }
                    pl.assoc = ends[0].assoc;
                    pl.backward = ends[0].backward;
                    const MetaAssociation& a = mm_.assoc(pl.assoc);

                    int from_need = pl.backward ? a.trg : a.src;
                    int to_need = pl.backward ? a.src : a.trg;
                    const PatElem& fe = pat.elements[static_cast<size_t>(pl.from)];
                    const PatElem& te = pat.elements[static_cast<size_t>(pl.to)];
                    if (fe.cls >= 0 && !mm_.is_kind_of(fe.cls, from_need))
                        diag(l.pos, "'" + fe.name + "' is not a " + mm_.cls(from_need).name);
                    if (te.cls >= 0 && !mm_.is_kind_of(te.cls, to_need))
                        diag(l.pos, "'" + te.name + "' is not a " + mm_.cls(to_need).name);

                    auto is_create = [](const PatElem& e) { return e.kind == ElemKind::Create; };
                    auto is_delete = [](const PatElem& e) { return e.kind == ElemKind::Delete; };
                    if (pl.kind == ItemAction::Create && (is_delete(fe) || is_delete(te)))
                        diag(l.pos, "a create link cannot attach to a delete element");
                    if (pl.kind != ItemAction::Create && (is_create(fe) || is_create(te)))
                        diag(l.pos, "a match link cannot attach to a create element");
                    pat.links.push_back(pl);
                    break;
                }
                case AstPatItem::Kind::Nac: {
                    if (in_nac) {
                        diag(item.nac->pos, "NOT patterns cannot be nested");
                        break;
                    }
                    Pattern nac;
                    lower_pattern_into(*item.nac, nac, &pat, nullptr);
                    pat.nacs.push_back(std::move(nac));
                    break;
                }
            }
        }
    }

    // Resolution inside a pattern: pattern elements by name (respecting
    // binding order for constraints), then the enclosing pattern (for NACs),
    // then the procedure scope.
    Resolver pattern_resolver(const Pattern& pat, const Pattern* outer, int constraint_elem,
                              const std::string* loop_var) {
        return [this, &pat, outer, constraint_elem, loop_var](
                   const std::string& name, SourcePos pos) -> std::optional<ExprType> {
            int idx = pat.element_index(name);
            const Pattern* owner = &pat;
            if (idx < 0 && outer) {
                idx = outer->element_index(name);
                owner = outer;
            }
            if (idx >= 0) {
                const PatElem& e = owner->elements[static_cast<size_t>(idx)];
                if (e.kind == ElemKind::Create && constraint_elem >= 0) {
                    diag(pos, "create element '" + name + "' has no value while matching");
                    return std::nullopt;
                }
                if (constraint_elem >= 0 && owner == &pat && !e.ref && idx > constraint_elem) {
                    diag(pos, "'" + name + "' is bound after this constraint; reorder the elements");
                    return std::nullopt;
                }
                if (constraint_elem >= 0 && loop_var && *loop_var ==
                        pat.elements[static_cast<size_t>(constraint_elem)].name &&
                    !e.ref && name != *loop_var && owner == &pat) {
                    diag(pos, "the loop variable's constraint may only use the loop variable itself "
                              "and outer bindings");
                    return std::nullopt;
                }
                if (e.cls < 0) return std::nullopt;
                return ExprType{ExprType::K::Object, e.cls};
            }
            const SBinding* b = lookup(name);
            if (!b) {
                diag(pos, "unknown name '" + name + "'");
                return std::nullopt;
            }
            return b->type.expr_type();
        };
    }

    // ---- expressions ----

    ExprPtr lower_expr(const AstExprPtr& ae, const Resolver& resolve) {
        if (!ae) return nullptr;
        auto out = std::make_shared<Expr>();
        out->pos = ae->pos;
        switch (ae->kind) {
            case AstExpr::Kind::IntLit:
                out->kind = Expr::Kind::IntLit;
                out->int_val = ae->int_val;
                out->type = {ExprType::K::Int, -1};
                return out;
            case AstExpr::Kind::StrLit:
                out->kind = Expr::Kind::StrLit;
                out->str_val = ae->str_val;
                out->type = {ExprType::K::Str, -1};
                return out;
            case AstExpr::Kind::BoolLit:
                out->kind = Expr::Kind::BoolLit;
                out->bool_val = ae->bool_val;
                out->type = {ExprType::K::Bool, -1};
                return out;
            case AstExpr::Kind::Name: {
                out->kind = Expr::Kind::Name;
                out->name = ae->name;
                auto t = resolve(ae->name, ae->pos);
                out->type = t.value_or(ExprType{ExprType::K::Int, -1});
                return out;
            }
            case AstExpr::Kind::Attr: {
                out->kind = Expr::Kind::Attr;
                out->name = ae->name;
                out->attr = ae->attr;
                out->type = {ExprType::K::Int, -1};
                auto t = resolve(ae->name, ae->pos);
                if (t) {
                    if (!t->is_object()) {
                        diag(ae->pos, "'" + ae->name + "' is not an object");
                    } else if (t->cls >= 0) {
                        const MetaAttribute* at = mm_.find_attr(t->cls, ae->attr);
                        if (!at) {
                            diag(ae->pos, "class '" + mm_.cls(t->cls).name + "' has no attribute '" +
                                              ae->attr + "'");
                        } else {
                            out->type = ExprType::prim(at->type);
                        }
                    }
                }
                return out;
            }
            case AstExpr::Kind::Not: {
                out->kind = Expr::Kind::Not;
                out->lhs = lower_expr(ae->lhs, resolve);
                if (out->lhs && !(out->lhs->type == ExprType{ExprType::K::Bool, -1}))
                    diag(ae->pos, "'not' needs a boolean operand");
                out->type = {ExprType::K::Bool, -1};
                return out;
            }
            case AstExpr::Kind::Binary: break;
        }

        out->kind = Expr::Kind::Binary;
        out->op = ae->op;
        out->lhs = lower_expr(ae->lhs, resolve);
        out->rhs = lower_expr(ae->rhs, resolve);
        const ExprType lt = out->lhs ? out->lhs->type : ExprType{ExprType::K::Int, -1};
        const ExprType rt = out->rhs ? out->rhs->type : ExprType{ExprType::K::Int, -1};
        auto both = [&](ExprType::K k) { return lt.k == k && rt.k == k; };

        switch (ae->op) {
            case BinOp::Add:
                if (both(ExprType::K::Int)) out->type = {ExprType::K::Int, -1};
                else if (both(ExprType::K::Str)) out->type = {ExprType::K::Str, -1};
                else {
                    diag(ae->pos, "'+' needs two Integers or two Strings");
                    out->type = {ExprType::K::Int, -1};
                }
                break;
            case BinOp::Sub:
            case BinOp::Mul:
                if (!both(ExprType::K::Int))
                    diag(ae->pos, std::string("'") + binop_name(ae->op) + "' needs Integer operands");
                out->type = {ExprType::K::Int, -1};
                break;
            case BinOp::Eq:
            case BinOp::Ne:
                if (lt.k != rt.k)
                    diag(ae->pos, std::string("'") + binop_name(ae->op) +
                                      "' compares values of different types");
                out->type = {ExprType::K::Bool, -1};
                break;
            case BinOp::Lt:
            case BinOp::Le:
            case BinOp::Gt:
            case BinOp::Ge:
                if (!both(ExprType::K::Int))
                    diag(ae->pos, std::string("'") + binop_name(ae->op) + "' needs Integer operands");
                out->type = {ExprType::K::Bool, -1};
                break;
            case BinOp::And:
            case BinOp::Or:
                if (!both(ExprType::K::Bool))
                    diag(ae->pos, std::string("'") + binop_name(ae->op) + "' needs boolean operands");
                out->type = {ExprType::K::Bool, -1};
                break;
        }
        return out;
    }

    const AstProgram& ast_;
    const Metamodel& mm_;
    std::vector<Diagnostic> diags_;
    std::map<std::string, std::vector<Param>> signatures_;
    std::vector<ScopeMap> scopes_;
};

} // namespace

LowerResult lower(const AstProgram& ast, const Metamodel& mm) { return Lowerer(ast, mm).run(); }

} // namespace molars
