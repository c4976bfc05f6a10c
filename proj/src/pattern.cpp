#include "pattern.hpp"

#include <algorithm>

namespace molars {

const Value* PatternScope::lookup(const std::string& name) const {
    int idx = pat_->element_index(name);
    if (idx >= 0 && (*bound_)[static_cast<size_t>(idx)] != kNoObject) {
        scratch_ = Value(ObjRef{(*bound_)[static_cast<size_t>(idx)]});
        return &scratch_;
    }
    return outer_ ? outer_->lookup(name) : nullptr;
}

namespace {

bool link_present(const Model& m, const PatLink& l, const ElementBinding& bound) {
    ObjectId a = bound[static_cast<size_t>(l.from)];
    ObjectId b = bound[static_cast<size_t>(l.to)];
    return l.backward ? m.has_link(l.assoc, b, a) : m.has_link(l.assoc, a, b);
}

// Checks every match/delete link that touches `elem` and whose other endpoint
// is already bound; elem < 0 checks links between pre-bound elements only.
bool links_hold(const Pattern& p, const Model& m, const ElementBinding& bound, int elem) {
    for (const auto& l : p.links) {
        if (l.kind == ItemAction::Create) continue;
        bool touches = (elem < 0) || l.from == elem || l.to == elem;
        if (!touches) continue;
        if (bound[static_cast<size_t>(l.from)] == kNoObject) continue;
        if (bound[static_cast<size_t>(l.to)] == kNoObject) continue;
        if (!link_present(m, l, bound)) return false;
    }
    return true;
}

bool constraint_holds(const Pattern& p, const Model& m, const EvalScope& outer,
                      const ElementBinding& bound, int elem) {
    const PatElem& e = p.elements[static_cast<size_t>(elem)];
    if (!e.constraint) return true;
    PatternScope scope(&outer, p, bound);
    Value v = eval(*e.constraint, scope, m);
    const bool* b = std::get_if<bool>(&v);
    if (!b) fail_runtime("constraint of '" + e.name + "' is not boolean");
    return *b;
}

bool nac_matchable(const Pattern& nac, const EvalScope& outer, const Model& m);

// Backtracking over the elements listed in `order`, starting at position k.
// Candidates are enumerated in creation order, which makes the first found
// match the lexicographically-first candidate tuple.
bool backtrack(const Pattern& p, const EvalScope& outer, const Model& m, const std::vector<int>& order,
               size_t k, ElementBinding& bound) {
    if (k == order.size()) {
        for (const auto& nac : p.nacs) {
            PatternScope scope(&outer, p, bound);
            if (nac_matchable(nac, scope, m)) return false;
        }
        return true;
    }
    int ei = order[k];
    const PatElem& e = p.elements[static_cast<size_t>(ei)];
    for (ObjectId cand : m.objects_of_class(e.cls)) {
        bound[static_cast<size_t>(ei)] = cand;
        if (links_hold(p, m, bound, ei) && constraint_holds(p, m, outer, bound, ei)) {
            if (backtrack(p, outer, m, order, k + 1, bound)) return true;
        }
    }
    bound[static_cast<size_t>(ei)] = kNoObject;
    return false;
}

// Resolves reference elements and checks constraints/links among them.
// Returns false for a clean no-match (deleted referent), throws on an
// unresolvable name.
bool resolve_references(const Pattern& p, const EvalScope& outer, const Model& m, ElementBinding& bound) {
    auto is_ref = [](const PatElem& e) { return e.kind == ElemKind::Reference || e.ref; };
    for (size_t i = 0; i < p.elements.size(); ++i) {
        const PatElem& e = p.elements[i];
        if (!is_ref(e)) continue;
        const Value* v = outer.lookup(e.name);
        if (!v) fail_runtime("unresolvable reference element '@" + e.name + "'");
        const ObjRef* ref = std::get_if<ObjRef>(v);
        if (!ref) fail_runtime("reference element '@" + e.name + "' is bound to a non-object");
        if (!m.alive(ref->id)) return false;
        bound[i] = ref->id;
    }
    for (size_t i = 0; i < p.elements.size(); ++i) {
        if (!is_ref(p.elements[i])) continue;
        if (!links_hold(p, m, bound, static_cast<int>(i))) return false;
        if (!constraint_holds(p, m, outer, bound, static_cast<int>(i))) return false;
    }
    return true;
}

std::optional<ElementBinding> do_match(const Pattern& p, const EvalScope& outer, const Model& m,
                                       int fixed_elem, ObjectId fixed_value) {
    ElementBinding bound(p.elements.size(), kNoObject);
    if (!resolve_references(p, outer, m, bound)) return std::nullopt;

    if (fixed_elem >= 0) {
        const PatElem& e = p.elements[static_cast<size_t>(fixed_elem)];
        if (!m.alive(fixed_value) || !m.is_instance_of(fixed_value, e.cls)) return std::nullopt;
        bound[static_cast<size_t>(fixed_elem)] = fixed_value;
        if (!links_hold(p, m, bound, fixed_elem)) return std::nullopt;
        if (!constraint_holds(p, m, outer, bound, fixed_elem)) return std::nullopt;
    }

    std::vector<int> order;
    for (size_t i = 0; i < p.elements.size(); ++i) {
        const PatElem& e = p.elements[i];
        if (static_cast<int>(i) == fixed_elem || e.ref) continue;
        if (e.kind == ElemKind::Match || e.kind == ElemKind::Delete) order.push_back(static_cast<int>(i));
    }
    if (!backtrack(p, outer, m, order, 0, bound)) return std::nullopt;
    return bound;
}

bool nac_matchable(const Pattern& nac, const EvalScope& outer, const Model& m) {
    return do_match(nac, outer, m, -1, kNoObject).has_value();
}

} // namespace

std::optional<ElementBinding> match_rule(const Pattern& p, const EvalScope& outer, const Model& m) {
    return do_match(p, outer, m, -1, kNoObject);
}

std::optional<ElementBinding> match_rule_fixed(const Pattern& p, const EvalScope& outer, const Model& m,
                                               int elem, ObjectId value) {
    return do_match(p, outer, m, elem, value);
}

std::vector<ElementBinding> enumerate_loop(const Pattern& p, int loop_var, const EvalScope& outer,
                                           const Model& m) {
    std::vector<ElementBinding> out;
    const PatElem& lv = p.elements.at(static_cast<size_t>(loop_var));
    for (ObjectId cand : m.objects_of_class(lv.cls)) {
        auto match = do_match(p, outer, m, loop_var, cand);
        if (match) out.push_back(std::move(*match));
    }
    return out;
}

void apply_actions(const Pattern& p, ElementBinding& bound, const EvalScope& outer, Model& m) {
    for (size_t i = 0; i < p.elements.size(); ++i) {
        if (p.elements[i].kind == ElemKind::Create) bound[i] = m.create_object(p.elements[i].cls);
    }
    for (const auto& l : p.links) {
        if (l.kind != ItemAction::Create) continue;
        ObjectId a = bound[static_cast<size_t>(l.from)];
        ObjectId b = bound[static_cast<size_t>(l.to)];
        if (l.backward) std::swap(a, b);
        m.create_link(l.assoc, a, b);
    }
    {
        PatternScope scope(&outer, p, bound);
        for (size_t i = 0; i < p.elements.size(); ++i) {
            for (const auto& as : p.elements[i].assigns) {
                Value v = eval(*as.value, scope, m);
                m.set_slot(bound[i], as.attr, std::move(v));
            }
        }
    }
    for (const auto& l : p.links) {
        if (l.kind != ItemAction::Delete) continue;
        ObjectId a = bound[static_cast<size_t>(l.from)];
        ObjectId b = bound[static_cast<size_t>(l.to)];
        if (l.backward) std::swap(a, b);
        m.delete_link(l.assoc, a, b);
    }
    for (size_t i = 0; i < p.elements.size(); ++i) {
        if (p.elements[i].kind != ElemKind::Delete) continue;
        // Two delete elements may alias the same instance; the second delete
        // is then already done.
        if (m.alive(bound[i])) m.delete_object(bound[i]);
    }
}

} // namespace molars
