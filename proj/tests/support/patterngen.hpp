#pragma once

// Random pattern generator over the graph1 metamodel, shared by the unit
// property tests and the acceptance suite. Produces match elements, match
// links (forward and backward ends), name-equality and non-alias constraints
// and at most one NAC — the exact shapes the exhaustive oracle understands.

#include "pattern.hpp"
#include "randmodel.hpp"

namespace testsupport {

using namespace molars;

inline ExprPtr gen_name_eq(const std::string& elem, const std::string& value) {
    auto attr = std::make_shared<Expr>();
    attr->kind = Expr::Kind::Attr;
    attr->name = elem;
    attr->attr = "name";
    auto lit = std::make_shared<Expr>();
    lit->kind = Expr::Kind::StrLit;
    lit->str_val = value;
    auto eq = std::make_shared<Expr>();
    eq->kind = Expr::Kind::Binary;
    eq->op = BinOp::Eq;
    eq->lhs = attr;
    eq->rhs = lit;
    return eq;
}

inline ExprPtr gen_not_alias(const std::string& a, const std::string& b) {
    auto l = std::make_shared<Expr>();
    l->kind = Expr::Kind::Name;
    l->name = a;
    auto r = std::make_shared<Expr>();
    r->kind = Expr::Kind::Name;
    r->name = b;
    auto ne = std::make_shared<Expr>();
    ne->kind = Expr::Kind::Binary;
    ne->op = BinOp::Ne;
    ne->lhs = l;
    ne->rhs = r;
    return ne;
}

inline ExprPtr gen_conj(ExprPtr a, ExprPtr b) {
    if (!a) return b;
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Binary;
    e->op = BinOp::And;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}

inline Pattern random_pattern(Rng& rng, const Metamodel& mm, int max_elems) {
    const int graph = mm.class_index("Graph");
    const int node = mm.class_index("Node");
    const int edge = mm.class_index("Edge");

    auto pick_class = [&]() {
        int roll = rng.below(100);
        if (roll < 45) return edge;
        if (roll < 85) return node;
        return graph;
    };

    Pattern p;
    p.name = "generated";
    int n = 1 + rng.below(max_elems);
    for (int i = 0; i < n; ++i) {
        PatElem e;
        e.name = "x" + std::to_string(i);
        e.cls = pick_class();
        e.kind = ElemKind::Match;
        p.elements.push_back(std::move(e));
    }

    auto compatible = [&](int ci, int cj, std::vector<std::pair<int, bool>>& out) {
        for (size_t a = 0; a < mm.associations.size(); ++a) {
            const auto& as = mm.assoc(static_cast<int>(a));
            if (as.src == ci && as.trg == cj) out.emplace_back(static_cast<int>(a), false);
            if (as.trg == ci && as.src == cj) out.emplace_back(static_cast<int>(a), true);
        }
    };

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j || !rng.chance(35)) continue;
            std::vector<std::pair<int, bool>> options;
            compatible(p.elements[static_cast<size_t>(i)].cls, p.elements[static_cast<size_t>(j)].cls,
                       options);
            if (options.empty()) continue;
            auto [assoc, backward] =
                options[static_cast<size_t>(rng.below(static_cast<int>(options.size())))];
            p.links.push_back({assoc, backward, i, j, ItemAction::Match});
        }

    for (int i = 0; i < n; ++i) {
        if (p.elements[static_cast<size_t>(i)].cls == node && rng.chance(30)) {
            std::string victim = "n" + std::to_string(1 + rng.below(8));
            p.elements[static_cast<size_t>(i)].constraint =
                gen_conj(p.elements[static_cast<size_t>(i)].constraint,
                         gen_name_eq(p.elements[static_cast<size_t>(i)].name, victim));
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (p.elements[static_cast<size_t>(i)].cls != p.elements[static_cast<size_t>(j)].cls)
                continue;
            if (!rng.chance(25)) continue;
            p.elements[static_cast<size_t>(j)].constraint =
                gen_conj(p.elements[static_cast<size_t>(j)].constraint,
                         gen_not_alias(p.elements[static_cast<size_t>(i)].name,
                                       p.elements[static_cast<size_t>(j)].name));
        }

    if (rng.chance(40)) {
        Pattern nac;
        int k = 1 + rng.below(2);
        for (int i = 0; i < k; ++i) {
            PatElem e;
            e.name = "y" + std::to_string(i);
            e.cls = pick_class();
            e.kind = ElemKind::Match;
            nac.elements.push_back(std::move(e));
        }
        for (int i = 0; i < k; ++i) {
            int outer = rng.below(n);
            std::vector<std::pair<int, bool>> options;
            compatible(nac.elements[static_cast<size_t>(i)].cls,
                       p.elements[static_cast<size_t>(outer)].cls, options);
            if (options.empty()) continue;
            auto [assoc, backward] =
                options[static_cast<size_t>(rng.below(static_cast<int>(options.size())))];
            const std::string& outer_name = p.elements[static_cast<size_t>(outer)].name;
            int ref_idx = nac.element_index(outer_name);
            if (ref_idx < 0) {
                PatElem ref;
                ref.name = outer_name;
                ref.kind = ElemKind::Reference;
                ref.ref = true;
                ref.cls = p.elements[static_cast<size_t>(outer)].cls;
                nac.elements.push_back(std::move(ref));
                ref_idx = static_cast<int>(nac.elements.size() - 1);
            }
            nac.links.push_back({assoc, backward, i, ref_idx, ItemAction::Match});
        }
        p.nacs.push_back(std::move(nac));
    }
    return p;
}

} // namespace testsupport
