#pragma once

#include <optional>
#include <string>
#include <vector>

#include "expr.hpp"
#include "model.hpp"

namespace molars {

// Kinds of class elements. Delete elements are matched like match elements
// and removed by the action part; reference elements resolve to a name bound
// earlier (the textual "@" prefix) instead of being searched for.
enum class ElemKind { Match, Create, Delete, Reference };

enum class ItemAction { Match, Create, Delete };

struct PatAssign {
    std::string attr;
    ExprPtr value;
};

struct PatElem {
    std::string name;
    int cls = -1; // -1 on reference elements; their class is known statically
    ElemKind kind = ElemKind::Match;
    bool ref = false; // written with '@': resolved from the scope, never searched
    ExprPtr constraint; // optional
    std::vector<PatAssign> assigns;
};

// Directed traversal between two pattern elements. `backward` traversals use
// the association's source end (for example an end named by augmentation);
// the underlying repository link then runs to -> from.
struct PatLink {
    int assoc = -1;
    bool backward = false;
    int from = -1;
    int to = -1;
    ItemAction kind = ItemAction::Match;
};

// Declarative pattern of a rule or loophead.
//
// Matching semantics:
//   - candidates for each element are enumerated in creation order, elements
//     are tried in declaration order, and the first complete match wins;
//   - matching is not injective: two elements may bind the same instance
//     unless an explicit `<>` constraint forbids it;
//   - a NAC (negative application condition) sub-pattern rejects a candidate
//     match whenever it can be completed; NACs may reference outer elements
//     and nest one level deep.
struct Pattern {
    std::string name; // optional rule name, used in traces and diagnostics
    std::vector<PatElem> elements;
    std::vector<PatLink> links;
    std::vector<Pattern> nacs;

    int element_index(const std::string& n) const {
        for (size_t i = 0; i < elements.size(); ++i)
            if (elements[i].name == n) return static_cast<int>(i);
        return -1;
    }
};

// Binding of pattern elements to objects; kNoObject for create elements
// before actions run.
using ElementBinding = std::vector<ObjectId>;

// First match of the pattern against the model, or nullopt. Reference
// elements must be resolvable in `outer` (Error(Runtime) otherwise); a
// reference to a deleted object yields no match.
std::optional<ElementBinding> match_rule(const Pattern& p, const EvalScope& outer, const Model& m);

// Same, but with one element pinned to a given object (used by foreach).
std::optional<ElementBinding> match_rule_fixed(const Pattern& p, const EvalScope& outer, const Model& m,
                                               int elem, ObjectId value);

// One binding per distinct loop-variable instance that admits a full match,
// in creation order of the instance. Pure with respect to the model.
std::vector<ElementBinding> enumerate_loop(const Pattern& p, int loop_var, const EvalScope& outer,
                                           const Model& m);

// Applies the action part on a successful match: create elements, create
// links, attribute assignments (left to right), delete links, delete
// elements (incident links cascade). Fills created ids into `bound`.
void apply_actions(const Pattern& p, ElementBinding& bound, const EvalScope& outer, Model& m);

// Scope adapter exposing element bindings on top of an outer scope.
class PatternScope : public EvalScope {
public:
    PatternScope(const EvalScope* outer, const Pattern& p, const ElementBinding& bound)
        : outer_(outer), pat_(&p), bound_(&bound) {}
    const Value* lookup(const std::string& name) const override;

private:
    const EvalScope* outer_;
    const Pattern* pat_;
    const ElementBinding* bound_;
    mutable Value scratch_;
};

} // namespace molars
