#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "value.hpp"

namespace molars {

// Where a metamodel element came from. `Augmented` marks an association whose
// backward navigability was added by the import adjustment; `Temporary` marks
// elements added by a metamodel extension. The generic exporter strips
// instances of temporary elements and never emits augmented-end artifacts.
enum class Origin { Original, Augmented, Temporary };

struct MetaAttribute {
    std::string name;
    PrimType type = PrimType::String;
};

struct MetaClass {
    std::string name;
    bool abstract = false;
    std::vector<MetaAttribute> attrs;
    std::vector<int> supers; // indices into Metamodel::classes
    Origin origin = Origin::Original;
};

struct MetaAssociation {
    std::string name;
    int src = -1; // class index
    int trg = -1; // class index
    std::string src_end; // empty when the backward end is unnamed
    std::string trg_end;
    bool nav_forward = true;
    bool nav_backward = false;
    bool containment = false;
    Origin origin = Origin::Original;
};

// Identifies one navigable association end: forward ends traverse src -> trg
// via trg_end, backward ends traverse trg -> src via src_end (named
// "~<trg_end>" when the end was added by augmentation).
struct EndRef {
    int assoc = -1;
    bool backward = false;
};

struct Metamodel {
    std::string name;
    std::vector<std::string> source_names; // document names folded in by merge
    std::vector<MetaClass> classes;
    std::vector<MetaAssociation> associations;

    int class_index(const std::string& cls) const;
    const MetaClass& cls(int idx) const { return classes.at(static_cast<size_t>(idx)); }
    const MetaAssociation& assoc(int idx) const { return associations.at(static_cast<size_t>(idx)); }

    // Reflexive-transitive subclass test.
    bool is_kind_of(int cls, int ancestor) const;

    // Attribute lookup through the inheritance closure; nullptr when absent.
    const MetaAttribute* find_attr(int cls, const std::string& attr) const;

    // Exact association lookup by declared source class and forward end name.
    int assoc_index(const std::string& src_class, const std::string& trg_end) const;

    // All ends named `end` reachable when navigating away from `from_class`
    // (forward ends of associations declared on it or an ancestor, backward
    // ends of associations targeting it or an ancestor).
    std::vector<EndRef> resolve_end(int from_class, const std::string& end) const;

    bool conforms_to(const std::string& doc_name) const;

    // Structural checks; throws Error(Validate) naming the offending element.
    void validate() const;

    // Recompute lookup tables after the field vectors change.
    void rebuild_index();

private:
    std::unordered_map<std::string, int> class_by_name_;
    std::vector<std::vector<bool>> ancestors_; // ancestors_[c][a]: a is c or a superclass of c
};

Metamodel parse_metamodel(const std::string& json_text);
Metamodel merge_metamodels(const Metamodel& a, const Metamodel& b);
Metamodel augment_navigability(const Metamodel& mm);
Metamodel extend_metamodel(const Metamodel& mm, const std::string& extension_json);

// Export-side inverse: drops temporary elements and undoes augmentation marks.
Metamodel strip_to_original(const Metamodel& mm);

bool same_metamodel(const Metamodel& a, const Metamodel& b);

} // namespace molars
