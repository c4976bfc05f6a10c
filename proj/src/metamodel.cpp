#include "metamodel.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

#include <json.hpp>

namespace molars {

using nlohmann::json;

int Metamodel::class_index(const std::string& cls) const {
    auto it = class_by_name_.find(cls);
    return it == class_by_name_.end() ? -1 : it->second;
}

bool Metamodel::is_kind_of(int cls, int ancestor) const {
    if (cls < 0 || ancestor < 0) return false;
    return ancestors_.at(static_cast<size_t>(cls)).at(static_cast<size_t>(ancestor));
}

const MetaAttribute* Metamodel::find_attr(int cls, const std::string& attr) const {
    const auto& anc = ancestors_.at(static_cast<size_t>(cls));
    for (size_t a = 0; a < anc.size(); ++a) {
        if (!anc[a]) continue;
        for (const auto& at : classes[a].attrs)
            if (at.name == attr) return &at;
    }
    return nullptr;
}

int Metamodel::assoc_index(const std::string& src_class, const std::string& trg_end) const {
    for (size_t i = 0; i < associations.size(); ++i) {
        const auto& a = associations[i];
        if (a.trg_end == trg_end && classes[static_cast<size_t>(a.src)].name == src_class)
            return static_cast<int>(i);
    }
    return -1;
}

std::vector<EndRef> Metamodel::resolve_end(int from_class, const std::string& end) const {
    std::vector<EndRef> out;
    for (size_t i = 0; i < associations.size(); ++i) {
        const auto& a = associations[i];
        if (a.nav_forward && a.trg_end == end && is_kind_of(from_class, a.src))
            out.push_back({static_cast<int>(i), false});
        if (a.nav_backward && !a.src_end.empty() && a.src_end == end && is_kind_of(from_class, a.trg))
            out.push_back({static_cast<int>(i), true});
    }
    return out;
}

bool Metamodel::conforms_to(const std::string& doc_name) const {
    if (doc_name == name) return true;
    return std::find(source_names.begin(), source_names.end(), doc_name) != source_names.end();
}

void Metamodel::rebuild_index() {
    class_by_name_.clear();
    for (size_t i = 0; i < classes.size(); ++i)
        class_by_name_.emplace(classes[i].name, static_cast<int>(i));

    const size_t n = classes.size();
    ancestors_.assign(n, std::vector<bool>(n, false));
    for (size_t c = 0; c < n; ++c) {
        // DFS up the superclass references; cycles are caught by validate().
        std::vector<int> stack{static_cast<int>(c)};
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            if (ancestors_[c][static_cast<size_t>(cur)]) continue;
            ancestors_[c][static_cast<size_t>(cur)] = true;
            for (int s : classes[static_cast<size_t>(cur)].supers) stack.push_back(s);
        }
    }
}

namespace {

bool valid_ident(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

// Detects a cycle in the superclass graph, returns an offending class name.
bool find_super_cycle(const Metamodel& mm, std::string& offender) {
    const size_t n = mm.classes.size();
    std::vector<int> state(n, 0); // 0 unvisited, 1 on stack, 2 done
    std::function<bool(size_t)> visit = [&](size_t c) -> bool {
        if (state[c] == 1) { offender = mm.classes[c].name; return true; }
        if (state[c] == 2) return false;
        state[c] = 1;
        for (int s : mm.classes[c].supers)
            if (visit(static_cast<size_t>(s))) return true;
        state[c] = 2;
        return false;
    };
    for (size_t c = 0; c < n; ++c)
        if (visit(c)) return true;
    return false;
}

} // namespace

void Metamodel::validate() const {
    std::set<std::string> class_names;
    for (const auto& c : classes) {
        if (!valid_ident(c.name)) fail_validate("metamodel '" + name + "': invalid class name '" + c.name + "'");
        if (!class_names.insert(c.name).second)
            fail_validate("metamodel '" + name + "': duplicate class name '" + c.name + "'");
    }

    std::string offender;
    // Need a mutable copy trick is avoided: cycle check walks raw super lists.
    if (find_super_cycle(*this, offender))
        fail_validate("metamodel '" + name + "': cyclic inheritance involving '" + offender + "'");

    // Attribute names unique across each inheritance closure.
    for (size_t c = 0; c < classes.size(); ++c) {
        std::set<std::string> seen;
        for (size_t a = 0; a < classes.size(); ++a) {
            if (!ancestors_[c][a]) continue;
            for (const auto& at : classes[a].attrs) {
                if (!valid_ident(at.name))
                    fail_validate("class '" + classes[c].name + "': invalid attribute name '" + at.name + "'");
                if (!seen.insert(at.name).second)
                    fail_validate("class '" + classes[c].name + "': duplicate attribute '" + at.name +
                                  "' in inheritance closure");
            }
        }
    }

    std::set<std::pair<int, std::string>> assoc_keys;
    for (const auto& a : associations) {
        if (a.src < 0 || a.src >= static_cast<int>(classes.size()) || a.trg < 0 ||
            a.trg >= static_cast<int>(classes.size()))
            fail_validate("association '" + a.name + "': endpoint class out of range");
        if (!valid_ident(a.trg_end))
            fail_validate("association '" + a.name + "': invalid end name '" + a.trg_end + "'");
        if (!a.src_end.empty() && a.src_end[0] != '~' && !valid_ident(a.src_end))
            fail_validate("association '" + a.name + "': invalid end name '" + a.src_end + "'");
        if (a.origin == Origin::Original && !a.src_end.empty() && a.src_end[0] == '~')
            fail_validate("association '" + a.name + "': end names starting with '~' are reserved");
        if (a.nav_backward && a.src_end.empty())
            fail_validate("association '" + a.name + "': backward-navigable end has no name");
        if (!assoc_keys.insert({a.src, a.trg_end}).second)
            fail_validate("association '" + a.name + "': duplicate end '" +
                          classes[static_cast<size_t>(a.src)].name + "." + a.trg_end + "'");
    }
}

namespace {

json expect_object(const json& j, const std::string& what) {
    if (!j.is_object()) fail_parse(what + ": expected a JSON object");
    return j;
}

std::string expect_string(const json& j, const std::string& key, const std::string& what) {
    if (!j.contains(key) || !j.at(key).is_string())
        fail_parse(what + ": missing or non-string field '" + key + "'");
    return j.at(key).get<std::string>();
}

// Shared by parse_metamodel and extend_metamodel; `origin` tags every element
// read from the document.
void read_elements(const json& doc, Metamodel& mm, Origin origin) {
    if (doc.contains("classes")) {
        if (!doc.at("classes").is_array()) fail_parse("metamodel: 'classes' must be an array");
        for (const auto& jc : doc.at("classes")) {
            expect_object(jc, "class entry");
            MetaClass c;
            c.name = expect_string(jc, "name", "class entry");
            c.abstract = jc.value("abstract", false);
            c.origin = origin;
            if (jc.contains("attrs")) {
                for (const auto& ja : jc.at("attrs")) {
                    MetaAttribute at;
                    at.name = expect_string(ja, "name", "attribute of '" + c.name + "'");
                    std::string tn = expect_string(ja, "type", "attribute '" + at.name + "'");
                    if (!prim_type_from_name(tn, at.type))
                        fail_validate("attribute '" + c.name + "." + at.name + "': unsupported type '" + tn +
                                      "' (String, Integer and Boolean are available)");
                    c.attrs.push_back(std::move(at));
                }
            }
            mm.classes.push_back(std::move(c));
        }
    }

    // Superclass references are resolved after every class of the document is
    // known, so forward references work.
    size_t first = mm.classes.size();
    if (doc.contains("classes")) first -= doc.at("classes").size();
    mm.rebuild_index();
    size_t ci = first;
    if (doc.contains("classes")) {
        for (const auto& jc : doc.at("classes")) {
            if (jc.contains("super")) {
                for (const auto& js : jc.at("super")) {
                    std::string sup = js.get<std::string>();
                    int si = mm.class_index(sup);
                    if (si < 0)
                        fail_validate("class '" + mm.classes[ci].name + "': unknown superclass '" + sup + "'");
                    mm.classes[ci].supers.push_back(si);
                }
            }
            ++ci;
        }
    }

    if (doc.contains("associations")) {
        if (!doc.at("associations").is_array()) fail_parse("metamodel: 'associations' must be an array");
        for (const auto& ja : doc.at("associations")) {
            expect_object(ja, "association entry");
            MetaAssociation a;
            a.name = expect_string(ja, "name", "association entry");
            std::string src = expect_string(ja, "src", "association '" + a.name + "'");
            std::string trg = expect_string(ja, "trg", "association '" + a.name + "'");
            a.src = mm.class_index(src);
            if (a.src < 0) fail_validate("association '" + a.name + "': unknown class '" + src + "'");
            a.trg = mm.class_index(trg);
            if (a.trg < 0) fail_validate("association '" + a.name + "': unknown class '" + trg + "'");
            a.src_end = ja.value("srcEnd", std::string());
            a.trg_end = expect_string(ja, "trgEnd", "association '" + a.name + "'");
            a.containment = ja.value("containment", false);
            a.origin = origin;
            a.nav_forward = false;
            a.nav_backward = false;
            if (ja.contains("navigable")) {
                for (const auto& jn : ja.at("navigable")) {
                    std::string n = jn.get<std::string>();
                    if (n == "fwd") a.nav_forward = true;
                    else if (n == "bwd") a.nav_backward = true;
                    else fail_parse("association '" + a.name + "': navigable entries are 'fwd' or 'bwd'");
                }
            } else {
                a.nav_forward = true;
            }
            if (!a.nav_forward)
                fail_validate("association '" + a.name + "': forward navigability is required");
            // "multiplicity" is accepted and ignored; the engine never checks it.
            mm.associations.push_back(std::move(a));
        }
    }
    mm.rebuild_index();
}

} // namespace

Metamodel parse_metamodel(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        fail_parse(std::string("metamodel document: ") + e.what());
    }
    expect_object(doc, "metamodel document");
    Metamodel mm;
    mm.name = expect_string(doc, "name", "metamodel document");
    mm.source_names.push_back(mm.name);
    read_elements(doc, mm, Origin::Original);
    mm.validate();
    return mm;
}

Metamodel merge_metamodels(const Metamodel& a, const Metamodel& b) {
    Metamodel out = a;
    out.name = a.name + "+" + b.name;
    for (const auto& sn : b.source_names) out.source_names.push_back(sn);
    int class_offset = static_cast<int>(out.classes.size());
    for (const auto& c : b.classes) {
        if (out.class_index(c.name) >= 0)
            fail_validate("metamodel merge: class '" + c.name + "' declared in both documents");
        MetaClass copy = c;
        for (auto& s : copy.supers) s += class_offset;
        out.classes.push_back(std::move(copy));
        out.rebuild_index();
    }
    for (const auto& as : b.associations) {
        MetaAssociation copy = as;
        copy.src += class_offset;
        copy.trg += class_offset;
        out.associations.push_back(std::move(copy));
    }
    out.rebuild_index();
    out.validate();
    return out;
}

Metamodel augment_navigability(const Metamodel& mm) {
    Metamodel out = mm;
    for (auto& a : out.associations) {
        if (a.nav_backward) continue;
        a.nav_backward = true;
        if (a.src_end.empty()) a.src_end = "~" + a.trg_end;
        if (a.origin == Origin::Original) a.origin = Origin::Augmented;
    }
    out.rebuild_index();
    return out;
}

Metamodel extend_metamodel(const Metamodel& mm, const std::string& extension_json) {
    json doc;
    try {
        doc = json::parse(extension_json);
    } catch (const json::exception& e) {
        fail_parse(std::string("metamodel extension: ") + e.what());
    }
    expect_object(doc, "metamodel extension");
    Metamodel out = mm;
    if (doc.contains("classes")) {
        for (const auto& jc : doc.at("classes")) {
            std::string cname = expect_string(jc, "name", "extension class entry");
            if (out.class_index(cname) >= 0)
                fail_validate("metamodel extension: '" + cname + "' collides with an existing class");
        }
    }
    read_elements(doc, out, Origin::Temporary);
    out.validate();
    return out;
}

Metamodel strip_to_original(const Metamodel& mm) {
    Metamodel out;
    out.name = mm.name;
    out.source_names = mm.source_names;
    std::vector<int> remap(mm.classes.size(), -1);
    for (size_t i = 0; i < mm.classes.size(); ++i) {
        if (mm.classes[i].origin == Origin::Temporary) continue;
        remap[i] = static_cast<int>(out.classes.size());
        out.classes.push_back(mm.classes[i]);
    }
    for (auto& c : out.classes) {
        std::vector<int> supers;
        for (int s : c.supers)
            if (remap[static_cast<size_t>(s)] >= 0) supers.push_back(remap[static_cast<size_t>(s)]);
        c.supers = std::move(supers);
    }
    for (const auto& a : mm.associations) {
        if (a.origin == Origin::Temporary) continue;
        MetaAssociation copy = a;
        copy.src = remap[static_cast<size_t>(a.src)];
        copy.trg = remap[static_cast<size_t>(a.trg)];
        if (copy.origin == Origin::Augmented) {
            copy.nav_backward = false;
            if (!copy.src_end.empty() && copy.src_end[0] == '~') copy.src_end.clear();
            copy.origin = Origin::Original;
        }
        out.associations.push_back(std::move(copy));
    }
    out.rebuild_index();
    return out;
}

bool same_metamodel(const Metamodel& a, const Metamodel& b) {
    if (a.name != b.name) return false;
    if (a.classes.size() != b.classes.size() || a.associations.size() != b.associations.size()) return false;
    for (size_t i = 0; i < a.classes.size(); ++i) {
        const auto& ca = a.classes[i];
        const auto& cb = b.classes[i];
        if (ca.name != cb.name || ca.abstract != cb.abstract || ca.supers != cb.supers ||
            ca.origin != cb.origin)
            return false;
        if (ca.attrs.size() != cb.attrs.size()) return false;
        for (size_t j = 0; j < ca.attrs.size(); ++j)
            if (ca.attrs[j].name != cb.attrs[j].name || ca.attrs[j].type != cb.attrs[j].type) return false;
    }
    for (size_t i = 0; i < a.associations.size(); ++i) {
        const auto& xa = a.associations[i];
        const auto& xb = b.associations[i];
        if (xa.name != xb.name || xa.src != xb.src || xa.trg != xb.trg || xa.src_end != xb.src_end ||
            xa.trg_end != xb.trg_end || xa.nav_forward != xb.nav_forward ||
            xa.nav_backward != xb.nav_backward || xa.containment != xb.containment || xa.origin != xb.origin)
            return false;
    }
    return true;
}

} // namespace molars
