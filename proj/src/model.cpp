#include "model.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

namespace molars {

using nlohmann::json;

ObjectId Model::create_object(int cls) {
    const auto& c = mm_->cls(cls);
    if (c.abstract) fail_runtime("cannot instantiate abstract class '" + c.name + "'");
    MObject o;
    o.id = static_cast<ObjectId>(objects_.size());
    o.cls = cls;
    objects_.push_back(std::move(o));
    return static_cast<ObjectId>(objects_.size() - 1);
}

void Model::delete_object(ObjectId id) {
    if (!alive(id)) fail_runtime("delete of unknown object id " + std::to_string(id));
    // Dangling links are prevented at the repository level: every incident
    // link goes with the object.
    links_.erase(std::remove_if(links_.begin(), links_.end(),
                                [id](const MLink& l) { return l.src == id || l.trg == id; }),
                 links_.end());
    objects_[static_cast<size_t>(id)].reset();
}

void Model::create_link(int assoc, ObjectId src, ObjectId trg) {
    const auto& a = mm_->assoc(assoc);
    if (!alive(src) || !alive(trg)) fail_runtime("link endpoint does not exist");
    if (!is_instance_of(src, a.src))
        fail_runtime("link source is not a " + mm_->cls(a.src).name + " (association '" + a.name + "')");
    if (!is_instance_of(trg, a.trg))
        fail_runtime("link target is not a " + mm_->cls(a.trg).name + " (association '" + a.name + "')");
    links_.push_back({assoc, src, trg});
}

void Model::delete_link(int assoc, ObjectId src, ObjectId trg) {
    // Creation-order-earliest duplicate is removed first.
    auto it = std::find_if(links_.begin(), links_.end(), [&](const MLink& l) {
        return l.assoc == assoc && l.src == src && l.trg == trg;
    });
    if (it == links_.end()) fail_runtime("delete of nonexistent link");
    links_.erase(it);
}

MObject& Model::obj(ObjectId id) {
    if (!alive(id)) fail_runtime("unknown object id " + std::to_string(id));
    return *objects_[static_cast<size_t>(id)];
}

const MObject& Model::obj(ObjectId id) const {
    if (!alive(id)) fail_runtime("unknown object id " + std::to_string(id));
    return *objects_[static_cast<size_t>(id)];
}

bool Model::is_instance_of(ObjectId id, int cls) const {
    return alive(id) && mm_->is_kind_of(obj(id).cls, cls);
}

std::vector<ObjectId> Model::objects_of_class(int cls) const {
    std::vector<ObjectId> out;
    for (const auto& o : objects_)
        if (o && mm_->is_kind_of(o->cls, cls)) out.push_back(o->id);
    return out;
}

std::vector<ObjectId> Model::all_objects() const {
    std::vector<ObjectId> out;
    for (const auto& o : objects_)
        if (o) out.push_back(o->id);
    return out;
}

size_t Model::live_object_count() const {
    size_t n = 0;
    for (const auto& o : objects_)
        if (o) ++n;
    return n;
}

bool Model::has_link(int assoc, ObjectId src, ObjectId trg) const {
    for (const auto& l : links_)
        if (l.assoc == assoc && l.src == src && l.trg == trg) return true;
    return false;
}

std::vector<ObjectId> Model::targets(int assoc, ObjectId src) const {
    std::vector<ObjectId> out;
    for (const auto& l : links_)
        if (l.assoc == assoc && l.src == src) out.push_back(l.trg);
    return out;
}

std::vector<ObjectId> Model::sources(int assoc, ObjectId trg) const {
    std::vector<ObjectId> out;
    for (const auto& l : links_)
        if (l.assoc == assoc && l.trg == trg) out.push_back(l.src);
    return out;
}

void Model::set_slot(ObjectId id, const std::string& attr, Value v) {
    MObject& o = obj(id);
    const MetaAttribute* at = mm_->find_attr(o.cls, attr);
    if (!at)
        fail_runtime("class '" + mm_->cls(o.cls).name + "' has no attribute '" + attr + "'");
    if (!value_is(v, at->type))
        fail_runtime("attribute '" + mm_->cls(o.cls).name + "." + attr + "' expects " +
                     prim_type_name(at->type));
    o.slots[attr] = std::move(v);
}

const Value* Model::get_slot(ObjectId id, const std::string& attr) const {
    const MObject& o = obj(id);
    auto it = o.slots.find(attr);
    return it == o.slots.end() ? nullptr : &it->second;
}

std::vector<std::string> Model::check_conformance() const {
    std::vector<std::string> out;
    for (const auto& o : objects_) {
        if (!o) continue;
        const auto& c = mm_->cls(o->cls);
        if (c.abstract)
            out.push_back("object " + std::to_string(o->id) + " instantiates abstract class '" + c.name + "'");
        for (const auto& [slot, val] : o->slots) {
            const MetaAttribute* at = mm_->find_attr(o->cls, slot);
            if (!at) {
                out.push_back("object " + std::to_string(o->id) + ": class '" + c.name +
                              "' has no attribute '" + slot + "'");
            } else if (!value_is(val, at->type)) {
                out.push_back("object " + std::to_string(o->id) + ": slot '" + slot + "' is not " +
                              prim_type_name(at->type));
            }
        }
    }
    for (const auto& l : links_) {
        const auto& a = mm_->assoc(l.assoc);
        if (!alive(l.src) || !alive(l.trg)) {
            out.push_back("link of '" + a.name + "' references a deleted object");
            continue;
        }
        if (!is_instance_of(l.src, a.src))
            out.push_back("link of '" + a.name + "': source " + std::to_string(l.src) + " is not a " +
                          mm_->cls(a.src).name);
        if (!is_instance_of(l.trg, a.trg))
            out.push_back("link of '" + a.name + "': target " + std::to_string(l.trg) + " is not a " +
                          mm_->cls(a.trg).name);
    }
    return out;
}

namespace {

Value value_from_json(const json& j, PrimType t, const std::string& where) {
    switch (t) {
        case PrimType::Integer:
            if (!j.is_number_integer()) fail_validate(where + ": expected an integer");
            return Value(j.get<std::int64_t>());
        case PrimType::String:
            if (!j.is_string()) fail_validate(where + ": expected a string");
            return Value(j.get<std::string>());
        case PrimType::Boolean:
            if (!j.is_boolean()) fail_validate(where + ": expected a boolean");
            return Value(j.get<bool>());
    }
    fail_validate(where + ": unknown type");
}

json value_to_json(const Value& v) {
    if (auto* i = std::get_if<std::int64_t>(&v)) return *i;
    if (auto* s = std::get_if<std::string>(&v)) return *s;
    if (auto* b = std::get_if<bool>(&v)) return *b;
    fail_runtime("object reference stored in an attribute slot");
}

} // namespace

Model import_model(const std::string& json_text, std::shared_ptr<const Metamodel> mm) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        fail_parse(std::string("model document: ") + e.what());
    }
    if (!doc.is_object()) fail_parse("model document: expected a JSON object");

    const Metamodel& meta = *mm;
    if (doc.contains("conformsTo")) {
        std::string decl = doc.at("conformsTo").get<std::string>();
        if (!meta.conforms_to(decl))
            fail_validate("model document conforms to '" + decl + "', which is not among the loaded metamodels");
    }

    Model m(std::move(mm));
    std::map<std::string, ObjectId> by_doc_id;

    if (doc.contains("objects")) {
        if (!doc.at("objects").is_array()) fail_parse("model document: 'objects' must be an array");
        for (const auto& jo : doc.at("objects")) {
            std::string id = jo.value("id", std::string());
            if (id.empty()) fail_parse("model document: object without 'id'");
            if (by_doc_id.count(id)) fail_validate("model document: duplicate object id '" + id + "'");
            std::string cls = jo.value("class", std::string());
            int ci = meta.class_index(cls);
            if (ci < 0) fail_validate("object '" + id + "': unknown class '" + cls + "'");
            if (meta.cls(ci).origin == Origin::Temporary)
                fail_validate("object '" + id + "': class '" + cls + "' is a temporary metamodel element");
            if (meta.cls(ci).abstract)
                fail_validate("object '" + id + "': class '" + cls + "' is abstract");
            ObjectId oid = m.create_object(ci);
            m.obj(oid).doc_id = id;
            by_doc_id.emplace(id, oid);
            if (jo.contains("attrs")) {
                for (const auto& [k, v] : jo.at("attrs").items()) {
                    const MetaAttribute* at = meta.find_attr(ci, k);
                    if (!at) fail_validate("object '" + id + "': class '" + cls + "' has no attribute '" + k + "'");
                    m.obj(oid).slots[k] = value_from_json(v, at->type, "object '" + id + "', attribute '" + k + "'");
                }
            }
        }
    }

    if (doc.contains("links")) {
        if (!doc.at("links").is_array()) fail_parse("model document: 'links' must be an array");
        for (const auto& jl : doc.at("links")) {
            std::string ref = jl.value("assoc", std::string());
            auto dot = ref.find('.');
            if (dot == std::string::npos)
                fail_parse("link reference '" + ref + "': expected <Class>.<end>");
            std::string cls = ref.substr(0, dot);
            std::string end = ref.substr(dot + 1);
            if (!end.empty() && end[0] == '~')
                fail_validate("link reference '" + ref + "': augmented ends cannot appear in documents");
            int ai = meta.assoc_index(cls, end);
            if (ai < 0) fail_validate("link reference '" + ref + "': unknown association end");
            if (meta.assoc(ai).origin == Origin::Temporary)
                fail_validate("link reference '" + ref + "': association is a temporary metamodel element");
            std::string src = jl.value("src", std::string());
            std::string trg = jl.value("trg", std::string());
            auto s = by_doc_id.find(src);
            if (s == by_doc_id.end()) fail_validate("link of '" + ref + "': unknown object '" + src + "'");
            auto t = by_doc_id.find(trg);
            if (t == by_doc_id.end()) fail_validate("link of '" + ref + "': unknown object '" + trg + "'");
            try {
                m.create_link(ai, s->second, t->second);
            } catch (const Error& e) {
                fail_validate(std::string("link of '") + ref + "': " + e.what());
            }
        }
    }
    return m;
}

std::string export_model(const Model& m, const Metamodel* strip_to) {
    const Metamodel& mm = m.metamodel();

    // Which objects survive, and under which document id. Imported objects
    // keep their ids; created ones get fresh "o<creation-index>" names.
    std::map<ObjectId, std::string> doc_ids;
    std::set<std::string> used;
    for (ObjectId id : m.all_objects()) {
        const std::string& di = m.obj(id).doc_id;
        if (!di.empty()) used.insert(di);
    }

    auto surviving_class = [&](int cls) -> bool {
        if (!strip_to) return true;
        int sc = strip_to->class_index(mm.cls(cls).name);
        return sc >= 0;
    };

    json objects = json::array();
    for (ObjectId id : m.all_objects()) {
        const MObject& o = m.obj(id);
        if (!surviving_class(o.cls)) continue;
        std::string doc_id = o.doc_id;
        if (doc_id.empty()) {
            doc_id = "o" + std::to_string(o.id);
            while (used.count(doc_id)) doc_id += "_";
        }
        used.insert(doc_id);
        doc_ids[id] = doc_id;

        json attrs = json::object();
        for (const auto& [k, v] : o.slots) {
            if (strip_to && !strip_to->find_attr(strip_to->class_index(mm.cls(o.cls).name), k)) continue;
            attrs[k] = value_to_json(v);
        }
        objects.push_back({{"id", doc_id}, {"class", mm.cls(o.cls).name}, {"attrs", attrs}});
    }

    json links = json::array();
    for (const MLink& l : m.links()) {
        const MetaAssociation& a = mm.assoc(l.assoc);
        std::string src_cls = mm.cls(a.src).name;
        if (strip_to && strip_to->assoc_index(src_cls, a.trg_end) < 0) continue;
        auto s = doc_ids.find(l.src);
        auto t = doc_ids.find(l.trg);
        if (s == doc_ids.end() || t == doc_ids.end()) continue; // endpoint stripped
        links.push_back({{"assoc", src_cls + "." + a.trg_end}, {"src", s->second}, {"trg", t->second}});
    }

    json doc;
    doc["conformsTo"] = strip_to ? strip_to->name : mm.name;
    doc["objects"] = objects;
    doc["links"] = links;
    return doc.dump(2) + "\n";
}

} // namespace molars
