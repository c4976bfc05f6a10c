#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "metamodel.hpp"
#include "value.hpp"

namespace molars {

struct MObject {
    ObjectId id = kNoObject;
    std::string doc_id; // identity from the imported document; empty for created objects
    int cls = -1;
    std::map<std::string, Value> slots;
};

struct MLink {
    int assoc = -1;
    ObjectId src = kNoObject;
    ObjectId trg = kNoObject;
};

// In-memory instance repository. Objects keep their creation index as id;
// deleted slots are never reused, so iteration in id order is creation order.
// Links form a multigraph: the same (association, src, trg) triple may occur
// any number of times.
class Model {
public:
    explicit Model(std::shared_ptr<const Metamodel> mm) : mm_(std::move(mm)) {}

    const Metamodel& metamodel() const { return *mm_; }
    std::shared_ptr<const Metamodel> metamodel_ptr() const { return mm_; }

    ObjectId create_object(int cls);
    void delete_object(ObjectId id);
    void create_link(int assoc, ObjectId src, ObjectId trg);
    void delete_link(int assoc, ObjectId src, ObjectId trg);

    bool alive(ObjectId id) const {
        return id >= 0 && id < static_cast<ObjectId>(objects_.size()) &&
               objects_[static_cast<size_t>(id)].has_value();
    }
    MObject& obj(ObjectId id);
    const MObject& obj(ObjectId id) const;
    bool is_instance_of(ObjectId id, int cls) const;

    // All live objects of `cls` or a subclass, in creation order.
    std::vector<ObjectId> objects_of_class(int cls) const;
    std::vector<ObjectId> all_objects() const;
    size_t live_object_count() const;
    int creation_counter() const { return static_cast<int>(objects_.size()); }

    const std::vector<MLink>& links() const { return links_; }
    bool has_link(int assoc, ObjectId src, ObjectId trg) const;
    std::vector<ObjectId> targets(int assoc, ObjectId src) const;
    std::vector<ObjectId> sources(int assoc, ObjectId trg) const;

    void set_slot(ObjectId id, const std::string& attr, Value v);
    const Value* get_slot(ObjectId id, const std::string& attr) const;

    // Full invariant sweep; returns human-readable violations (empty = conformant).
    std::vector<std::string> check_conformance() const;

private:
    std::shared_ptr<const Metamodel> mm_;
    std::vector<std::optional<MObject>> objects_;
    std::vector<MLink> links_;
};

Model import_model(const std::string& json_text, std::shared_ptr<const Metamodel> mm);

// Canonical JSON document (sorted keys, LF, creation order). With `strip_to`
// set, instances of classes/associations absent from it are dropped and the
// output conforms to that metamodel; pass nullptr to export everything.
std::string export_model(const Model& m, const Metamodel* strip_to);

} // namespace molars
