#include "oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace molars {

using nlohmann::json;

namespace {

// Plain-data view of one graph1 graph, read straight off the repository.
struct GNode {
    ObjectId id;
    std::string label;
};
struct GEdge {
    ObjectId id;
    ObjectId src = kNoObject; // first src node in creation order, or none
    ObjectId trg = kNoObject;
};
struct GView {
    ObjectId graph;
    std::vector<GNode> nodes; // creation order
    std::vector<GEdge> edges; // creation order
    std::map<ObjectId, std::string> label_of;

    bool has_node(ObjectId n) const { return label_of.count(n) != 0; }
};

std::string label_or_id(const Model& m, ObjectId id, const char* attr) {
    const Value* v = m.get_slot(id, attr);
    if (v) {
        if (auto* s = std::get_if<std::string>(&*v)) return *s;
    }
    return "#" + std::to_string(id);
}

ObjectId first_of(std::vector<ObjectId> v) {
    if (v.empty()) return kNoObject;
    return *std::min_element(v.begin(), v.end());
}

std::vector<GView> graph_views(const Model& m) {
    const Metamodel& mm = m.metamodel();
    std::vector<GView> out;
    int gcls = mm.class_index("Graph");
    if (gcls < 0) return out;
    int nodes_assoc = mm.assoc_index("Graph", "nodes");
    int edges_assoc = mm.assoc_index("Graph", "edges");
    int src_assoc = mm.assoc_index("Edge", "src");
    int trg_assoc = mm.assoc_index("Edge", "trg");

    for (ObjectId g : m.objects_of_class(gcls)) {
        GView view;
        view.graph = g;
        std::vector<ObjectId> ns = m.targets(nodes_assoc, g);
        std::sort(ns.begin(), ns.end());
        for (ObjectId n : ns) {
            view.nodes.push_back({n, label_or_id(m, n, "name")});
            view.label_of[n] = view.nodes.back().label;
        }
        std::vector<ObjectId> es = m.targets(edges_assoc, g);
        std::sort(es.begin(), es.end());
        for (ObjectId e : es)
            view.edges.push_back({e, first_of(m.targets(src_assoc, e)), first_of(m.targets(trg_assoc, e))});
        out.push_back(std::move(view));
    }
    return out;
}

json sorted_pairs(std::vector<std::pair<std::string, std::string>> pairs, bool unique) {
    std::sort(pairs.begin(), pairs.end());
    if (unique) pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    json out = json::array();
    for (auto& p : pairs) out.push_back({p.first, p.second});
    return out;
}

json sorted_strings(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    json out = json::array();
    for (auto& s : v) out.push_back(s);
    return out;
}

// Shape of a view after optionally deleting a node and/or a set of edges and
// optionally reversing the well-formed edges.
json view_shape(const Model& m, const GView& view, ObjectId deleted_node,
                const std::set<ObjectId>& deleted_edges, bool reversed) {
    json shape;
    std::vector<std::string> labels;
    for (const auto& n : view.nodes)
        if (n.id != deleted_node) labels.push_back(n.label);
    shape["nodes"] = sorted_strings(std::move(labels));

    std::vector<std::pair<std::string, std::string>> support;
    int src_only = 0, trg_only = 0, isolated = 0, count = 0;
    for (const auto& e : view.edges) {
        if (deleted_edges.count(e.id)) continue;
        ++count;
        ObjectId s = e.src == deleted_node ? kNoObject : e.src;
        ObjectId t = e.trg == deleted_node ? kNoObject : e.trg;
        if (s != kNoObject && t != kNoObject) {
            std::string sl = label_or_id(m, s, "name");
            std::string tl = label_or_id(m, t, "name");
            if (reversed) std::swap(sl, tl);
            support.emplace_back(std::move(sl), std::move(tl));
        } else if (s != kNoObject) {
            ++src_only;
        } else if (t != kNoObject) {
            ++trg_only;
        } else {
            ++isolated;
        }
    }
    shape["edges"] = count;
    shape["support"] = sorted_pairs(std::move(support), false);
    shape["src_only"] = src_only;
    shape["trg_only"] = trg_only;
    shape["isolated_edges"] = isolated;
    return shape;
}

using Rel = std::set<std::pair<std::string, std::string>>;

Rel well_formed_support(const GView& v, const Model& m) {
    Rel r;
    for (const auto& e : v.edges)
        if (e.src != kNoObject && e.trg != kNoObject)
            r.insert({label_or_id(m, e.src, "name"), label_or_id(m, e.trg, "name")});
    return r;
}

Rel transitive_closure(Rel r) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::pair<std::string, std::string>> add;
        for (const auto& [a, b] : r)
            for (const auto& [c, d] : r)
                if (b == c && !r.count({a, d})) add.push_back({a, d});
        for (auto& p : add) changed |= r.insert(std::move(p)).second;
    }
    return r;
}

Rel compose(const Rel& r, const Rel& s) {
    Rel out;
    for (const auto& [a, b] : r)
        for (const auto& [c, d] : s)
            if (b == c) out.insert({a, d});
    return out;
}

// The node named "n1" deleted by the p5 tasks: first node, in creation
// order, of the graph whose name attribute is "n1".
ObjectId find_victim(const Model& m, const GView& v) {
    for (const auto& n : v.nodes) {
        const Value* val = m.get_slot(n.id, "name");
        if (val && std::holds_alternative<std::string>(*val) && std::get<std::string>(*val) == "n1")
            return n.id;
    }
    return kNoObject;
}

json greeting_texts(const Model& m, const char* cls_name, const char* attr) {
    json out = json::array();
    int cls = m.metamodel().class_index(cls_name);
    if (cls < 0) return out;
    for (ObjectId o : m.objects_of_class(cls)) {
        const Value* v = m.get_slot(o, attr);
        if (v && std::holds_alternative<std::string>(*v)) out.push_back(std::get<std::string>(*v));
        else out.push_back(nullptr);
    }
    return out;
}

} // namespace

json oracle_predict(const std::string& task_id, const Model& m) {
    const Metamodel& mm = m.metamodel();
    json out;

    if (task_id == "p1_1") {
        json texts = greeting_texts(m, "Greeting", "text");
        texts.push_back("Hello World");
        out["texts"] = texts;
        return out;
    }
    if (task_id == "p1_2") {
        int gr = mm.class_index("Greeting");
        int ms = mm.class_index("GreetingMessage");
        int pe = mm.class_index("Person");
        size_t greetings = gr >= 0 ? m.objects_of_class(gr).size() : 0;
        size_t messages = ms >= 0 ? m.objects_of_class(ms).size() : 0;
        size_t persons = pe >= 0 ? m.objects_of_class(pe).size() : 0;
        int la = mm.assoc_index("Greeting", "greetingMessage");
        int lb = mm.assoc_index("Greeting", "person");
        size_t na = 0, nb = 0;
        for (const MLink& l : m.links()) {
            if (l.assoc == la) ++na;
            if (l.assoc == lb) ++nb;
        }
        out["greetings"] = greetings + 1;
        out["messages"] = messages + 1;
        out["persons"] = persons + 1;
        out["message_links"] = na + 1;
        out["person_links"] = nb + 1;
        json mt = greeting_texts(m, "GreetingMessage", "text");
        mt.push_back("Hello");
        json pn = greeting_texts(m, "Person", "name");
        pn.push_back("TTC Participants");
        out["message_texts"] = mt;
        out["person_names"] = pn;
        return out;
    }
    if (task_id == "p1_3") {
        json results = greeting_texts(m, "StringResult", "result");
        int gr = mm.class_index("Greeting");
        int ms = mm.class_index("GreetingMessage");
        int pe = mm.class_index("Person");
        int la = mm.assoc_index("Greeting", "greetingMessage");
        int lb = mm.assoc_index("Greeting", "person");
        if (gr >= 0 && ms >= 0 && pe >= 0) {
            bool done = false;
            for (ObjectId g : m.objects_of_class(gr)) {
                if (done) break;
                for (ObjectId msg : m.objects_of_class(ms)) {
                    if (done) break;
                    if (!m.has_link(la, g, msg)) continue;
                    for (ObjectId p : m.objects_of_class(pe)) {
                        if (!m.has_link(lb, g, p)) continue;
                        const Value* t = m.get_slot(msg, "text");
                        const Value* n = m.get_slot(p, "name");
                        if (t && n && std::holds_alternative<std::string>(*t) &&
                            std::holds_alternative<std::string>(*n))
                            results.push_back(std::get<std::string>(*t) + " " + std::get<std::string>(*n) + "!");
                        done = true;
                        break;
                    }
                }
            }
        }
        out["results"] = results;
        return out;
    }

    auto views = graph_views(m);

    if (task_id == "p2_1") {
        json results = json::array();
        for (const auto& v : views) results.push_back(v.nodes.size());
        out["results"] = results;
        return out;
    }
    if (task_id == "p2_2") {
        int src_assoc = mm.assoc_index("Edge", "src");
        int trg_assoc = mm.assoc_index("Edge", "trg");
        json results = json::array();
        for (const auto& v : views) {
            int count = 0;
            for (const auto& e : v.edges) {
                bool looping = false;
                for (ObjectId s : m.targets(src_assoc, e.id))
                    if (m.has_link(trg_assoc, e.id, s)) looping = true;
                if (looping) ++count;
            }
            results.push_back(count);
        }
        out["results"] = results;
        return out;
    }
    if (task_id == "p2_3") {
        int src_assoc = mm.assoc_index("Edge", "src");
        int trg_assoc = mm.assoc_index("Edge", "trg");
        json results = json::array();
        for (const auto& v : views) {
            int count = 0;
            for (const auto& n : v.nodes)
                if (m.sources(src_assoc, n.id).empty() && m.sources(trg_assoc, n.id).empty()) ++count;
            results.push_back(count);
        }
        out["results"] = results;
        return out;
    }
    if (task_id == "p2_4" || task_id == "p2_4_a") {
        json results = json::array();
        for (const auto& v : views) {
            long count = 0;
            const auto& es = v.edges;
            for (size_t i = 0; i < es.size(); ++i) {
                if (es[i].src == kNoObject || es[i].trg == kNoObject) continue;
                for (size_t j = 0; j < es.size(); ++j) {
                    if (j == i || es[j].src == kNoObject || es[j].trg == kNoObject) continue;
                    if (es[i].trg != es[j].src) continue;
                    for (size_t k = 0; k < es.size(); ++k) {
                        if (k == i || k == j) continue;
                        if (es[k].src == kNoObject || es[k].trg == kNoObject) continue;
                        if (es[j].trg != es[k].src || es[k].trg != es[i].src) continue;
                        ObjectId a = es[i].src, b = es[j].src, c = es[k].src;
                        if (a != b && b != c && a != c) ++count;
                    }
                }
            }
            results.push_back(count);
        }
        out["results"] = results;
        return out;
    }
    if (task_id == "p2_5_o") {
        json results = json::array();
        for (const auto& v : views) {
            int count = 0;
            for (const auto& e : v.edges) {
                if (e.src == kNoObject) ++count;                         // no source
                else if (e.trg == kNoObject) ++count;                    // source but no target
            }
            results.push_back(count);
        }
        out["results"] = results;
        return out;
    }
    if (task_id == "p3_a") {
        json graphs = json::array();
        for (const auto& v : views) graphs.push_back(view_shape(m, v, kNoObject, {}, true));
        out["graphs"] = graphs;
        return out;
    }
    if (task_id == "p4_1" || task_id == "p4_2_o") {
        json source = json::array();
        json target = json::array();
        for (const auto& v : views) {
            source.push_back(view_shape(m, v, kNoObject, {}, false));
            json t;
            std::vector<std::string> labels;
            for (const auto& n : v.nodes) labels.push_back(n.label);
            t["nodes"] = sorted_strings(std::move(labels));
            std::vector<std::pair<std::string, std::string>> support;
            for (const auto& e : v.edges)
                if (e.src != kNoObject && e.trg != kNoObject)
                    support.emplace_back(label_or_id(m, e.src, "name"), label_or_id(m, e.trg, "name"));
            if (task_id == "p4_1") {
                t["edges"] = support.size();
                t["support"] = sorted_pairs(std::move(support), false);
                t["src_only"] = 0;
                t["trg_only"] = 0;
                t["isolated_edges"] = 0;
            } else {
                t["links"] = support.size();
                t["support"] = sorted_pairs(std::move(support), false);
            }
            target.push_back(std::move(t));
        }
        out["source"] = source;
        out["target"] = target;
        return out;
    }
    if (task_id == "p5_1" || task_id == "p5_2_o") {
        json graphs = json::array();
        for (const auto& v : views) {
            ObjectId victim = find_victim(m, v);
            std::set<ObjectId> dead_edges;
            if (victim != kNoObject && task_id == "p5_2_o") {
                for (const auto& e : v.edges)
                    if (e.src == victim || e.trg == victim) dead_edges.insert(e.id);
            }
            graphs.push_back(view_shape(m, v, victim, dead_edges, false));
        }
        out["graphs"] = graphs;
        return out;
    }
    if (task_id == "p6_o" || task_id == "p6_o_r2") {
        json graphs = json::array();
        for (const auto& v : views) {
            Rel r = well_formed_support(v, m);
            Rel target = task_id == "p6_o" ? transitive_closure(r) : [&] {
                Rel u = r;
                for (const auto& p : compose(r, r)) u.insert(p);
                return u;
            }();
            json shape;
            std::vector<std::string> labels;
            for (const auto& n : v.nodes) labels.push_back(n.label);
            shape["nodes"] = sorted_strings(std::move(labels));
            size_t added = 0;
            for (const auto& p : target)
                if (!r.count(p)) ++added;
            shape["edges"] = v.edges.size() + added;
            std::vector<std::pair<std::string, std::string>> pairs(target.begin(), target.end());
            shape["support_set"] = sorted_pairs(std::move(pairs), true);
            graphs.push_back(std::move(shape));
        }
        out["graphs"] = graphs;
        return out;
    }
    fail_validate("unknown task '" + task_id + "'");
}

} // namespace molars
