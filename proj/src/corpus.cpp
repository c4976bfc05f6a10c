#include "corpus.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <sstream>

#include "parser.hpp"

namespace molars {

using nlohmann::json;

const std::vector<TaskInfo>& task_table() {
    static const std::vector<TaskInfo> tasks = {
        {"p1_1", "p1_1.mt", "result.json", "result.json", nullptr, "empty.json", "p1_1"},
        {"p1_2", "p1_2.mt", "result.json", "result.json", nullptr, "empty.json", "p1_2"},
        {"p1_3", "p1_3.mt", "result.json", "result.json", nullptr, "greeting.json", "p1_3"},
        {"p2_1", "p2_1.mt", "graph1.json", "result.json", nullptr, "g_a.json", "main"},
        {"p2_2", "p2_2.mt", "graph1.json", "result.json", nullptr, "g_a.json", "main"},
        {"p2_3", "p2_3.mt", "graph1.json", "result.json", nullptr, "g_a.json", "main"},
        {"p2_4", "p2_4.mt", "graph1.json", "result.json", nullptr, "g_a.json", "main"},
        {"p2_4_a", "p2_4_a.mt", "graph1.json", "result.json", "circle.json", "g_a.json", "main"},
        {"p2_5_o", "p2_5_o.mt", "graph1.json", "result.json", nullptr, "g_a.json", "main"},
        {"p3_a", "p3_a.mt", "graph1.json", "graph1.json", nullptr, "g_a.json", "main"},
        {"p4_1", "p4_1.mt", "graph1.json", "graph2.json", "trace2.json", "g_a.json", "main"},
        {"p4_2_o", "p4_2_o.mt", "graph1.json", "graph3.json", "trace3.json", "g_a.json", "main"},
        {"p5_1", "p5_1.mt", "graph1.json", "graph1.json", nullptr, "g_a.json", "main"},
        {"p5_2_o", "p5_2_o.mt", "graph1.json", "graph1.json", nullptr, "g_a.json", "main"},
        {"p6_o", "p6_o.mt", "graph1.json", "graph1.json", nullptr, "g_a.json", "main"},
        {"p6_o_r2", "p6_o_r2.mt", "graph1.json", "graph1.json", "mark.json", "g_a.json", "main"},
    };
    return tasks;
}

const TaskInfo* find_task(const std::string& id) {
    for (const auto& t : task_table())
        if (id == t.id) return &t;
    return nullptr;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_validate("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail_validate("cannot write '" + path + "'");
    out << content;
}

LoadedTask load_task(const std::string& corpus_dir, const TaskInfo& info) {
    Metamodel mm = parse_metamodel(read_file(corpus_dir + "/metamodels/" + info.source_mm));
    if (std::strcmp(info.source_mm, info.target_mm) != 0) {
        Metamodel target = parse_metamodel(read_file(corpus_dir + "/metamodels/" + info.target_mm));
        mm = merge_metamodels(mm, target);
    }
    mm = augment_navigability(mm);
    if (info.extension) {
        mm = extend_metamodel(mm, read_file(corpus_dir + "/extensions/" + info.extension));
        // manual extensions get the same navigability adjustment
        mm = augment_navigability(mm);
    }

    LoadedTask out;
    out.info = &info;
    out.runtime_mm = std::make_shared<const Metamodel>(std::move(mm));
    out.target_original = std::make_shared<const Metamodel>(
        parse_metamodel(read_file(corpus_dir + "/metamodels/" + info.target_mm)));

    std::string text = read_file(corpus_dir + "/programs/" + info.program);
    SourceProgram sp = parse(text, info.program);
    if (!sp.ok()) {
        std::string msg = std::string(info.program) + ": ";
        for (const auto& d : sp.diagnostics) msg += "\n  " + d.str();
        fail_parse(msg);
    }
    LowerResult lr = lower(*sp.ast, *out.runtime_mm);
    if (!lr.ok()) {
        std::string msg = std::string(info.program) + ": ";
        for (const auto& d : lr.diagnostics) msg += "\n  " + d.str();
        fail_parse(msg);
    }
    out.program = std::move(lr.program);
    return out;
}

Model import_for_task(const LoadedTask& task, const std::string& model_json) {
    return import_model(model_json, task.runtime_mm);
}

ExecStatus run_task(const LoadedTask& task, Model& m) {
    Interpreter interp(task.program, m);
    return interp.run_entry(task.info->entry);
}

namespace {

std::string node_label(const Model& m, ObjectId id, const char* attr) {
    const Value* v = m.get_slot(id, attr);
    if (v) {
        if (auto* s = std::get_if<std::string>(&*v)) return *s;
    }
    return "#" + std::to_string(id);
}

// First (creation order) source/target node of an edge object, or -1.
ObjectId first_nav(const Model& m, int assoc, ObjectId edge) {
    if (assoc < 0) return kNoObject;
    ObjectId best = kNoObject;
    for (ObjectId n : m.targets(assoc, edge))
        if (best == kNoObject || n < best) best = n;
    return best;
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

struct Encoding {
    const char* graph;
    const char* node;
    const char* edge; // nullptr for encodings without edge objects
    const char* name_attr;
    const char* node_link; // "linksTo" style direct association, or nullptr
};

constexpr Encoding kGraph1{"Graph", "Node", "Edge", "name", nullptr};
constexpr Encoding kGraph2{"Graph2", "Node2", "Edge2", "text", nullptr};
constexpr Encoding kGraph3{"Graph3", "Node3", nullptr, "text", "linksTo"};

// Per-graph shape for encodings with edge objects: node names, edge count,
// support multiset of (src, trg) names and the dangling-edge breakdown.
json encoded_shapes(const Model& m, const Encoding& enc) {
    const Metamodel& mm = m.metamodel();
    json out = json::array();
    int gcls = mm.class_index(enc.graph);
    if (gcls < 0) return out;
    int nodes_assoc = mm.assoc_index(enc.graph, "nodes");
    int edges_assoc = enc.edge ? mm.assoc_index(enc.graph, "edges") : -1;
    int src_assoc = enc.edge ? mm.assoc_index(enc.edge, "src") : -1;
    int trg_assoc = enc.edge ? mm.assoc_index(enc.edge, "trg") : -1;
    int link_assoc = enc.node_link ? mm.assoc_index(enc.node, enc.node_link) : -1;

    for (ObjectId g : m.objects_of_class(gcls)) {
        json shape;
        std::vector<std::string> labels;
        std::vector<ObjectId> gnodes = m.targets(nodes_assoc, g);
        for (ObjectId n : gnodes) labels.push_back(node_label(m, n, enc.name_attr));
        shape["nodes"] = sorted_strings(std::move(labels));

        if (enc.edge) {
            std::vector<std::pair<std::string, std::string>> support;
            int src_only = 0, trg_only = 0, isolated = 0, count = 0;
            for (ObjectId e : m.targets(edges_assoc, g)) {
                ++count;
                ObjectId s = first_nav(m, src_assoc, e);
                ObjectId t = first_nav(m, trg_assoc, e);
                if (s != kNoObject && t != kNoObject)
                    support.emplace_back(node_label(m, s, enc.name_attr), node_label(m, t, enc.name_attr));
                else if (s != kNoObject) ++src_only;
                else if (t != kNoObject) ++trg_only;
                else ++isolated;
            }
            shape["edges"] = count;
            shape["support"] = sorted_pairs(std::move(support), false);
            shape["src_only"] = src_only;
            shape["trg_only"] = trg_only;
            shape["isolated_edges"] = isolated;
        }
        if (enc.node_link && link_assoc >= 0) {
            std::vector<std::pair<std::string, std::string>> support;
            int count = 0;
            for (const MLink& l : m.links()) {
                if (l.assoc != link_assoc) continue;
                if (!m.has_link(nodes_assoc, g, l.src)) continue; // other graph
                ++count;
                support.emplace_back(node_label(m, l.src, enc.name_attr),
                                     node_label(m, l.trg, enc.name_attr));
            }
            shape["links"] = count;
            shape["support"] = sorted_pairs(std::move(support), false);
        }
        out.push_back(std::move(shape));
    }
    return out;
}

json int_results(const Model& m) {
    const Metamodel& mm = m.metamodel();
    json out = json::array();
    int cls = mm.class_index("IntResult");
    if (cls < 0) return out;
    for (ObjectId r : m.objects_of_class(cls)) {
        const Value* v = m.get_slot(r, "result");
        if (v && std::holds_alternative<std::int64_t>(*v)) out.push_back(std::get<std::int64_t>(*v));
        else out.push_back(nullptr);
    }
    return out;
}

json closure_shapes(const Model& m) {
    // Like encoded_shapes but with the support as a deduplicated set.
    json shapes = encoded_shapes(m, kGraph1);
    for (auto& shape : shapes) {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& p : shape["support"]) pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
        shape["support_set"] = sorted_pairs(std::move(pairs), true);
        shape.erase("support");
        shape.erase("src_only");
        shape.erase("trg_only");
        shape.erase("isolated_edges");
    }
    return shapes;
}

} // namespace

json model_shape_summary(const Model& m) {
    json out;
    out["graphs"] = encoded_shapes(m, kGraph1);
    return out;
}

json engine_summary(const std::string& task_id, const Model& m) {
    const Metamodel& mm = m.metamodel();
    json out;

    if (task_id == "p1_1") {
        json texts = json::array();
        int cls = mm.class_index("Greeting");
        if (cls >= 0)
            for (ObjectId g : m.objects_of_class(cls)) {
                const Value* v = m.get_slot(g, "text");
                if (v && std::holds_alternative<std::string>(*v)) texts.push_back(std::get<std::string>(*v));
                else texts.push_back(nullptr);
            }
        out["texts"] = texts;
        return out;
    }
    if (task_id == "p1_2") {
        int gr = mm.class_index("Greeting");
        int ms = mm.class_index("GreetingMessage");
        int pe = mm.class_index("Person");
        out["greetings"] = gr >= 0 ? m.objects_of_class(gr).size() : 0;
        out["messages"] = ms >= 0 ? m.objects_of_class(ms).size() : 0;
        out["persons"] = pe >= 0 ? m.objects_of_class(pe).size() : 0;
        int la = mm.assoc_index("Greeting", "greetingMessage");
        int lb = mm.assoc_index("Greeting", "person");
        size_t na = 0, nb = 0;
        for (const MLink& l : m.links()) {
            if (l.assoc == la) ++na;
            if (l.assoc == lb) ++nb;
        }
        out["message_links"] = na;
        out["person_links"] = nb;
        std::vector<std::string> mt, pn;
        if (ms >= 0)
            for (ObjectId o : m.objects_of_class(ms)) mt.push_back(node_label(m, o, "text"));
        if (pe >= 0)
            for (ObjectId o : m.objects_of_class(pe)) pn.push_back(node_label(m, o, "name"));
        out["message_texts"] = mt;
        out["person_names"] = pn;
        return out;
    }
    if (task_id == "p1_3") {
        json results = json::array();
        int cls = mm.class_index("StringResult");
        if (cls >= 0)
            for (ObjectId r : m.objects_of_class(cls)) {
                const Value* v = m.get_slot(r, "result");
                if (v && std::holds_alternative<std::string>(*v)) results.push_back(std::get<std::string>(*v));
                else results.push_back(nullptr);
            }
        out["results"] = results;
        return out;
    }
    if (task_id == "p2_1" || task_id == "p2_2" || task_id == "p2_3" || task_id == "p2_4" ||
        task_id == "p2_4_a" || task_id == "p2_5_o") {
        out["results"] = int_results(m);
        return out;
    }
    if (task_id == "p3_a" || task_id == "p5_1" || task_id == "p5_2_o") {
        out["graphs"] = encoded_shapes(m, kGraph1);
        return out;
    }
    if (task_id == "p4_1") {
        out["source"] = encoded_shapes(m, kGraph1);
        out["target"] = encoded_shapes(m, kGraph2);
        return out;
    }
    if (task_id == "p4_2_o") {
        out["source"] = encoded_shapes(m, kGraph1);
        out["target"] = encoded_shapes(m, kGraph3);
        return out;
    }
    if (task_id == "p6_o" || task_id == "p6_o_r2") {
        out["graphs"] = closure_shapes(m);
        return out;
    }
    fail_validate("unknown task '" + task_id + "'");
}

} // namespace molars
