#include "randmodel.hpp"

#include <algorithm>
#include <vector>

#include <json.hpp>

namespace molars {

using nlohmann::json;

std::string random_graph_model(std::uint64_t seed) {
    Rng rng(seed);
    const int n_graphs = 2 + rng.below(2);
    const int n_nodes = rng.below(9);   // 0..8
    const int n_edges = rng.below(15);  // 0..14

    json objects = json::array();
    json links = json::array();

    std::vector<std::vector<int>> nodes_of(n_graphs); // global node number per graph
    for (int g = 0; g < n_graphs; ++g)
        objects.push_back({{"id", "g" + std::to_string(g + 1)}, {"class", "Graph"}, {"attrs", json::object()}});

    // Nodes are dealt to graphs in order so names stay contiguous per graph.
    std::vector<int> graph_of_node(static_cast<size_t>(n_nodes));
    for (int n = 0; n < n_nodes; ++n) graph_of_node[static_cast<size_t>(n)] = rng.below(n_graphs);
    std::sort(graph_of_node.begin(), graph_of_node.end());
    for (int n = 0; n < n_nodes; ++n) {
        std::string id = "n" + std::to_string(n + 1);
        objects.push_back({{"id", id}, {"class", "Node"}, {"attrs", {{"name", id}}}});
        nodes_of[static_cast<size_t>(graph_of_node[static_cast<size_t>(n)])].push_back(n);
        links.push_back({{"assoc", "Graph.nodes"},
                         {"src", "g" + std::to_string(graph_of_node[static_cast<size_t>(n)] + 1)},
                         {"trg", id}});
    }

    struct Edge {
        int graph;
        int src = -1; // global node number, -1 = dangling
        int trg = -1;
    };
    std::vector<Edge> edges;
    for (int e = 0; e < n_edges; ++e) {
        Edge ed;
        ed.graph = rng.below(n_graphs);
        const auto& pool = nodes_of[static_cast<size_t>(ed.graph)];
        auto pick = [&]() { return pool.empty() ? -1 : pool[static_cast<size_t>(rng.below(static_cast<int>(pool.size())))]; };

        int roll = rng.below(100);
        if (roll < 30) {
            // dangling: drop the source, the target, or both
            int kind = rng.below(3);
            if (kind == 0) ed.trg = pick();
            else if (kind == 1) ed.src = pick();
        } else if (roll < 55) {
            int n = pick();
            ed.src = n;
            ed.trg = n; // looping (fully dangling when the graph has no nodes)
        } else if (roll < 80) {
            // parallel: duplicate an existing well-formed edge of this graph
            std::vector<size_t> candidates;
            for (size_t i = 0; i < edges.size(); ++i)
                if (edges[i].graph == ed.graph && edges[i].src >= 0 && edges[i].trg >= 0)
                    candidates.push_back(i);
            if (!candidates.empty()) {
                const Edge& orig = edges[candidates[static_cast<size_t>(rng.below(static_cast<int>(candidates.size())))]];
                ed.src = orig.src;
                ed.trg = orig.trg;
            } else {
                ed.src = pick();
                ed.trg = pick();
            }
        } else {
            ed.src = pick();
            ed.trg = pick();
        }
        edges.push_back(ed);
    }

    for (size_t e = 0; e < edges.size(); ++e) {
        std::string id = "e" + std::to_string(e + 1);
        objects.push_back({{"id", id}, {"class", "Edge"}, {"attrs", json::object()}});
        links.push_back({{"assoc", "Graph.edges"},
                         {"src", "g" + std::to_string(edges[e].graph + 1)},
                         {"trg", id}});
        if (edges[e].src >= 0)
            links.push_back({{"assoc", "Edge.src"}, {"src", id}, {"trg", "n" + std::to_string(edges[e].src + 1)}});
        if (edges[e].trg >= 0)
            links.push_back({{"assoc", "Edge.trg"}, {"src", id}, {"trg", "n" + std::to_string(edges[e].trg + 1)}});
    }

    json doc;
    doc["conformsTo"] = "graph1";
    doc["objects"] = objects;
    doc["links"] = links;
    return doc.dump(2) + "\n";
}

std::string random_greeting_model(std::uint64_t seed) {
    Rng rng(seed);
    json objects = json::array();
    json links = json::array();

    const int n_greet = rng.below(3);
    const int n_msg = rng.below(3);
    const int n_person = rng.below(3);
    for (int i = 0; i < n_greet; ++i)
        objects.push_back({{"id", "g" + std::to_string(i + 1)}, {"class", "Greeting"}, {"attrs", json::object()}});
    for (int i = 0; i < n_msg; ++i)
        objects.push_back({{"id", "m" + std::to_string(i + 1)},
                           {"class", "GreetingMessage"},
                           {"attrs", {{"text", "msg" + std::to_string(i + 1)}}}});
    for (int i = 0; i < n_person; ++i)
        objects.push_back({{"id", "p" + std::to_string(i + 1)},
                           {"class", "Person"},
                           {"attrs", {{"name", "person" + std::to_string(i + 1)}}}});
    for (int g = 0; g < n_greet; ++g) {
        if (n_msg > 0 && rng.chance(70))
            links.push_back({{"assoc", "Greeting.greetingMessage"},
                             {"src", "g" + std::to_string(g + 1)},
                             {"trg", "m" + std::to_string(rng.below(n_msg) + 1)}});
        if (n_person > 0 && rng.chance(70))
            links.push_back({{"assoc", "Greeting.person"},
                             {"src", "g" + std::to_string(g + 1)},
                             {"trg", "p" + std::to_string(rng.below(n_person) + 1)}});
    }

    json doc;
    doc["conformsTo"] = "result";
    doc["objects"] = objects;
    doc["links"] = links;
    return doc.dump(2) + "\n";
}

} // namespace molars
