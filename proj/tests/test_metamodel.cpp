#include <doctest.h>

#include "corpus.hpp"
#include "metamodel.hpp"

using namespace molars;

namespace {

std::string corpus_path(const std::string& rel) { return std::string(MOLARS_CORPUS_DIR) + "/" + rel; }

Metamodel graph1() { return parse_metamodel(read_file(corpus_path("metamodels/graph1.json"))); }

} // namespace

TEST_CASE("graph1 fixture parses with three classes and four associations") {
    Metamodel mm = graph1();
    CHECK(mm.classes.size() == 3);
    CHECK(mm.associations.size() == 4);
    CHECK(mm.class_index("Graph") >= 0);
    CHECK(mm.class_index("Node") >= 0);
    CHECK(mm.class_index("Edge") >= 0);
    for (const auto& c : mm.classes) CHECK(c.origin == Origin::Original);
    for (const auto& a : mm.associations) CHECK(a.origin == Origin::Original);
}

TEST_CASE("empty class list is a valid metamodel") {
    Metamodel mm = parse_metamodel(R"({"name":"nothing","classes":[],"associations":[]})");
    CHECK(mm.classes.empty());
}

TEST_CASE("association naming an unknown class is rejected with the offender") {
    std::string doc = R"({"name":"bad","classes":[{"name":"Node"}],
        "associations":[{"name":"x","src":"Node","trg":"Nod","trgEnd":"x"}]})";
    CHECK_THROWS_WITH_AS(parse_metamodel(doc), doctest::Contains("Nod"), Error);
}

TEST_CASE("duplicate class names are rejected") {
    std::string doc = R"({"name":"bad","classes":[{"name":"Node"},{"name":"Node"}]})";
    CHECK_THROWS_WITH_AS(parse_metamodel(doc), doctest::Contains("Node"), Error);
}

TEST_CASE("cyclic inheritance is rejected") {
    std::string doc = R"({"name":"bad","classes":[
        {"name":"A","super":["B"]},{"name":"B","super":["A"]}]})";
    CHECK_THROWS_WITH_AS(parse_metamodel(doc), doctest::Contains("cyclic"), Error);
}

TEST_CASE("unsupported primitive types are an import error") {
    std::string doc = R"({"name":"bad","classes":[
        {"name":"A","attrs":[{"name":"x","type":"Float"}]}]})";
    CHECK_THROWS_WITH_AS(parse_metamodel(doc), doctest::Contains("Float"), Error);
}

TEST_CASE("augmentation makes every association navigable both ways") {
    Metamodel aug = augment_navigability(graph1());
    for (const auto& a : aug.associations) {
        CHECK(a.nav_forward);
        CHECK(a.nav_backward);
        CHECK(a.origin == Origin::Augmented);
        CHECK(a.src_end == "~" + a.trg_end);
    }
}

TEST_CASE("augmentation is idempotent and leaves fully navigable metamodels alone") {
    Metamodel mm = parse_metamodel(R"({"name":"bi","classes":[{"name":"A"},{"name":"B"}],
        "associations":[{"name":"x","src":"A","trg":"B","srcEnd":"back","trgEnd":"fwd",
                         "navigable":["fwd","bwd"]}]})");
    Metamodel once = augment_navigability(mm);
    CHECK(same_metamodel(mm, once));
    CHECK(once.associations[0].origin == Origin::Original);

    Metamodel g1 = augment_navigability(graph1());
    CHECK(same_metamodel(g1, augment_navigability(g1)));
}

TEST_CASE("augmenting a metamodel without associations changes nothing") {
    Metamodel mm = parse_metamodel(R"({"name":"n","classes":[{"name":"A"}]})");
    CHECK(same_metamodel(mm, augment_navigability(mm)));
}

TEST_CASE("strip is the inverse of augment and extend") {
    Metamodel original = graph1();
    Metamodel aug = augment_navigability(original);
    CHECK(same_metamodel(strip_to_original(aug), original));

    Metamodel ext = extend_metamodel(aug, read_file(corpus_path("extensions/circle.json")));
    CHECK(ext.class_index("Circle") >= 0);
    CHECK(ext.cls(ext.class_index("Circle")).origin == Origin::Temporary);
    CHECK(same_metamodel(strip_to_original(ext), original));
}

TEST_CASE("extension elements are temporary, collisions are rejected") {
    Metamodel aug = augment_navigability(graph1());
    Metamodel ext = extend_metamodel(aug, R"({"name":"e","classes":[{"name":"Extra"}],
        "associations":[{"name":"t","src":"Extra","trg":"Node","trgEnd":"onNode"}]})");
    CHECK(ext.cls(ext.class_index("Extra")).origin == Origin::Temporary);
    CHECK(ext.assoc(ext.assoc_index("Extra", "onNode")).origin == Origin::Temporary);

    CHECK_THROWS_WITH_AS(extend_metamodel(aug, R"({"name":"e","classes":[{"name":"Node"}]})"),
                         doctest::Contains("Node"), Error);
}

TEST_CASE("merging keeps both documents' contents and rejects collisions") {
    Metamodel g1 = graph1();
    Metamodel result = parse_metamodel(read_file(corpus_path("metamodels/result.json")));
    Metamodel merged = merge_metamodels(g1, result);
    CHECK(merged.class_index("Graph") >= 0);
    CHECK(merged.class_index("IntResult") >= 0);
    CHECK(merged.conforms_to("graph1"));
    CHECK(merged.conforms_to("result"));
    CHECK_THROWS(merge_metamodels(g1, g1));
}

TEST_CASE("attribute lookup follows the inheritance closure") {
    Metamodel mm = parse_metamodel(R"({"name":"inh","classes":[
        {"name":"Base","attrs":[{"name":"id","type":"Integer"}]},
        {"name":"Mid","super":["Base"],"attrs":[{"name":"label","type":"String"}]},
        {"name":"Leaf","super":["Mid"]}]})");
    int leaf = mm.class_index("Leaf");
    REQUIRE(leaf >= 0);
    CHECK(mm.find_attr(leaf, "id") != nullptr);
    CHECK(mm.find_attr(leaf, "label") != nullptr);
    CHECK(mm.find_attr(leaf, "missing") == nullptr);
    CHECK(mm.is_kind_of(leaf, mm.class_index("Base")));
    CHECK_FALSE(mm.is_kind_of(mm.class_index("Base"), leaf));
}

TEST_CASE("duplicate attribute in the closure is rejected") {
    std::string doc = R"({"name":"bad","classes":[
        {"name":"Base","attrs":[{"name":"x","type":"Integer"}]},
        {"name":"Leaf","super":["Base"],"attrs":[{"name":"x","type":"String"}]}]})";
    CHECK_THROWS_WITH_AS(parse_metamodel(doc), doctest::Contains("x"), Error);
}

TEST_CASE("two associations may share an end name when source classes differ") {
    Metamodel aug = augment_navigability(graph1());
    Metamodel ext = extend_metamodel(aug, read_file(corpus_path("extensions/circle.json")));
    // Graph.edges and Circle.edges coexist
    CHECK(ext.assoc_index("Graph", "edges") >= 0);
    CHECK(ext.assoc_index("Circle", "edges") >= 0);
    CHECK(ext.assoc_index("Graph", "edges") != ext.assoc_index("Circle", "edges"));
}

TEST_CASE("backward ends resolve through resolve_end") {
    Metamodel aug = augment_navigability(graph1());
    int node = aug.class_index("Node");
    auto ends = aug.resolve_end(node, "~nodes");
    REQUIRE(ends.size() == 1);
    CHECK(ends[0].backward);
    CHECK(aug.assoc(ends[0].assoc).trg_end == "nodes");

    // forward ends still resolve from the declared source class
    int edge = aug.class_index("Edge");
    auto fwd = aug.resolve_end(edge, "src");
    REQUIRE(fwd.size() == 1);
    CHECK_FALSE(fwd[0].backward);
}

TEST_CASE("reserved '~' prefix is rejected in original documents") {
    std::string doc = R"({"name":"bad","classes":[{"name":"A"}],
        "associations":[{"name":"x","src":"A","trg":"A","srcEnd":"~x","trgEnd":"x",
                         "navigable":["fwd","bwd"]}]})";
    CHECK_THROWS_WITH_AS(parse_metamodel(doc), doctest::Contains("reserved"), Error);
}

TEST_CASE("multiplicity fields are accepted and ignored") {
    Metamodel mm = parse_metamodel(R"({"name":"m","classes":[{"name":"A"}],
        "associations":[{"name":"x","src":"A","trg":"A","trgEnd":"x","multiplicity":"0..1"}]})");
    CHECK(mm.associations.size() == 1);
}
