#include <doctest.h>

#include "corpus.hpp"
#include "lower.hpp"
#include "parser.hpp"

using namespace molars;

namespace {

std::string corpus_path(const std::string& rel) { return std::string(MOLARS_CORPUS_DIR) + "/" + rel; }

Metamodel runtime_mm_for(const TaskInfo& info) {
    Metamodel mm = parse_metamodel(read_file(corpus_path("metamodels/" + std::string(info.source_mm))));
    if (std::string(info.source_mm) != info.target_mm) {
        mm = merge_metamodels(
            mm, parse_metamodel(read_file(corpus_path("metamodels/" + std::string(info.target_mm)))));
    }
    mm = augment_navigability(mm);
    if (info.extension) {
        mm = extend_metamodel(mm, read_file(corpus_path("extensions/" + std::string(info.extension))));
        mm = augment_navigability(mm);
    }
    return mm;
}

} // namespace

TEST_CASE("corpus file p2_2.mt parses into two procedures") {
    SourceProgram sp = parse(read_file(corpus_path("programs/p2_2.mt")), "p2_2.mt");
    REQUIRE(sp.ok());
    CHECK(sp.ast->procedures.size() == 2);
    CHECK(sp.ast->procedures[0].name == "main");
    CHECK(sp.ast->procedures[1].name == "p2_2_2");
}

TEST_CASE("empty input is a valid program with zero procedures") {
    SourceProgram sp = parse("");
    REQUIRE(sp.ok());
    CHECK(sp.ast->procedures.empty());

    SourceProgram comments = parse("// nothing here\n");
    CHECK(comments.ok());
}

TEST_CASE("syntax errors carry 1-based positions and recovery finds later errors") {
    SourceProgram sp = parse("procedure p() {\n  rule { element n : }\n  xyzzy\n}\n");
    REQUIRE_FALSE(sp.ok());
    REQUIRE(sp.diagnostics.size() >= 2);
    CHECK(sp.diagnostics[0].pos.line == 2);
    CHECK(sp.diagnostics[0].pos.col == 22); // the '}' after the dangling ':'
    // diagnostics are ordered by position
    for (size_t i = 1; i < sp.diagnostics.size(); ++i) {
        CHECK(sp.diagnostics[i - 1].pos.line <= sp.diagnostics[i].pos.line);
    }
}

TEST_CASE("lexer reports unterminated strings and bad characters") {
    SourceProgram sp = parse("procedure p() { var s : String := \"oops\n; }");
    CHECK_FALSE(sp.ok());
    SourceProgram sp2 = parse("procedure p() { $ }");
    CHECK_FALSE(sp2.ok());
}

TEST_CASE("pretty-print round trip is structurally identical for the whole corpus") {
    for (const TaskInfo& info : task_table()) {
        std::string text = read_file(corpus_path("programs/" + std::string(info.program)));
        SourceProgram sp = parse(text, info.program);
        REQUIRE_MESSAGE(sp.ok(), info.program);
        std::string printed = pretty_print(*sp.ast);
        SourceProgram again = parse(printed, info.program);
        REQUIRE_MESSAGE(again.ok(), info.program << " reparse:\n" << printed);
        CHECK_MESSAGE(pretty_print(*again.ast) == printed, info.program);
    }
}

TEST_CASE("every corpus program lowers with zero diagnostics") {
    for (const TaskInfo& info : task_table()) {
        Metamodel mm = runtime_mm_for(info);
        SourceProgram sp = parse(read_file(corpus_path("programs/" + std::string(info.program))));
        REQUIRE(sp.ok());
        LowerResult lr = lower(*sp.ast, mm);
        std::string first = lr.diagnostics.empty() ? "" : lr.diagnostics.front().str();
        CHECK_MESSAGE(lr.ok(), info.program << ": " << first);
    }
}

TEST_CASE("lowering rejects unknown classes, ends and misused references") {
    Metamodel mm = augment_navigability(parse_metamodel(read_file(corpus_path("metamodels/graph1.json"))));

    auto diags_of = [&](const std::string& text) {
        SourceProgram sp = parse(text);
        REQUIRE(sp.ok());
        return lower(*sp.ast, mm).diagnostics;
    };

    auto contains = [](const std::vector<Diagnostic>& ds, const std::string& needle) {
        for (const auto& d : ds)
            if (d.message.find(needle) != std::string::npos) return true;
        return false;
    };

    CHECK(contains(diags_of("procedure p() { rule { element n : Nod; } }"), "unknown class 'Nod'"));
    CHECK(contains(diags_of("procedure p() { rule { element n : Node; element e : Edge;"
                            " link e -[Edge.nope]-> n; } }"),
                   "unknown association end"));
    CHECK(contains(diags_of("procedure p() { rule { element n : Node; link @g -[Graph.nodes]-> n; } }"),
                   "does not reference a bound name"));
    CHECK(contains(diags_of("procedure p() { rule { element n : Node; element n : Node; } }"),
                   "duplicate element name"));
    CHECK(contains(diags_of("procedure p() { rule { element n : Node set name := 3; } }"),
                   "must be String"));
    CHECK(contains(diags_of("procedure p() { var x : Node; }"), "primitive"));
    CHECK(contains(diags_of("procedure p() { rule { element g2 : Graph;"
                            " element e : Edge; link g2 -[Graph.edges]-> e;"
                            " element n : Node create where n.name = \"x\"; } }"),
                   "constraints"));
    CHECK(contains(diags_of("procedure p() { while rule { element n : Node; } }"), "terminate"));
    CHECK(contains(diags_of("procedure p() { call nope(); }"), "unknown procedure"));
    CHECK(contains(diags_of("procedure p() { foreach e { element n : Node; } do { } }"),
                   "not an element of the loophead"));
    CHECK(contains(diags_of("procedure p() { }"), "empty body"));
    CHECK(contains(diags_of("procedure p(g : Graph) { rule { element g : Graph; } }"), "shadows"));
}

TEST_CASE("type errors in expressions are diagnosed") {
    Metamodel mm = augment_navigability(parse_metamodel(read_file(corpus_path("metamodels/result.json"))));
    SourceProgram sp = parse(
        "procedure p() { rule { element r : IntResult create set result := \"three\"; } }");
    REQUIRE(sp.ok());
    LowerResult lr = lower(*sp.ast, mm);
    REQUIRE_FALSE(lr.ok());
    CHECK(lr.diagnostics.front().message.find("Integer") != std::string::npos);

    SourceProgram sp2 = parse("procedure p() { var x : Integer := 1 + \"a\"; }");
    REQUIRE(sp2.ok());
    CHECK_FALSE(lower(*sp2.ast, mm).ok());
}

TEST_CASE("operator precedence: not > and > or, comparisons bind tighter than not") {
    SourceProgram sp = parse(
        "procedure p() { var b : Boolean := not 1 = 2 and true or false; }");
    REQUIRE(sp.ok());
    // ((not (1 = 2)) and true) or false
    std::string printed = pretty_print(*sp.ast);
    CHECK(printed.find("not 1 = 2 and true or false") != std::string::npos);
    SourceProgram again = parse(printed);
    REQUIRE(again.ok());
    CHECK(pretty_print(*again.ast) == printed);
}

TEST_CASE("NOT patterns reject nesting, actions and assignments") {
    Metamodel mm = augment_navigability(parse_metamodel(read_file(corpus_path("metamodels/graph1.json"))));
    auto diags_of = [&](const std::string& text) {
        SourceProgram sp = parse(text);
        REQUIRE(sp.ok());
        return lower(*sp.ast, mm).diagnostics;
    };
    auto contains = [](const std::vector<Diagnostic>& ds, const std::string& needle) {
        for (const auto& d : ds)
            if (d.message.find(needle) != std::string::npos) return true;
        return false;
    };
    CHECK(contains(diags_of("procedure p() { rule { element n : Node;"
                            " not { not { element e : Edge; } } } }"),
                   "nested"));
    CHECK(contains(diags_of("procedure p() { rule { element n : Node;"
                            " not { element e : Edge create; } } }"),
                   "plain match elements"));
    CHECK(contains(diags_of("procedure p() { rule { element n : Node;"
                            " not { element e : Edge; link e -[Edge.src]-> n delete; } } }"),
                   "plain match links"));
    CHECK(contains(diags_of("procedure p() { rule { element n : Node create;"
                            " not { element e : Edge; link e -[Edge.src]-> n; } } }"),
                   "cannot be matched inside"));
}
