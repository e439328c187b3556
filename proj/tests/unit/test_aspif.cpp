#include "aspex/aspif.hpp"
#include "aspex/oracle.hpp"

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace aspex;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(ASPEX_TEST_DATA) + "/" + name, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

aspif_error::kind error_kind(const std::string& text, std::size_t* line = nullptr) {
    try {
        parse_aspif(text);
    } catch (const aspif_error& e) {
        if (line) *line = e.line();
        return e.code();
    }
    FAIL("no error raised for: " << text);
    return aspif_error::kind::malformed_header;
}

}  // namespace

TEST_CASE("sample program statement counts") {
    auto p = parse_aspif(slurp("sample.aspif"));
    CHECK(p.rules().size() == 13);
    CHECK(p.outputs().size() == 7);
    CHECK(p.externals().size() == 2);
    CHECK(p.version == std::array<int, 3>{1, 0, 0});
}

TEST_CASE("rule statement fields") {
    auto p = parse_aspif("asp 1 0 0\n1 1 2 3 4 0 2 5 -6\n1 0 1 7 1 3 2 8 2 -9 1\n0\n");
    auto rules = p.rules();
    REQUIRE(rules.size() == 2);
    CHECK(rules[0].head == head_type::choice);
    CHECK(rules[0].head_atoms == std::vector<atom_id>{3, 4});
    CHECK(rules[0].body.literals == std::vector<literal_id>{5, -6});
    CHECK(rules[1].body.kind == body_kind::weight);
    CHECK(rules[1].body.lower_bound == 3);
    CHECK(rules[1].body.literals == std::vector<literal_id>{8, -9});
    CHECK(rules[1].body.weights == std::vector<std::int64_t>{2, 1});
    CHECK_FALSE(rules[0].is_constraint());
}

TEST_CASE("constraint detection") {
    auto p = parse_aspif("asp 1 0 0\n1 0 0 0 1 -1\n0\n");
    REQUIRE(p.rules().size() == 1);
    CHECK(p.rules()[0].is_constraint());
}

TEST_CASE("output symbols may contain spaces") {
    auto p = parse_aspif("asp 1 0 0\n4 7 f(a, b) 1 1\n0\n");
    REQUIRE(p.outputs().size() == 1);
    CHECK(p.outputs()[0].symbol == "f(a, b)");
    CHECK(p.outputs()[0].condition == std::vector<literal_id>{1});
}

TEST_CASE("header tags and comments") {
    auto p = parse_aspif("asp 1 0 0 incremental\n% note\n\n1 0 1 1 0 0\n0\n");
    CHECK(p.header_tags == std::vector<std::string>{"incremental"});
    CHECK(p.rules().size() == 1);
}

TEST_CASE("unknown tags are kept verbatim") {
    auto p = parse_aspif("asp 1 0 0\n6 0 1 2 1\n10 some comment\n0\n");
    REQUIRE(p.statements.size() == 2);
    const auto* o = std::get_if<opaque_statement>(&p.statements[0]);
    REQUIRE(o);
    CHECK(o->tag == 6);
    CHECK(emit_aspif(p) == "asp 1 0 0\n6 0 1 2 1\n10 some comment\n0\n");
}

TEST_CASE("error kinds and line numbers") {
    std::size_t line = 0;
    CHECK(error_kind("") == aspif_error::kind::malformed_header);
    CHECK(error_kind("asp 2 0 0\n0\n") == aspif_error::kind::malformed_header);
    CHECK(error_kind("hello\n0\n") == aspif_error::kind::malformed_header);
    CHECK(error_kind("asp 1 0 0\n1 0 1 1 0 0\n") == aspif_error::kind::missing_terminator);
    CHECK(error_kind("asp 1 0 0\n1 0 1 1 0 0\n1 0 2 1\n0\n", &line) == aspif_error::kind::truncated_statement);
    CHECK(line == 3);
    CHECK(error_kind("asp 1 0 0\n1 3 1 1 0 0\n0\n", &line) == aspif_error::kind::malformed_statement);
    CHECK(line == 2);
    CHECK(error_kind("asp 1 0 0\n1 0 1 1 0 1 0\n0\n") == aspif_error::kind::malformed_statement);
    CHECK(error_kind("asp 1 0 0\n1 0 1 1 0 0\n0\n1 0 1 2 0 0\n") == aspif_error::kind::malformed_statement);
    CHECK(error_kind("asp 1 0 0\n4 10 short 1 1\n0\n") == aspif_error::kind::truncated_statement);
}

TEST_CASE("emit and parse round-trip") {
    auto text = slurp("sample.aspif");
    auto p = parse_aspif(text);
    CHECK(parse_aspif(emit_aspif(p)) == p);
    CHECK(emit_aspif(p) == text);
}

TEST_CASE("generated programs round-trip") {
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        auto p = random_aspif(seed, 6, 8, 0.3);
        auto text = emit_aspif(p);
        REQUIRE_MESSAGE(parse_aspif(text) == p, "seed " << seed);
    }
}
