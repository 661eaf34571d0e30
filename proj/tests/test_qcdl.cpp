#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "test_util.hpp"
#include "wsim/qcdl.hpp"

using namespace wsim;
using namespace wsim::qcdl;
using wsim::test::read_file;

namespace {

const std::string circuits_dir = WSIM_CIRCUITS_DIR;

bool has_error(const std::vector<ParseError>& errors, ParseErrorKind kind, int line) {
    for (const ParseError& e : errors)
        if (e.kind == kind && e.span.line == line) return true;
    return false;
}

Circuit random_circuit(std::mt19937& rng) {
    std::uniform_int_distribution<int> mode_dist(4, 9);
    std::uniform_int_distribution<int> count_dist(0, 12);
    std::uniform_int_distribution<int> kind_dist(0, 4);
    Circuit circuit(mode_dist(rng));
    std::vector<ModeId> modes(static_cast<std::size_t>(circuit.mode_count()));
    for (int m = 0; m < circuit.mode_count(); ++m) modes[static_cast<std::size_t>(m)] = m + 1;
    int gates = count_dist(rng);
    for (int i = 0; i < gates; ++i) {
        std::shuffle(modes.begin(), modes.end(), rng);
        switch (kind_dist(rng)) {
            case 0: circuit.add_hadamard(modes[0]); break;
            case 1: circuit.add_pbs(modes[0], modes[1], modes[2], modes[3]); break;
            case 2: circuit.add_pc(modes[0], modes[1], modes[2]); break;
            case 3: circuit.add_cnot(modes[0], modes[1]); break;
            default: circuit.add_vgate(modes[0], modes[1]); break;
        }
    }
    return circuit;
}

}  // namespace

TEST_CASE("parse well-formed sources") {
    ParseResult result = parse("modes 2\nhad 1\ncnot 1 2\n");
    REQUIRE(result.ok());
    Circuit expected(2);
    expected.add_hadamard(1);
    expected.add_cnot(1, 2);
    CHECK(*result.circuit == expected);

    SUBCASE("comments, blank lines and flexible spacing") {
        ParseResult spaced = parse(
            "# leading comment\n"
            "\n"
            "modes 4   # four rails\n"
            "\t had   3\n"
            "pbs 1 2 -> 3 4\n"
            "pc 1 2 -> 3  # merge\n"
            "vgate 4 2\n");
        REQUIRE(spaced.ok());
        REQUIRE(spaced.circuit->gates().size() == 4);
        CHECK(spaced.circuit->gates()[0] == Gate{HadamardGate{3}});
        CHECK(spaced.circuit->gates()[1] == Gate{PbsGate{1, 2, 3, 4}});
        CHECK(spaced.circuit->gates()[2] == Gate{PcGate{1, 2, 3}});
        CHECK(spaced.circuit->gates()[3] == Gate{VGate{4, 2, 5, 6}});
    }

    SUBCASE("vgate aux rails allocated above the declared modes, in order") {
        ParseResult two = parse("modes 4\nvgate 4 2\nvgate 1 4\n");
        REQUIRE(two.ok());
        CHECK(two.circuit->gates()[0] == Gate{VGate{4, 2, 5, 6}});
        CHECK(two.circuit->gates()[1] == Gate{VGate{1, 4, 7, 8}});
    }

    SUBCASE("missing trailing newline accepted") {
        CHECK(parse("modes 2\nhad 1").ok());
    }
}

TEST_CASE("parse errors") {
    SUBCASE("arity") {
        ParseResult result = parse("modes 4\ncnot 1\n");
        CHECK(!result.circuit.has_value());
        REQUIRE(result.errors.size() == 1);
        CHECK(result.errors[0].kind == ParseErrorKind::Arity);
        CHECK(result.errors[0].span == SourceSpan{2, 1});
    }

    SUBCASE("bad integer points at the offending token") {
        ParseResult result = parse("modes 4\nhad x\n");
        REQUIRE(result.errors.size() == 1);
        CHECK(result.errors[0].kind == ParseErrorKind::BadInteger);
        CHECK(result.errors[0].span == SourceSpan{2, 5});
        CHECK(has_error(parse("modes 0\n").errors, ParseErrorKind::BadInteger, 1));
        CHECK(has_error(parse("modes 4\nhad -2\n").errors, ParseErrorKind::BadInteger, 2));
    }

    SUBCASE("unknown keyword") {
        CHECK(has_error(parse("modes 2\nfoo 1\n").errors, ParseErrorKind::UnknownKeyword, 2));
    }

    SUBCASE("missing modes declaration") {
        CHECK(has_error(parse("had 1\n").errors, ParseErrorKind::MissingModesDecl, 1));
        CHECK(has_error(parse("").errors, ParseErrorKind::MissingModesDecl, 1));
        CHECK(has_error(parse("# only a comment\n").errors, ParseErrorKind::MissingModesDecl,
                        1));
    }

    SUBCASE("duplicate modes declaration") {
        CHECK(has_error(parse("modes 2\nmodes 3\n").errors, ParseErrorKind::DuplicateModesDecl,
                        2));
    }

    SUBCASE("pbs arrow required") {
        ParseResult result = parse("modes 4\npbs 1 2 => 3 4\n");
        REQUIRE(result.errors.size() == 1);
        CHECK(result.errors[0].kind == ParseErrorKind::Arity);
        ParseResult missing = parse("modes 4\npbs 1 2 3 4\n");
        CHECK(has_error(missing.errors, ParseErrorKind::Arity, 2));
    }

    SUBCASE("recovery: one diagnostic per malformed line, correct numbers") {
        ParseResult result = parse(
            "modes 4\n"
            "cnot 1\n"          // line 2: arity
            "had 1\n"
            "vgate 1 x\n"       // line 4: bad integer
            "snicker 3\n"       // line 5: unknown keyword
            "pc 1 2 -> 3\n");
        CHECK(!result.circuit.has_value());
        CHECK(result.errors.size() == 3);
        CHECK(has_error(result.errors, ParseErrorKind::Arity, 2));
        CHECK(has_error(result.errors, ParseErrorKind::BadInteger, 4));
        CHECK(has_error(result.errors, ParseErrorKind::UnknownKeyword, 5));
    }

    SUBCASE("grammar is total on arbitrary input") {
        std::mt19937 rng(61);
        std::uniform_int_distribution<int> len(0, 120);
        std::uniform_int_distribution<int> chr(0, 94);
        for (int i = 0; i < 200; ++i) {
            std::string garbage;
            int n = len(rng);
            for (int k = 0; k < n; ++k)
                garbage.push_back(static_cast<char>(' ' + chr(rng)));
            ParseResult result = parse(garbage);
            CHECK(result.circuit.has_value() == result.errors.empty());
        }
    }

    SUBCASE("error rendering") {
        ParseResult result = parse("modes 4\nhad x\n");
        REQUIRE(result.errors.size() == 1);
        CHECK(format_error(result.errors[0]) == "2:5: expected positive integer, got 'x'");
    }
}

TEST_CASE("serialize") {
    Circuit one(2);
    one.add_hadamard(1);
    CHECK(serialize(one) == "modes 2\nhad 1\n");

    SUBCASE("round trip is the identity on built circuits") {
        std::mt19937 rng(67);
        for (int i = 0; i < 50; ++i) {
            Circuit circuit = random_circuit(rng);
            ParseResult reparsed = parse(serialize(circuit));
            REQUIRE(reparsed.ok());
            CHECK(*reparsed.circuit == circuit);
        }
    }

    SUBCASE("canonical form is idempotent") {
        const std::string source = "# note\nmodes 4\n\n  had 1\ncnot   1   2\nvgate 4 2\n";
        ParseResult first = parse(source);
        REQUIRE(first.ok());
        std::string canon = serialize(*first.circuit);
        ParseResult second = parse(canon);
        REQUIRE(second.ok());
        CHECK(serialize(*second.circuit) == canon);
    }
}

TEST_CASE("shipped creation circuit matches the preset builder") {
    ParseResult result = parse(read_file(circuits_dir + "/w4_creation.wqc"));
    REQUIRE(result.ok());
    CHECK(*result.circuit == build_w_creation_circuit());
}
