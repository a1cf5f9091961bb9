#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gdlog/parser.hpp"

#include "helpers.hpp"

using namespace gdlog;

TEST_CASE("program: declarations, aliases, rules") {
    Program p = parse_program("% a comment\n"
                              "extensional R(a: sym, b: int).\n"
                              "intensional S(v: real).\n"
                              "alias Flip2 = Flip.\n"
                              "S(Flip2[1/2]) :- R(x, y).\n");
    CHECK(p.extensional.at("R").domains ==
          std::vector<DomainTag>{DomainTag::Sym, DomainTag::Int});
    CHECK(p.intensional.at("S").domains == std::vector<DomainTag>{DomainTag::Real});
    CHECK(p.dist_aliases.at("Flip2") == "Flip");
    REQUIRE(p.rules.size() == 1);
    const Rule& r = p.rules[0];
    CHECK(r.head.relation == "S");
    REQUIRE(r.head.args.size() == 1);
    CHECK(r.head.args[0].is_dist());
    CHECK(r.head.args[0].as_dist().name == "Flip2");
    REQUIRE(r.body.size() == 1);
    CHECK(r.body[0].args[0].is_var());
    CHECK(r.body[0].args[0].as_var() == "x");
}

TEST_CASE("literals: quoted symbols, ints, rationals, reals") {
    Instance d = parse_facts("R(\"a b\", -3, 2/6, 1.5, 2e3, \"esc\\\"aped\").\nT.\n");
    REQUIRE(d.size() == 2);
    const auto& t = *d.tuples("R").begin();
    CHECK(t[0] == Value::symbol("a b"));
    CHECK(t[1] == Value::integer(-3));
    CHECK(t[2] == Value::rational(Rat(1, 3)));
    CHECK(t[3] == Value::real(1.5));
    CHECK(t[4] == Value::real(2000.0));
    CHECK(t[5] == Value::symbol("esc\"aped"));
    CHECK(d.contains(Fact{"T", {}}));
}

TEST_CASE("statement dot does not eat decimal points") {
    // "1." style literals are not allowed; the dot terminates the fact
    Instance d = parse_facts("R(1).");
    CHECK(d.contains(Fact{"R", {Value::integer(1)}}));
    CHECK_THROWS_AS(parse_facts("R(1)"), ParseError);  // missing terminator
}

TEST_CASE("parse errors carry source positions") {
    try {
        parse_program("extensional R(x: int).\nS(x) : R(x).\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.span.line == 2);
        CHECK(std::string(e.what()).find("2:") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_program("extensional R(x: float)."), ParseError);
    CHECK_THROWS_AS(parse_program("extensional R(x: int). extensional R(x: int)."),
                    ParseError);
    CHECK_THROWS_AS(parse_facts("R(\"unterminated)."), ParseError);
    CHECK_THROWS_AS(parse_facts("R(#)."), ParseError);
}

TEST_CASE("rules require a nonempty body") {
    CHECK_THROWS_AS(parse_program("intensional S(x: int).\nS(1)."), ParseError);
}

TEST_CASE("program round trip through the printer") {
    for (const char* name : {"g0.gdl", "g0prime.gdl", "gsal.gdl", "burglary.gdl",
                             "flipflip_h.gdl", "shifted_dirac.gdl"}) {
        CAPTURE(name);
        Program p = parse_program(testutil::slurp(testutil::corpus(name)), name);
        std::string printed = program_str(p);
        Program again = parse_program(printed, "printed");
        CHECK(program_str(again) == printed);
        CHECK(validate_program(again).empty());
        CHECK(again.rules.size() == p.rules.size());
    }
}

TEST_CASE("constraint parsing with negation") {
    Constraint c = parse_constraint("Goal :- Covered(x), not Missing(x).\n"
                                    "Covered(x) :- R(x).\n");
    REQUIRE(c.rules.size() == 2);
    CHECK(c.rules[0].head.relation == "Goal");
    REQUIRE(c.rules[0].body.size() == 2);
    CHECK_FALSE(c.rules[0].body[0].negated);
    CHECK(c.rules[0].body[1].negated);
    CHECK(c.rules[0].body[1].atom.relation == "Missing");
}

TEST_CASE("pdb parsing") {
    InputPdb pdb = parse_pdb(testutil::slurp(testutil::corpus("r0.pdb")), "r0.pdb");
    REQUIRE(pdb.worlds.size() == 2);
    CHECK(pdb.worlds[0].first == Rat(1, 2));
    CHECK(pdb.worlds[0].second.contains(Fact{"R", {Value::integer(0)}}));
    CHECK(pdb.worlds[1].second.empty());
    CHECK(pdb.bottom() == Rat(1, 4));
    CHECK_THROWS_AS(parse_pdb("world 2/3 {}\nworld 2/3 {}\n"), ParseError);
}

TEST_CASE("distribution serialization round trips") {
    WorldDistribution wd;
    Instance w1, w2;
    w1.insert(Fact{"R", {Value::integer(0)}});
    w2.insert(Fact{"R", {Value::integer(0)}});
    w2.insert(Fact{"S", {Value::symbol("a"), Value::rational(Rat(1, 3))}});
    wd.worlds[w1] = Rat(1, 4);
    wd.worlds[w2] = Rat(5, 8);
    wd.bottom = Rat(1, 8);

    auto parsed = parse_distribution(serialize(wd));
    REQUIRE(std::holds_alternative<WorldDistribution>(parsed));
    const auto& back = std::get<WorldDistribution>(parsed);
    CHECK(back.worlds == wd.worlds);
    CHECK(back.bottom == wd.bottom);

    EmpiricalDistribution ed;
    ed.counts[w1] = 700;
    ed.counts[w2] = 250;
    ed.bottom_count = 50;
    ed.runs = 1000;
    ed.seed = 17;
    auto parsed2 = parse_distribution(serialize(ed));
    REQUIRE(std::holds_alternative<EmpiricalDistribution>(parsed2));
    const auto& back2 = std::get<EmpiricalDistribution>(parsed2);
    CHECK(back2.counts == ed.counts);
    CHECK(back2.bottom_count == 50);
    CHECK(back2.runs == 1000);
    CHECK(back2.seed == 17);
}

TEST_CASE("real values round trip bit-exactly through text") {
    Instance w;
    w.insert(Fact{"X", {Value::real(0.1), Value::real(-1234.56789e12),
                        Value::real(5e-324)}});
    WorldDistribution wd;
    wd.worlds[w] = 1;
    auto back = std::get<WorldDistribution>(parse_distribution(serialize(wd)));
    CHECK(back.worlds == wd.worlds);
}

TEST_CASE("printer output shapes") {
    Program p = parse_program("extensional R(x: int). intensional S(x: int).\n"
                              "S(Flip[1/2]) :- R(0).");
    CHECK(rule_str(p.rules[0]) == "S(Flip[1/2]) :- R(0).");
    std::string ex = existential_str(to_existential(p));
    CHECK(ex.find("auxiliary __aux_S_0") != std::string::npos);
    CHECK(ex.find("exists __z: __aux_S_0(1/2, __z) :- R(0).") != std::string::npos);
    CHECK(ex.find("S(__z) :- __aux_S_0(1/2, __z).") != std::string::npos);
}
