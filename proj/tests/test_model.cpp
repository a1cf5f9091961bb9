#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gdlog/model.hpp"
#include "gdlog/parser.hpp"

#include <algorithm>

#include "helpers.hpp"

using namespace gdlog;

namespace {

Fact f(const std::string& rel, std::initializer_list<Value> args) {
    return Fact{rel, std::vector<Value>(args)};
}

bool has_code(const std::vector<Diagnostic>& diags, DiagnosticCode code) {
    return std::any_of(diags.begin(), diags.end(),
                       [&](const Diagnostic& d) { return d.code == code; });
}

std::vector<Diagnostic> diags_of(const std::string& src) {
    return validate_program(parse_program(src));
}

}  // namespace

TEST_CASE("instance is a set of facts") {
    Instance d;
    CHECK(d.empty());
    CHECK(d.insert(f("R", {Value::integer(1)})));
    CHECK_FALSE(d.insert(f("R", {Value::integer(1)})));  // duplicate
    CHECK(d.insert(f("R", {Value::integer(2)})));
    CHECK(d.insert(f("S", {})));
    CHECK(d.size() == 3);
    CHECK(d.contains(f("R", {Value::integer(1)})));
    CHECK_FALSE(d.contains(f("R", {Value::integer(3)})));
    CHECK(d.tuples("R").size() == 2);
    CHECK(d.tuples("missing").empty());
}

TEST_CASE("instance ordering and subset") {
    Instance a, b;
    a.insert(f("R", {Value::integer(1)}));
    b = a;
    b.insert(f("R", {Value::integer(2)}));
    CHECK(a == a);
    CHECK(a != b);
    CHECK(a.subset_of(b));
    CHECK_FALSE(b.subset_of(a));
    CHECK((a < b || b < a));
}

TEST_CASE("facts are listed canonically") {
    Instance d;
    d.insert(f("S", {Value::integer(1)}));
    d.insert(f("R", {Value::integer(2)}));
    d.insert(f("R", {Value::integer(1)}));
    auto fs = d.facts();
    REQUIRE(fs.size() == 3);
    CHECK(fs[0] == f("R", {Value::integer(1)}));
    CHECK(fs[1] == f("R", {Value::integer(2)}));
    CHECK(fs[2] == f("S", {Value::integer(1)}));
    CHECK(d.str() == "{R(1), R(2), S(1)}");
}

TEST_CASE("valid corpus programs pass validation") {
    for (const char* name : {"g0.gdl", "geps_10.gdl", "g0prime.gdl", "flipflip_g.gdl",
                             "flipflip_h.gdl", "gsal.gdl", "burglary.gdl",
                             "shifted_dirac.gdl"}) {
        CAPTURE(name);
        Program p = parse_program(testutil::slurp(testutil::corpus(name)), name);
        CHECK(validate_program(p).empty());
    }
}

TEST_CASE("unsafe head variable") {
    auto d = diags_of("extensional R(x: int). intensional S(x: int).\n"
                      "S(y) :- R(x).");
    CHECK(has_code(d, DiagnosticCode::UnsafeHeadVariable));
}

TEST_CASE("unsafe distribution parameter variable") {
    auto d = diags_of("extensional R(x: int). intensional S(x: int).\n"
                      "S(Flip[p]) :- R(x).");
    CHECK(has_code(d, DiagnosticCode::UnsafeHeadVariable));
}

TEST_CASE("distribution term only in last head position") {
    auto d = diags_of("extensional R(x: int). intensional S(x: int, y: int).\n"
                      "S(Flip[1/2], x) :- R(x).");
    CHECK(has_code(d, DiagnosticCode::MisplacedDistTerm));
}

TEST_CASE("distribution term forbidden in body") {
    // the grammar already refuses it...
    CHECK_THROWS_AS(parse_program("extensional R(x: int). intensional S(x: int).\n"
                                  "S(x) :- R(Flip[1/2])."),
                    ParseError);
    // ...and a hand-built program is caught by validation as well
    Program p = parse_program("extensional R(x: int). intensional S(x: int).\nS(x) :- R(x).");
    p.rules[0].body[0].args[0] = Term::dist(DistCall{"Flip", {Term::constant(Value::rational(Rat(1, 2)))}});
    CHECK(has_code(validate_program(p), DiagnosticCode::DistTermInBody));
}

TEST_CASE("extensional heads rejected") {
    auto d1 = diags_of("extensional R(x: int).\nR(x) :- R(x).");
    CHECK(has_code(d1, DiagnosticCode::ExtensionalHead));
    auto d2 = diags_of("extensional R(x: int).\nR(Flip[1/2]) :- R(x).");
    CHECK(has_code(d2, DiagnosticCode::DistTermInExtensionalHead));
}

TEST_CASE("undeclared relations and arity") {
    CHECK(has_code(diags_of("extensional R(x: int). intensional S(x: int).\nS(x) :- Q(x)."),
                   DiagnosticCode::UndeclaredRelation));
    CHECK(has_code(diags_of("extensional R(x: int). intensional S(x: int).\nS(x) :- R(x, x)."),
                   DiagnosticCode::ArityMismatch));
}

TEST_CASE("unknown distribution") {
    auto d = diags_of("extensional R(x: int). intensional S(x: int).\n"
                      "S(Toss[1/2]) :- R(x).");
    CHECK(has_code(d, DiagnosticCode::UnknownDistribution));
}

TEST_CASE("parameter arity and domain") {
    CHECK(has_code(diags_of("extensional R(x: int). intensional S(x: int).\n"
                            "S(Flip[1/2, 1/2]) :- R(x)."),
                   DiagnosticCode::ArityMismatch));
    CHECK(has_code(diags_of("extensional R(x: int). intensional S(x: int).\n"
                            "S(Flip[\"p\"]) :- R(x)."),
                   DiagnosticCode::ParameterDomainMismatch));
    // sym-typed variable cannot feed a real parameter
    CHECK(has_code(diags_of("extensional R(x: sym). intensional S(x: int).\n"
                            "S(Flip[x]) :- R(x)."),
                   DiagnosticCode::ParameterDomainMismatch));
}

TEST_CASE("mixed-sort variables rejected, int widens to real") {
    CHECK(has_code(diags_of("extensional R(x: sym). extensional Q(x: int).\n"
                            "intensional S(x: int).\nS(y) :- R(x), Q(y), R(y)."),
                   DiagnosticCode::MixedSortVariable));
    // int position joined with a real parameter slot is fine
    CHECK(diags_of("extensional R(x: int). intensional S(x: int).\n"
                   "S(Flip[x]) :- R(x).")
              .empty());
}

TEST_CASE("reserved auxiliary prefix") {
    auto d = diags_of("extensional __aux_R(x: int). intensional S(x: int).\n"
                      "S(x) :- __aux_R(x).");
    CHECK(has_code(d, DiagnosticCode::ReservedRelationName));
}

TEST_CASE("rule helpers") {
    Program p = parse_program("extensional R(x: int). intensional S(x: int).\n"
                              "S(x) :- R(x).\nS(Flip[1/2]) :- R(x).");
    REQUIRE(p.rules.size() == 2);
    CHECK_FALSE(p.rules[0].is_probabilistic());
    CHECK(p.rules[1].is_probabilistic());
    CHECK(p.rules[1].dist_position() == 0);
    CHECK(p.rules[0].occurrence_index == 0);
    CHECK(p.rules[1].occurrence_index == 1);
}

TEST_CASE("distribution alias resolution") {
    Program p = parse_program("alias F = Flip. alias G = F.");
    CHECK(p.resolve_dist("F") == "Flip");
    CHECK(p.resolve_dist("G") == "Flip");  // aliases resolve transitively at parse
    CHECK(p.resolve_dist("Flip") == "Flip");
}
