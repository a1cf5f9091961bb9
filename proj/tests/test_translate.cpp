#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gdlog/translate.hpp"
#include "gdlog/parser.hpp"

#include "helpers.hpp"

using namespace gdlog;

TEST_CASE("two-flip program becomes sampler/copy-down pairs") {
    ExistentialProgram ex = to_existential(testutil::load_program("g0.gdl"));
    REQUIRE(ex.rules.size() == 4);

    CHECK(ex.rules[0].kind == ExistentialRuleKind::Sampler);
    CHECK(ex.rules[1].kind == ExistentialRuleKind::CopyDown);
    CHECK(ex.rules[2].kind == ExistentialRuleKind::Sampler);
    CHECK(ex.rules[3].kind == ExistentialRuleKind::CopyDown);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(ex.rules[i].occurrence_index == static_cast<int>(i));

    // one fresh auxiliary relation per source occurrence
    CHECK(ex.rules[0].aux_relation == "__aux_S_0");
    CHECK(ex.rules[2].aux_relation == "__aux_S_1");
    CHECK(ex.rules[0].dist_name == "Flip");

    // aux arity = (head arity - 1) + pardim + 1
    const RelationSymbol& aux = ex.relation("__aux_S_0");
    CHECK(aux.kind == RelationKind::Auxiliary);
    REQUIRE(aux.domains.size() == 2);
    CHECK(aux.domains[0] == DomainTag::Real);  // Flip parameter slot
    CHECK(aux.domains[1] == DomainTag::Int);   // sampled S attribute

    // sampler head: parameters appended, sampled position implicit
    const ExistentialRule& sampler = ex.rules[0];
    CHECK(sampler.head.relation == "__aux_S_0");
    REQUIRE(sampler.head.args.size() == 1);
    CHECK(sampler.head.args[0].is_const());
    CHECK(sampler.head.args[0].as_const() == Value::rational(Rat(1, 2)));
    CHECK(sampler.param_offset == 0);

    // copy-down projects the parameters away again
    const ExistentialRule& copy = ex.rules[1];
    CHECK(copy.head.relation == "S");
    REQUIRE(copy.head.args.size() == 1);
    CHECK(copy.head.args[0].is_var());
    REQUIRE(copy.body.size() == 1);
    CHECK(copy.body[0].relation == "__aux_S_0");
    CHECK(copy.body[0].args.size() == 2);

    CHECK(ex.original_relations == std::set<std::string>{"R", "S"});
}

TEST_CASE("deterministic rules pass through") {
    ExistentialProgram ex = to_existential(testutil::load_program("gsal.gdl"));
    REQUIRE(ex.rules.size() == 5);  // 3 deterministic + sampler + copy-down
    CHECK(ex.rules[0].kind == ExistentialRuleKind::Deterministic);
    CHECK(ex.rules[1].kind == ExistentialRuleKind::Deterministic);
    CHECK(ex.rules[2].kind == ExistentialRuleKind::Deterministic);
    CHECK(ex.rules[3].kind == ExistentialRuleKind::Sampler);
    CHECK(ex.rules[4].kind == ExistentialRuleKind::CopyDown);
    CHECK(ex.rules[0].head.relation == "AffilEmployee");

    // Gaussian sampler: aux = (ssn, company) + (mu, var) + income
    const RelationSymbol& aux = ex.relation(ex.rules[3].aux_relation);
    REQUIRE(aux.domains.size() == 5);
    CHECK(ex.rules[3].param_offset == 2);
    CHECK(ex.rules[3].dist_name == "Gaussian");
}

TEST_CASE("aliases resolve to the canonical family") {
    ExistentialProgram ex = to_existential(testutil::load_program("g0prime.gdl"));
    CHECK(ex.rules[0].dist_name == "Flip");
    CHECK(ex.rules[2].dist_name == "Flip");  // Flip' resolved
}

TEST_CASE("variable parameters land in the sampler head") {
    ExistentialProgram ex = to_existential(testutil::load_program("burglary.gdl"));
    // Burglary(x, c, Flip[r]) :- Unit(x, c), City(c, r)
    const ExistentialRule* sampler = nullptr;
    for (const auto& r : ex.rules)
        if (r.samples() && r.head.relation.find("Burglary") != std::string::npos)
            sampler = &r;
    REQUIRE(sampler != nullptr);
    REQUIRE(sampler->head.args.size() == 3);  // x, c, r
    CHECK(sampler->head.args[2].is_var());
    CHECK(sampler->head.args[2].as_var() == "r");
    CHECK(sampler->param_offset == 2);
}

TEST_CASE("projection drops non-selected relations") {
    Instance d;
    d.insert(Fact{"R", {Value::integer(0)}});
    d.insert(Fact{"S", {Value::integer(1)}});
    d.insert(Fact{"__aux_S_0", {Value::rational(Rat(1, 2)), Value::integer(1)}});
    Instance proj = project_instance(d, {"R", "S"});
    CHECK(proj.size() == 2);
    CHECK(proj.contains(Fact{"R", {Value::integer(0)}}));
    CHECK_FALSE(proj.relations().count("__aux_S_0"));
}

TEST_CASE("translation is deterministic") {
    Program p = testutil::load_program("burglary.gdl");
    CHECK(existential_str(to_existential(p)) == existential_str(to_existential(p)));
}
