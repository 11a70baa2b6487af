#include "doctest.h"
#include "cat2/fixtures.hpp"
#include "cat2/io.hpp"

using namespace cat2;

TEST_CASE("posets and maps round-trip") {
    auto p = pseudo_circle();
    CHECK(poset_from_json(poset_json(p)) == p);
    auto f = last_vertex(simplex_poset(2));
    CHECK(same_map(map_from_json(map_json(f)), f));
    CHECK_THROWS_AS(poset_from_json(Json::parse(R"({"elements": ["a"], "leq": [["a", "b"]]})")), Error);
    CHECK_THROWS_AS(poset_from_json(Json::parse(R"({"elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]})")), CycleError);
}

TEST_CASE("simplicial sets round-trip") {
    auto x = standard(StandardKind::boundary, 2, std::nullopt, 3).x;
    auto y = sset_from_json(sset_json(*x));
    CHECK(y->count == x->count);
    CHECK(y->d == x->d);
    CHECK(y->s == x->s);
    auto j = sset_json(*x);
    j["d"][1][0][0] = 2;
    CHECK_THROWS_AS(sset_from_json(j), FormatError);
}

TEST_CASE("2-categories and functors round-trip") {
    for (auto& nc : sample_twocats()) {
        auto c = twocat_from_json(twocat_json(*nc.c));
        CHECK(c.n0() == nc.c->n0());
        CHECK(c.n1() == nc.c->n1());
        CHECK(c.n2() == nc.c->n2());
        CHECK(validate_twocat(c).empty());
        CHECK(find_isomorphism(share(c), nc.c).has_value());
    }
    auto ex = rdf2_counterexample();
    auto f = functor_from_json(functor_json(ex.u));
    CHECK(f.obj == ex.u.obj);
    CHECK(f.one == ex.u.one);
    CHECK(f.two == ex.u.two);
}

TEST_CASE("retract structures round-trip") {
    auto p = simplex_poset(2);
    auto inc = inclusion_map(subposet(p, {0}), p);
    auto pr = poset_sieve_retract(inc, *right_adjoint_retraction(inc));
    auto s = retract_from_json(retract_json(pr.s));
    CHECK(check_retract_structure(s).ok());
    CHECK(same_oplax(s.h.h, pr.s.h.h));
}
