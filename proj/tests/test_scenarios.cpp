#include "doctest.h"
#include "cat2/cofibration.hpp"
#include "cat2/io.hpp"
#include "cat2/scenarios.hpp"

using namespace cat2;

namespace {

// Oracle: nonempty totally ordered subsets, by filtering all subsets.
int brute_chains(const Poset& p) {
    int n = p.size(), count = 0;
    for (unsigned m = 1; m < (1u << n); ++m) {
        bool total = true;
        for (int a = 0; a < n && total; ++a)
            for (int b = 0; b < n && total; ++b)
                if ((m >> a & 1u) && (m >> b & 1u) && !p.comparable(a, b)) total = false;
        count += total;
    }
    return count;
}

}  // namespace

TEST_CASE("generating cofibrations") {
    auto c0 = gen_cofibration(0);
    CHECK(c0.f.src->n0() == 0);
    CHECK(c0.f.tgt->n0() == 1);
    CHECK(c0.sieve.is_sieve);

    auto c1 = gen_cofibration(1);
    auto dphi1 = named_poset(NamedPoset::partial_phi, 1);
    CHECK(dphi1.size() == 2);
    CHECK(c1.f.src->n0() == brute_chains(dphi1));
    CHECK(c1.f.src->n0() == 2);
    CHECK(c1.f.tgt->n0() == brute_chains(xi(simplex_poset(1))));

    for (int m = 1; m <= 2; ++m) {
        auto c = gen_cofibration(m);
        CHECK(c.sieve.is_sieve);
        CHECK(validate_functor(c.f).empty());
        CHECK(injective_functor(c.f));
        CHECK(c.rdf_report.ok());
        CHECK(same_map(compose(c.factor.j, c.factor.k), xi_map(c.sigma)));
        CHECK(c.f.src->n0() == brute_chains(named_poset(NamedPoset::partial_phi, m)));
        auto back = functor_from_json(functor_json(c.f));
        CHECK(back.obj == c.f.obj);
    }
    CHECK_THROWS_AS(gen_cofibration(4), BudgetError);
    CHECK_NOTHROW(gen_cofibration(1, 1));
    CHECK_THROWS_AS(gen_cofibration(2, 1), BudgetError);
}

TEST_CASE("scenario registry") {
    CHECK(scenario_catalog().size() == 12);
    for (std::size_t k = 0; k < scenario_catalog().size(); ++k) CHECK(scenario_catalog()[k].criterion == static_cast<int>(k) + 1);
    CHECK_THROWS_AS(run_scenario("no-such-scenario"), UnknownScenario);
    auto rep = run_scenario("street-nerve-edges");
    CHECK(rep.ok());
    CHECK(rep.lines.size() == 5);
    auto text = format_report(rep);
    CHECK(text.find("PASS [literature] nondegenerate 1-simplices of N2 O(Delta_2) = 4") != std::string::npos);
    CHECK(text.find("street-nerve-edges: PASS") != std::string::npos);
}

TEST_CASE("scenarios record objects for the axiom suites") {
    Collector col;
    CHECK(run_scenario("relative-homotopies", &col).ok());
    CHECK_FALSE(col.twocats.empty());
    CHECK(col.ssets.empty());
    CHECK_FALSE(run_scenario("axiom-suites", &col).ok());
    CHECK(run_scenario("bisimplicial-diagonal", &col).ok());
    CHECK(run_scenario("street-nerve-edges", &col).ok());
    CHECK_FALSE(col.oplax.empty());
    auto rep = run_scenario("axiom-suites", &col);
    CHECK(rep.ok());
    CHECK(rep.lines.size() == 12);
}
