#include <algorithm>

#include "doctest.h"
#include "cat2/fixtures.hpp"
#include "cat2/homology.hpp"
#include "cat2/oplax.hpp"

using namespace cat2;

namespace {

std::vector<std::pair<MonotoneMap, MonotoneMap>> admissible_sieves(const Poset& p) {
    std::vector<std::pair<MonotoneMap, MonotoneMap>> out;
    int n = p.size();
    for (unsigned m = 1; m < (1u << n); ++m) {
        std::vector<char> mask(n);
        std::vector<int> in;
        for (int x = 0; x < n; ++x)
            if ((mask[x] = m >> x & 1u)) in.push_back(x);
        if (!downward_closed(p, mask)) continue;
        auto inc = inclusion_map(subposet(p, in), p);
        if (auto r = right_adjoint_retraction(inc)) out.emplace_back(inc, *r);
    }
    return out;
}

int chain_cell(const OPoset& o, std::vector<int> c) { return o.one_of(std::move(c)); }

// Oracle: every assignment of H(0 -> 1, w) for w outside the sieve, with the
// remaining data forced by the poset enrichment, filtered by the validator.
int brute_relative_homotopies(const TwoFunctor& i, const TwoFunctor& r) {
    const TwoCat& B = *i.tgt;
    auto ip = interval_product(i.tgt);
    auto ir = compose(i, r);
    std::vector<char> in1(B.n1(), 0);
    for (int f : i.one) in1[f] = 1;
    std::vector<int> free;
    for (int f = 0; f < B.n1(); ++f)
        if (!in1[f]) free.push_back(f);
    OplaxFunctor H{ip.c, i.tgt, {}, {}, {}, {}};
    H.obj.resize(ip.c->n0());
    H.one.resize(ip.c->n1());
    H.two.resize(ip.c->n2());
    for (int x = 0; x < B.n0(); ++x) {
        H.obj[ip.object(0, x)] = ir.obj[x];
        H.obj[ip.object(1, x)] = x;
    }
    for (int f = 0; f < B.n1(); ++f) {
        H.one[ip.one(0, f)] = ir.one[f];
        H.one[ip.one(1, f)] = f;
        H.one[ip.one(2, f)] = f;
    }
    int count = 0;
    std::vector<int> choice(free.size(), 0);
    while (true) {
        bool typed = true;
        for (std::size_t t = 0; t < free.size(); ++t) {
            const auto& hom = B.hom(H.obj[ip.object(0, B.one[free[t]].src)], B.one[free[t]].tgt);
            if (hom.empty()) typed = false;
            else H.one[ip.one(2, free[t])] = hom[choice[t] % hom.size()];
        }
        bool ok = typed;
        for (int phi = 0; phi < 3 && ok; ++phi)
            for (int a = 0; a < B.n2() && ok; ++a) {
                int c = B.cell_between(H.one[ip.one(phi, B.two[a].src)], H.one[ip.one(phi, B.two[a].tgt)]);
                ok = c >= 0;
                H.two[ip.two(phi, a)] = c;
            }
        const TwoCat& P = *ip.c;
        for (int f = 0; f < P.n1() && ok; ++f)
            for (int g : P.out1[P.one[f].tgt]) {
                int c = B.cell_between(H.one[P.compose(g, f)], B.compose(H.one[g], H.one[f]));
                if (c < 0) ok = false;
                H.constraint[pair_key(g, f)] = c;
            }
        // only count choices that are distinct assignments
        bool canonical = true;
        for (std::size_t t = 0; t < free.size(); ++t) {
            const auto& hom = B.hom(H.obj[ip.object(0, B.one[free[t]].src)], B.one[free[t]].tgt);
            if (!hom.empty() && choice[t] >= static_cast<int>(hom.size())) canonical = false;
        }
        if (ok && canonical && validate_oplax(H).empty()) ++count;
        std::size_t t = 0;
        while (t < free.size() && ++choice[t] == 3) choice[t++] = 0;
        if (t == free.size()) break;
    }
    return count;
}

}  // namespace

TEST_CASE("strict functors coerce to valid oplax functors") {
    auto o2 = o_poset(simplex_poset(2));
    auto o1 = o_poset(simplex_poset(1));
    MonotoneMap d(simplex_poset(1), simplex_poset(2), {0, 2});
    auto f = coerce(o_map(d, o1, o2));
    CHECK(validate_oplax(f).empty());
    CHECK(is_strict(f));
    auto id = coerce(identity_functor(o2.c));
    CHECK(same_oplax(compose_oplax(id, f), f));
    auto counit = adjunction_counit(o2, share(poset_as_twocat(simplex_poset(2))));
    auto gf = compose_oplax(coerce(counit), f);
    CHECK(is_strict(gf));
    CHECK(same_functor(strict_part(gf), compose(counit, o_map(d, o1, o2))));
}

TEST_CASE("cocycle violations are reported on a named triple") {
    auto t = z2_double_suspension();
    REQUIRE(validate_twocat(*t).empty());
    auto d3 = share(poset_as_twocat(simplex_poset(3)));
    OplaxFunctor f{d3, t, std::vector<int>(4, 0), std::vector<int>(d3->n1(), 0), std::vector<int>(d3->n2(), 0), {}};
    for (int a = 0; a < d3->n1(); ++a)
        for (int b : d3->out1[d3->one[a].tgt]) f.constraint[pair_key(b, a)] = 0;
    CHECK(validate_oplax(f).empty());
    f.constraint[pair_key(d3->find_one("1<2"), d3->find_one("0<1"))] = 1;
    auto rep = validate_oplax(f);
    REQUIRE_FALSE(rep.empty());
    CHECK(std::any_of(rep.begin(), rep.end(), [](const std::string& s) { return s == "cocycle fails at (2<3, 1<2, 0<1)"; }));
}

TEST_CASE("poset sieve retract formulas") {
    auto d1 = simplex_poset(1);
    MonotoneMap i(simplex_poset(0), d1, {0});
    MonotoneMap r(d1, simplex_poset(0), {0, 0});
    auto pr = poset_sieve_retract(i, r);
    const auto& H = pr.s.h;
    CHECK(H.one(2, chain_cell(pr.b, {1})) == chain_cell(pr.b, {0, 1}));
    CHECK(H.one(2, chain_cell(pr.b, {0, 1})) == chain_cell(pr.b, {0, 1}));
    CHECK(check_retract_structure(pr.s).ok());

    auto d2 = simplex_poset(2);
    MonotoneMap i2(simplex_poset(0), d2, {0});
    MonotoneMap r2(d2, simplex_poset(0), {0, 0, 0});
    auto pr2 = poset_sieve_retract(i2, r2);
    CHECK(pr2.s.h.one(2, chain_cell(pr2.b, {1, 2})) == chain_cell(pr2.b, {0, 2}));
    CHECK(validate_oplax(pr2.s.h.h).empty());

    auto pid = poset_sieve_retract(identity_map(d2), identity_map(d2));
    for (int S = 0; S < pid.b.c->n1(); ++S) CHECK(pid.s.h.one(2, S) == S);

    MonotoneMap bad(simplex_poset(0), d1, {1});
    CHECK_THROWS_AS(poset_sieve_retract(bad, MonotoneMap(d1, simplex_poset(0), {0, 0})), PreconditionError);
}

TEST_CASE("poset sieve retracts pass the checker and the identity suite") {
    int checked = 0;
    for (int n = 1; n <= 4; ++n)
        for (const auto& p : posets_up_to_iso(n))
            for (auto& [i, r] : admissible_sieves(p)) {
                auto pr = poset_sieve_retract(i, r);
                auto rep = check_retract_structure(pr.s);
                CHECK(rep.all().empty());
                CHECK(retract_identities(pr.s).empty());
                ++checked;
            }
    CHECK(checked > 50);
}

TEST_CASE("a mutated constraint is caught") {
    MonotoneMap i(simplex_poset(0), simplex_poset(2), {0});
    auto pr = poset_sieve_retract(i, MonotoneMap(simplex_poset(2), simplex_poset(0), {0, 0, 0}));
    auto H = pr.s.h.h;
    const TwoCat& P = *H.src;
    int g = pr.s.h.ip.one(2, pr.b.one_of({1, 2})), f = pr.s.h.ip.one(0, pr.b.one_of({0, 1}));
    REQUIRE(P.compose(g, f) >= 0);
    H.constraint[pair_key(g, f)] = H.tgt->id2[0];
    CHECK_FALSE(validate_oplax(H).empty());
}

TEST_CASE("counterexample to extension without RDF2") {
    auto ex = rdf2_counterexample();
    REQUIRE(validate_twocat(*ex.b).empty());
    REQUIRE(validate_twocat(*ex.a2).empty());
    REQUIRE(validate_functor(ex.i).empty());
    REQUIRE(validate_functor(ex.u).empty());
    REQUIRE(sieve2_analyze(ex.i).is_sieve);
    auto rs = retractions(ex.i);
    REQUIRE(rs.size() == 1);
    const TwoCat& B = *ex.b;
    const TwoCat& A = *ex.a;
    auto r = rs[0];
    CHECK(r.obj[B.find_object("t")] == A.find_object("z"));
    CHECK(r.one[B.find_one("h")] == A.find_one("1_z"));
    CHECK(r.one[B.find_one("p")] == A.find_one("f"));
    CHECK(r.one[B.find_one("hg")] == A.find_one("g"));

    auto hs = enumerate_relative_homotopies(ex.i, r);
    CHECK(hs.size() == 4);
    CHECK(brute_relative_homotopies(ex.i, r) == 4);
    int rdf2 = 0;
    for (auto& h : hs) {
        RetractStructure s{ex.i, r, h};
        auto rep = check_retract_structure(s);
        CHECK(rep.retraction.empty());
        CHECK(rep.homotopy.empty());
        CHECK(rep.rdf1.empty());
        CHECK(h.one(2, B.find_one("1_t")) == B.find_one("h"));
        CHECK(h.one(2, B.find_one("h")) == B.find_one("h"));
        CHECK(h.one(2, B.find_one("p")) == B.find_one("p"));
        CHECK(h.one(2, B.find_one("q")) == B.find_one("q"));
        if (rep.rdf2.empty()) {
            ++rdf2;
            CHECK(h.one(2, B.find_one("hf")) == B.find_one("hf"));
            CHECK(h.one(2, B.find_one("hg")) == B.find_one("hg"));
            CHECK(retract_identities(s).empty());
        }
    }
    CHECK(rdf2 == 1);
}

TEST_CASE("identity sieve has only the projection homotopy") {
    auto o = o_poset(simplex_poset(2));
    auto id = identity_functor(o.c);
    auto hs = enumerate_relative_homotopies(id, id);
    REQUIRE(hs.size() == 1);
    for (int f = 0; f < o.c->n1(); ++f) CHECK(hs[0].one(2, f) == f);
    CHECK(check_retract_structure(RetractStructure{id, id, hs[0]}).ok());
}

TEST_CASE("enumeration agrees with the poset retract builder") {
    for (int n = 1; n <= 3; ++n)
        for (const auto& p : posets_up_to_iso(n))
            for (auto& [i, r] : admissible_sieves(p)) {
                auto pr = poset_sieve_retract(i, r);
                auto hs = enumerate_relative_homotopies(pr.s.i, pr.s.r);
                int rdf2 = 0;
                bool found = false;
                for (auto& h : hs) {
                    RetractStructure s{pr.s.i, pr.s.r, h};
                    if (check_retract_structure(s).ok()) {
                        ++rdf2;
                        found = found || same_oplax(h.h, pr.s.h.h);
                    }
                }
                CHECK(found);
                CHECK(rdf2 >= 1);
            }
}

TEST_CASE("nerve action of oplax functors") {
    auto o1 = o_poset(simplex_poset(1));
    auto o2 = o_poset(simplex_poset(2));
    MonotoneMap d(simplex_poset(1), simplex_poset(2), {0, 2});
    auto f = o_map(d, o1, o2);
    auto n1 = nerve2(o1.c, 3), n2 = nerve2(o2.c, 3);
    CHECK(same_smap(nerve_oplax(coerce(f), n1, n2), nerve2_map(f, n1, n2)));
    CHECK(same_smap(nerve_oplax(coerce(identity_functor(o2.c)), n2, n2), identity_smap(n2.x)));

    MonotoneMap i(simplex_poset(0), simplex_poset(2), {0});
    auto pr = poset_sieve_retract(i, MonotoneMap(simplex_poset(2), simplex_poset(0), {0, 0, 0}));
    const auto& H = pr.s.h;
    auto nb = nerve2(pr.b.c, 2);
    auto np = nerve2(H.ip.c, 2);
    auto h0 = nerve_oplax(H.end(0), nb, nb);
    auto h1 = nerve_oplax(H.end(1), nb, nb);
    CHECK(validate_smap(h0).empty());
    CHECK(simplicial_homotopy(h0, h1).has_value());

    auto hmap = nerve_oplax(H.h, np, nb);
    CHECK(validate_smap(hmap).empty());
    auto e2 = share(poset_as_twocat(simplex_poset(2)));
    auto counit = coerce(adjunction_counit(pr.b, e2));
    auto ne = nerve2(e2, 2);
    CHECK(same_smap(nerve_oplax(compose_oplax(counit, H.h), np, ne), compose(nerve_oplax(counit, nb, ne), hmap)));

    auto na = nerve2(pr.a.c, 2);
    CHECK(homology_iso(nerve_oplax(coerce(pr.s.i), na, nb), 1).iso);
}
