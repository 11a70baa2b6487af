#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "cat2/homology.hpp"
#include "cat2/twocat.hpp"

using namespace cat2;

namespace {

TwoCatPtr z2_category() {
    TwoCat c;
    c.objects = {"*"};
    c.one = {{0, 0, "e"}, {0, 0, "s"}};
    c.id1 = {0};
    c.comp[pair_key(0, 0)] = 0;
    c.comp[pair_key(0, 1)] = 1;
    c.comp[pair_key(1, 0)] = 1;
    c.comp[pair_key(1, 1)] = 0;
    return share(locally_posetal(c, {}));
}

// Oracle: Street nerve simplices of degree m <= 3 by nested type-correct loops,
// checking the cocycle condition only at the end.
long nerve2_brute(const TwoCat& c, int m) {
    long total = 0;
    auto cells2 = [&](int src, int tgt) {
        std::vector<int> out;
        for (int a = 0; a < c.n2(); ++a)
            if (c.two[a].src == src && c.two[a].tgt == tgt) out.push_back(a);
        return out;
    };
    if (m == 0) return c.n0();
    if (m == 1) return c.n1();
    if (m == 2) {
        for (int f10 = 0; f10 < c.n1(); ++f10)
            for (int f21 = 0; f21 < c.n1(); ++f21) {
                if (c.one[f10].tgt != c.one[f21].src) continue;
                for (int f20 = 0; f20 < c.n1(); ++f20) {
                    if (c.one[f20].src != c.one[f10].src || c.one[f20].tgt != c.one[f21].tgt) continue;
                    total += static_cast<long>(cells2(f20, c.compose(f21, f10)).size());
                }
            }
        return total;
    }
    // m == 3
    for (int f10 = 0; f10 < c.n1(); ++f10)
        for (int f21 = 0; f21 < c.n1(); ++f21) {
            if (c.one[f10].tgt != c.one[f21].src) continue;
            for (int f32 = 0; f32 < c.n1(); ++f32) {
                if (c.one[f21].tgt != c.one[f32].src) continue;
                int x0 = c.one[f10].src, x2 = c.one[f21].tgt, x3 = c.one[f32].tgt;
                for (int f20 : c.hom(x0, x2))
                    for (int f30 : c.hom(x0, x3))
                        for (int f31 : c.hom(c.one[f21].src, x3))
                            for (int a210 : cells2(f20, c.compose(f21, f10)))
                                for (int a310 : cells2(f30, c.compose(f31, f10)))
                                    for (int a320 : cells2(f30, c.compose(f32, f20)))
                                        for (int a321 : cells2(f31, c.compose(f32, f21))) {
                                            int lhs = c.vcompose(c.hcompose(c.id2[f32], a210), a320);
                                            int rhs = c.vcompose(c.hcompose(a321, c.id2[f10]), a310);
                                            total += lhs == rhs;
                                        }
            }
        }
    return total;
}

long monotone_count(const Poset& a, const Poset& b) {
    long total = 0;
    std::vector<int> m(a.size(), 0);
    while (true) {
        bool ok = true;
        for (int x = 0; x < a.size() && ok; ++x)
            for (int y = 0; y < a.size() && ok; ++y)
                if (a.leq(x, y) && !b.leq(m[x], m[y])) ok = false;
        total += ok;
        int k = 0;
        while (k < a.size() && ++m[k] == b.size()) m[k++] = 0;
        if (k == a.size()) break;
    }
    return total;
}

}  // namespace

TEST_CASE("O(Delta_2)") {
    auto o = o_poset(simplex_poset(2));
    const TwoCat& c = *o.c;
    CHECK(validate_twocat(c).empty());
    CHECK(c.n0() == 3);
    CHECK(c.n1() == 7);
    CHECK(c.n2() == 8);
    auto h = c.hom(0, 2);
    REQUIRE(h.size() == 2);
    int f = o.one_of({0, 2}), g = o.one_of({0, 1, 2});
    CHECK(c.cell_between(f, g) >= 0);
    CHECK(c.cell_between(g, f) < 0);
    CHECK(c.compose(o.one_of({1, 2}), o.one_of({0, 1})) == g);
    CHECK(is_poset_enriched(c));
}

TEST_CASE("O(E) is a valid 2-category for small posets") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& p : posets_up_to_iso(n)) {
            auto o = o_poset(p);
            CHECK(validate_twocat(*o.c).empty());
            CHECK(o.c->n1() == static_cast<int>(chains(p).size()));
        }
}

TEST_CASE("Street nerve of O(Delta_2)") {
    auto o = o_poset(simplex_poset(2));
    auto n = nerve2(o.c, 3);
    CHECK(validate_sset(*n.x).empty());
    CHECK(n.x->nondegenerate(1).size() == 4);
    auto ne = nerve(simplex_poset(2), 3);
    CHECK(ne->nondegenerate(1).size() == 3);
    for (int m = 0; m <= 3; ++m) CHECK(n.x->count[m] == nerve2_brute(*o.c, m));
    auto u = unit_map(simplex_poset(2), o, n, 3);
    CHECK(validate_smap(u).empty());
    CHECK(injective_in_degree(u, 1));
    CHECK_FALSE(surjective_in_degree(u, 1));
    auto rep = homology_iso(u, 2);
    CHECK(rep.iso);
}

TEST_CASE("Street nerve matches brute force on assorted 2-categories") {
    std::vector<TwoCatPtr> cats{z2_category(), share(suspension(*z2_category())), o_poset(pseudo_circle()).c,
                                o_poset(simplex_poset(3)).c};
    for (const auto& c : cats) {
        REQUIRE(validate_twocat(*c).empty());
        auto n = nerve2(c, 3);
        CHECK(validate_sset(*n.x).empty());
        for (int m = 0; m <= 3; ++m) CHECK(n.x->count[m] == nerve2_brute(*c, m));
    }
}

TEST_CASE("Street nerve of a poset is its nerve") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& p : posets_up_to_iso(n)) {
            auto c = share(poset_as_twocat(p));
            auto n2 = nerve2(c, 3);
            auto ne = nerve(p, 3);
            for (int m = 0; m <= 3; ++m) CHECK(n2.x->count[m] == ne->count[m]);
            CHECK(find_vertex_iso(n2.x, ne).has_value());
        }
}

TEST_CASE("truncations of O(E)") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& p : posets_up_to_iso(n)) {
            auto o = o_poset(p);
            auto b = tau_b(*o.c);
            CHECK(validate_twocat(b).empty());
            b.finalize();
            auto fr = is_free_on_graph(b);
            CHECK(fr.free);
            CHECK(fr.generators.size() == p.strict_pairs().size());
            auto ti = tau_i(*o.c);
            CHECK(validate_twocat(ti.cat).empty());
            CHECK(is_poset_category(ti.cat));
            CHECK(ti.cat.n1() == static_cast<int>(p.strict_pairs().size()) + n);
            CHECK(find_isomorphism(share(ti.cat), share(poset_as_twocat(p))).has_value());
        }
}

TEST_CASE("freeness detection") {
    auto z2 = z2_category();
    CHECK_FALSE(is_free_on_graph(*z2).free);
    auto d2 = share(poset_as_twocat(simplex_poset(2)));
    auto fr = is_free_on_graph(*d2);
    CHECK(fr.free);
    CHECK(fr.generators.size() == 2);
    auto sq = share(poset_as_twocat(make_poset({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}})));
    CHECK_FALSE(is_free_on_graph(*sq).free);
    CHECK(is_free_on_graph(poset_as_twocat(simplex_poset(1))).free);
    CHECK(is_free_on_graph(poset_as_twocat(antichain(3))).free);
}

TEST_CASE("functor enumeration counts monotone maps") {
    for (int n = 1; n <= 3; ++n)
        for (const auto& p : posets_up_to_iso(n))
            for (int k = 1; k <= 3; ++k)
                for (const auto& q : posets_up_to_iso(k)) {
                    auto a = share(poset_as_twocat(p));
                    auto b = share(poset_as_twocat(q));
                    FunctorSearch s;
                    s.a = a.get();
                    s.b = b.get();
                    Budget budget(1'000'000);
                    long count = 0;
                    enumerate_2functors(s, budget, [&](const auto& o, const auto& f, const auto& t) {
                        CHECK(validate_functor(TwoFunctor{a, b, o, f, t}).empty());
                        ++count;
                        return true;
                    });
                    CHECK(count == monotone_count(p, q));
                }
}

TEST_CASE("functors between O-constructions") {
    auto a = o_poset(simplex_poset(1));
    auto b = o_poset(simplex_poset(2));
    FunctorSearch s;
    s.a = a.c.get();
    s.b = b.c.get();
    Budget budget(1'000'000);
    long count = 0;
    enumerate_2functors(s, budget, [&](const auto&, const auto&, const auto&) {
        ++count;
        return true;
    });
    // each functor is determined by objects x <= y and a chain from x to y (or identity when x == y)
    long expect = 0;
    for (int x = 0; x < 3; ++x)
        for (int y = x; y < 3; ++y) expect += static_cast<long>(b.c->hom(x, y).size());
    CHECK(count == expect);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            MonotoneMap phi(simplex_poset(1), simplex_poset(2), {i, j});
            CHECK(validate_functor(o_map(phi, a, b)).empty());
        }
    auto counit = adjunction_counit(b, share(poset_as_twocat(simplex_poset(2))));
    CHECK(validate_functor(counit).empty());
}

TEST_CASE("isomorphism search") {
    auto a = o_poset(make_poset({"p", "q", "r"}, {{"p", "q"}, {"q", "r"}}));
    auto b = o_poset(simplex_poset(2));
    auto iso = find_isomorphism(a.c, b.c);
    REQUIRE(iso.has_value());
    CHECK(validate_functor(*iso).empty());
    CHECK(injective_functor(*iso));
    auto c = o_poset(antichain(3));
    CHECK_FALSE(find_isomorphism(c.c, b.c).has_value());
    auto sus = share(suspension(*z2_category()));
    CHECK(find_isomorphism(sus, sus).has_value());
}

TEST_CASE("interval product") {
    auto a = share(poset_as_twocat(simplex_poset(1)));
    auto ip = interval_product(a);
    CHECK(validate_twocat(*ip.c).empty());
    CHECK(ip.c->n0() == 4);
    CHECK(ip.c->n1() == 9);
    CHECK(validate_functor(ip.d0).empty());
    CHECK(validate_functor(ip.d1).empty());
    auto o = o_poset(simplex_poset(2));
    auto ip2 = interval_product(o.c);
    CHECK(validate_twocat(*ip2.c).empty());
    CHECK(ip2.c->n2() == 3 * o.c->n2());
    auto ip3 = interval_product(share(suspension(*z2_category())));
    CHECK(validate_twocat(*ip3.c).empty());
}

TEST_CASE("sieves of O(E)") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& p : posets_up_to_iso(n))
            for (unsigned m = 1; m + 1 < (1u << n); ++m) {
                std::vector<char> mask(n);
                std::vector<int> in;
                for (int x = 0; x < n; ++x)
                    if ((mask[x] = m >> x & 1u)) in.push_back(x);
                auto sub = subposet(p, in);
                auto inc = inclusion_map(sub, p);
                auto os = o_poset(sub), op = o_poset(p);
                auto f = o_map(inc, os, op);
                REQUIRE(validate_functor(f).empty());
                auto rep = sieve2_analyze(f);
                CHECK(rep.is_sieve == downward_closed(p, mask));
                CHECK(rep.is_cosieve == upward_closed(p, mask));
                if (rep.is_sieve) {
                    REQUIRE(rep.complement.has_value());
                    std::vector<int> out;
                    for (int x = 0; x < n; ++x)
                        if (!mask[x]) out.push_back(x);
                    CHECK(rep.complement->c->n1() == static_cast<int>(chains(subposet(p, out)).size()));
                    CHECK(validate_twocat(*rep.complement->c).empty());
                }
            }
    auto d1 = o_poset(simplex_poset(1));
    MonotoneMap collapse(simplex_poset(1), simplex_poset(0), {0, 0});
    CHECK_THROWS_AS(sieve2_analyze(o_map(collapse, d1, o_poset(simplex_poset(0)))), NotInjective);
}

TEST_CASE("bisimplicial nerve diagonal has the homology of the Street nerve") {
    std::vector<TwoCatPtr> cats{o_poset(simplex_poset(2)).c, share(suspension(*z2_category())),
                                o_poset(pseudo_circle()).c};
    for (const auto& c : cats) {
        auto b = bnerve(*c, 3, 3);
        CHECK(validate_bisset(b).empty());
        auto dg = diagonal(b);
        auto n = nerve2(c, 3);
        CHECK(homology(*dg, 2) == homology(*n.x, 2));
    }
    auto hs = homology(*nerve2(share(suspension(*z2_category())), 3).x, 2);
    CHECK(hs.line(2) == "H_2 = Z/2");
    CHECK(hs.line(1) == "H_1 = 0");
}

TEST_CASE("locally posetal construction") {
    auto base = share(poset_as_twocat(make_poset({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}})));
    // a parallel pair needs a non-poset base: use the free category on two parallel arrows
    TwoCat par;
    par.objects = {"u", "v"};
    par.one = {{0, 0, "1_u"}, {1, 1, "1_v"}, {0, 1, "f"}, {0, 1, "g"}};
    par.id1 = {0, 1};
    par.comp[pair_key(0, 0)] = 0;
    par.comp[pair_key(1, 1)] = 1;
    for (int f : {2, 3}) {
        par.comp[pair_key(f, 0)] = f;
        par.comp[pair_key(1, f)] = f;
    }
    auto lp = locally_posetal(par, {{2, 3}});
    lp.finalize();
    CHECK(validate_twocat(lp).empty());
    CHECK(lp.n2() == 5);
    CHECK_THROWS_AS(locally_posetal(par, {{2, 3}, {3, 2}}), ShapeError);
    CHECK(validate_twocat(*base).empty());
}

TEST_CASE("validators catch mutations") {
    auto o = o_poset(simplex_poset(2));
    TwoCat c = *o.c;
    int f = o.one_of({0, 1}), g = o.one_of({1, 2});
    c.comp[pair_key(g, f)] = o.one_of({1, 2});  // mistyped
    CHECK_FALSE(validate_twocat(c).empty());

    TwoCat d = *o.c;
    d.id1[0] = o.one_of({1});
    CHECK_FALSE(validate_twocat(d).empty());

    TwoCat s = suspension(*z2_category());
    s.vcomp[pair_key(2, 3)] = 2;  // e . s should be s
    s.finalize();
    CHECK_FALSE(validate_twocat(s).empty());

    auto id = identity_functor(o.c);
    CHECK(validate_functor(id).empty());
    id.one[f] = o.one_of({0});
    CHECK_FALSE(validate_functor(id).empty());
    id = identity_functor(o.c);
    std::swap(id.one[o.one_of({0, 2})], id.one[o.one_of({0, 1, 2})]);
    CHECK_FALSE(validate_functor(id).empty());
}
