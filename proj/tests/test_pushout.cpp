#include <algorithm>

#include "doctest.h"
#include "cat2/fixtures.hpp"
#include "cat2/homology.hpp"
#include "cat2/pushout.hpp"

using namespace cat2;

namespace {

struct OSieve {
    MonotoneMap inc;
    OPoset oe, of;
    TwoFunctor i;
};

OSieve o_sieve(const Poset& p, const std::vector<int>& down) {
    auto inc = inclusion_map(subposet(p, down), p);
    auto oe = o_poset(inc.source);
    auto of = o_poset(p);
    auto i = o_map(inc, oe, of);
    return OSieve{inc, oe, of, i};
}

}  // namespace

TEST_CASE("pushout along the identity recovers B") {
    auto s = o_sieve(simplex_poset(2), {0, 1});
    auto sq = pushout_sieve_2cat(s.i, identity_functor(s.oe.c));
    CHECK(validate_twocat(*sq.apex()).empty());
    CHECK(find_isomorphism(sq.apex(), s.of.c).has_value());
    CHECK(validate_functor(sq.v).empty());
    CHECK(validate_functor(sq.i2).empty());
}

TEST_CASE("pushout from the empty 2-category is a coproduct") {
    auto e = share(empty_twocat());
    auto b = o_poset(simplex_poset(1));
    auto a2 = o_poset(simplex_poset(2));
    TwoFunctor i{e, b.c, {}, {}, {}}, u{e, a2.c, {}, {}, {}};
    auto sq = pushout_sieve_2cat(i, u);
    const TwoCat& P = *sq.apex();
    CHECK(P.n0() == b.c->n0() + a2.c->n0());
    CHECK(P.n1() == b.c->n1() + a2.c->n1());
    CHECK(P.n2() == b.c->n2() + a2.c->n2());
}

TEST_CASE("pushout in the RDF2 counterexample") {
    auto ex = rdf2_counterexample();
    auto sq = pushout_sieve_2cat(ex.i, ex.u);
    const TwoCat& P = *sq.apex();
    REQUIRE(validate_twocat(P).empty());
    CHECK(validate_functor(sq.v).empty());
    int a = P.find_object("a"), t = P.find_object("t");
    const auto& hom = P.hom(a, t);
    std::vector<std::string> names;
    for (int f : hom) names.push_back(P.one[f].name);
    std::sort(names.begin(), names.end());
    MESSAGE(join(names, " "));
    CHECK(hom.size() == 3);
}

TEST_CASE("O-sieve pushout agrees with the general construction") {
    auto p = simplex_poset(2);
    auto s = o_sieve(p, {0, 1});
    auto a2 = o_poset(simplex_poset(1));
    Budget budget(1'000'000);
    int checked = 0;
    FunctorSearch q{s.oe.c.get(), a2.c.get(), {}, {}, {}, false};
    enumerate_2functors(q, budget, [&](const auto& o, const auto& f1, const auto& f2) {
        TwoFunctor u{s.oe.c, a2.c, o, f1, f2};
        auto gen = pushout_sieve_2cat(s.i, u);
        auto osq = pushout_o_sieve(s.inc, s.oe, s.of, u);
        CHECK(validate_functor(osq.v).empty());
        CHECK(find_isomorphism(gen.apex(), osq.apex()).has_value());
        ++checked;
        return true;
    });
    CHECK(checked > 1);
}

TEST_CASE("catalog of small 2-categories") {
    auto cat = small_twocats();
    MESSAGE(cat.size());
    for (auto& c : cat) CHECK(validate_twocat(*c).empty());
}

TEST_CASE("constructed squares are cocartesian") {
    auto ex = rdf2_counterexample();
    auto sq = pushout_sieve_2cat(ex.i, ex.u);
    CHECK(check_sieve_square(sq).empty());
    auto rep = verify_cocartesian(sq, {});
    MESSAGE(rep.probes);
    CHECK(rep.ok);

    auto s = o_sieve(simplex_poset(2), {0});
    auto o1 = o_poset(simplex_poset(1));
    FunctorSearch q{s.oe.c.get(), o1.c.get(), {}, {}, {}, false};
    Budget budget(1000);
    enumerate_2functors(q, budget, [&](const auto& o, const auto& f1, const auto& f2) {
        TwoFunctor u{s.oe.c, o1.c, o, f1, f2};
        auto gsq = pushout_sieve_2cat(s.i, u);
        auto osq = pushout_o_sieve(s.inc, s.oe, s.of, u);
        CHECK(check_sieve_square(gsq).empty());
        CHECK(check_sieve_square(osq).empty());
        CHECK(verify_cocartesian(gsq, {}).ok);
        CHECK(verify_cocartesian(osq, {}).ok);
        return true;
    });
}

namespace {

TwoFunctor constant_functor(const TwoCatPtr& src, const TwoCatPtr& pt) {
    return TwoFunctor{src, pt, std::vector<int>(src->n0(), 0), std::vector<int>(src->n1(), 0), std::vector<int>(src->n2(), 0)};
}

}  // namespace

TEST_CASE("non-universal squares are rejected") {
    auto ex = rdf2_counterexample();
    auto sq = pushout_sieve_2cat(ex.i, ex.u);

    // apex with a disjoint point
    auto e = share(empty_twocat());
    auto pt = share(point_twocat());
    auto plus = pushout_sieve_2cat(TwoFunctor{e, pt, {}, {}, {}}, TwoFunctor{e, sq.apex(), {}, {}, {}});
    CocartSquare bigger{sq.i, sq.u, compose(plus.i2, sq.i2), compose(plus.i2, sq.v), {}, {}, {}, {}, {}, {}, {}, {}, {}};
    auto rep = verify_cocartesian(bigger, {});
    CHECK_FALSE(rep.ok);
    CHECK_FALSE(rep.failures.empty());

    // everything collapsed to a point
    CocartSquare collapsed{sq.i, sq.u, constant_functor(ex.a2, pt), constant_functor(ex.b, pt), {}, {}, {}, {}, {}, {}, {}, {}, {}};
    CHECK_FALSE(verify_cocartesian(collapsed, {}).ok);

    // a cocone that does not commute
    Cocone bad{sq.i2, constant_functor(ex.b, sq.apex())};
    auto r2 = verify_cocartesian(sq, {bad}, CocartesianOptions{false, {}, 1'000'000});
    CHECK_FALSE(r2.ok);
}

TEST_CASE("retract structures extend along the counterexample square") {
    auto ex = rdf2_counterexample();
    auto sq = pushout_sieve_2cat(ex.i, ex.u);
    const TwoCat& P = *sq.apex();
    int a = P.find_object("a"), t = P.find_object("t");
    int pk = -1, ql = -1;
    for (int f : P.hom(a, t)) {
        if (P.one[f].name == "[p|k]") pk = f;
        if (P.one[f].name == "[q|l]") ql = f;
    }
    REQUIRE(pk >= 0);
    REQUIRE(ql >= 0);
    for (int s : P.hom(a, t)) {
        bool to_pk = false, to_ql = false;
        for (int c : P.out2[s]) {
            to_pk |= P.two[c].tgt == pk;
            to_ql |= P.two[c].tgt == ql;
        }
        CHECK_FALSE((to_pk && to_ql));
    }

    auto r = retractions(ex.i).at(0);
    int extended = 0;
    for (auto& h : enumerate_relative_homotopies(ex.i, r)) {
        RetractStructure s{ex.i, r, h};
        auto rep = check_retract_structure(s);
        auto pins = compatibility_pins(sq, s);
        auto rp = mediate(sq, identity_functor(ex.a2), compose(ex.u, r));
        auto found = enumerate_relative_homotopies(sq.i2, TwoFunctor{sq.apex(), ex.a2, rp.obj, rp.one, rp.two}, 10'000'000, pins);
        if (!rep.rdf2.empty()) {
            CHECK(found.empty());
            CHECK_THROWS_AS(extend_retract(sq, s), PreconditionError);
            continue;
        }
        ++extended;
        auto t2 = extend_retract(sq, s);
        CHECK(check_retract_structure(t2).ok());
        CHECK(extension_compatibility(sq, s, t2).empty());
        int rdf2 = 0;
        for (auto& g : found)
            if (check_retract_structure(RetractStructure{sq.i2, t2.r, g}).rdf2.empty()) {
                ++rdf2;
                CHECK(same_oplax(g.h, t2.h.h));
            }
        CHECK(rdf2 == 1);
        int compatible = 0;
        for (auto& r2 : retractions(sq.i2))
            compatible += same_functor(compose(r2, sq.v), compose(ex.u, r));
        CHECK(compatible == 1);
    }
    CHECK(extended == 1);
}

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

std::vector<TwoFunctor> functors(const TwoCatPtr& a, const TwoCatPtr& b, std::size_t cap) {
    std::vector<TwoFunctor> out;
    Budget budget(10'000'000);
    FunctorSearch q{a.get(), b.get(), {}, {}, {}, false};
    enumerate_2functors(q, budget, [&](const auto& o, const auto& f1, const auto& f2) {
        out.push_back(TwoFunctor{a, b, o, f1, f2});
        return out.size() < cap;
    });
    return out;
}

}  // namespace

TEST_CASE("poset retracts extend uniquely along pushouts") {
    std::vector<TwoCatPtr> targets = {o_poset(simplex_poset(1)).c, o_poset(antichain(2)).c};
    for (auto& nc : sample_twocats())
        if (nc.c->n1() <= 6) targets.push_back(nc.c);
    int checked = 0;
    for (int n = 2; n <= 3; ++n)
        for (const auto& p : posets_up_to_iso(n))
            for (auto& [i, r] : admissible_sieves(p)) {
                if (i.source.size() == p.size()) continue;
                auto pr = poset_sieve_retract(i, r);
                for (auto& target : targets)
                    for (auto& u : functors(pr.a.c, target, 3)) {
                        auto sq = pushout_sieve_2cat(pr.s.i, u);
                        CHECK(check_sieve_square(sq).empty());
                        auto t = extend_retract(sq, pr.s);
                        CHECK(check_retract_structure(t).ok());
                        CHECK(extension_compatibility(sq, pr.s, t).empty());
                        auto found = enumerate_relative_homotopies(sq.i2, t.r, 10'000'000, compatibility_pins(sq, pr.s));
                        int rdf2 = 0;
                        for (auto& g : found) rdf2 += check_retract_structure(RetractStructure{sq.i2, t.r, g}).rdf2.empty();
                        CHECK(rdf2 == 1);
                        ++checked;
                    }
            }
    MESSAGE(checked);
    CHECK(checked > 20);
}

TEST_CASE("pushouts of categories") {
    auto a = share(make_category({"a"}, {}, {}));
    auto b = share(make_category({"a", "y"}, {{"t", "a", "y"}}, {}));
    auto a2 = share(make_category({"a0", "a1"}, {{"m", "a0", "a1"}, {"n", "a0", "a1"}}, {}));
    TwoFunctor i{a, b, {0}, {b->find_one("1_a")}, {b->id2[b->find_one("1_a")]}};
    for (const char* target : {"a0", "a1"}) {
        int x = a2->find_object(target);
        TwoFunctor u{a, a2, {x}, {a2->id1[x]}, {a2->id2[a2->id1[x]]}};
        auto sq = pushout_sieve_cat(i, u);
        const TwoCat& P = *sq.apex();
        CHECK(validate_twocat(P).empty());
        CHECK(check_sieve_square(sq).empty());
        CHECK(verify_cocartesian(sq, {}).ok);
        int y = P.find_object("y");
        // mixed homs: arrows of A' into u(a), one class each
        CHECK(P.hom(a2->find_object("a0"), y).size() == a2->hom(a2->find_object("a0"), x).size());
        CHECK(P.hom(a2->find_object("a1"), y).size() == a2->hom(a2->find_object("a1"), x).size());
    }
    auto o = o_poset(simplex_poset(1));
    TwoFunctor u{a, o.c, {0}, {o.c->id1[0]}, {o.c->id2[o.c->id1[0]]}};
    CHECK_THROWS_AS(pushout_sieve_cat(TwoFunctor{a, b, {1}, {b->id1[1]}, {b->id2[b->id1[1]]}}, u), NotASieve);
    CHECK_THROWS_AS(pushout_sieve_cat(i, identity_functor(o.c)), ShapeError);
}

TEST_CASE("O-sieve pushout examples") {
    auto d1 = simplex_poset(1);
    // E = F: the apex is the target of u
    {
        auto s = o_sieve(d1, {0, 1});
        auto a2 = sample_twocats().front().c;
        Budget budget(100000);
        FunctorSearch q{s.oe.c.get(), a2.get(), {}, {}, {}, false};
        enumerate_2functors(q, budget, [&](const auto& o, const auto& f1, const auto& f2) {
            auto sq = pushout_o_sieve(s.inc, s.oe, s.of, TwoFunctor{s.oe.c, a2, o, f1, f2});
            CHECK(sq.apex()->n0() == a2->n0());
            CHECK(sq.apex()->n1() == a2->n1());
            CHECK(sq.apex()->n2() == a2->n2());
            return false;
        });
    }
    // E = {0} in Delta_1 along the identity
    auto s = o_sieve(d1, {0});
    auto sq = pushout_o_sieve(s.inc, s.oe, s.of, identity_functor(s.oe.c));
    CHECK(find_isomorphism(sq.apex(), s.of.c).has_value());
    // v({0, 1}) = ({0, 1}, 0, u({0})) for any u
    auto target = sample_twocats().front().c;
    TwoFunctor u{s.oe.c, target, {0}, {target->id1[0]}, {target->id2[target->id1[0]]}};
    auto sq2 = pushout_o_sieve(s.inc, s.oe, s.of, u);
    int v01 = sq2.v.one[s.of.one_of({0, 1})];
    REQUIRE(sq2.origin1[v01] == 2);
    CHECK(sq2.rep1[v01].second == s.of.one_of({0, 1}));
    CHECK(sq2.rep1[v01].a == 0);
    CHECK(sq2.rep1[v01].first == u.one[s.oe.one_of({0})]);
    CHECK(check_sieve_square(sq2).empty());
    CHECK_THROWS_AS(pushout_o_sieve(inclusion_map(subposet(d1, {1}), d1), o_poset(subposet(d1, {1})), s.of,
                                    identity_functor(o_poset(subposet(d1, {1})).c)),
                    NotASieve);
}

TEST_CASE("extension along the identity returns the input structure") {
    auto p = simplex_poset(2);
    auto inc = inclusion_map(subposet(p, {0}), p);
    auto pr = poset_sieve_retract(inc, *right_adjoint_retraction(inc));
    auto sq = pushout_sieve_2cat(pr.s.i, identity_functor(pr.a.c));
    auto t = extend_retract(sq, pr.s);
    auto iso = find_isomorphism(sq.apex(), pr.b.c);
    REQUIRE(iso.has_value());
    CHECK(same_functor(compose(t.r, sq.v), pr.s.r));
    CHECK(extension_compatibility(sq, pr.s, t).empty());
    // v is an isomorphism here, so compatibility pins every free datum
    CHECK(enumerate_relative_homotopies(sq.i2, t.r, 1'000'000, compatibility_pins(sq, pr.s)).size() == 1);
}

TEST_CASE("corrupted squares are rejected") {
    auto ex = rdf2_counterexample();
    auto sq = pushout_sieve_2cat(ex.i, ex.u);
    TwoCat bad = *sq.apex();
    // send one non-trivial composite to a different parallel 1-cell
    bool done = false;
    for (int f = 0; f < bad.n1() && !done; ++f)
        for (int g : bad.out1[bad.one[f].tgt]) {
            if (f == bad.id1[bad.one[f].src] || g == bad.id1[bad.one[g].src]) continue;
            int gf = bad.compose(g, f);
            for (int h : bad.hom(bad.one[f].src, bad.one[g].tgt))
                if (h != gf) {
                    bad.comp[pair_key(g, f)] = h;
                    done = true;
                    break;
                }
            if (done) break;
        }
    REQUIRE(done);
    auto badp = share(bad);
    CocartSquare corrupted = sq;
    corrupted.i2.tgt = badp;
    corrupted.v.tgt = badp;
    CHECK_FALSE(verify_cocartesian(corrupted, {}).ok);
}

TEST_CASE("normalization budget is enforced") {
    auto ex = rdf2_counterexample();
    CHECK_THROWS_AS(pushout_sieve_2cat(ex.i, ex.u, PushoutLimits{8, 2}), NormalizationBudgetExceeded);
}

TEST_CASE("pushed-out poset sieves stay homology equivalences") {
    auto p = simplex_poset(2);
    auto inc = inclusion_map(subposet(p, {0}), p);
    auto pr = poset_sieve_retract(inc, *right_adjoint_retraction(inc));
    for (auto& nc : sample_twocats()) {
        Budget budget(100000);
        FunctorSearch q{pr.a.c.get(), nc.c.get(), {}, {}, {}, false};
        enumerate_2functors(q, budget, [&](const auto& o, const auto& f1, const auto& f2) {
            auto sq = pushout_sieve_2cat(pr.s.i, TwoFunctor{pr.a.c, nc.c, o, f1, f2});
            auto na = nerve2(sq.i2.src, 3), nb = nerve2(sq.i2.tgt, 3);
            CHECK(homology_iso(nerve2_map(sq.i2, na, nb), 2).iso);
            return false;
        });
    }
}

TEST_CASE("squares of cosieves") {
    auto vee = make_poset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
    std::vector<TwoCatPtr> xs = {o_poset(antichain(3)).c, o_poset(vee).c, o_poset(pseudo_circle()).c,
                                 rdf2_counterexample().a2};
    for (auto& c : small_twocats())
        if (c->n0() == 2) xs.push_back(c);
    int squares = 0;
    for (auto& x : xs) {
        int n = x->n0();
        auto sieve = [&](unsigned m) {
            std::vector<char> mask(n);
            for (int o = 0; o < n; ++o) mask[o] = m >> o & 1u;
            for (int f = 0; f < x->n1(); ++f)
                if (mask[x->one[f].tgt] && !mask[x->one[f].src]) return std::optional<std::vector<char>>{};
            return std::optional<std::vector<char>>{mask};
        };
        for (unsigned m1 = 1; m1 < (1u << n); ++m1)
            for (unsigned m2 = 1; m2 < (1u << n); ++m2) {
                if (m1 & m2) continue;
                auto u1 = sieve(m1), u2 = sieve(m2);
                if (!u1 || !u2) continue;
                auto sq = cosieve_square(x, *u1, *u2);
                CHECK(validate_functor(sq.u).empty());
                CHECK(same_functor(compose(sq.v, sq.i), compose(sq.i2, sq.u)));
                CHECK(verify_cocartesian(sq, {}).ok);
                int cap = 3;
                auto n12 = nerve2(sq.i.src, cap), n1 = nerve2(sq.i.tgt, cap), n2 = nerve2(sq.u.tgt, cap), nx = nerve2(x, cap);
                auto po = sset_pushout(nerve2_map(sq.i, n12, n1), nerve2_map(sq.u, n12, n2));
                auto cmp = pushout_induced(po, nerve2_map(sq.v, n1, nx), nerve2_map(sq.i2, n2, nx));
                for (int d = 0; d <= cap; ++d) {
                    CHECK(injective_in_degree(cmp, d));
                    CHECK(surjective_in_degree(cmp, d));
                }
                ++squares;
            }
    }
    MESSAGE(squares);
    CHECK(squares > 40);
}
