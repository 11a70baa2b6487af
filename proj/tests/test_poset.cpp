#include <algorithm>
#include <random>

#include "doctest.h"
#include "cat2/poset.hpp"

using namespace cat2;

namespace {

// Oracle: chains of a poset by filtering all subsets.
int count_chains_brute(const Poset& p) {
    int n = p.size(), total = 0;
    for (unsigned m = 1; m < (1u << n); ++m) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b)
                if ((m >> a & 1u) && (m >> b & 1u) && !p.comparable(a, b)) ok = false;
        total += ok;
    }
    return total;
}

// Oracle: labeled posets on n points by filtering all relations.
long labeled_posets_brute(int n) {
    int pairs = n * (n - 1);
    long total = 0;
    for (long m = 0; m < (1L << pairs); ++m) {
        std::vector<char> r(n * n, 0);
        for (int a = 0, k = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == b) {
                    r[a * n + b] = 1;
                    continue;
                }
                r[a * n + b] = (m >> k++) & 1;
            }
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b) {
                if (a != b && r[a * n + b] && r[b * n + a]) ok = false;
                for (int c = 0; c < n && ok; ++c)
                    if (r[a * n + b] && r[b * n + c] && !r[a * n + c]) ok = false;
            }
        total += ok;
    }
    return total;
}

long automorphisms(const Poset& p) {
    int n = p.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    long count = 0;
    do {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            for (int b = 0; b < n && ok; ++b) ok = p.leq(a, b) == p.leq(perm[a], perm[b]);
        count += ok;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST_CASE("make_poset closes and rejects cycles") {
    auto one = make_poset({"a"}, {});
    CHECK(one.size() == 1);
    auto chain = make_poset({"0", "1", "2"}, {{"0", "1"}, {"1", "2"}});
    CHECK(chain.leq(0, 2));
    CHECK_FALSE(chain.leq(2, 0));
    CHECK_THROWS_AS(make_poset({"a", "b"}, {{"a", "b"}, {"b", "a"}}), CycleError);
}

TEST_CASE("xi of small simplices") {
    auto x1 = xi(simplex_poset(1));
    REQUIRE(x1.size() == 3);
    CHECK(x1.leq(x1.index("[0]"), x1.index("[0,1]")));
    CHECK(x1.leq(x1.index("[1]"), x1.index("[0,1]")));
    CHECK_FALSE(x1.comparable(x1.index("[0]"), x1.index("[1]")));
    for (int m = 0; m <= 4; ++m) {
        auto p = simplex_poset(m);
        CHECK(xi(p).size() == count_chains_brute(p));
        CHECK(xi(p).size() == (1 << (m + 1)) - 1);
    }
    CHECK(xi(make_poset({"a"}, {})).size() == 1);
}

TEST_CASE("xi_map on face and collapse") {
    auto d = MonotoneMap(simplex_poset(0), simplex_poset(1), {1});
    auto xd = xi_map(d);
    CHECK(xd.target.id(xd(0)) == "[1]");
    auto c = MonotoneMap(simplex_poset(1), simplex_poset(0), {0, 0});
    auto xc = xi_map(c);
    for (int s = 0; s < 3; ++s) CHECK(xc.target.id(xc(s)) == "[0]");
    auto id = xi_map(identity_map(simplex_poset(2)));
    CHECK(same_map(id, identity_map(xi(simplex_poset(2)))));
}

TEST_CASE("last_vertex is natural") {
    auto lv = last_vertex(simplex_poset(1));
    CHECK(lv(lv.source.index("[0]")) == 0);
    CHECK(lv(lv.source.index("[1]")) == 1);
    CHECK(lv(lv.source.index("[0,1]")) == 1);
    auto lv2 = last_vertex(simplex_poset(2));
    CHECK(lv2(lv2.source.index("[0,1,2]")) == 2);
    std::mt19937 rng(7);
    for (int trial = 0; trial < 30; ++trial) {
        int a = 1 + static_cast<int>(rng() % 3), b = 1 + static_cast<int>(rng() % 3);
        std::vector<int> m(a + 1);
        for (auto& v : m) v = static_cast<int>(rng() % (b + 1));
        std::sort(m.begin(), m.end());
        MonotoneMap phi(simplex_poset(a), simplex_poset(b), m);
        CHECK(same_map(compose(last_vertex(phi.target), xi_map(phi)), compose(phi, last_vertex(phi.source))));
        std::vector<int> m2(b + 1);
        for (auto& v : m2) v = static_cast<int>(rng() % 3);
        std::sort(m2.begin(), m2.end());
        MonotoneMap psi(simplex_poset(b), simplex_poset(2), m2);
        CHECK(same_map(xi_map(compose(psi, phi)), compose(xi_map(psi), xi_map(phi))));
    }
}

TEST_CASE("named posets") {
    CHECK(named_poset(NamedPoset::partial_phi, 2).size() == 6);
    CHECK(named_poset(NamedPoset::phi_horn, 2, 1).size() == 5);
    CHECK(named_poset(NamedPoset::partial_phi, 0).size() == 0);
    CHECK_THROWS_AS(named_poset(NamedPoset::phi_horn, 2, 3), IndexError);
    CHECK_THROWS_AS(named_poset(NamedPoset::phi_horn, 0, 0), IndexError);
}

TEST_CASE("analyze_sieve examples") {
    auto d1 = simplex_poset(1);
    auto pt = simplex_poset(0);
    MonotoneMap i0(pt, d1, {0}), i1(pt, d1, {1});
    auto rep = analyze_sieve(i0, MonotoneMap(d1, pt, {0, 0}));
    CHECK(rep.is_sieve);
    CHECK(*rep.retraction_is_right_adjoint);
    auto rep1 = analyze_sieve(i1);
    CHECK(rep1.is_cosieve);
    CHECK_FALSE(rep1.is_sieve);
    auto ac = antichain(2);
    MonotoneMap ia(pt, ac, {0});
    auto rep2 = analyze_sieve(ia, MonotoneMap(ac, pt, {0, 0}));
    CHECK(rep2.is_sieve);
    CHECK_FALSE(*rep2.retraction_is_right_adjoint);
}

TEST_CASE("sieve iff complement is a cosieve") {
    for (int n = 1; n <= 4; ++n)
        for (const auto& p : posets_up_to_iso(n))
            for (unsigned m = 0; m < (1u << n); ++m) {
                std::vector<int> in, out;
                for (int x = 0; x < n; ++x) (m >> x & 1u ? in : out).push_back(x);
                auto sub = subposet(p, in), co = subposet(p, out);
                bool s = analyze_sieve(inclusion_map(sub, p)).is_sieve;
                bool c = analyze_sieve(inclusion_map(co, p)).is_cosieve;
                CHECK(s == c);
            }
}

TEST_CASE("factor_xi_sieve") {
    auto d1 = simplex_poset(1);
    MonotoneMap i(simplex_poset(0), d1, {0});
    auto f = factor_xi_sieve(i);
    REQUIRE(f.k.target.size() == 2);
    CHECK(f.k.target.find("[0]") >= 0);
    CHECK(f.k.target.find("[0,1]") >= 0);
    for (int s = 0; s < 2; ++s) CHECK(f.r.target.id(f.r(s)) == "[0]");
    auto id = factor_xi_sieve(identity_map(d1));
    CHECK(id.k.target.size() == 3);
    MonotoneMap e(Poset(), d1, {});
    CHECK(factor_xi_sieve(e).k.target.size() == 0);
    CHECK_THROWS_AS(factor_xi_sieve(MonotoneMap(simplex_poset(0), d1, {1})), NotASieve);

    for (int n = 1; n <= 4; ++n)
        for (const auto& p : posets_up_to_iso(n))
            for (unsigned m = 1; m < (1u << n); ++m) {
                std::vector<char> mask(n);
                std::vector<int> in;
                for (int x = 0; x < n; ++x)
                    if ((mask[x] = m >> x & 1u)) in.push_back(x);
                if (!downward_closed(p, mask)) continue;
                auto inc = inclusion_map(subposet(p, in), p);
                auto fx = factor_xi_sieve(inc);
                CHECK(analyze_sieve(fx.k).is_sieve);
                CHECK(analyze_sieve(fx.j).is_cosieve);
                CHECK(same_map(compose(fx.r, fx.k), identity_map(fx.k.source)));
                CHECK(*analyze_sieve(fx.k, fx.r).retraction_is_right_adjoint);
                CHECK(same_map(compose(fx.j, fx.k), xi_map(inc)));
            }
}

TEST_CASE("poset enumeration matches labeled counts") {
    for (int n = 0; n <= 4; ++n) {
        long labeled = 0;
        for (const auto& p : posets_up_to_iso(n)) labeled += factorial(n) / automorphisms(p);
        CHECK(labeled == labeled_posets_brute(n));
    }
}
