#include <random>
#include <set>

#include "doctest.h"
#include "cat2/homology.hpp"
#include "cat2/sset.hpp"

using namespace cat2;

namespace {

int nondeg(const SSetPtr& x, int n) { return static_cast<int>(x->nondegenerate(n).size()); }

// Oracle: strictly increasing chains of length n+1 in a poset.
int strict_chains(const Poset& p, int n) {
    int count = 0;
    std::vector<int> cur;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == n + 1) {
            ++count;
            return;
        }
        for (int x = 0; x < p.size(); ++x)
            if (cur.empty() || p.lt(cur.back(), x)) {
                cur.push_back(x);
                rec();
                cur.pop_back();
            }
    };
    rec();
    return count;
}

// Oracle: monotone maps between posets by filtering all functions.
long monotone_maps(const Poset& a, const Poset& b) {
    long total = 0;
    std::vector<int> f(a.size(), 0);
    for (;;) {
        bool ok = true;
        for (int x = 0; x < a.size() && ok; ++x)
            for (int y = 0; y < a.size() && ok; ++y)
                if (a.leq(x, y) && !b.leq(f[x], f[y])) ok = false;
        total += ok;
        int k = 0;
        while (k < a.size() && ++f[k] == b.size()) f[k++] = 0;
        if (k == a.size()) break;
    }
    return total;
}

HomologyGroup z(long r, std::vector<std::string> t = {}) { return {r, std::move(t)}; }

// Oracle: invariant factors from gcds of k x k minors (tiny matrices only).
long det(std::vector<std::vector<long>> m) {
    int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    long total = 0;
    for (int c = 0; c < n; ++c) {
        std::vector<std::vector<long>> sub;
        for (int r = 1; r < n; ++r) {
            std::vector<long> row;
            for (int k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            sub.push_back(row);
        }
        total += (c % 2 ? -1 : 1) * m[0][c] * det(sub);
    }
    return total;
}

std::vector<long> minor_invariants(const std::vector<std::vector<long>>& m, int rows, int cols) {
    std::vector<long> dk{1};
    for (int k = 1; k <= std::min(rows, cols); ++k) {
        long g = 0;
        for (unsigned rs = 0; rs < (1u << rows); ++rs) {
            if (__builtin_popcount(rs) != k) continue;
            for (unsigned cs = 0; cs < (1u << cols); ++cs) {
                if (__builtin_popcount(cs) != k) continue;
                std::vector<std::vector<long>> sub;
                for (int r = 0; r < rows; ++r) {
                    if (!(rs >> r & 1u)) continue;
                    std::vector<long> row;
                    for (int c = 0; c < cols; ++c)
                        if (cs >> c & 1u) row.push_back(m[r][c]);
                    sub.push_back(row);
                }
                g = std::gcd(g, std::abs(det(sub)));
            }
        }
        if (g == 0) break;
        dk.push_back(g);
    }
    std::vector<long> out;
    for (std::size_t k = 1; k < dk.size(); ++k) out.push_back(dk[k] / dk[k - 1]);
    return out;
}

}  // namespace

TEST_CASE("nerves") {
    auto n1 = nerve(simplex_poset(1), 2);
    CHECK(n1->count == std::vector<int>{2, 3, 4});
    CHECK(nondeg(n1, 1) == 1);
    auto pt = nerve(simplex_poset(0), 3);
    CHECK(pt->count == std::vector<int>{1, 1, 1, 1});
    auto pc = nerve(pseudo_circle(), 2);
    CHECK(pc->count[0] == 4);
    CHECK(nondeg(pc, 1) == 4);
    CHECK(nondeg(pc, 2) == 0);
    for (int n = 1; n <= 4; ++n)
        for (const auto& p : posets_up_to_iso(n)) {
            auto x = nerve(p, 3);
            CHECK(validate_sset(*x).empty());
            for (int d = 0; d <= 3; ++d) CHECK(nondeg(x, d) == strict_chains(p, d));
        }
}

TEST_CASE("standard simplices, boundaries, horns") {
    auto b1 = standard(StandardKind::boundary, 1, std::nullopt, 2);
    CHECK(b1.x->count[0] == 2);
    CHECK(nondeg(b1.x, 1) == 0);
    auto h = standard(StandardKind::horn, 2, 1, 3);
    CHECK(h.x->count[0] == 3);
    CHECK(nondeg(h.x, 1) == 2);
    CHECK(nondeg(h.x, 2) == 0);
    auto b0 = standard(StandardKind::boundary, 0, std::nullopt, 2);
    CHECK(b0.x->count == std::vector<int>{0, 0, 0});
    CHECK_THROWS_AS(standard(StandardKind::horn, 2, 3, 2), IndexError);
    for (int m = 0; m <= 3; ++m) {
        auto b = standard(StandardKind::boundary, m, std::nullopt, 4);
        CHECK(validate_sset(*b.x).empty());
        CHECK(validate_smap(b.inclusion).empty());
        CHECK(nondeg(b.x, m) == 0);
        for (int k = 0; m > 0 && k <= m; ++k) {
            auto hk = standard(StandardKind::horn, m, k, 4);
            CHECK(validate_sset(*hk.x).empty());
            // every face but the k-th, so m nondegenerate (m-1)-cells
            CHECK(nondeg(hk.x, m - 1) == m);
        }
    }
}

TEST_CASE("sd of small simplicial sets") {
    auto d1 = nerve(simplex_poset(1), 3);
    auto s1 = sd(d1, 3);
    CHECK(validate_sset(*s1.sd).empty());
    CHECK(validate_smap(s1.alpha).empty());
    CHECK(s1.sd->count[0] == 3);
    CHECK(nondeg(s1.sd, 1) == 2);
    CHECK(find_vertex_iso(s1.sd, nerve(xi(simplex_poset(1)), 3)).has_value());

    auto s0 = sd(nerve(simplex_poset(0), 2), 2);
    CHECK(s0.sd->count == std::vector<int>{1, 1, 1});

    auto ss = sd(s1.sd, 3);
    CHECK(ss.sd->count[0] == 5);
    CHECK(nondeg(ss.sd, 1) == 4);
    auto x2 = xi(xi(simplex_poset(1)));
    CHECK(ss.sd->count[0] == strict_chains(x2, 0));
    CHECK(nondeg(ss.sd, 1) == strict_chains(x2, 1));

    for (int m = 0; m <= 3; ++m) {
        auto s = sd(nerve(simplex_poset(m), 4), 4);
        auto xm = xi(simplex_poset(m));
        for (int d = 0; d <= 4; ++d) CHECK(nondeg(s.sd, d) == strict_chains(xm, d));
    }
    // subdivided triangle boundary is a hexagon
    auto b2 = standard(StandardKind::boundary, 2, std::nullopt, 3);
    auto sb = sd(b2.x, 3);
    CHECK(sb.sd->count[0] == 6);
    CHECK(nondeg(sb.sd, 1) == 6);
    CHECK_THROWS_AS(sd(nerve(simplex_poset(3), 3), 2), CapError);
}

TEST_CASE("sd is functorial on inclusions") {
    auto h = standard(StandardKind::horn, 2, 0, 3);
    auto a = sd(h.x, 3);
    auto b = sd(h.inclusion.tgt, 3);
    auto f = sd_map(h.inclusion, a, b);
    CHECK(validate_smap(f).empty());
    for (int n = 0; n <= 3; ++n) CHECK(injective_in_degree(f, n));
    // naturality of alpha
    CHECK(same_smap(compose(b.alpha, f), compose(h.inclusion, a.alpha)));
}

TEST_CASE("ex of small simplicial sets") {
    auto e0 = ex(nerve(simplex_poset(0), 2), 2);
    CHECK(e0.ex->count == std::vector<int>{1, 1, 1});
    auto d1 = nerve(simplex_poset(1), 2);
    auto e1 = ex(d1, 2);
    CHECK(e1.ex->count[0] == 2);
    CHECK(e1.ex->count[1] == 5);
    for (int m = 0; m <= 2; ++m) CHECK(e1.ex->count[m] == monotone_maps(xi(simplex_poset(m)), simplex_poset(1)));
    CHECK(validate_sset(*e1.ex).empty());
    CHECK(validate_smap(e1.beta).empty());
    for (int n = 0; n <= 2; ++n) {
        std::set<int> img;
        for (int c : d1->nondegenerate(n)) img.insert(e1.beta(n, c));
        CHECK(img.size() == d1->nondegenerate(n).size());
    }
    auto pc = nerve(pseudo_circle(), 2);
    auto epc = ex(pc, 2);
    for (int m = 0; m <= 2; ++m) CHECK(epc.ex->count[m] == monotone_maps(xi(simplex_poset(m)), pseudo_circle()));
    CHECK(validate_sset(*epc.ex).empty());
    CHECK_THROWS_AS(ex(d1, 2, 3), BudgetError);
}

TEST_CASE("homology of basic shapes") {
    auto pt = nerve(simplex_poset(0), 4);
    auto hp = homology(*pt, 3);
    CHECK(hp.groups == std::vector<HomologyGroup>{z(1), z(0), z(0), z(0)});
    auto pc = homology(*nerve(pseudo_circle(), 3), 2);
    CHECK(pc.groups == std::vector<HomologyGroup>{z(1), z(1), z(0)});
    auto b2 = homology(*standard(StandardKind::boundary, 2, std::nullopt, 3).x, 2);
    CHECK(b2.groups == std::vector<HomologyGroup>{z(1), z(1), z(0)});
    auto b3 = homology(*standard(StandardKind::boundary, 3, std::nullopt, 4).x, 3);
    CHECK(b3.groups == std::vector<HomologyGroup>{z(1), z(0), z(1), z(0)});
    CHECK(b3.line(2) == "H_2 = Z");
    CHECK(b3.line(1) == "H_1 = 0");
    CHECK_THROWS_AS(homology(*pt, 4), CapError);

    ChainComplex tor;
    tor.dims = {1, 1, 0};
    tor.rows = {{{}}, {{{0, 2}}}, {}};
    auto ht = homology(tor, 1);
    CHECK(ht.groups[0] == z(0, {"2"}));
    CHECK(ht.line(0) == "H_0 = Z/2");
}

TEST_CASE("invariant factors agree with the minors oracle") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 4), cols = 1 + static_cast<int>(rng() % 4);
        std::vector<std::vector<long>> m(rows, std::vector<long>(cols));
        for (auto& r : m)
            for (auto& v : r) v = static_cast<long>(rng() % 9) - 4;
        ChainComplex c;
        c.dims = {cols, rows, 0};
        c.rows.resize(3);
        c.rows[0].resize(cols);
        for (int r = 0; r < rows; ++r) {
            std::vector<std::pair<int, long>> row;
            for (int k = 0; k < cols; ++k)
                if (m[r][k]) row.emplace_back(k, m[r][k]);
            c.rows[1].push_back(row);
        }
        auto h = homology(c, 1);
        auto inv = minor_invariants(m, rows, cols);
        std::vector<std::string> tors;
        for (long d : inv)
            if (d > 1) tors.push_back(std::to_string(d));
        CHECK(h.groups[0].torsion == tors);
        CHECK(h.groups[0].rank == cols - static_cast<long>(inv.size()));
    }
}

TEST_CASE("homology isomorphisms") {
    auto d2 = nerve(simplex_poset(2), 3);
    auto s = sd(d2, 3);
    CHECK(homology_iso(s.alpha, 2).iso);
    auto b = standard(StandardKind::boundary, 1, std::nullopt, 2);
    CHECK_FALSE(homology_iso(b.inclusion, 1).iso);
    auto sb = sd(standard(StandardKind::boundary, 2, std::nullopt, 3).x, 3);
    CHECK(homology_iso(sb.alpha, 2).iso);
}

TEST_CASE("lifting properties") {
    auto pt = nerve(simplex_poset(0), 3);
    std::vector<SMap> horns;
    for (int m = 1; m <= 2; ++m)
        for (int k = 0; k <= m; ++k) horns.push_back(standard(StandardKind::horn, m, k, 3).inclusion);
    CHECK(has_rlp(identity_smap(pt), horns));

    auto d1 = nerve(simplex_poset(1), 3);
    SMap collapse{d1, pt, {}};
    for (int n = 0; n <= 3; ++n) collapse.map.push_back(std::vector<int>(d1->count[n], 0));
    CHECK(has_rlp(collapse, {standard(StandardKind::horn, 2, 1, 3).inclusion}));

    auto b1 = standard(StandardKind::boundary, 1, std::nullopt, 3);
    auto empty_in_point = standard(StandardKind::boundary, 0, std::nullopt, 3).inclusion;
    CHECK(has_rlp(b1.inclusion, {empty_in_point}));
    std::string why;
    CHECK_FALSE(has_rlp(b1.inclusion, {standard(StandardKind::horn, 1, 0, 3).inclusion}, 1'000'000, &why));
    CHECK_FALSE(why.empty());
}

TEST_CASE("rlp against the point inclusion is vertex surjectivity") {
    std::mt19937 rng(3);
    auto empty_in_point = standard(StandardKind::boundary, 0, std::nullopt, 2).inclusion;
    for (int trial = 0; trial < 30; ++trial) {
        auto ps = posets_up_to_iso(1 + static_cast<int>(rng() % 3));
        auto qs = posets_up_to_iso(1 + static_cast<int>(rng() % 3));
        const auto& p = ps[rng() % ps.size()];
        const auto& q = qs[rng() % qs.size()];
        auto np = nerve(p, 2), nq = nerve(q, 2);
        MapSearch search;
        search.k = np.get();
        search.x = nq.get();
        std::vector<std::vector<std::vector<int>>> maps;
        Budget budget(1'000'000);
        enumerate_maps(search, budget, [&](const std::vector<std::vector<int>>& v) {
            maps.push_back(extend_map(*np, *nq, v));
            return true;
        });
        CHECK(static_cast<long>(maps.size()) == monotone_maps(p, q));
        const auto& m = maps[rng() % maps.size()];
        SMap f{np, nq, m};
        CHECK(validate_smap(f).empty());
        CHECK(has_rlp(f, {empty_in_point}) == surjective_in_degree(f, 0));
    }
}

TEST_CASE("pushouts of simplicial sets") {
    auto d1 = nerve(simplex_poset(1), 3);
    auto idm = identity_smap(d1);
    auto same = sset_pushout(idm, idm);
    CHECK(same.apex->count == d1->count);

    auto b = standard(StandardKind::boundary, 1, std::nullopt, 3);
    auto circle = sset_pushout(b.inclusion, b.inclusion);
    CHECK(validate_sset(*circle.apex).empty());
    CHECK(validate_smap(circle.left).empty());
    auto h = homology(*circle.apex, 2);
    CHECK(h.groups[1] == z(1));

    auto e = standard(StandardKind::boundary, 0, std::nullopt, 3);
    SMap to_d1{e.x, d1, std::vector<std::vector<int>>(4)};
    auto disj = sset_pushout(to_d1, to_d1);
    CHECK(disj.apex->count[0] == 4);
    CHECK(homology(*disj.apex, 2).groups[0] == z(2));
}

TEST_CASE("bisimplicial sets and the diagonal") {
    auto d1 = nerve(simplex_poset(1), 3);
    auto pt = nerve(simplex_poset(0), 3);
    auto b = external_product(*d1, *pt);
    CHECK(validate_bisset(b).empty());
    auto dg = diagonal(b);
    CHECK(validate_sset(*dg).empty());
    CHECK(dg->count == d1->count);
    CHECK(find_vertex_iso(dg, d1).has_value());
    auto bp = external_product(*pt, *pt);
    CHECK(diagonal(bp)->count == std::vector<int>{1, 1, 1, 1});
    auto sq = external_product(*d1, *d1);
    CHECK(homology(*diagonal(sq), 2).groups == std::vector<HomologyGroup>{z(1), z(0), z(0)});
}

TEST_CASE("simplicial homotopies") {
    auto d1 = nerve(simplex_poset(1), 2);
    auto idm = identity_smap(d1);
    SMap c0{d1, d1, {}};
    for (int n = 0; n <= 2; ++n) c0.map.push_back(std::vector<int>(d1->count[n], 0));
    auto h = simplicial_homotopy(c0, idm);
    REQUIRE(h.has_value());
    CHECK(validate_smap(*h).empty());
}

TEST_CASE("validators catch mutations") {
    auto d2 = nerve(simplex_poset(2), 3);
    auto bad = std::make_shared<SSet>(*d2);
    bad->d[2][0] = (bad->d[2][0] + 1) % bad->count[1];
    CHECK_FALSE(validate_sset(*bad).empty());
    auto f = identity_smap(d2);
    f.map[1][0] = (f.map[1][0] + 1) % d2->count[1];
    CHECK_FALSE(validate_smap(f).empty());
}

TEST_CASE("sd2 generator witnesses") {
    auto w0 = sd2_generator_witness(0);
    CHECK(w0.whole.fwd.src->count[0] == 1);
    auto w1 = sd2_generator_witness(1);
    CHECK(w1.whole.fwd.src->count[0] == 5);
    CHECK(w1.whole.fwd.src->nondegenerate(1).size() == 4);
    CHECK(w1.part.fwd.src->count[0] == 2);
    for (int m = 1; m <= 2; ++m)
        for (int k = 0; k <= m; ++k) {
            auto w = sd2_generator_witness(m, k);
            CHECK(same_smap(compose(w.part.bwd, w.part.fwd), identity_smap(w.part.fwd.src)));
            CHECK(validate_smap(w.part.fwd).empty());
        }
}
