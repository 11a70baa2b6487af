#include "cat2/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "cat2/fixtures.hpp"
#include "cat2/homology.hpp"
#include "cat2/pushout.hpp"

namespace cat2 {

const char* tag_name(Tag t) {
    switch (t) {
        case Tag::literature: return "literature";
        case Tag::immediate: return "immediate";
        case Tag::computed: return "computed";
    }
    return "?";
}

const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "PASS";
        case Status::fail: return "FAIL";
        case Status::budget: return "BUDGET";
    }
    return "?";
}

// ---------------------------------------------------------------- collector

bool Collector::fresh(const void* p) {
    if (std::find(seen_.begin(), seen_.end(), p) != seen_.end()) return false;
    seen_.push_back(p);
    return true;
}

void Collector::add(const std::string& what, const SSetPtr& x) {
    if (x && fresh(x.get())) ssets.push_back({what, x});
}
void Collector::add(const std::string& what, const SMap& f) {
    add(what + " (source)", f.src);
    add(what + " (target)", f.tgt);
    smaps.push_back({what, f});
}
void Collector::add(const std::string& what, const std::shared_ptr<const BiSSet>& b) {
    if (b && fresh(b.get())) bissets.push_back({what, b});
}
void Collector::add(const std::string& what, const TwoCatPtr& c) {
    if (c && fresh(c.get())) twocats.push_back({what, c});
}
void Collector::add(const std::string& what, const TwoFunctor& f) {
    add(what + " (source)", f.src);
    add(what + " (target)", f.tgt);
    functors.push_back({what, f});
}
void Collector::add(const std::string& what, const OplaxFunctor& f) {
    add(what + " (source)", f.src);
    add(what + " (target)", f.tgt);
    oplax.push_back({what, f});
}
bool Collector::empty() const {
    return ssets.empty() && smaps.empty() && bissets.empty() && twocats.empty() && functors.empty() && oplax.empty();
}

namespace {

// ---------------------------------------------------------------- helpers

struct Run {
    ScenarioReport& rep;
    Collector* col;

    bool check(bool ok, Tag tag, std::string text) {
        rep.lines.push_back({std::move(text), tag, ok});
        return ok;
    }
    template <class T>
    void keep(const std::string& what, const T& x) {
        if (col) col->add(what, x);
    }
};

std::string num(std::size_t n) { return std::to_string(n); }

int nondeg(const SSetPtr& x, int n) { return static_cast<int>(x->nondegenerate(n).size()); }

std::string poset_name(const Poset& p) {
    std::vector<std::string> rel;
    for (auto [a, b] : p.covers()) rel.push_back(p.id(a) + "<" + p.id(b));
    return "{" + join(p.ids(), ",") + (rel.empty() ? "" : " | " + join(rel, ",")) + "}";
}

bool inverse_pair(const IsoPair& p) {
    return same_smap(compose(p.bwd, p.fwd), identity_smap(p.fwd.src)) &&
           same_smap(compose(p.fwd, p.bwd), identity_smap(p.fwd.tgt));
}

std::vector<Poset> posets_upto(int n) {
    std::vector<Poset> out;
    for (int k = 1; k <= n; ++k)
        for (auto& p : posets_up_to_iso(k)) out.push_back(p);
    return out;
}

// Nonempty sieves of p admitting a right adjoint retraction, with it.
std::vector<std::pair<MonotoneMap, MonotoneMap>> retract_sieves(const Poset& p, bool proper) {
    std::vector<std::pair<MonotoneMap, MonotoneMap>> out;
    int n = p.size();
    for (unsigned m = 1; m < (1u << n); ++m) {
        if (proper && m + 1 == (1u << n)) continue;
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

std::vector<TwoFunctor> functors(const TwoCatPtr& a, const TwoCatPtr& b, std::size_t cap, std::uint64_t budget) {
    std::vector<TwoFunctor> out;
    Budget bud(budget, "functor enumeration");
    FunctorSearch q{a.get(), b.get(), {}, {}, {}, false};
    enumerate_2functors(q, bud, [&](const auto& o, const auto& f1, const auto& f2) {
        out.push_back(TwoFunctor{a, b, o, f1, f2});
        return out.size() < cap;
    });
    return out;
}

int nonidentity1(const TwoCat& c) {
    int n = 0;
    for (int f = 0; f < c.n1(); ++f) n += f != c.id1[c.one[f].src];
    return n;
}

int nonidentity2(const TwoCat& c) {
    int n = 0;
    for (int a = 0; a < c.n2(); ++a) n += a != c.id2[c.two[a].src];
    return n;
}

int total_cells(const TwoCat& c) { return c.n0() + nonidentity1(c) + nonidentity2(c); }

// ---------------------------------------------------------------- 1

void street_nerve_edges(Run& run) {
    auto d2 = simplex_poset(2);
    auto o = o_poset(d2);
    auto n = nerve2(o.c, 3);
    auto ne = nerve(d2, 3);
    run.keep("O(Delta_2)", o.c);
    run.keep("N2 O(Delta_2)", n.x);
    run.keep("N Delta_2", ne);
    int e2 = nondeg(n.x, 1), e1 = nondeg(ne, 1);
    run.check(e2 == 4, Tag::literature, "nondegenerate 1-simplices of N2 O(Delta_2) = " + num(e2));
    run.check(e1 == 3, Tag::literature, "nondegenerate 1-simplices of N Delta_2 = " + num(e1));
    run.check(nonidentity1(*o.c) == 4, Tag::computed, "non-identity 1-cells of O(Delta_2) = " + num(nonidentity1(*o.c)));
    auto u = unit_map(d2, o, n, 3);
    run.keep("unit map of Delta_2", u);
    run.check(injective_in_degree(u, 1), Tag::literature, "unit map N Delta_2 -> N2 O(Delta_2) injective in degree 1");
    run.check(!surjective_in_degree(u, 1), Tag::literature, "unit map N Delta_2 -> N2 O(Delta_2) not surjective in degree 1");
}

// ---------------------------------------------------------------- 2

void sd2_generators(Run& run) {
    for (int m = 0; m <= 3; ++m) {
        bool ok = false;
        try {
            auto w = sd2_generator_witness(m);
            ok = inverse_pair(w.whole) && inverse_pair(w.part);
            run.keep("Sd^2 Delta_" + num(m) + " iso", w.whole.fwd);
            run.keep("Sd^2 dDelta_" + num(m) + " iso", w.part.fwd);
        } catch (const WitnessNotFound&) {
        }
        run.check(ok, Tag::literature,
                  "m = " + num(m) + ": Sd^2 Delta_m = N xi Phi_m and Sd^2 dDelta_m = N xi dPhi_m, mutually inverse");
    }
    for (int m = 1; m <= 3; ++m)
        for (int k = 0; k <= m; ++k) {
            bool ok = false;
            try {
                auto w = sd2_generator_witness(m, k);
                ok = inverse_pair(w.whole) && inverse_pair(w.part);
                run.keep("Sd^2 horn " + num(m) + "," + num(k) + " iso", w.part.fwd);
            } catch (const WitnessNotFound&) {
            }
            run.check(ok, Tag::literature,
                      "m = " + num(m) + ", k = " + num(k) + ": Sd^2 Lambda_m^k = N xi of the horn subposet, mutually inverse");
        }
}

// ---------------------------------------------------------------- 3

void sd_ex_homology(Run& run) {
    const int cap = 3;
    std::vector<std::pair<std::string, SSetPtr>> xs;
    for (int m = 0; m <= 3; ++m) {
        xs.emplace_back("Delta_" + num(m), standard(StandardKind::simplex, m, std::nullopt, cap).x);
        xs.emplace_back("dDelta_" + num(m), standard(StandardKind::boundary, m, std::nullopt, cap).x);
        for (int k = 0; m >= 1 && k <= m; ++k)
            xs.emplace_back("Lambda_" + num(m) + "^" + num(k), standard(StandardKind::horn, m, k, cap).x);
    }
    for (auto& p : posets_upto(4)) xs.emplace_back("N " + poset_name(p), nerve(p, cap));
    for (auto& [name, x] : xs) {
        auto s = sd(x, cap);
        auto e = ex(x, cap);
        run.keep("Sd " + name + " -> " + name, s.alpha);
        run.keep(name + " -> Ex " + name, e.beta);
        bool a = homology_iso(s.alpha, 2).iso, b = homology_iso(e.beta, 2).iso;
        run.check(a && b, Tag::literature,
                  name + ": alpha " + (a ? "iso" : "not iso") + ", beta " + (b ? "iso" : "not iso") + " on H_0..H_2");
    }
}

// ---------------------------------------------------------------- 4

void unit_map_homology(Run& run) {
    auto ps = posets_upto(4);
    ps.push_back(pseudo_circle());
    for (std::size_t t = 0; t < ps.size(); ++t) {
        auto& e = ps[t];
        auto o = o_poset(e);
        auto n = nerve2(o.c, 3);
        auto u = unit_map(e, o, n, 3);
        run.keep("O " + poset_name(e), o.c);
        run.keep("unit map of " + poset_name(e), u);
        auto rep = homology_iso(u, 2);
        run.check(rep.iso, Tag::literature, "unit map of " + poset_name(e) + " iso on H_0..H_2");
        if (t + 1 == ps.size()) {
            bool circle = rep.source.line(0) == "H_0 = Z" && rep.source.line(1) == "H_1 = Z" &&
                          rep.target.line(0) == "H_0 = Z" && rep.target.line(1) == "H_1 = Z";
            run.check(circle, Tag::computed,
                      "pseudo-circle: " + rep.source.line(0) + ", " + rep.source.line(1) + " on both sides");
        }
    }
}

// ---------------------------------------------------------------- 5

void bisimplicial_diagonal(Run& run) {
    std::vector<NamedTwoCat> cs;
    for (int m = 0; m <= 2; ++m) cs.push_back({"O(Delta_" + num(m) + ")", o_poset(simplex_poset(m)).c});
    auto samples = sample_twocats();
    samples.push_back({"Z/2 on a single 1-cell", z2_double_suspension()});
    for (auto& nc : samples) {
        if (nonidentity2(*nc.c) == 0) continue;
        run.check(true, Tag::immediate, nc.name + ": " + num(nonidentity2(*nc.c)) + " non-identity 2-cells");
        cs.push_back(nc);
    }
    run.check(cs.size() == 8, Tag::immediate, "hand-built 2-categories with non-identity 2-cells = " + num(cs.size() - 3));
    for (auto& nc : cs) {
        auto b = std::make_shared<const BiSSet>(bnerve(*nc.c, 3, 3));
        auto dg = diagonal(*b);
        auto n = nerve2(nc.c, 3);
        run.keep(nc.name, nc.c);
        run.keep("bisimplicial nerve of " + nc.name, b);
        run.keep("diagonal of " + nc.name, dg);
        run.keep("N2 " + nc.name, n.x);
        auto hd = homology(*dg, 2), hn = homology(*n.x, 2);
        run.check(hd == hn, Tag::literature,
                  nc.name + ": diagonal and Street nerve agree on H_0..H_2 (" + join({hn.line(0), hn.line(1), hn.line(2)}, ", ") + ")");
    }
}

// ---------------------------------------------------------------- 6

void poset_sieve_retracts(Run& run) {
    for (int n = 1; n <= 5; ++n) {
        std::size_t total = 0, good = 0;
        for (auto& p : posets_up_to_iso(n))
            for (auto& [i, r] : retract_sieves(p, false)) {
                auto pr = poset_sieve_retract(i, r);
                ++total;
                good += check_retract_structure(pr.s).ok() && retract_identities(pr.s).empty();
                run.keep("retraction for a sieve of " + poset_name(p), pr.s.r);
                run.keep("homotopy for a sieve of " + poset_name(p), pr.s.h.h);
            }
        run.check(total > 0 && good == total, Tag::literature,
                  num(n) + "-element posets: " + num(good) + "/" + num(total) + " sieve retracts pass the checker");
    }
}

// ---------------------------------------------------------------- 7

void relative_homotopies(Run& run) {
    auto ex = rdf2_counterexample();
    const TwoCat& B = *ex.b;
    run.keep("counterexample i", ex.i);
    run.keep("counterexample u", ex.u);
    auto rs = retractions(ex.i);
    if (!run.check(rs.size() == 1, Tag::computed, "retractions of the sieve = " + num(rs.size()))) return;
    auto r = rs[0];
    auto hs = enumerate_relative_homotopies(ex.i, r);
    run.check(hs.size() == 4, Tag::literature, "relative homotopies = " + num(hs.size()));
    auto sq = pushout_sieve_2cat(ex.i, ex.u);
    run.keep("counterexample apex", sq.apex());
    run.keep("counterexample i2", sq.i2);
    run.keep("counterexample v", sq.v);
    const TwoCat& P = *sq.apex();
    int a = P.find_object("a"), t = P.find_object("t");
    int pk = -1, ql = -1;
    for (int f : P.hom(a, t)) {
        if (P.one[f].name == "[p|k]") pk = f;
        if (P.one[f].name == "[q|l]") ql = f;
    }
    bool both = false;
    for (int s : (pk >= 0 && ql >= 0 ? P.hom(a, t) : std::vector<int>{})) {
        bool to_pk = false, to_ql = false;
        for (int c : P.out2[s]) {
            to_pk |= P.two[c].tgt == pk;
            to_ql |= P.two[c].tgt == ql;
        }
        both |= to_pk && to_ql;
    }
    run.check(pk >= 0 && ql >= 0 && !both, Tag::literature, "no 1-cell a -> t of the pushout has 2-cells to both pk and ql");

    int rdf2 = 0, bad_seen = 0;
    for (auto& h : hs) {
        RetractStructure s{ex.i, r, h};
        run.keep("relative homotopy", h.h);
        auto rep = check_retract_structure(s);
        if (rep.rdf2.empty()) {
            ++rdf2;
            bool ok = false;
            try {
                auto t2 = extend_retract(sq, s);
                run.keep("extended homotopy", t2.h.h);
                ok = check_retract_structure(t2).ok() && extension_compatibility(sq, s, t2).empty();
            } catch (const PreconditionError&) {
            }
            run.check(ok, Tag::literature, "extend_retract on the RDF2 homotopy passes the checker");
            continue;
        }
        if (h.one(2, B.find_one("hf")) != B.find_one("p") || h.one(2, B.find_one("hg")) != B.find_one("q")) continue;
        ++bad_seen;
        auto rp = mediate(sq, identity_functor(ex.a2), compose(ex.u, r));
        TwoFunctor r2{sq.apex(), ex.a2, rp.obj, rp.one, rp.two};
        auto found = enumerate_relative_homotopies(sq.i2, r2, 10'000'000, compatibility_pins(sq, s));
        run.check(found.empty(), Tag::literature,
                  "homotopy with hf -> p, hg -> q: compatible extensions found by exhaustive search = " + num(found.size()));
        bool rejected = false;
        try {
            extend_retract(sq, s);
        } catch (const PreconditionError&) {
            rejected = true;
        }
        run.check(rejected, Tag::computed, "extend_retract rejects the homotopy with hf -> p, hg -> q");
    }
    run.check(rdf2 == 1, Tag::literature, "homotopies satisfying RDF2 = " + num(rdf2));
    run.check(bad_seen == 1, Tag::immediate, "homotopies with hf -> p, hg -> q = " + num(bad_seen));
}

// ---------------------------------------------------------------- 8, 9

struct RetractInstance {
    std::string label;
    MonotoneMap inc;
    PosetRetract pr;
    TwoFunctor u;
    CocartSquare sq;
};

// Catalog entries, then a few larger targets drawn with equal total weight.
std::pair<std::vector<NamedTwoCat>, std::vector<NamedTwoCat>> instance_targets() {
    std::vector<NamedTwoCat> cats, out;
    auto cat = small_twocats();
    for (std::size_t k = 0; k < cat.size(); ++k) cats.push_back({"catalog #" + num(k), cat[k]});
    out.push_back({"O(Delta_2)", o_poset(simplex_poset(2)).c});
    out.push_back({"O(vee)", o_poset(make_poset({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}})).c});
    for (auto& nc : sample_twocats())
        if (nc.c->n0() <= 3) out.push_back(nc);
    return {cats, out};
}

const std::vector<RetractInstance>& retract_instances() {
    static const std::vector<RetractInstance> cache = [] {
        std::vector<RetractInstance> out;
        std::mt19937 rng(20240611u);
        auto targets = instance_targets();
        auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
        while (out.size() < 20) {
            int n = 2 + static_cast<int>(pick(3));
            auto ps = posets_up_to_iso(n);
            const Poset& p = ps[pick(ps.size())];
            auto sieves = retract_sieves(p, true);
            if (sieves.empty()) continue;
            auto [i, r] = sieves[pick(sieves.size())];
            const auto& pool = pick(2) ? targets.second : targets.first;
            const auto& target = pool[pick(pool.size())];
            auto pr = poset_sieve_retract(i, r);
            auto us = functors(pr.a.c, target.c, 64, 1'000'000);
            if (us.empty()) continue;
            auto u = us[pick(us.size())];
            std::string label = "E = " + poset_name(p) + ", E' = " + poset_name(i.source) + ", into " + target.name;
            auto sq = pushout_sieve_2cat(pr.s.i, u);
            out.push_back({label, i, pr, u, sq});
        }
        return out;
    }();
    return cache;
}

void retract_extension(Run& run) {
    const std::size_t small_n1 = 60;
    int k = 0;
    for (auto& in : retract_instances()) {
        ++k;
        run.keep("instance apex", in.sq.apex());
        run.keep("instance u", in.u);
        run.keep("instance i2", in.sq.i2);
        run.keep("instance v", in.sq.v);
        auto t = extend_retract(in.sq, in.pr.s);
        run.keep("extended homotopy", t.h.h);
        run.keep("extended retraction", t.r);
        auto rep = check_retract_structure(t);
        auto compat = extension_compatibility(in.sq, in.pr.s, t);
        std::string tail;
        bool ok = rep.ok() && compat.empty();
        if (!rep.ok()) tail += "; checker: " + rep.all().front();
        if (!compat.empty()) tail += "; compatibility: " + compat.front();
        if (static_cast<std::size_t>(in.sq.apex()->n1()) <= small_n1) {
            auto want = compose(in.u, in.pr.s.r);
            int rcount = 0;
            for (auto& r2 : retractions(in.sq.i2, 10'000'000)) rcount += same_functor(compose(r2, in.sq.v), want);
            int hcount = 0, hsame = 0;
            for (auto& g : enumerate_relative_homotopies(in.sq.i2, t.r, 10'000'000, compatibility_pins(in.sq, in.pr.s)))
                if (check_retract_structure(RetractStructure{in.sq.i2, t.r, g}).rdf2.empty()) {
                    ++hcount;
                    hsame += same_oplax(g.h, t.h.h);
                }
            ok = ok && rcount == 1 && hcount == 1 && hsame == 1;
            tail += "; exhaustive: " + num(rcount) + " retraction(s), " + num(hcount) + " RDF2 homotopy(ies)";
        } else {
            tail += "; too large for exhaustive search";
        }
        run.check(ok, Tag::literature, "instance " + num(k) + " (" + in.label + "): extension valid and compatible" + tail);
    }
}

void pushout_universality(Run& run) {
    int k = 0;
    for (auto& in : retract_instances()) {
        ++k;
        auto osq = pushout_o_sieve(in.inc, in.pr.a, in.pr.b, in.u);
        run.keep("O-sieve apex", osq.apex());
        run.keep("O-sieve v", osq.v);
        run.keep("O-sieve i2", osq.i2);
        bool iso = find_isomorphism(in.sq.apex(), osq.apex()).has_value();
        run.check(iso, Tag::computed, "instance " + num(k) + ": general and O-sieve apexes isomorphic");
        for (const CocartSquare* sq : {&in.sq, static_cast<const CocartSquare*>(&osq)}) {
            const char* which = sq == &in.sq ? "general" : "O-sieve";
            auto rep = verify_cocartesian(*sq, {});
            run.check(rep.ok, Tag::literature,
                      "instance " + num(k) + ", " + which + ": cocartesian against " + num(rep.probes) + " probes" +
                          (rep.ok ? "" : " (" + rep.failures.front() + ")"));
            auto sv = check_sieve_square(*sq);
            run.check(sv.empty(), Tag::literature,
                      "instance " + num(k) + ", " + which + ": i2 a sieve, square cartesian, complements isomorphic" +
                          (sv.empty() ? "" : " (" + sv.front() + ")"));
        }
    }
    auto ex = rdf2_counterexample();
    auto sq = pushout_sieve_2cat(ex.i, ex.u);
    auto rep = verify_cocartesian(sq, {});
    run.check(rep.ok && check_sieve_square(sq).empty(), Tag::literature,
              "counterexample square: cocartesian against " + num(rep.probes) + " probes, sieve square checks hold");
}

// ---------------------------------------------------------------- 10

void cosieve_squares(Run& run) {
    const int cap = 3, max_cells = 12;
    std::vector<NamedTwoCat> xs;
    auto cat = small_twocats();
    for (std::size_t k = 0; k < cat.size(); ++k)
        if (cat[k]->n0() >= 2) xs.push_back({"catalog #" + num(k), cat[k]});
    for (int n = 2; n <= 4; ++n)
        for (auto& p : posets_up_to_iso(n)) xs.push_back({"O " + poset_name(p), o_poset(p).c});
    for (auto& nc : sample_twocats()) xs.push_back(nc);
    xs.push_back({"counterexample A'", rdf2_counterexample().a2});
    std::size_t total = 0;
    for (auto& [name, x] : xs) {
        if (total_cells(*x) > max_cells) continue;
        int n = x->n0();
        auto sieve = [&](unsigned m) -> std::optional<std::vector<char>> {
            std::vector<char> mask(n);
            for (int o = 0; o < n; ++o) mask[o] = m >> o & 1u;
            for (int f = 0; f < x->n1(); ++f)
                if (mask[x->one[f].tgt] && !mask[x->one[f].src]) return std::nullopt;
            return mask;
        };
        auto nx = nerve2(x, cap);
        run.keep(name, x);
        run.keep("N2 " + name, nx.x);
        std::size_t squares = 0, good = 0;
        for (unsigned m1 = 1; m1 < (1u << n); ++m1)
            for (unsigned m2 = 1; m2 < (1u << n); ++m2) {
                if (m1 & m2) continue;
                auto u1 = sieve(m1), u2 = sieve(m2);
                if (!u1 || !u2) continue;
                auto sq = cosieve_square(x, *u1, *u2);
                run.keep("cosieve square i", sq.i);
                run.keep("cosieve square u", sq.u);
                run.keep("cosieve square i2", sq.i2);
                run.keep("cosieve square v", sq.v);
                bool ok = same_functor(compose(sq.v, sq.i), compose(sq.i2, sq.u)) && verify_cocartesian(sq, {}).ok;
                auto n12 = nerve2(sq.i.src, cap), n1 = nerve2(sq.i.tgt, cap), n2 = nerve2(sq.u.tgt, cap);
                auto po = sset_pushout(nerve2_map(sq.i, n12, n1), nerve2_map(sq.u, n12, n2));
                auto cmp = pushout_induced(po, nerve2_map(sq.v, n1, nx), nerve2_map(sq.i2, n2, nx));
                run.keep("nerve pushout comparison", cmp);
                for (int d = 0; d <= cap; ++d) ok = ok && injective_in_degree(cmp, d) && surjective_in_degree(cmp, d);
                ++squares;
                good += ok;
            }
        if (!squares) continue;
        total += squares;
        run.check(good == squares, Tag::literature,
                  name + " (" + num(total_cells(*x)) + " cells): " + num(good) + "/" + num(squares) +
                      " squares cocartesian with N2 of the square a pushout through degree " + num(cap));
    }
    run.check(total > 0, Tag::immediate, "cosieve squares checked = " + num(total));
}

// ---------------------------------------------------------------- 11

void o_poset_truncations(Run& run) {
    for (auto& p : posets_upto(4)) {
        auto o = o_poset(p);
        run.keep("O " + poset_name(p), o.c);
        auto b = tau_b(*o.c);
        b.finalize();
        auto fr = is_free_on_graph(b);
        bool free_ok = fr.free && fr.generators.size() == p.strict_pairs().size();
        auto ti = tau_i(*o.c);
        auto pc = share(poset_as_twocat(p));
        bool iso = is_poset_category(ti.cat) && find_isomorphism(share(ti.cat), pc).has_value();
        bool enriched = is_poset_enriched(*o.c);
        run.keep("tau_b O " + poset_name(p), share(b));
        run.keep("tau_i O " + poset_name(p), share(ti.cat));
        run.check(free_ok && iso && enriched, Tag::literature,
                  poset_name(p) + ": tau_b free on " + num(fr.generators.size()) + " generators, tau_i " +
                      (iso ? "iso to E" : "not iso to E") + ", " + (enriched ? "poset-enriched" : "not poset-enriched"));
    }
}

// ---------------------------------------------------------------- 12

struct Mutator {
    std::mt19937 rng{7u};
    int below(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
    int other(int v, int n) { return (v + 1 + below(n - 1)) % n; }

    // d_j s_j y = y is broken for a random degenerate cell.
    std::optional<SSet> sset(const SSet& x) {
        for (int n = 1; n <= x.cap; ++n) {
            if (x.count[n - 1] < 2) continue;
            SSet m = x;
            int y = below(x.count[n - 1]), j = below(n);
            int c = x.degen(n - 1, j, y);
            m.d[n][static_cast<std::size_t>(c) * (n + 1) + j] = other(y, x.count[n - 1]);
            return m;
        }
        return std::nullopt;
    }
    std::optional<SMap> smap(const SMap& f) {
        if (f.cap() < 1 || f.src->count[0] == 0 || f.tgt->count[0] < 2) return std::nullopt;
        SMap m = f;
        int v = below(f.src->count[0]);
        m.map[0][v] = other(f.map[0][v], f.tgt->count[0]);
        return m;
    }
    std::optional<BiSSet> bisset(const BiSSet& b) {
        if (b.pcap < 1 || b.count[0][0] < 2) return std::nullopt;
        BiSSet m = b;
        int v = below(b.count[0][0]);
        int c = b.hdegen(0, 0, 0, v);
        m.dh[1][0][static_cast<std::size_t>(c) * 2] = other(v, b.count[0][0]);
        return m;
    }
    std::optional<TwoCat> twocat(const TwoCat& c) {
        if (c.n1() < 2) return std::nullopt;
        TwoCat m = c;
        int f = below(c.n1());
        m.comp[pair_key(f, c.id1[c.one[f].src])] = other(f, c.n1());
        return m;
    }
    std::optional<TwoFunctor> functor(const TwoFunctor& f) {
        if (f.src->n0() == 0 || f.tgt->n1() < 2) return std::nullopt;
        TwoFunctor m = f;
        int x = below(f.src->n0());
        int i = f.src->id1[x];
        m.one[i] = other(f.one[i], f.tgt->n1());
        return m;
    }
    std::optional<OplaxFunctor> oplax(const OplaxFunctor& f) {
        if (f.src->n1() == 0 || f.tgt->n2() < 2) return std::nullopt;
        OplaxFunctor m = f;
        int g = below(f.src->n1());
        int id = f.src->id1[f.src->one[g].src];
        auto key = pair_key(g, id);
        m.constraint[key] = other(f.tgt->id2[f.one[g]], f.tgt->n2());
        return m;
    }
};

template <class T, class Validate, class Mutate>
void suite(Run& run, const std::string& what, const std::vector<Collector::Entry<T>>& items, Validate validate,
           Mutate mutate) {
    std::size_t valid = 0, seeded = 0, caught = 0;
    std::string first_bad;
    for (auto& e : items) {
        if (validate(e.value).empty()) ++valid;
        else if (first_bad.empty()) first_bad = e.what;
        if (auto m = mutate(e.value)) {
            ++seeded;
            caught += !validate(*m).empty();
        }
    }
    run.check(valid == items.size(), Tag::immediate,
              what + ": " + num(valid) + "/" + num(items.size()) + " valid" + (first_bad.empty() ? "" : " (first failure: " + first_bad + ")"));
    run.check(seeded > 0 && caught == seeded, Tag::immediate,
              what + ": seeded single-entry mutations detected " + num(caught) + "/" + num(seeded));
}

void run_body(const std::string& name, Run& run);

void axiom_suites(Run& run) {
    Collector own;
    Collector* col = run.col;
    if (!col || col->empty()) {
        col = run.col ? run.col : &own;
        for (auto& info : scenario_catalog()) {
            if (info.criterion == 12) continue;
            ScenarioReport sub;
            Run inner{sub, col};
            run_body(info.name, inner);
        }
    }
    Mutator mu;
    suite(run, "simplicial sets", col->ssets, [](const SSetPtr& x) { return validate_sset(*x, 1); },
          [&](const SSetPtr& x) -> std::optional<SSetPtr> {
              auto m = mu.sset(*x);
              if (!m) return std::nullopt;
              return std::make_shared<const SSet>(std::move(*m));
          });
    suite(run, "simplicial maps", col->smaps, [](const SMap& f) { return validate_smap(f, 1); },
          [&](const SMap& f) { return mu.smap(f); });
    suite(run, "bisimplicial sets", col->bissets, [](const std::shared_ptr<const BiSSet>& b) { return validate_bisset(*b, 1); },
          [&](const std::shared_ptr<const BiSSet>& b) -> std::optional<std::shared_ptr<const BiSSet>> {
              auto m = mu.bisset(*b);
              if (!m) return std::nullopt;
              return std::make_shared<const BiSSet>(std::move(*m));
          });
    suite(run, "2-categories", col->twocats, [](const TwoCatPtr& c) { return validate_twocat(*c, 1); },
          [&](const TwoCatPtr& c) -> std::optional<TwoCatPtr> {
              auto m = mu.twocat(*c);
              if (!m) return std::nullopt;
              return share(std::move(*m));
          });
    suite(run, "2-functors", col->functors, [](const TwoFunctor& f) { return validate_functor(f, 1); },
          [&](const TwoFunctor& f) { return mu.functor(f); });
    suite(run, "oplax functors", col->oplax, [](const OplaxFunctor& f) { return validate_oplax(f, 1); },
          [&](const OplaxFunctor& f) { return mu.oplax(f); });
}

// ---------------------------------------------------------------- registry

using Body = void (*)(Run&);

struct Entry {
    ScenarioInfo info;
    Body body;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r = {
        {{"street-nerve-edges", 1, 1, "edge counts of N2 O(Delta_2) and N Delta_2, unit map in degree 1"}, street_nerve_edges},
        {{"sd2-generators", 2, 30, "Sd^2 of simplices, boundaries and horns against nerves of xi posets"}, sd2_generators},
        {{"sd-ex-homology", 3, 120, "alpha : Sd X -> X and beta : X -> Ex X on homology"}, sd_ex_homology},
        {{"unit-map-homology", 4, 120, "unit map N E -> N2 O(E) on homology"}, unit_map_homology},
        {{"bisimplicial-diagonal", 5, 120, "diagonal of the bisimplicial nerve against the Street nerve"}, bisimplicial_diagonal},
        {{"poset-sieve-retracts", 6, 120, "retract structures of poset sieves with right adjoint retractions"}, poset_sieve_retracts},
        {{"relative-homotopies", 7, 60, "relative homotopies and extension on the RDF2 counterexample"}, relative_homotopies},
        {{"retract-extension", 8, 300, "extension of retract structures along random pushouts"}, retract_extension},
        {{"pushout-universality", 9, 300, "agreement of pushout constructions and the universal property"}, pushout_universality},
        {{"cosieve-squares", 10, 120, "squares of cosieves and nerves of pushouts"}, cosieve_squares},
        {{"o-poset-truncations", 11, 60, "truncations of O(E)"}, o_poset_truncations},
        {{"axiom-suites", 12, 120, "validators on every constructed object and on seeded mutations"}, axiom_suites},
    };
    return r;
}

void run_body(const std::string& name, Run& run) {
    for (auto& e : registry())
        if (e.info.name == name) return e.body(run);
    throw UnknownScenario("unknown scenario: " + name);
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_catalog() {
    static const std::vector<ScenarioInfo> out = [] {
        std::vector<ScenarioInfo> v;
        for (auto& e : registry()) v.push_back(e.info);
        return v;
    }();
    return out;
}

ScenarioReport run_scenario(const std::string& name, Collector* collector) {
    const Entry* entry = nullptr;
    for (auto& e : registry())
        if (e.info.name == name) entry = &e;
    if (!entry) throw UnknownScenario("unknown scenario: " + name);
    ScenarioReport rep;
    rep.name = name;
    rep.criterion = entry->info.criterion;
    Run run{rep, collector};
    auto t0 = std::chrono::steady_clock::now();
    try {
        entry->body(run);
        rep.status = Status::pass;
        for (auto& l : rep.lines)
            if (!l.pass) rep.status = Status::fail;
        if (rep.lines.empty()) rep.status = Status::fail;
    } catch (const BudgetError& e) {
        rep.status = Status::budget;
        rep.error = e.what();
    } catch (const NormalizationBudgetExceeded& e) {
        rep.status = Status::budget;
        rep.error = e.what();
    } catch (const std::exception& e) {
        rep.status = Status::fail;
        rep.error = e.what();
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::string format_report(const ScenarioReport& r) {
    std::ostringstream out;
    for (auto& l : r.lines) out << (l.pass ? "PASS" : "FAIL") << " [" << tag_name(l.tag) << "] " << l.text << "\n";
    if (!r.error.empty()) out << status_name(r.status) << " error: " << r.error << "\n";
    out << r.name << ": " << status_name(r.status) << "\n";
    return out.str();
}

}  // namespace cat2
