#include <algorithm>
#include <functional>
#include <map>
#include <mutex>

#include "cat2/pushout.hpp"

namespace cat2 {

namespace {

constexpr char kFromA2 = 0, kFromB = 1, kMixed = 2;

void require_provenance(const CocartSquare& sq) {
    if (!sq.has_provenance()) throw PreconditionError("square carries no description of its apex cells");
}

std::vector<char> mask_of(int n, const std::vector<int>& image) {
    std::vector<char> m(n, 0);
    for (int v : image) m[v] = 1;
    return m;
}

class Reporter {
public:
    Reporter(std::vector<std::string>& out, std::size_t cap) : out_(out), cap_(cap) {}
    void operator()(const std::string& m) {
        if (out_.size() < cap_) out_.push_back(m);
    }

private:
    std::vector<std::string>& out_;
    std::size_t cap_;
};

}  // namespace

TwoFunctor mediate(const CocartSquare& sq, const TwoFunctor& j, const TwoFunctor& w) {
    require_provenance(sq);
    const TwoCat& P = *sq.apex();
    const TwoCat& C = *j.tgt;
    TwoFunctor m{sq.apex(), j.tgt, {}, {}, {}};
    for (int x = 0; x < P.n0(); ++x) m.obj.push_back(sq.origin0[x] == kFromA2 ? j.obj[sq.ref0[x]] : w.obj[sq.ref0[x]]);
    for (int f = 0; f < P.n1(); ++f) {
        switch (sq.origin1[f]) {
        case kFromA2: m.one.push_back(j.one[sq.ref1[f]]); break;
        case kFromB: m.one.push_back(w.one[sq.ref1[f]]); break;
        default: m.one.push_back(C.compose(w.one[sq.rep1[f].second], j.one[sq.rep1[f].first]));
        }
    }
    for (int a = 0; a < P.n2(); ++a) {
        switch (sq.origin2[a]) {
        case kFromA2: m.two.push_back(j.two[sq.ref2[a]]); break;
        case kFromB: m.two.push_back(w.two[sq.ref2[a]]); break;
        default: {
            int acc = C.id2[m.one[P.two[a].src]];
            for (const auto& t : sq.rep2[a]) acc = C.vcompose(C.hcompose(w.two[t.second], j.two[t.first]), acc);
            m.two.push_back(acc);
        }
        }
    }
    return m;
}

std::vector<std::string> check_sieve_square(const CocartSquare& sq, std::size_t max_reports) {
    std::vector<std::string> out;
    Reporter report(out, max_reports);
    if (!same_functor(compose(sq.v, sq.i), compose(sq.i2, sq.u))) report("square does not commute");
    if (!sieve2_analyze(sq.i2).is_sieve) report("i' is not a sieve");
    const TwoCat& B = *sq.i.tgt;
    const TwoCat& P = *sq.apex();
    const std::vector<int>* vi[3] = {&sq.v.obj, &sq.v.one, &sq.v.two};
    const std::vector<int>* ii[3] = {&sq.i.obj, &sq.i.one, &sq.i.two};
    const std::vector<int>* i2i[3] = {&sq.i2.obj, &sq.i2.one, &sq.i2.two};
    const std::vector<int>* ui[3] = {&sq.u.obj, &sq.u.one, &sq.u.two};
    int nb[3] = {B.n0(), B.n1(), B.n2()};
    int np[3] = {P.n0(), P.n1(), P.n2()};
    for (int d = 0; d < 3; ++d) {
        std::vector<int> inv_i(nb[d], -1), inv_i2(np[d], -1);
        for (int k = 0; k < static_cast<int>(ii[d]->size()); ++k) inv_i[(*ii[d])[k]] = k;
        for (int k = 0; k < static_cast<int>(i2i[d]->size()); ++k) inv_i2[(*i2i[d])[k]] = k;
        for (int b = 0; b < nb[d]; ++b) {
            int vb = (*vi[d])[b];
            bool in_a = inv_i[b] >= 0, in_a2 = inv_i2[vb] >= 0;
            if (in_a != in_a2) report("pullback fails on the " + std::to_string(d) + "-cell " + std::to_string(b) + " of B");
            else if (in_a && (*ui[d])[inv_i[b]] != inv_i2[vb])
                report("pullback fails on the " + std::to_string(d) + "-cell " + std::to_string(b) + " of B");
        }
    }
    // complement: cells whose source object lies outside the sieves
    auto in_a0 = mask_of(B.n0(), sq.i.obj);
    auto in_a20 = mask_of(P.n0(), sq.i2.obj);
    auto src_b = [&](int d, int c) { return d == 0 ? c : d == 1 ? B.one[c].src : B.obj_src2(c); };
    auto src_p = [&](int d, int c) { return d == 0 ? c : d == 1 ? P.one[c].src : P.obj_src2(c); };
    for (int d = 0; d < 3; ++d) {
        std::vector<int> hit(np[d], 0);
        for (int b = 0; b < nb[d]; ++b)
            if (!in_a0[src_b(d, b)]) {
                int vb = (*vi[d])[b];
                if (in_a20[src_p(d, vb)]) report("v sends a complement " + std::to_string(d) + "-cell into A'");
                ++hit[vb];
            }
        for (int c = 0; c < np[d]; ++c)
            if (!in_a20[src_p(d, c)] && hit[c] != 1)
                report("v is not bijective on complement " + std::to_string(d) + "-cells at " + std::to_string(c));
    }
    return out;
}

// ---------------------------------------------------------------- catalog

namespace {

struct HomSpec {
    int size = 0;
    bool ordered = false;  // the two 1-cells are comparable, local 0 below unless reversed
    bool reversed = false;
};

void catalog_entry(int n, const std::vector<HomSpec>& shape, std::vector<TwoCat>& out) {
    // shape indexed x * n + y
    TwoCat c;
    for (int x = 0; x < n; ++x) c.objects.push_back(std::to_string(x));
    std::vector<std::vector<int>> hom(n * n);
    c.id1.assign(n, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int k = 0; k < shape[x * n + y].size; ++k) {
                int f = c.n1();
                std::string name = x == y && k == 0 ? "1_" + c.objects[x] : "f" + std::to_string(x) + std::to_string(y) + std::to_string(k);
                c.one.push_back({x, y, name});
                hom[x * n + y].push_back(f);
                if (x == y && k == 0) c.id1[x] = f;
            }
    auto leq = [&](int f, int g) {
        if (f == g) return true;
        if (c.one[f].src != c.one[g].src || c.one[f].tgt != c.one[g].tgt) return false;
        const auto& sp = shape[c.one[f].src * n + c.one[f].tgt];
        if (!sp.ordered) return false;
        const auto& h = hom[c.one[f].src * n + c.one[f].tgt];
        bool f_low = f == h[0];
        return sp.reversed ? !f_low : f_low;
    };
    std::vector<std::pair<int, int>> pairs;
    for (int f = 0; f < c.n1(); ++f)
        for (int g = 0; g < c.n1(); ++g)
            if (c.one[f].tgt == c.one[g].src && f != c.id1[c.one[f].src] && g != c.id1[c.one[g].src]) {
                if (hom[c.one[f].src * n + c.one[g].tgt].empty()) return;
                pairs.emplace_back(g, f);
            }
    std::vector<int> table(c.n1() * c.n1(), -1);
    auto at = [&](int g, int f) -> int& { return table[g * c.n1() + f]; };
    for (int f = 0; f < c.n1(); ++f) {
        at(f, c.id1[c.one[f].src]) = f;
        at(c.id1[c.one[f].tgt], f) = f;
    }
    auto consistent = [&]() {
        for (int f = 0; f < c.n1(); ++f)
            for (int g = 0; g < c.n1(); ++g) {
                if (c.one[f].tgt != c.one[g].src) continue;
                int gf = at(g, f);
                for (int h = 0; h < c.n1(); ++h) {
                    if (c.one[g].tgt != c.one[h].src) continue;
                    int hg = at(h, g);
                    if (gf < 0 || hg < 0) continue;
                    int l = at(h, gf), r = at(hg, f);
                    if (l >= 0 && r >= 0 && l != r) return false;
                }
                if (gf < 0) continue;
                for (int f2 = 0; f2 < c.n1(); ++f2)
                    for (int g2 = 0; g2 < c.n1(); ++g2) {
                        if (!leq(f, f2) || !leq(g, g2)) continue;
                        int v = at(g2, f2);
                        if (v >= 0 && !leq(gf, v)) return false;
                    }
            }
        return true;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (!consistent()) return;
        if (k == pairs.size()) {
            TwoCat d = c;
            for (auto [g, f] : pairs) d.comp[pair_key(g, f)] = at(g, f);
            for (int f = 0; f < d.n1(); ++f) {
                d.comp[pair_key(f, d.id1[d.one[f].src])] = f;
                d.comp[pair_key(d.id1[d.one[f].tgt], f)] = f;
            }
            d.id2.assign(d.n1(), -1);
            for (int f = 0; f < d.n1(); ++f)
                for (int g = 0; g < d.n1(); ++g)
                    if (leq(f, g)) {
                        int a = d.n2();
                        d.two.push_back({f, g, f == g ? "1_" + d.one[f].name : d.one[f].name + "<=" + d.one[g].name});
                        d.between[pair_key(f, g)] = a;
                        if (f == g) d.id2[f] = a;
                    }
            d.poset_enriched = true;
            d.finalize();
            if (validate_twocat(d, 1).empty()) out.push_back(std::move(d));
            return;
        }
        auto [g, f] = pairs[k];
        for (int v : hom[c.one[f].src * n + c.one[g].tgt]) {
            at(g, f) = v;
            rec(k + 1);
        }
        at(g, f) = -1;
    };
    rec(0);
}

std::vector<HomSpec> hom_options(bool diagonal) {
    std::vector<HomSpec> v;
    if (diagonal) {
        v = {{1, false, false}, {2, false, false}, {2, true, false}, {2, true, true}};
    } else {
        v = {{0, false, false}, {1, false, false}, {2, false, false}, {2, true, false}};
    }
    return v;
}

}  // namespace

std::vector<TwoCatPtr> small_twocats() {
    static std::once_flag once;
    static std::vector<TwoCatPtr> cache;
    std::call_once(once, [] {
        std::vector<TwoCat> raw;
        raw.push_back(empty_twocat());
        for (auto d : hom_options(true)) catalog_entry(1, {d}, raw);
        for (auto d0 : hom_options(true))
            for (auto d1 : hom_options(true))
                for (auto o01 : hom_options(false))
                    for (auto o10 : hom_options(false)) catalog_entry(2, {d0, o01, o10, d1}, raw);
        for (auto& c : raw) {
            auto p = share(std::move(c));
            bool dup = false;
            for (auto& q : cache)
                if (q->n0() == p->n0() && q->n1() == p->n1() && q->n2() == p->n2() && find_isomorphism(q, p)) {
                    dup = true;
                    break;
                }
            if (!dup) cache.push_back(p);
        }
    });
    return cache;
}

// ---------------------------------------------------------------- universal property

namespace {

// Number of 2-functors P -> C restricting to j on A' and to w on B, capped at 2.
int count_mediators(const CocartSquare& sq, const TwoFunctor& j, const TwoFunctor& w, Budget& budget) {
    const TwoCat& P = *sq.apex();
    FunctorSearch q{&P, j.tgt.get(), std::vector<int>(P.n0(), -1), std::vector<int>(P.n1(), -1),
                    std::vector<int>(P.n2(), -1), false};
    auto pin = [](std::vector<int>& slot, const std::vector<int>& via, const std::vector<int>& val) {
        for (std::size_t k = 0; k < via.size(); ++k) {
            int& s = slot[via[k]];
            if (s >= 0 && s != val[k]) return false;
            s = val[k];
        }
        return true;
    };
    if (!pin(q.obj, sq.i2.obj, j.obj) || !pin(q.one, sq.i2.one, j.one) || !pin(q.two, sq.i2.two, j.two)) return 0;
    if (!pin(q.obj, sq.v.obj, w.obj) || !pin(q.one, sq.v.one, w.one) || !pin(q.two, sq.v.two, w.two)) return 0;
    int found = 0;
    enumerate_2functors(q, budget, [&](const auto&, const auto&, const auto&) { return ++found < 2; });
    return found;
}

}  // namespace

CocartesianReport verify_cocartesian(const CocartSquare& sq, const std::vector<Cocone>& probes,
                                     const CocartesianOptions& opt) {
    CocartesianReport rep;
    Budget budget(opt.budget, "cocartesian check");
    auto run = [&](const TwoFunctor& j, const TwoFunctor& w, const std::string& label) {
        ++rep.probes;
        if (!same_functor(compose(w, sq.i), compose(j, sq.u))) {
            rep.failures.push_back(label + ": not a cocone");
            rep.ok = false;
            return;
        }
        int n = count_mediators(sq, j, w, budget);
        if (n != 1) {
            rep.ok = false;
            if (rep.failures.size() < 20)
                rep.failures.push_back(label + ": " + (n == 0 ? "no mediating 2-functor" : "mediating 2-functor not unique"));
        }
    };
    for (std::size_t k = 0; k < probes.size(); ++k) run(probes[k].j, probes[k].w, "probe " + std::to_string(k));
    if (!opt.auto_probes) return rep;

    run(sq.i2, sq.v, "canonical cocone");
    const TwoCat& A = *sq.i.src;
    const TwoCat& B = *sq.i.tgt;
    const TwoCat& A2 = *sq.u.tgt;
    auto targets = opt.targets.empty() ? small_twocats() : opt.targets;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const auto& C = targets[t];
        FunctorSearch qj{&A2, C.get(), {}, {}, {}, false};
        enumerate_2functors(qj, budget, [&](const auto& jo, const auto& j1, const auto& j2) {
            TwoFunctor j{sq.u.tgt, C, jo, j1, j2};
            FunctorSearch qw{&B, C.get(), std::vector<int>(B.n0(), -1), std::vector<int>(B.n1(), -1),
                             std::vector<int>(B.n2(), -1), false};
            for (int x = 0; x < A.n0(); ++x) qw.obj[sq.i.obj[x]] = jo[sq.u.obj[x]];
            for (int f = 0; f < A.n1(); ++f) qw.one[sq.i.one[f]] = j1[sq.u.one[f]];
            for (int a = 0; a < A.n2(); ++a) qw.two[sq.i.two[a]] = j2[sq.u.two[a]];
            enumerate_2functors(qw, budget, [&](const auto& wo, const auto& w1, const auto& w2) {
                run(j, TwoFunctor{sq.i.tgt, C, wo, w1, w2}, "target " + std::to_string(t));
                return true;
            });
            return true;
        });
    }
    return rep;
}

// ---------------------------------------------------------------- extension of retract structures

RetractStructure extend_retract(const CocartSquare& sq, const RetractStructure& s) {
    require_provenance(sq);
    if (!check_retract_structure(s).ok()) throw PreconditionError("extend_retract needs a retract structure satisfying RDF1 and RDF2");
    const TwoCat& B = *sq.i.tgt;
    const TwoCat& P = *sq.apex();
    const TwoFunctor& v = sq.v;
    const auto& H = s.h;

    auto rp = mediate(sq, identity_functor(sq.u.tgt), compose(sq.u, s.r));
    TwoFunctor r2{sq.apex(), sq.u.tgt, rp.obj, rp.one, rp.two};
    auto ir = compose(sq.i2, r2);

    auto ip = interval_product(sq.apex());
    OplaxFunctor Hp{ip.c, sq.apex(), {}, {}, {}, {}};
    Hp.obj.resize(ip.c->n0());
    Hp.one.resize(ip.c->n1());
    Hp.two.resize(ip.c->n2());
    for (int x = 0; x < P.n0(); ++x) {
        Hp.obj[ip.object(0, x)] = ir.obj[x];
        Hp.obj[ip.object(1, x)] = x;
    }
    auto h1 = [&](int f) {
        switch (sq.origin1[f]) {
        case kFromA2: return f;
        case kFromB: return v.one[H.one(2, sq.ref1[f])];
        default: return P.compose(v.one[H.one(2, sq.rep1[f].second)], sq.i2.one[sq.rep1[f].first]);
        }
    };
    for (int f = 0; f < P.n1(); ++f) {
        Hp.one[ip.one(0, f)] = ir.one[f];
        Hp.one[ip.one(1, f)] = f;
        Hp.one[ip.one(2, f)] = h1(f);
    }
    for (int a = 0; a < P.n2(); ++a) {
        Hp.two[ip.two(0, a)] = ir.two[a];
        Hp.two[ip.two(1, a)] = a;
        int c;
        switch (sq.origin2[a]) {
        case kFromA2: c = a; break;
        case kFromB: c = v.two[H.two(2, sq.ref2[a])]; break;
        default:
            c = P.id2[Hp.one[ip.one(2, P.two[a].src)]];
            for (const auto& t : sq.rep2[a]) c = P.vcompose(P.hcompose(v.two[H.two(2, t.second)], sq.i2.two[t.first]), c);
        }
        Hp.two[ip.two(2, a)] = c;
    }
    const TwoCat& I = *ip.c;
    auto from_a2 = [&](int x) { return sq.origin0[x] == kFromA2; };
    for (int f = 0; f < I.n1(); ++f)
        for (int g : I.out1[I.one[f].tgt]) {
            int gf = I.compose(g, f);
            int pg = ip.phi_of(g), pf = ip.phi_of(f);
            int bg = ip.part_of(g), bf = ip.part_of(f);
            int c = P.id2[Hp.one[gf]];
            bool trivial = (pg != 2 && bg == P.id1[P.one[bg].src]) || (pf != 2 && bf == P.id1[P.one[bf].src]);
            if (!trivial && (pg == 2 || pf == 2)) {
                int x = P.one[bf].src, y = P.one[bf].tgt, z = P.one[bg].tgt;
                if (from_a2(x) && from_a2(y) && from_a2(z)) {
                    // identity
                } else if (!from_a2(x)) {
                    c = v.two[H.constraint(pg, sq.ref1[bg], pf, sq.ref1[bf])];
                } else if (from_a2(y)) {
                    if (pg == 1) {
                        const auto& t = sq.rep1[bg];
                        int inner = H.constraint(1, t.second, 2, B.id1[B.one[t.second].src]);
                        c = P.whisker_right(v.two[inner], P.compose(sq.i2.one[t.first], bf));
                    }
                } else {
                    const auto& t = sq.rep1[bf];
                    c = P.whisker_right(v.two[H.constraint(pg, sq.ref1[bg], pf, t.second)], sq.i2.one[t.first]);
                }
            }
            Hp.constraint[pair_key(g, f)] = c;
        }
    return RetractStructure{sq.i2, r2, OplaxHomotopy{ip, Hp}};
}

namespace {

// Cells of the interval product of B mapped along 1 x v.
struct CylinderMap {
    std::vector<int> obj, one, two;
};

CylinderMap cylinder_map(const CocartSquare& sq, const IntervalProduct& ib, const IntervalProduct& ip) {
    CylinderMap m;
    const TwoCat& B = *sq.i.tgt;
    m.obj.resize(ib.c->n0());
    m.one.resize(ib.c->n1());
    m.two.resize(ib.c->n2());
    for (int eps = 0; eps < 2; ++eps)
        for (int x = 0; x < B.n0(); ++x) m.obj[ib.object(eps, x)] = ip.object(eps, sq.v.obj[x]);
    for (int phi = 0; phi < 3; ++phi) {
        for (int f = 0; f < B.n1(); ++f) m.one[ib.one(phi, f)] = ip.one(phi, sq.v.one[f]);
        for (int a = 0; a < B.n2(); ++a) m.two[ib.two(phi, a)] = ip.two(phi, sq.v.two[a]);
    }
    return m;
}

}  // namespace

std::vector<std::string> extension_compatibility(const CocartSquare& sq, const RetractStructure& s,
                                                 const RetractStructure& t, std::size_t max_reports) {
    std::vector<std::string> out;
    Reporter report(out, max_reports);
    if (!same_functor(compose(t.r, sq.v), compose(sq.u, s.r))) report("r' v differs from u r");
    const auto& ib = s.h.ip;
    const auto& ip = t.h.ip;
    auto m = cylinder_map(sq, ib, ip);
    const auto& H = s.h.h;
    const auto& Hp = t.h.h;
    const TwoCat& I = *ib.c;
    for (int x = 0; x < I.n0(); ++x)
        if (Hp.obj[m.obj[x]] != sq.v.obj[H.obj[x]]) report("H'(1 x v) differs from v H on object " + I.objects[x]);
    for (int f = 0; f < I.n1(); ++f)
        if (Hp.one[m.one[f]] != sq.v.one[H.one[f]]) report("H'(1 x v) differs from v H on 1-cell " + I.one[f].name);
    for (int a = 0; a < I.n2(); ++a)
        if (Hp.two[m.two[a]] != sq.v.two[H.two[a]]) report("H'(1 x v) differs from v H on 2-cell " + I.two[a].name);
    for (int f = 0; f < I.n1(); ++f)
        for (int g : I.out1[I.one[f].tgt])
            if (Hp.at(m.one[g], m.one[f]) != sq.v.two[H.at(g, f)])
                report("H'(1 x v) differs from v H on the constraint at (" + I.one[g].name + ", " + I.one[f].name + ")");
    // mixed cells: H'(phi, (f2, f1)) = v H(phi, f2) f1 for phi = 0 and 0 -> 1
    const TwoCat& P = *sq.apex();
    if (sq.has_provenance())
        for (int f = 0; f < P.n1(); ++f) {
            if (sq.origin1[f] != kMixed) continue;
            const auto& tr = sq.rep1[f];
            for (int phi : {0, 2})
                if (Hp.one[ip.one(phi, f)] != P.compose(sq.v.one[s.h.one(phi, tr.second)], sq.i2.one[tr.first]))
                    report("H'(" + std::to_string(phi) + ", " + P.one[f].name + ") differs from v H(" + std::to_string(phi) + ", f2) f1");
        }
    return out;
}

HomotopyPins compatibility_pins(const CocartSquare& sq, const RetractStructure& s) {
    auto ip = interval_product(sq.apex());
    const auto& ib = s.h.ip;
    auto m = cylinder_map(sq, ib, ip);
    HomotopyPins pins;
    pins.one.assign(ip.c->n1(), -1);
    pins.two.assign(ip.c->n2(), -1);
    const auto& H = s.h.h;
    const TwoCat& I = *ib.c;
    for (int f = 0; f < I.n1(); ++f) pins.one[m.one[f]] = sq.v.one[H.one[f]];
    for (int a = 0; a < I.n2(); ++a) pins.two[m.two[a]] = sq.v.two[H.two[a]];
    for (int f = 0; f < I.n1(); ++f)
        for (int g : I.out1[I.one[f].tgt]) pins.constraint[pair_key(m.one[g], m.one[f])] = sq.v.two[H.at(g, f)];
    return pins;
}

}  // namespace cat2

namespace cat2 {

CocartSquare cosieve_square(const TwoCatPtr& x, const std::vector<char>& u1, const std::vector<char>& u2) {
    const TwoCat& X = *x;
    if (static_cast<int>(u1.size()) != X.n0() || static_cast<int>(u2.size()) != X.n0()) throw ShapeError("object masks have the wrong size");
    for (int f = 0; f < X.n1(); ++f)
        for (const auto* u : {&u1, &u2})
            if ((*u)[X.one[f].tgt] && !(*u)[X.one[f].src]) throw NotASieve("object mask is not closed under precomposition");
    for (int o = 0; o < X.n0(); ++o)
        if (u1[o] && u2[o]) throw ShapeError("sieves are not disjoint");
    auto full = [&](const TwoCatPtr& c, const std::function<bool(int)>& keep_obj) {
        std::vector<char> k0(c->n0()), k1(c->n1()), k2(c->n2());
        for (int o = 0; o < c->n0(); ++o) k0[o] = keep_obj(o);
        for (int f = 0; f < c->n1(); ++f) k1[f] = k0[c->one[f].src] && k0[c->one[f].tgt];
        for (int a = 0; a < c->n2(); ++a) k2[a] = k1[c->two[a].src];
        return sub_twocat(c, k0, k1, k2);
    };
    auto c1 = full(x, [&](int o) { return !u1[o]; });
    auto c2 = full(x, [&](int o) { return !u2[o]; });
    auto c12 = full(c1.c, [&](int o) { return !u2[c1.inclusion.obj[o]]; });
    auto to_x = compose(c1.inclusion, c12.inclusion);
    auto pull = [](const std::vector<int>& into_x, const std::vector<int>& c2_to_x, std::size_t nx) {
        std::vector<int> inv(nx, -1), out;
        for (std::size_t k = 0; k < c2_to_x.size(); ++k) inv[c2_to_x[k]] = static_cast<int>(k);
        for (int v : into_x) out.push_back(inv[v]);
        return out;
    };
    TwoFunctor u{c12.c, c2.c, pull(to_x.obj, c2.inclusion.obj, X.n0()), pull(to_x.one, c2.inclusion.one, X.n1()),
                 pull(to_x.two, c2.inclusion.two, X.n2())};
    CocartSquare sq;
    sq.i = c12.inclusion;
    sq.u = u;
    sq.i2 = c2.inclusion;
    sq.v = c1.inclusion;
    return sq;
}

}  // namespace cat2
