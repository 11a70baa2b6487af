#include "cat2/oplax.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>

namespace cat2 {

namespace {

class Reporter {
public:
    Reporter(std::vector<std::string>& out, std::size_t max) : out_(out), max_(max) {}
    void operator()(const std::string& msg) {
        if (out_.size() < max_) out_.push_back(msg);
    }
    bool full() const { return out_.size() >= max_; }

private:
    std::vector<std::string>& out_;
    std::size_t max_;
};

std::string nm1(const TwoCat& c, int f) { return f >= 0 && f < c.n1() ? c.one[f].name : "?"; }
std::string nm2(const TwoCat& c, int a) { return a >= 0 && a < c.n2() ? c.two[a].name : "?"; }

bool is_identity1(const TwoCat& c, int f) { return f == c.id1[c.one[f].src]; }

// Composable pairs (g, f) of 1-cells.
template <class F>
void for_each_composable(const TwoCat& c, F&& fn) {
    for (int f = 0; f < c.n1(); ++f)
        for (int g : c.out1[c.one[f].tgt]) fn(g, f);
}

std::vector<char> image_mask(int n, const std::vector<int>& values) {
    std::vector<char> m(n, 0);
    for (int v : values) m[v] = 1;
    return m;
}

}  // namespace

// ---------------------------------------------------------------- basics

OplaxFunctor coerce(const TwoFunctor& f) {
    OplaxFunctor o{f.src, f.tgt, f.obj, f.one, f.two, {}};
    for_each_composable(*f.src, [&](int g, int h) { o.constraint[pair_key(g, h)] = f.tgt->id2[f.one[f.src->compose(g, h)]]; });
    return o;
}

bool is_strict(const OplaxFunctor& f) {
    bool strict = true;
    for_each_composable(*f.src, [&](int g, int h) {
        int c = f.at(g, h);
        if (c < 0 || c != f.tgt->id2[f.one[f.src->compose(g, h)]]) strict = false;
    });
    return strict;
}

TwoFunctor strict_part(const OplaxFunctor& f) {
    if (!is_strict(f)) throw ShapeError("oplax functor has a nontrivial constraint");
    return TwoFunctor{f.src, f.tgt, f.obj, f.one, f.two};
}

bool same_oplax(const OplaxFunctor& a, const OplaxFunctor& b) {
    return a.obj == b.obj && a.one == b.one && a.two == b.two && a.constraint == b.constraint;
}

std::vector<std::string> validate_oplax(const OplaxFunctor& F, std::size_t max_reports) {
    std::vector<std::string> out;
    Reporter report(out, max_reports);
    const TwoCat& a = *F.src;
    const TwoCat& b = *F.tgt;
    if (static_cast<int>(F.obj.size()) != a.n0() || static_cast<int>(F.one.size()) != a.n1() ||
        static_cast<int>(F.two.size()) != a.n2()) {
        report("assignment sizes do not match the source");
        return out;
    }
    auto in = [](int v, int n) { return v >= 0 && v < n; };
    for (int v : F.obj)
        if (!in(v, b.n0())) report("object value out of range");
    for (int v : F.one)
        if (!in(v, b.n1())) report("1-cell value out of range");
    for (int v : F.two)
        if (!in(v, b.n2())) report("2-cell value out of range");
    if (!out.empty()) return out;

    for (int f = 0; f < a.n1(); ++f)
        if (b.one[F.one[f]].src != F.obj[a.one[f].src] || b.one[F.one[f]].tgt != F.obj[a.one[f].tgt])
            report("typing: image of 1-cell " + a.one[f].name + " has the wrong endpoints");
    for (int x = 0; x < a.n2(); ++x)
        if (b.two[F.two[x]].src != F.one[a.two[x].src] || b.two[F.two[x]].tgt != F.one[a.two[x].tgt])
            report("typing: image of 2-cell " + a.two[x].name + " has the wrong endpoints");
    if (!out.empty()) return out;

    for (int x = 0; x < a.n0(); ++x)
        if (F.one[a.id1[x]] != b.id1[F.obj[x]]) report("normalization: identity of " + a.objects[x] + " not preserved");
    for (int f = 0; f < a.n1(); ++f)
        if (F.two[a.id2[f]] != b.id2[F.one[f]]) report("unit: identity 2-cell of " + a.one[f].name + " not preserved");

    bool typed = true;
    for_each_composable(a, [&](int g, int f) {
        std::string site = "(" + a.one[g].name + ", " + a.one[f].name + ")";
        int c = F.at(g, f);
        if (!in(c, b.n2())) {
            report("constraint missing at " + site);
            typed = false;
            return;
        }
        int gf = a.compose(g, f);
        if (b.two[c].src != F.one[gf] || b.two[c].tgt != b.compose(F.one[g], F.one[f])) {
            report("constraint at " + site + " has the wrong source or target");
            typed = false;
            return;
        }
        if ((is_identity1(a, g) || is_identity1(a, f)) && c != b.id2[F.one[gf]])
            report("normalization: constraint at " + site + " is not an identity");
    });
    if (!typed) return out;

    // cocycle: (F(h) * F(g,f)) . F(h,gf) = (F(h,g) * F(f)) . F(hg,f)
    for_each_composable(a, [&](int g, int f) {
        if (report.full()) return;
        int gf = a.compose(g, f);
        for (int h : a.out1[a.one[g].tgt]) {
            int hg = a.compose(h, g);
            int lhs = b.vcompose(b.whisker_left(F.one[h], F.at(g, f)), F.at(h, gf));
            int rhs = b.vcompose(b.whisker_right(F.at(h, g), F.one[f]), F.at(hg, f));
            if (lhs < 0 || lhs != rhs)
                report("cocycle fails at (" + a.one[h].name + ", " + a.one[g].name + ", " + a.one[f].name + ")");
        }
    });

    for (int x = 0; x < a.n2(); ++x)
        for (int y : a.out2[a.two[x].tgt])
            if (F.two[a.vcompose(y, x)] != b.vcompose(F.two[y], F.two[x]))
                report("vertical composite " + a.two[y].name + " . " + a.two[x].name + " not preserved");

    // F(l,g) . F(beta * alpha) = (F(beta) * F(alpha)) . F(k,f)
    for (int al = 0; al < a.n2() && !report.full(); ++al) {
        int f = a.two[al].src, g = a.two[al].tgt;
        for (int k : a.out1[a.one[f].tgt])
            for (int be : a.out2[k]) {
                int l = a.two[be].tgt;
                int lhs = b.vcompose(F.at(l, g), F.two[a.hcompose(be, al)]);
                int rhs = b.vcompose(b.hcompose(F.two[be], F.two[al]), F.at(k, f));
                if (lhs < 0 || lhs != rhs)
                    report("horizontal compatibility fails at (" + a.two[be].name + ", " + a.two[al].name + ")");
            }
    }
    return out;
}

OplaxFunctor compose_oplax(const OplaxFunctor& G, const OplaxFunctor& F) {
    if (F.tgt->n0() != G.src->n0() || F.tgt->n1() != G.src->n1() || F.tgt->n2() != G.src->n2())
        throw ShapeError("oplax functors are not composable");
    OplaxFunctor h{F.src, G.tgt, {}, {}, {}, {}};
    for (int v : F.obj) h.obj.push_back(G.obj[v]);
    for (int v : F.one) h.one.push_back(G.one[v]);
    for (int v : F.two) h.two.push_back(G.two[v]);
    const TwoCat& c = *G.tgt;
    for_each_composable(*F.src, [&](int g, int f) {
        int inner = G.two[F.at(g, f)];
        h.constraint[pair_key(g, f)] = c.vcompose(G.at(F.one[g], F.one[f]), inner);
    });
    return h;
}

SMap nerve_oplax(const OplaxFunctor& F, const Nerve2& a, const Nerve2& b) {
    int cap = std::min(a.x->cap, b.x->cap);
    SMap out{a.x, b.x, {}};
    const TwoCat& t = *F.tgt;
    for (int m = 0; m <= cap; ++m) {
        std::vector<int> col(a.x->count[m]);
        for (int c = 0; c < a.x->count[m]; ++c) {
            const auto& s = a.cells[m][c];
            std::vector<int> img(s.size());
            for (int p = 0; p <= m; ++p) img[p] = F.obj[s[p]];
            for (int j = 1; j <= m; ++j)
                for (int i = 0; i < j; ++i) img[f_pos(m, j, i)] = F.one[s[f_pos(m, j, i)]];
            for (int k = 2; k <= m; ++k)
                for (int j = 1; j < k; ++j)
                    for (int i = 0; i < j; ++i)
                        img[a_pos(m, k, j, i)] = t.vcompose(F.at(s[f_pos(m, k, j)], s[f_pos(m, j, i)]),
                                                            F.two[s[a_pos(m, k, j, i)]]);
            auto it = b.index[m].find(img);
            if (it == b.index[m].end()) throw ShapeError("image simplex missing from the target nerve");
            col[c] = it->second;
        }
        out.map.push_back(std::move(col));
    }
    return out;
}

SMap nerve_oplax(const OplaxFunctor& f, int cap) {
    return nerve_oplax(f, nerve2(f.src, cap), nerve2(f.tgt, cap));
}

// ---------------------------------------------------------------- homotopies

OplaxFunctor OplaxHomotopy::end(int eps) const { return compose_oplax(h, coerce(eps ? ip.d1 : ip.d0)); }

std::vector<std::string> RetractReport::all() const {
    std::vector<std::string> out;
    for (auto* part : {&retraction, &homotopy, &rdf1, &rdf2}) out.insert(out.end(), part->begin(), part->end());
    return out;
}

RetractReport check_retract_structure(const RetractStructure& s) {
    auto sv = sieve2_analyze(s.i);
    if (!sv.is_sieve) throw NotASieve("retract structure on a functor that is not a sieve");
    RetractReport rep;
    const TwoCat& A = *s.i.src;
    const TwoCat& B = *s.i.tgt;
    Reporter rr(rep.retraction, 20), hr(rep.homotopy, 20), r1(rep.rdf1, 20), r2(rep.rdf2, 20);

    auto rv = validate_functor(s.r);
    for (auto& m : rv) rr("r: " + m);
    if (!rv.empty()) return rep;
    if (!same_functor(compose(s.r, s.i), identity_functor(s.i.src))) rr("r o i is not the identity");

    const auto& H = s.h;
    if (H.h.src != H.ip.c || H.ip.n1a != B.n1() || H.ip.na != B.n0() || H.ip.n2a != B.n2()) {
        hr("homotopy is not defined on the interval product of the target");
        return rep;
    }
    auto hv = validate_oplax(H.h);
    for (auto& m : hv) hr("H: " + m);
    if (!hv.empty()) return rep;
    auto ir = compose(s.i, s.r);
    if (!same_oplax(H.end(0), coerce(ir))) hr("H restricted to {0} x B is not i r");
    if (!same_oplax(H.end(1), coerce(identity_functor(s.i.tgt)))) hr("H restricted to {1} x B is not the identity");

    // RDF1: H(1 x i) = i p_A
    auto in1 = image_mask(B.n1(), s.i.one);
    for (int phi = 0; phi < 3; ++phi) {
        for (int x = 0; x < A.n0(); ++x)
            if (phi < 2 && H.obj(phi, s.i.obj[x]) != s.i.obj[x]) r1("H(" + std::to_string(phi) + ", " + A.objects[x] + ") moved");
        for (int f = 0; f < A.n1(); ++f)
            if (H.one(phi, s.i.one[f]) != s.i.one[f]) r1("H on (" + std::to_string(phi) + ", " + A.one[f].name + ") moved");
        for (int a = 0; a < A.n2(); ++a)
            if (H.two(phi, s.i.two[a]) != s.i.two[a]) r1("H on (" + std::to_string(phi) + ", " + A.two[a].name + ") moved");
    }
    const TwoCat& P = *H.ip.c;
    for_each_composable(P, [&](int g, int f) {
        if (!in1[H.ip.part_of(g)] || !in1[H.ip.part_of(f)]) return;
        if (H.h.at(g, f) != B.id2[H.h.one[P.compose(g, f)]]) r1("constraint at (" + P.one[g].name + ", " + P.one[f].name + ") is not trivial");
    });

    // RDF2: H(0 -> 1, gf) = H(0 -> 1, g) H(0, f) with trivial constraint when f is in A
    for (int f = 0; f < B.n1(); ++f) {
        if (!in1[f]) continue;
        for (int g : B.out1[B.one[f].tgt]) {
            int gf = B.compose(g, f);
            int expect = B.compose(H.one(2, g), H.one(0, f));
            std::string site = "(" + B.one[g].name + ", " + B.one[f].name + ")";
            if (H.one(2, gf) != expect) r2("H(0->1, gf) differs from H(0->1, g) H(0, f) at " + site);
            else if (H.constraint(2, g, 0, f) != B.id2[expect]) r2("constraint H((0->1, g), (0, f)) not trivial at " + site);
        }
    }
    return rep;
}

std::vector<std::string> retract_identities(const RetractStructure& s, std::size_t max_reports) {
    std::vector<std::string> out;
    Reporter report(out, max_reports);
    const TwoCat& A = *s.i.src;
    const TwoCat& B = *s.i.tgt;
    const auto& H = s.h;
    for (int x = 0; x < A.n0(); ++x)
        if (H.obj(0, s.i.obj[x]) != s.i.obj[x]) report("H(0, " + A.objects[x] + ") differs");
    for (int f = 0; f < A.n1(); ++f)
        if (H.one(0, s.i.one[f]) != s.i.one[f]) report("H(0, " + A.one[f].name + ") differs");
    for (int a = 0; a < A.n2(); ++a)
        if (H.two(0, s.i.two[a]) != s.i.two[a]) report("H(0, " + A.two[a].name + ") differs");
    auto in1 = image_mask(B.n1(), s.i.one);
    auto in2 = image_mask(B.n2(), s.i.two);

    for (int f = 0; f < B.n1(); ++f) {
        if (!in1[f]) continue;
        for (int g : B.out1[B.one[f].tgt]) {
            int gf = B.compose(g, f);
            if (H.one(2, gf) != B.compose(H.one(2, g), f)) report("A1 fails at (" + nm1(B, g) + ", " + nm1(B, f) + ")");
            for (int h : B.out1[B.one[g].tgt]) {
                std::string site = "(" + nm1(B, h) + ", " + nm1(B, g) + ", " + nm1(B, f) + ")";
                if (H.constraint(2, h, 0, gf) != B.whisker_right(H.constraint(2, h, 0, g), f)) report("B1 fails at " + site);
                if (H.constraint(1, h, 2, gf) != B.whisker_right(H.constraint(1, h, 2, g), f)) report("B2 fails at " + site);
                if (!in1[g]) continue;
                int hg = B.compose(h, g);
                int z = B.one[g].tgt;
                if (H.constraint(1, hg, 2, f) != H.constraint(1, h, 2, gf)) report("B3 fails at " + site);
                if (H.constraint(1, hg, 2, f) != B.whisker_right(H.constraint(1, h, 2, B.id1[z]), gf))
                    report("B4 fails at " + site);
            }
        }
    }
    for (int al = 0; al < B.n2(); ++al) {
        if (!in2[al]) continue;
        for (int k : B.out1[B.obj_tgt2(al)])
            for (int be : B.out2[k])
                if (H.two(2, B.hcompose(be, al)) != B.hcompose(H.two(2, be), al))
                    report("A2 fails at (" + nm2(B, be) + ", " + nm2(B, al) + ")");
    }
    return out;
}

// ---------------------------------------------------------------- poset sieves

namespace {

// Fills every constraint with the unique comparison 2-cell of a poset-enriched target.
bool fill_poset_constraints(OplaxFunctor& F) {
    const TwoCat& a = *F.src;
    const TwoCat& b = *F.tgt;
    bool ok = true;
    for_each_composable(a, [&](int g, int f) {
        int c = b.cell_between(F.one[a.compose(g, f)], b.compose(F.one[g], F.one[f]));
        if (c < 0) ok = false;
        F.constraint[pair_key(g, f)] = c;
    });
    return ok;
}

}  // namespace

PosetRetract poset_sieve_retract(const MonotoneMap& i, const MonotoneMap& r) {
    auto rep = analyze_sieve(i, r);
    if (!rep.is_sieve || !rep.retraction_is_right_adjoint.value_or(false))
        throw PreconditionError("poset_sieve_retract needs a sieve with its right adjoint retraction");
    PosetRetract out{o_poset(i.source), o_poset(i.target), {}};
    const OPoset& ob = out.b;
    const TwoCat& B = *ob.c;
    out.s.i = o_map(i, out.a, ob);
    out.s.r = o_map(r, ob, out.a);
    auto ip = interval_product(ob.c);
    std::vector<char> in_sub(i.target.size(), 0);
    for (int x : i.map) in_sub[x] = 1;
    auto ir = [&](int x) { return i(r(x)); };

    OplaxFunctor H{ip.c, ob.c, {}, {}, {}, {}};
    H.obj.resize(ip.c->n0());
    H.one.resize(ip.c->n1());
    H.two.resize(ip.c->n2());
    for (int x = 0; x < B.n0(); ++x) {
        H.obj[ip.object(0, x)] = ir(x);
        H.obj[ip.object(1, x)] = x;
    }
    for (int S = 0; S < B.n1(); ++S) {
        const auto& cs = ob.chain[S];
        std::vector<int> img;
        for (int x : cs) img.push_back(ir(x));
        H.one[ip.one(0, S)] = ob.one_of(img);
        H.one[ip.one(1, S)] = S;
        std::vector<int> mixed;
        for (int x : cs)
            if (in_sub[x]) mixed.push_back(x);
        if (mixed.empty()) mixed.push_back(ir(cs.front()));
        mixed.push_back(cs.back());
        H.one[ip.one(2, S)] = ob.one_of(mixed);
    }
    for (int phi = 0; phi < 3; ++phi)
        for (int a = 0; a < B.n2(); ++a) {
            int c = B.cell_between(H.one[ip.one(phi, B.two[a].src)], H.one[ip.one(phi, B.two[a].tgt)]);
            if (c < 0) throw ShapeError("homotopy formula is not monotone on " + B.two[a].name);
            H.two[ip.two(phi, a)] = c;
        }
    if (!fill_poset_constraints(H)) throw ShapeError("homotopy formula has no constraint cell");
    out.s.h = OplaxHomotopy{ip, H};
    return out;
}

// ---------------------------------------------------------------- enumeration

std::vector<TwoFunctor> retractions(const TwoFunctor& i, std::uint64_t budget_nodes) {
    FunctorSearch q;
    q.a = i.tgt.get();
    q.b = i.src.get();
    q.obj.assign(i.tgt->n0(), -1);
    q.one.assign(i.tgt->n1(), -1);
    q.two.assign(i.tgt->n2(), -1);
    for (int x = 0; x < i.src->n0(); ++x) q.obj[i.obj[x]] = x;
    for (int f = 0; f < i.src->n1(); ++f) q.one[i.one[f]] = f;
    for (int a = 0; a < i.src->n2(); ++a) q.two[i.two[a]] = a;
    Budget budget(budget_nodes, "retraction search");
    std::vector<TwoFunctor> out;
    enumerate_2functors(q, budget, [&](const auto& o, const auto& one, const auto& two) {
        out.push_back(TwoFunctor{i.tgt, i.src, o, one, two});
        return true;
    });
    return out;
}

namespace {

class HomotopySearch {
public:
    HomotopySearch(const TwoFunctor& i, const TwoFunctor& r, Budget& budget, const HomotopyPins& pins)
        : B_(*i.tgt), ip_(interval_product(i.tgt)), P_(*ip_.c), budget_(budget) {
        auto ir = compose(i, r);
        auto in1 = image_mask(B_.n1(), i.one);
        auto in2 = image_mask(B_.n2(), i.two);
        H_ = OplaxFunctor{ip_.c, i.tgt, {}, {}, {}, {}};
        H_.obj.resize(P_.n0());
        H_.one.assign(P_.n1(), -1);
        H_.two.assign(P_.n2(), -1);
        for (int x = 0; x < B_.n0(); ++x) {
            H_.obj[ip_.object(0, x)] = ir.obj[x];
            H_.obj[ip_.object(1, x)] = x;
        }
        for (int f = 0; f < B_.n1(); ++f) {
            H_.one[ip_.one(0, f)] = ir.one[f];
            H_.one[ip_.one(1, f)] = f;
            if (in1[f]) H_.one[ip_.one(2, f)] = f;
            else if (!pins.one.empty() && pins.one[ip_.one(2, f)] >= 0) H_.one[ip_.one(2, f)] = pins.one[ip_.one(2, f)];
            else free1_.push_back(ip_.one(2, f));
        }
        for (int a = 0; a < B_.n2(); ++a) {
            H_.two[ip_.two(0, a)] = ir.two[a];
            H_.two[ip_.two(1, a)] = a;
            if (in2[a]) H_.two[ip_.two(2, a)] = a;
            else if (!pins.two.empty() && pins.two[ip_.two(2, a)] >= 0) H_.two[ip_.two(2, a)] = pins.two[ip_.two(2, a)];
            else free2_.push_back(ip_.two(2, a));
        }
        for_each_composable(P_, [&](int g, int f) {
            int pg = ip_.phi_of(g), pf = ip_.phi_of(f);
            bool fixed = pg == pf || is_identity1(P_, g) || is_identity1(P_, f) ||
                         (in1[ip_.part_of(g)] && in1[ip_.part_of(f)]);
            if (fixed) {
                fixed_pairs_.emplace_back(g, f);
                return;
            }
            auto it = pins.constraint.find(pair_key(g, f));
            if (it != pins.constraint.end()) H_.constraint[pair_key(g, f)] = it->second;
            else free_pairs_.emplace_back(g, f);
            watch_.emplace_back(g, f);
        });
        // cocycle and compatibility checks fire once their last free datum is set
        std::vector<int> pos2(P_.n2(), -1);
        for (std::size_t t = 0; t < free2_.size(); ++t) pos2[free2_[t]] = static_cast<int>(t);
        vtriggers_.assign(free2_.size() + 1, {});
        for (int a = 0; a < P_.n2(); ++a)
            for (int b : P_.out2[P_.two[a].tgt]) {
                int last = std::max({pos2[a], pos2[b], pos2[P_.vcompose(b, a)]});
                if (last >= 0) vtriggers_[last + 1].emplace_back(b, a);
            }
        std::map<std::uint64_t, int> posc;
        for (std::size_t t = 0; t < free_pairs_.size(); ++t) posc[pair_key(free_pairs_[t].first, free_pairs_[t].second)] = static_cast<int>(t);
        auto at = [&](int g, int f) {
            auto it = posc.find(pair_key(g, f));
            return it == posc.end() ? -1 : it->second;
        };
        ctriggers_.assign(free_pairs_.size() + 1, {});
        htriggers_.assign(free_pairs_.size() + 1, {});
        for_each_composable(P_, [&](int g, int f) {
            for (int h : P_.out1[P_.one[g].tgt]) {
                int last = std::max({at(g, f), at(h, P_.compose(g, f)), at(h, g), at(P_.compose(h, g), f)});
                ctriggers_[last + 1].push_back({h, g, f});
            }
        });
        for (int a = 0; a < P_.n2(); ++a)
            for (int g : P_.out1[P_.obj_tgt2(a)])
                for (int b : P_.out2[g]) {
                    int last = std::max(at(P_.two[b].src, P_.two[a].src), at(P_.two[b].tgt, P_.two[a].tgt));
                    htriggers_[last + 1].emplace_back(b, a);
                }
        // trigger each constraint-existence check once its last free 1-cell is assigned
        std::vector<int> pos(P_.n1(), -1);
        for (std::size_t t = 0; t < free1_.size(); ++t) pos[free1_[t]] = static_cast<int>(t);
        triggers_.assign(free1_.size() + 1, {});
        for (auto [g, f] : watch_) {
            int last = std::max({pos[g], pos[f], pos[P_.compose(g, f)]});
            triggers_[last + 1].emplace_back(g, f);
        }
    }

    void run(const std::function<bool(const OplaxFunctor&)>& visit) {
        visit_ = visit;
        for (auto [g, f] : triggers_[0])
            if (!constraint_possible(g, f)) return;
        stage1(0);
    }

    const IntervalProduct& ip() const { return ip_; }

private:
    bool constraint_possible(int g, int f) {
        int src = H_.one[P_.compose(g, f)];
        int tgt = B_.compose(H_.one[g], H_.one[f]);
        auto it = H_.constraint.find(pair_key(g, f));
        if (it != H_.constraint.end()) return it->second >= 0 && B_.two[it->second].src == src && B_.two[it->second].tgt == tgt;
        for (int c : B_.out2[src])
            if (B_.two[c].tgt == tgt) return true;
        return false;
    }

    bool stage1(std::size_t t) {
        if (t == free1_.size()) return stage2(0);
        int cell = free1_[t];
        int x = H_.obj[P_.one[cell].src], y = H_.obj[P_.one[cell].tgt];
        for (int w : B_.hom(x, y)) {
            budget_.tick();
            H_.one[cell] = w;
            bool ok = true;
            for (auto [g, f] : triggers_[t + 1])
                if (!(ok = constraint_possible(g, f))) break;
            if (ok && !stage1(t + 1)) return false;
        }
        H_.one[cell] = -1;
        return true;
    }

    bool stage2(std::size_t t) {
        if (t == free2_.size()) return stage3(0);
        int cell = free2_[t];
        int s = H_.one[P_.two[cell].src], g = H_.one[P_.two[cell].tgt];
        for (int c : B_.out2[s]) {
            if (B_.two[c].tgt != g) continue;
            budget_.tick();
            H_.two[cell] = c;
            bool ok = true;
            for (auto [b, a] : vtriggers_[t + 1])
                if (!(ok = H_.two[P_.vcompose(b, a)] == B_.vcompose(H_.two[b], H_.two[a]))) break;
            if (ok && !stage2(t + 1)) return false;
        }
        H_.two[cell] = -1;
        return true;
    }

    bool checks_hold(std::size_t t) {
        for (auto [h, g, f] : ctriggers_[t]) {
            int gf = P_.compose(g, f), hg = P_.compose(h, g);
            int lhs = B_.vcompose(B_.whisker_left(H_.one[h], H_.at(g, f)), H_.at(h, gf));
            int rhs = B_.vcompose(B_.whisker_right(H_.at(h, g), H_.one[f]), H_.at(hg, f));
            if (lhs != rhs) return false;
        }
        for (auto [b, a] : htriggers_[t]) {
            int f = P_.two[a].src, k = P_.two[a].tgt, g = P_.two[b].src, l = P_.two[b].tgt;
            int lhs = B_.vcompose(H_.at(l, k), H_.two[P_.hcompose(b, a)]);
            int rhs = B_.vcompose(B_.hcompose(H_.two[b], H_.two[a]), H_.at(g, f));
            if (lhs != rhs) return false;
        }
        return true;
    }

    bool stage3(std::size_t t) {
        if (t == 0) {
            for (auto [g, f] : fixed_pairs_) H_.constraint[pair_key(g, f)] = B_.id2[H_.one[P_.compose(g, f)]];
            if (!checks_hold(0)) return true;
        }
        if (t == free_pairs_.size()) return finish();
        auto [g, f] = free_pairs_[t];
        int src = H_.one[P_.compose(g, f)];
        int tgt = B_.compose(H_.one[g], H_.one[f]);
        for (int c : B_.out2[src]) {
            if (B_.two[c].tgt != tgt) continue;
            budget_.tick();
            H_.constraint[pair_key(g, f)] = c;
            if (checks_hold(t + 1) && !stage3(t + 1)) return false;
        }
        H_.constraint.erase(pair_key(g, f));
        return true;
    }

    bool finish() {
        if (!validate_oplax(H_, 1).empty()) return true;
        return visit_(H_);
    }

    const TwoCat& B_;
    IntervalProduct ip_;
    const TwoCat& P_;
    Budget& budget_;
    OplaxFunctor H_;
    std::vector<int> free1_, free2_;
    std::vector<std::pair<int, int>> fixed_pairs_, free_pairs_, watch_;
    std::vector<std::vector<std::pair<int, int>>> triggers_, vtriggers_, htriggers_;
    std::vector<std::vector<std::array<int, 3>>> ctriggers_;
    std::function<bool(const OplaxFunctor&)> visit_;
};

}  // namespace

std::vector<OplaxHomotopy> enumerate_relative_homotopies(const TwoFunctor& i, const TwoFunctor& r,
                                                         std::uint64_t budget_nodes, const HomotopyPins& pins) {
    if (!sieve2_analyze(i).is_sieve) throw NotASieve("relative homotopies need a sieve");
    if (!same_functor(compose(r, i), identity_functor(i.src))) throw PreconditionError("r does not retract i");
    Budget budget(budget_nodes, "relative homotopy enumeration");
    HomotopySearch search(i, r, budget, pins);
    std::vector<OplaxHomotopy> out;
    search.run([&](const OplaxFunctor& h) {
        out.push_back(OplaxHomotopy{search.ip(), h});
        return true;
    });
    return out;
}

}  // namespace cat2
