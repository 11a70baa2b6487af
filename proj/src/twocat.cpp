#include "cat2/twocat.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cat2 {

namespace {

const std::vector<int> kEmpty;

template <class F>
void for_each_vpair(const TwoCat& c, F&& fn) {
    for (int a = 0; a < c.n2(); ++a)
        for (int b : c.out2[c.two[a].tgt]) fn(b, a);
}

template <class F>
void for_each_hpair(const TwoCat& c, F&& fn) {
    for (int a = 0; a < c.n2(); ++a)
        for (int g : c.out1[c.obj_tgt2(a)])
            for (int b : c.out2[g]) fn(b, a);
}

}  // namespace

int TwoCat::vcompose(int b, int a) const {
    if (two[a].tgt != two[b].src) return -1;
    if (poset_enriched) return cell_between(two[a].src, two[b].tgt);
    return lookup(vcomp, b, a);
}

int TwoCat::hcompose(int b, int a) const {
    if (obj_src2(b) != obj_tgt2(a)) return -1;
    if (poset_enriched) {
        int s = compose(two[b].src, two[a].src), t = compose(two[b].tgt, two[a].tgt);
        if (s < 0 || t < 0) return -1;
        return cell_between(s, t);
    }
    return lookup(hcomp, b, a);
}

int TwoCat::cell_between(int f, int g) const { return lookup(between, f, g); }

const std::vector<int>& TwoCat::hom(int x, int y) const {
    auto it = homs.find(pair_key(x, y));
    return it == homs.end() ? kEmpty : it->second;
}

int TwoCat::find_object(const std::string& name) const {
    for (int x = 0; x < n0(); ++x)
        if (objects[x] == name) return x;
    return -1;
}

int TwoCat::find_one(const std::string& name) const {
    for (int f = 0; f < n1(); ++f)
        if (one[f].name == name) return f;
    return -1;
}

void TwoCat::finalize() {
    out1.assign(n0(), {});
    in1.assign(n0(), {});
    out2.assign(n1(), {});
    in2.assign(n1(), {});
    homs.clear();
    for (int f = 0; f < n1(); ++f) {
        out1[one[f].src].push_back(f);
        in1[one[f].tgt].push_back(f);
        homs[pair_key(one[f].src, one[f].tgt)].push_back(f);
    }
    for (int a = 0; a < n2(); ++a) {
        out2[two[a].src].push_back(a);
        in2[two[a].tgt].push_back(a);
    }
}

TwoCatPtr share(TwoCat c) {
    c.finalize();
    return std::make_shared<const TwoCat>(std::move(c));
}

std::vector<std::string> validate_twocat(const TwoCat& c, std::size_t max_reports) {
    std::vector<std::string> out;
    auto report = [&](const std::string& m) {
        if (out.size() < max_reports) out.push_back(m);
    };
    if (static_cast<int>(c.id1.size()) != c.n0() || static_cast<int>(c.id2.size()) != c.n1()) {
        report("identity tables have the wrong size");
        return out;
    }
    for (int f = 0; f < c.n1(); ++f)
        if (c.one[f].src < 0 || c.one[f].src >= c.n0() || c.one[f].tgt < 0 || c.one[f].tgt >= c.n0())
            report("1-cell " + c.one[f].name + " has endpoints out of range");
    for (int a = 0; a < c.n2(); ++a) {
        const auto& t = c.two[a];
        if (t.src < 0 || t.src >= c.n1() || t.tgt < 0 || t.tgt >= c.n1()) {
            report("2-cell " + t.name + " has endpoints out of range");
            continue;
        }
        if (c.one[t.src].src != c.one[t.tgt].src || c.one[t.src].tgt != c.one[t.tgt].tgt)
            report("2-cell " + t.name + " relates non-parallel 1-cells");
    }
    if (!out.empty()) return out;
    if (c.out1.size() != static_cast<std::size_t>(c.n0()) || c.out2.size() != static_cast<std::size_t>(c.n1())) {
        report("indices not built");
        return out;
    }
    for (int x = 0; x < c.n0(); ++x) {
        int i = c.id1[x];
        if (i < 0 || i >= c.n1() || c.one[i].src != x || c.one[i].tgt != x) report("identity of " + c.objects[x] + " is mistyped");
    }
    for (int f = 0; f < c.n1(); ++f) {
        int i = c.id2[f];
        if (i < 0 || i >= c.n2() || c.two[i].src != f || c.two[i].tgt != f) report("identity 2-cell of " + c.one[f].name + " is mistyped");
    }
    if (!out.empty()) return out;
    auto nm1 = [&](int f) { return c.one[f].name; };
    auto nm2 = [&](int a) { return c.two[a].name; };
    // composition of 1-cells
    for (auto& [key, h] : c.comp) {
        int g = static_cast<int>(key >> 32), f = static_cast<int>(key & 0xffffffffu);
        if (g < 0 || g >= c.n1() || f < 0 || f >= c.n1() || h < 0 || h >= c.n1()) {
            report("composition entry out of range");
            continue;
        }
        if (c.one[f].tgt != c.one[g].src) report("composition defined on non-composable " + nm1(g) + " o " + nm1(f));
    }
    if (!out.empty()) return out;
    for (int f = 0; f < c.n1(); ++f)
        for (int g : c.out1[c.one[f].tgt]) {
            int h = c.compose(g, f);
            if (h < 0) {
                report("missing composite " + nm1(g) + " o " + nm1(f));
                continue;
            }
            if (c.one[h].src != c.one[f].src || c.one[h].tgt != c.one[g].tgt)
                report("composite " + nm1(g) + " o " + nm1(f) + " is mistyped");
        }
    if (!out.empty()) return out;
    for (int f = 0; f < c.n1(); ++f) {
        if (c.compose(c.id1[c.one[f].tgt], f) != f || c.compose(f, c.id1[c.one[f].src]) != f)
            report("unit law fails at " + nm1(f));
        for (int g : c.out1[c.one[f].tgt])
            for (int h : c.out1[c.one[g].tgt])
                if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f))
                    report("associativity fails at " + nm1(h) + ", " + nm1(g) + ", " + nm1(f));
    }
    if (c.poset_enriched) {
        std::set<std::pair<int, int>> seen;
        for (auto& [key, a] : c.between) {
            int f = static_cast<int>(key >> 32), g = static_cast<int>(key & 0xffffffffu);
            if (a < 0 || a >= c.n2() || c.two[a].src != f || c.two[a].tgt != g) report("order table entry mistyped");
        }
        for (int a = 0; a < c.n2(); ++a) {
            if (!seen.emplace(c.two[a].src, c.two[a].tgt).second) report("two 2-cells share source and target at " + nm2(a));
            if (c.cell_between(c.two[a].src, c.two[a].tgt) != a) report("2-cell " + nm2(a) + " missing from the order table");
            if (c.two[a].src != c.two[a].tgt && c.cell_between(c.two[a].tgt, c.two[a].src) >= 0)
                report("hom order is not antisymmetric at " + nm2(a));
        }
    } else {
        for (auto& [key, v] : c.vcomp) {
            int b = static_cast<int>(key >> 32), a = static_cast<int>(key & 0xffffffffu);
            if (b < 0 || a < 0 || b >= c.n2() || a >= c.n2() || v < 0 || v >= c.n2()) report("vertical entry out of range");
            else if (c.two[a].tgt != c.two[b].src) report("vertical composite on non-composable " + nm2(b) + " . " + nm2(a));
        }
        for (auto& [key, v] : c.hcomp) {
            int b = static_cast<int>(key >> 32), a = static_cast<int>(key & 0xffffffffu);
            if (b < 0 || a < 0 || b >= c.n2() || a >= c.n2() || v < 0 || v >= c.n2()) report("horizontal entry out of range");
            else if (c.obj_src2(b) != c.obj_tgt2(a)) report("horizontal composite on non-composable " + nm2(b) + " * " + nm2(a));
        }
    }
    if (!out.empty()) return out;
    // vertical structure
    for_each_vpair(c, [&](int b, int a) {
        int v = c.vcompose(b, a);
        if (v < 0) {
            report("missing vertical composite " + nm2(b) + " . " + nm2(a));
            return;
        }
        if (c.two[v].src != c.two[a].src || c.two[v].tgt != c.two[b].tgt) report("vertical composite " + nm2(b) + " . " + nm2(a) + " is mistyped");
    });
    for_each_hpair(c, [&](int b, int a) {
        int h = c.hcompose(b, a);
        if (h < 0) {
            report("missing horizontal composite " + nm2(b) + " * " + nm2(a));
            return;
        }
        if (c.two[h].src != c.compose(c.two[b].src, c.two[a].src) || c.two[h].tgt != c.compose(c.two[b].tgt, c.two[a].tgt))
            report("horizontal composite " + nm2(b) + " * " + nm2(a) + " is mistyped");
    });
    if (!out.empty()) return out;
    for (int a = 0; a < c.n2(); ++a) {
        if (c.vcompose(a, c.id2[c.two[a].src]) != a || c.vcompose(c.id2[c.two[a].tgt], a) != a)
            report("vertical unit law fails at " + nm2(a));
        for (int b : c.out2[c.two[a].tgt])
            for (int g : c.out2[c.two[b].tgt])
                if (c.vcompose(g, c.vcompose(b, a)) != c.vcompose(c.vcompose(g, b), a))
                    report("vertical associativity fails at " + nm2(g) + ", " + nm2(b) + ", " + nm2(a));
        int x = c.obj_src2(a), y = c.obj_tgt2(a);
        if (c.hcompose(c.id2[c.id1[y]], a) != a || c.hcompose(a, c.id2[c.id1[x]]) != a)
            report("horizontal unit law fails at " + nm2(a));
    }
    for (int f = 0; f < c.n1(); ++f)
        for (int g : c.out1[c.one[f].tgt])
            if (c.hcompose(c.id2[g], c.id2[f]) != c.id2[c.compose(g, f)])
                report("identity 2-cells do not compose horizontally at " + nm1(g) + ", " + nm1(f));
    for_each_hpair(c, [&](int b, int a) {
        int ba = c.hcompose(b, a);
        for (int h : c.out1[c.obj_tgt2(b)])
            for (int g : c.out2[h])
                if (c.hcompose(g, ba) != c.hcompose(c.hcompose(g, b), a))
                    report("horizontal associativity fails at " + nm2(g) + ", " + nm2(b) + ", " + nm2(a));
    });
    // interchange (b2 * a2) . (b1 * a1) = (b2 . b1) * (a2 . a1)
    for_each_vpair(c, [&](int a2, int a1) {
        int a21 = c.vcompose(a2, a1);
        for (int g : c.out1[c.obj_tgt2(a1)])
            for (int b1 : c.out2[g])
                for (int b2 : c.out2[c.two[b1].tgt]) {
                    int lhs = c.vcompose(c.hcompose(b2, a2), c.hcompose(b1, a1));
                    int rhs = c.hcompose(c.vcompose(b2, b1), a21);
                    if (lhs != rhs) report("interchange fails at " + nm2(b2) + ", " + nm2(b1) + ", " + nm2(a2) + ", " + nm2(a1));
                }
    });
    return out;
}

std::vector<std::string> validate_functor(const TwoFunctor& F, std::size_t max_reports) {
    std::vector<std::string> out;
    auto report = [&](const std::string& m) {
        if (out.size() < max_reports) out.push_back(m);
    };
    const TwoCat& a = *F.src;
    const TwoCat& b = *F.tgt;
    if (static_cast<int>(F.obj.size()) != a.n0() || static_cast<int>(F.one.size()) != a.n1() ||
        static_cast<int>(F.two.size()) != a.n2()) {
        report("functor tables have the wrong size");
        return out;
    }
    for (int v : F.obj)
        if (v < 0 || v >= b.n0()) report("object image out of range");
    for (int v : F.one)
        if (v < 0 || v >= b.n1()) report("1-cell image out of range");
    for (int v : F.two)
        if (v < 0 || v >= b.n2()) report("2-cell image out of range");
    if (!out.empty()) return out;
    for (int f = 0; f < a.n1(); ++f)
        if (b.one[F.one[f]].src != F.obj[a.one[f].src] || b.one[F.one[f]].tgt != F.obj[a.one[f].tgt])
            report("image of " + a.one[f].name + " is mistyped");
    for (int x = 0; x < a.n2(); ++x)
        if (b.two[F.two[x]].src != F.one[a.two[x].src] || b.two[F.two[x]].tgt != F.one[a.two[x].tgt])
            report("image of " + a.two[x].name + " is mistyped");
    for (int x = 0; x < a.n0(); ++x)
        if (F.one[a.id1[x]] != b.id1[F.obj[x]]) report("identity of " + a.objects[x] + " not preserved");
    for (int f = 0; f < a.n1(); ++f)
        if (F.two[a.id2[f]] != b.id2[F.one[f]]) report("identity 2-cell of " + a.one[f].name + " not preserved");
    if (!out.empty()) return out;
    for (int f = 0; f < a.n1(); ++f)
        for (int g : a.out1[a.one[f].tgt])
            if (F.one[a.compose(g, f)] != b.compose(F.one[g], F.one[f]))
                report("composite " + a.one[g].name + " o " + a.one[f].name + " not preserved");
    for_each_vpair(a, [&](int y, int x) {
        if (F.two[a.vcompose(y, x)] != b.vcompose(F.two[y], F.two[x]))
            report("vertical composite " + a.two[y].name + " . " + a.two[x].name + " not preserved");
    });
    for_each_hpair(a, [&](int y, int x) {
        if (F.two[a.hcompose(y, x)] != b.hcompose(F.two[y], F.two[x]))
            report("horizontal composite " + a.two[y].name + " * " + a.two[x].name + " not preserved");
    });
    return out;
}

TwoFunctor identity_functor(const TwoCatPtr& c) {
    TwoFunctor f{c, c, {}, {}, {}};
    f.obj.resize(c->n0());
    f.one.resize(c->n1());
    f.two.resize(c->n2());
    std::iota(f.obj.begin(), f.obj.end(), 0);
    std::iota(f.one.begin(), f.one.end(), 0);
    std::iota(f.two.begin(), f.two.end(), 0);
    return f;
}

TwoFunctor compose(const TwoFunctor& g, const TwoFunctor& f) {
    TwoFunctor h{f.src, g.tgt, {}, {}, {}};
    for (int v : f.obj) h.obj.push_back(g.obj[v]);
    for (int v : f.one) h.one.push_back(g.one[v]);
    for (int v : f.two) h.two.push_back(g.two[v]);
    return h;
}

bool same_functor(const TwoFunctor& a, const TwoFunctor& b) {
    return a.obj == b.obj && a.one == b.one && a.two == b.two;
}

bool injective_functor(const TwoFunctor& f) {
    auto inj = [](const std::vector<int>& v) { return std::set<int>(v.begin(), v.end()).size() == v.size(); };
    return inj(f.obj) && inj(f.one) && inj(f.two);
}

TwoCat empty_twocat() {
    TwoCat c;
    c.poset_enriched = true;
    return c;
}

TwoCat point_twocat() { return poset_as_twocat(simplex_poset(0)); }

namespace {

// Locally discrete 2-category on a category given by 1-cells and composition.
void add_identity_two_cells(TwoCat& c) {
    c.two.clear();
    c.id2.clear();
    c.between.clear();
    for (int f = 0; f < c.n1(); ++f) {
        c.id2.push_back(f);
        c.two.push_back({f, f, "1_" + c.one[f].name});
        c.between[pair_key(f, f)] = f;
    }
    c.poset_enriched = true;
}

}  // namespace

TwoCat poset_as_twocat(const Poset& e) {
    TwoCat c;
    c.objects = e.ids();
    std::map<std::pair<int, int>, int> arrow;
    for (int x = 0; x < e.size(); ++x) {
        arrow[{x, x}] = c.n1();
        c.one.push_back({x, x, "1_" + e.id(x)});
        c.id1.push_back(x);
    }
    for (int x = 0; x < e.size(); ++x)
        for (int y = 0; y < e.size(); ++y)
            if (e.lt(x, y)) {
                arrow[{x, y}] = c.n1();
                c.one.push_back({x, y, e.id(x) + "<" + e.id(y)});
            }
    for (auto& [xy, f] : arrow)
        for (int z = 0; z < e.size(); ++z)
            if (e.leq(xy.second, z)) c.comp[pair_key(arrow[{xy.second, z}], f)] = arrow[{xy.first, z}];
    add_identity_two_cells(c);
    c.finalize();
    return c;
}

TwoCat make_category(const std::vector<std::string>& objects, const std::vector<ArrowSpec>& arrows,
                     const std::vector<std::array<std::string, 3>>& composites) {
    TwoCat c;
    c.objects = objects;
    for (int x = 0; x < c.n0(); ++x) {
        c.id1.push_back(c.n1());
        c.one.push_back({x, x, "1_" + objects[x]});
    }
    auto obj = [&](const std::string& name) {
        int x = c.find_object(name);
        if (x < 0) throw IndexError("unknown object " + name);
        return x;
    };
    for (auto& a : arrows) c.one.push_back({obj(a.src), obj(a.tgt), a.name});
    auto arrow = [&](const std::string& name) {
        int f = c.find_one(name);
        if (f < 0) throw IndexError("unknown arrow " + name);
        return f;
    };
    for (int f = 0; f < c.n1(); ++f) {
        c.comp[pair_key(f, c.id1[c.one[f].src])] = f;
        c.comp[pair_key(c.id1[c.one[f].tgt], f)] = f;
    }
    for (auto& [g, f, gf] : composites) {
        int a = arrow(g), b = arrow(f), ab = arrow(gf);
        if (c.one[b].tgt != c.one[a].src || c.one[ab].src != c.one[b].src || c.one[ab].tgt != c.one[a].tgt)
            throw ShapeError("ill-typed composite " + g + " o " + f + " = " + gf);
        c.comp[pair_key(a, b)] = ab;
    }
    add_identity_two_cells(c);
    c.finalize();
    return c;
}

TwoCat locally_posetal(const TwoCat& base, const std::vector<std::pair<int, int>>& generators) {
    TwoCat c;
    c.objects = base.objects;
    c.one = base.one;
    c.id1 = base.id1;
    c.comp = base.comp;
    c.finalize();
    int n = c.n1();
    std::vector<char> rel(static_cast<std::size_t>(n) * n, 0);
    for (int f = 0; f < n; ++f) rel[f * n + f] = 1;
    for (auto [f, g] : generators) {
        if (c.one[f].src != c.one[g].src || c.one[f].tgt != c.one[g].tgt) throw ShapeError("generating 2-cell between non-parallel 1-cells");
        rel[f * n + g] = 1;
    }
    for (bool changed = true; changed;) {
        changed = false;
        for (int f = 0; f < n; ++f)
            for (int g = 0; g < n; ++g) {
                if (!rel[f * n + g] || f == g) continue;
                for (int h = 0; h < n; ++h)
                    if (rel[g * n + h] && !rel[f * n + h]) rel[f * n + h] = changed = true;
                for (int k : c.out1[c.one[f].tgt]) {
                    int a = c.compose(k, f), b = c.compose(k, g);
                    if (!rel[a * n + b]) rel[a * n + b] = changed = true;
                }
                for (int k : c.in1[c.one[f].src]) {
                    int a = c.compose(f, k), b = c.compose(g, k);
                    if (!rel[a * n + b]) rel[a * n + b] = changed = true;
                }
            }
    }
    for (int f = 0; f < n; ++f) {
        c.id2.push_back(c.n2());
        c.two.push_back({f, f, "1_" + c.one[f].name});
        c.between[pair_key(f, f)] = c.id2.back();
    }
    for (int f = 0; f < n; ++f)
        for (int g = 0; g < n; ++g)
            if (f != g && rel[f * n + g]) {
                if (rel[g * n + f]) throw ShapeError("generated 2-cells form a cycle between " + c.one[f].name + " and " + c.one[g].name);
                c.between[pair_key(f, g)] = c.n2();
                c.two.push_back({f, g, c.one[f].name + "=>" + c.one[g].name});
            }
    c.poset_enriched = true;
    c.finalize();
    return c;
}

TwoCat suspension(const Category& h) {
    TwoCat c;
    c.objects = {"0", "1"};
    c.one = {{0, 0, "1_0"}, {1, 1, "1_1"}};
    c.id1 = {0, 1};
    for (int x = 0; x < h.n0(); ++x) c.one.push_back({0, 1, h.objects[x]});
    c.two = {{0, 0, "1_1_0"}, {1, 1, "1_1_1"}};
    c.id2 = {0, 1};
    for (int x = 0; x < h.n0(); ++x) c.id2.push_back(2 + h.id1[x]);
    for (int f = 0; f < h.n1(); ++f) c.two.push_back({2 + h.one[f].src, 2 + h.one[f].tgt, h.one[f].name});
    for (int e = 0; e < 2; ++e) {
        c.comp[pair_key(e, e)] = e;
        c.vcomp[pair_key(e, e)] = e;
        c.hcomp[pair_key(e, e)] = e;
    }
    for (int x = 0; x < h.n0(); ++x) {
        c.comp[pair_key(2 + x, 0)] = 2 + x;
        c.comp[pair_key(1, 2 + x)] = 2 + x;
    }
    for (auto& [key, v] : h.comp) {
        int g = static_cast<int>(key >> 32), f = static_cast<int>(key & 0xffffffffu);
        c.vcomp[pair_key(2 + g, 2 + f)] = 2 + v;
    }
    for (int f = 0; f < h.n1(); ++f) {
        c.hcomp[pair_key(2 + f, 0)] = 2 + f;
        c.hcomp[pair_key(1, 2 + f)] = 2 + f;
    }
    c.poset_enriched = false;
    c.finalize();
    return c;
}

SubTwoCat sub_twocat(const TwoCatPtr& cp, const std::vector<char>& keep0, const std::vector<char>& keep1,
                     const std::vector<char>& keep2) {
    const TwoCat& c = *cp;
    std::vector<int> n0(c.n0(), -1), n1(c.n1(), -1), n2(c.n2(), -1);
    TwoCat s;
    TwoFunctor inc;
    for (int x = 0; x < c.n0(); ++x)
        if (keep0[x]) {
            n0[x] = s.n0();
            s.objects.push_back(c.objects[x]);
            inc.obj.push_back(x);
        }
    auto need = [](int v) {
        if (v < 0) throw ShapeError("kept cells are not closed");
        return v;
    };
    for (int f = 0; f < c.n1(); ++f)
        if (keep1[f]) {
            n1[f] = s.n1();
            s.one.push_back({need(n0[c.one[f].src]), need(n0[c.one[f].tgt]), c.one[f].name});
            inc.one.push_back(f);
        }
    for (int a = 0; a < c.n2(); ++a)
        if (keep2[a]) {
            n2[a] = s.n2();
            s.two.push_back({need(n1[c.two[a].src]), need(n1[c.two[a].tgt]), c.two[a].name});
            inc.two.push_back(a);
        }
    for (int x : inc.obj) s.id1.push_back(need(n1[c.id1[x]]));
    for (int f : inc.one) s.id2.push_back(need(n2[c.id2[f]]));
    auto restrict = [&](const PairMap& m, const std::vector<int>& idx, PairMap& dst) {
        for (auto& [key, v] : m) {
            int b = static_cast<int>(key >> 32), a = static_cast<int>(key & 0xffffffffu);
            if (idx[a] >= 0 && idx[b] >= 0) dst[pair_key(idx[b], idx[a])] = need(idx[v]);
        }
    };
    restrict(c.comp, n1, s.comp);
    s.poset_enriched = c.poset_enriched;
    if (c.poset_enriched) {
        for (auto& [key, v] : c.between) {
            int f = static_cast<int>(key >> 32), g = static_cast<int>(key & 0xffffffffu);
            if (n1[f] >= 0 && n1[g] >= 0 && n2[v] >= 0) s.between[pair_key(n1[f], n1[g])] = n2[v];
        }
    } else {
        restrict(c.vcomp, n2, s.vcomp);
        restrict(c.hcomp, n2, s.hcomp);
    }
    auto sp = share(std::move(s));
    inc.src = sp;
    inc.tgt = cp;
    return {sp, inc};
}

// ---------------------------------------------------------------- O(E)

int OPoset::one_of(std::vector<int> s) const {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    std::sort(s.begin(), s.end(), [&](int a, int b) { return e.lt(a, b); });
    auto it = cell_of.find(s);
    if (it == cell_of.end()) throw ShapeError("not a chain");
    return it->second;
}

OPoset o_poset(const Poset& e) {
    OPoset o;
    o.e = e;
    TwoCat c;
    c.objects = e.ids();
    o.chain = chains(e);
    for (int k = 0; k < static_cast<int>(o.chain.size()); ++k) {
        const auto& s = o.chain[k];
        o.cell_of.emplace(s, k);
        c.one.push_back({s.front(), s.back(), chain_id(e, s)});
    }
    for (int x = 0; x < e.size(); ++x) c.id1.push_back(o.cell_of.at({x}));
    c.finalize();
    for (int f = 0; f < c.n1(); ++f)
        for (int g : c.out1[c.one[f].tgt]) {
            std::vector<int> u = o.chain[f];
            u.insert(u.end(), o.chain[g].begin() + 1, o.chain[g].end());
            c.comp[pair_key(g, f)] = o.cell_of.at(u);
        }
    c.id2.assign(c.n1(), -1);
    for (auto& [key, fs] : c.homs)
        for (int f : fs)
            for (int g : fs) {
                const auto& s = o.chain[f];
                const auto& t = o.chain[g];
                if (s.size() > t.size()) continue;
                if (!std::all_of(s.begin(), s.end(), [&](int x) { return std::find(t.begin(), t.end(), x) != t.end(); })) continue;
                int a = c.n2();
                c.two.push_back({f, g, f == g ? "1_" + c.one[f].name : c.one[f].name + "<=" + c.one[g].name});
                c.between[pair_key(f, g)] = a;
                if (f == g) c.id2[f] = a;
            }
    c.poset_enriched = true;
    o.c = share(std::move(c));
    return o;
}

TwoFunctor o_map(const MonotoneMap& phi, const OPoset& a, const OPoset& b) {
    TwoFunctor f{a.c, b.c, phi.map, {}, {}};
    for (const auto& s : a.chain) {
        std::vector<int> img;
        for (int x : s) img.push_back(phi(x));
        f.one.push_back(b.one_of(img));
    }
    for (const auto& t : a.c->two) f.two.push_back(b.c->cell_between(f.one[t.src], f.one[t.tgt]));
    return f;
}

TwoFunctor adjunction_counit(const OPoset& o, const TwoCatPtr& e2) {
    TwoFunctor f{o.c, e2, {}, {}, {}};
    for (int x = 0; x < o.c->n0(); ++x) f.obj.push_back(x);
    for (const auto& s : o.chain) f.one.push_back(e2->hom(s.front(), s.back()).at(0));
    for (const auto& t : o.c->two) f.two.push_back(e2->id2[f.one[t.src]]);
    return f;
}

// ---------------------------------------------------------------- sieves

Sieve2Report sieve2_analyze(const TwoFunctor& i) {
    if (!injective_functor(i)) throw NotInjective("sieve analysis needs an injective 2-functor");
    const TwoCat& c = *i.tgt;
    std::vector<char> in0(c.n0(), 0), in1(c.n1(), 0), in2(c.n2(), 0);
    for (int v : i.obj) in0[v] = 1;
    for (int v : i.one) in1[v] = 1;
    for (int v : i.two) in2[v] = 1;
    Sieve2Report r;
    r.is_sieve = r.is_cosieve = true;
    for (int f = 0; f < c.n1(); ++f) {
        if (in0[c.one[f].tgt] && !in1[f]) r.is_sieve = false;
        if (in0[c.one[f].src] && !in1[f]) r.is_cosieve = false;
    }
    for (int a = 0; a < c.n2(); ++a) {
        if (in0[c.obj_tgt2(a)] && !in2[a]) r.is_sieve = false;
        if (in0[c.obj_src2(a)] && !in2[a]) r.is_cosieve = false;
    }
    if (r.is_sieve || r.is_cosieve) {
        // complement: cells whose iterated source (sieve) or target (cosieve) lies outside
        bool sieve = r.is_sieve;
        std::vector<char> k0(c.n0()), k1(c.n1()), k2(c.n2());
        for (int x = 0; x < c.n0(); ++x) k0[x] = !in0[x];
        for (int f = 0; f < c.n1(); ++f) k1[f] = !in0[sieve ? c.one[f].src : c.one[f].tgt];
        for (int a = 0; a < c.n2(); ++a) k2[a] = !in0[sieve ? c.obj_src2(a) : c.obj_tgt2(a)];
        r.complement = sub_twocat(i.tgt, k0, k1, k2);
    }
    return r;
}

// ---------------------------------------------------------------- truncations

Category tau_b(const TwoCat& c) {
    TwoCat t;
    t.objects = c.objects;
    t.one = c.one;
    t.id1 = c.id1;
    t.comp = c.comp;
    add_identity_two_cells(t);
    t.finalize();
    return t;
}

Truncation tau_i(const TwoCat& c) {
    UnionFind uf(c.n1());
    for (const auto& a : c.two) uf.unite(a.src, a.tgt);
    Truncation r;
    TwoCat& t = r.cat;
    t.objects = c.objects;
    r.cls.assign(c.n1(), -1);
    for (int f = 0; f < c.n1(); ++f)
        if (uf.find(f) == f) {
            r.cls[f] = t.n1();
            t.one.push_back(c.one[f]);
        }
    for (int f = 0; f < c.n1(); ++f) r.cls[f] = r.cls[uf.find(f)];
    for (int x = 0; x < c.n0(); ++x) t.id1.push_back(r.cls[c.id1[x]]);
    for (auto& [key, h] : c.comp) {
        int g = static_cast<int>(key >> 32), f = static_cast<int>(key & 0xffffffffu);
        auto k = pair_key(r.cls[g], r.cls[f]);
        auto it = t.comp.find(k);
        if (it == t.comp.end())
            t.comp[k] = r.cls[h];
        else if (it->second != r.cls[h])
            throw ShapeError("composition does not descend to the quotient");
    }
    add_identity_two_cells(t);
    t.finalize();
    return r;
}

FreeReport is_free_on_graph(const Category& c) {
    FreeReport r;
    std::vector<char> ident(c.n1(), 0), decomposable(c.n1(), 0);
    for (int x = 0; x < c.n0(); ++x) ident[c.id1[x]] = 1;
    for (auto& [key, h] : c.comp) {
        int g = static_cast<int>(key >> 32), f = static_cast<int>(key & 0xffffffffu);
        if (ident[g] || ident[f]) continue;
        if (ident[h]) return r;  // an identity splits into non-identities
        decomposable[h] = 1;
    }
    std::vector<std::vector<int>> gen_out(c.n0());
    for (int f = 0; f < c.n1(); ++f)
        if (!ident[f] && !decomposable[f]) {
            r.generators.push_back(f);
            gen_out[c.one[f].src].push_back(f);
        }
    // acyclicity of the generating graph
    std::vector<int> state(c.n0(), 0);
    std::function<bool(int)> cyclic = [&](int x) {
        state[x] = 1;
        for (int f : gen_out[x]) {
            int y = c.one[f].tgt;
            if (state[y] == 1 || (state[y] == 0 && cyclic(y))) return true;
        }
        state[x] = 2;
        return false;
    };
    for (int x = 0; x < c.n0(); ++x)
        if (state[x] == 0 && cyclic(x)) return r;
    // words of generators composing to each arrow, by first letter
    std::vector<long> memo(c.n1(), -1);
    std::function<long(int)> words = [&](int f) -> long {
        if (memo[f] >= 0) return memo[f];
        long total = 0;
        for (int a : gen_out[c.one[f].src]) {
            if (a == f) ++total;
            for (int g : c.out1[c.one[a].tgt])
                if (!ident[g] && c.compose(g, a) == f) total += words(g);
        }
        return memo[f] = total;
    };
    for (int f = 0; f < c.n1(); ++f)
        if (!ident[f] && words(f) != 1) return r;
    r.free = true;
    return r;
}

bool is_poset_category(const Category& c) {
    for (auto& [key, fs] : c.homs) {
        if (fs.size() > 1) return false;
        int x = static_cast<int>(key >> 32), y = static_cast<int>(key & 0xffffffffu);
        if (x != y && !c.hom(y, x).empty()) return false;
    }
    return true;
}

bool is_poset_enriched(const TwoCat& c) {
    for (int f = 0; f < c.n1(); ++f) {
        std::set<int> targets;
        for (int a : c.out2[f]) {
            int g = c.two[a].tgt;
            if (!targets.insert(g).second) return false;
            if (g != f)
                for (int b : c.out2[g])
                    if (c.two[b].tgt == f) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- functor search

namespace {

class FunctorSearcher {
public:
    FunctorSearcher(const FunctorSearch& q, Budget& budget,
                    const std::function<bool(const std::vector<int>&, const std::vector<int>&, const std::vector<int>&)>& visit)
        : q_(q), a_(*q.a), b_(*q.b), budget_(budget), visit_(visit) {
        obj_.assign(a_.n0(), -1);
        one_.assign(a_.n1(), -1);
        two_.assign(a_.n2(), -1);
        used0_.assign(b_.n0(), -1);
        used1_.assign(b_.n1(), -1);
        used2_.assign(b_.n2(), -1);
    }

    std::uint64_t run() {
        if (q_.injective && (a_.n0() > b_.n0() || a_.n1() > b_.n1() || a_.n2() > b_.n2())) return 0;
        objects(0);
        return found_;
    }

private:
    struct Entry {
        int layer, cell;
    };

    bool pinned_ok(const std::vector<int>& fixed, int cell, int v) const {
        return fixed.empty() || fixed[cell] < 0 || fixed[cell] == v;
    }

    bool set(int layer, int cell, int v) {
        auto& val = layer == 0 ? obj_ : layer == 1 ? one_ : two_;
        auto& used = layer == 0 ? used0_ : layer == 1 ? used1_ : used2_;
        const auto& fixed = layer == 0 ? q_.obj : layer == 1 ? q_.one : q_.two;
        if (val[cell] >= 0) return val[cell] == v;
        if (!pinned_ok(fixed, cell, v)) return false;
        if (q_.injective && used[v] >= 0) return false;
        val[cell] = v;
        if (q_.injective) used[v] = cell;
        trail_.push_back({layer, cell});
        pending_.push_back({layer, cell});
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            auto [layer, cell] = trail_.back();
            trail_.pop_back();
            auto& val = layer == 0 ? obj_ : layer == 1 ? one_ : two_;
            auto& used = layer == 0 ? used0_ : layer == 1 ? used1_ : used2_;
            if (q_.injective) used[val[cell]] = -1;
            val[cell] = -1;
        }
        pending_.clear();
    }

    bool propagate() {
        while (!pending_.empty()) {
            auto [layer, c] = pending_.back();
            pending_.pop_back();
            if (layer == 1) {
                int f = c;
                if (b_.one[one_[f]].src != obj_[a_.one[f].src] || b_.one[one_[f]].tgt != obj_[a_.one[f].tgt]) return false;
                for (int g : a_.out1[a_.one[f].tgt])
                    if (one_[g] >= 0 && !set(1, a_.compose(g, f), b_.compose(one_[g], one_[f]))) return false;
                for (int g : a_.in1[a_.one[f].src])
                    if (one_[g] >= 0 && !set(1, a_.compose(f, g), b_.compose(one_[f], one_[g]))) return false;
            } else if (layer == 2) {
                int x = c;
                const auto& bt = b_.two[two_[x]];
                if (bt.src != one_[a_.two[x].src] || bt.tgt != one_[a_.two[x].tgt]) return false;
                for (int y : a_.out2[a_.two[x].tgt])
                    if (two_[y] >= 0 && !set(2, a_.vcompose(y, x), b_.vcompose(two_[y], two_[x]))) return false;
                for (int y : a_.in2[a_.two[x].src])
                    if (two_[y] >= 0 && !set(2, a_.vcompose(x, y), b_.vcompose(two_[x], two_[y]))) return false;
                for (int g : a_.out1[a_.obj_tgt2(x)])
                    for (int y : a_.out2[g])
                        if (two_[y] >= 0 && !set(2, a_.hcompose(y, x), b_.hcompose(two_[y], two_[x]))) return false;
                for (int g : a_.in1[a_.obj_src2(x)])
                    for (int y : a_.out2[g])
                        if (two_[y] >= 0 && !set(2, a_.hcompose(x, y), b_.hcompose(two_[x], two_[y]))) return false;
            }
        }
        return true;
    }

    void objects(int x) {
        if (stop_) return;
        if (x == a_.n0()) {
            std::size_t mark = trail_.size();
            bool ok = true;
            for (int y = 0; y < a_.n0() && ok; ++y) ok = set(1, a_.id1[y], b_.id1[obj_[y]]);
            ok = ok && propagate();
            if (ok) ones(0);
            undo(mark);
            return;
        }
        for (int v = 0; v < b_.n0(); ++v) {
            budget_.tick();
            std::size_t mark = trail_.size();
            if (set(0, x, v)) {
                pending_.clear();
                objects(x + 1);
            }
            undo(mark);
            if (stop_) return;
        }
    }

    void ones(int f) {
        if (stop_) return;
        while (f < a_.n1() && one_[f] >= 0) ++f;
        if (f == a_.n1()) {
            std::size_t mark = trail_.size();
            bool ok = true;
            for (int g = 0; g < a_.n1() && ok; ++g) ok = set(2, a_.id2[g], b_.id2[one_[g]]);
            ok = ok && propagate();
            if (ok) twos(0);
            undo(mark);
            return;
        }
        for (int v : b_.hom(obj_[a_.one[f].src], obj_[a_.one[f].tgt])) {
            budget_.tick();
            std::size_t mark = trail_.size();
            if (set(1, f, v) && propagate()) ones(f + 1);
            undo(mark);
            if (stop_) return;
        }
    }

    void twos(int x) {
        if (stop_) return;
        while (x < a_.n2() && two_[x] >= 0) ++x;
        if (x == a_.n2()) {
            ++found_;
            if (!visit_(obj_, one_, two_)) stop_ = true;
            return;
        }
        int s = one_[a_.two[x].src], t = one_[a_.two[x].tgt];
        for (int v : b_.out2[s]) {
            if (b_.two[v].tgt != t) continue;
            budget_.tick();
            std::size_t mark = trail_.size();
            if (set(2, x, v) && propagate()) twos(x + 1);
            undo(mark);
            if (stop_) return;
        }
    }

    const FunctorSearch& q_;
    const TwoCat& a_;
    const TwoCat& b_;
    Budget& budget_;
    const std::function<bool(const std::vector<int>&, const std::vector<int>&, const std::vector<int>&)>& visit_;
    std::vector<int> obj_, one_, two_, used0_, used1_, used2_;
    std::vector<Entry> trail_, pending_;
    std::uint64_t found_ = 0;
    bool stop_ = false;
};

}  // namespace

std::uint64_t enumerate_2functors(const FunctorSearch& q, Budget& budget,
                                  const std::function<bool(const std::vector<int>&, const std::vector<int>&,
                                                           const std::vector<int>&)>& visit) {
    FunctorSearcher s(q, budget, visit);
    return s.run();
}

std::optional<TwoFunctor> find_isomorphism(const TwoCatPtr& a, const TwoCatPtr& b, std::uint64_t budget_nodes) {
    if (a->n0() != b->n0() || a->n1() != b->n1() || a->n2() != b->n2()) return std::nullopt;
    FunctorSearch q;
    q.a = a.get();
    q.b = b.get();
    q.injective = true;
    Budget budget(budget_nodes, "isomorphism search");
    std::optional<TwoFunctor> out;
    enumerate_2functors(q, budget, [&](const std::vector<int>& o, const std::vector<int>& f, const std::vector<int>& t) {
        out = TwoFunctor{a, b, o, f, t};
        return false;
    });
    return out;
}

// ---------------------------------------------------------------- interval product

IntervalProduct interval_product(const TwoCatPtr& ap) {
    const TwoCat& a = *ap;
    IntervalProduct r;
    r.na = a.n0();
    r.n1a = a.n1();
    r.n2a = a.n2();
    const int psrc[3] = {0, 1, 0}, ptgt[3] = {0, 1, 1};
    const char* pname[3] = {"0", "1", "01"};
    auto pcomp = [](int q, int p) {  // q o p, -1 if not composable
        const int tgt[3] = {0, 1, 1}, src[3] = {0, 1, 0};
        if (tgt[p] != src[q]) return -1;
        if (p == 2 || q == 2) return 2;
        return p;
    };
    TwoCat c;
    for (int e = 0; e < 2; ++e)
        for (int x = 0; x < a.n0(); ++x) c.objects.push_back("(" + std::to_string(e) + "," + a.objects[x] + ")");
    for (int p = 0; p < 3; ++p)
        for (int f = 0; f < a.n1(); ++f)
            c.one.push_back({r.object(psrc[p], a.one[f].src), r.object(ptgt[p], a.one[f].tgt),
                             "(" + std::string(pname[p]) + "," + a.one[f].name + ")"});
    for (int p = 0; p < 3; ++p)
        for (int x = 0; x < a.n2(); ++x)
            c.two.push_back({r.one(p, a.two[x].src), r.one(p, a.two[x].tgt), "(" + std::string(pname[p]) + "," + a.two[x].name + ")"});
    for (int e = 0; e < 2; ++e)
        for (int x = 0; x < a.n0(); ++x) c.id1.push_back(r.one(e, a.id1[x]));
    for (int p = 0; p < 3; ++p)
        for (int f = 0; f < a.n1(); ++f) c.id2.push_back(r.two(p, a.id2[f]));
    for (auto& [key, h] : a.comp) {
        int g = static_cast<int>(key >> 32), f = static_cast<int>(key & 0xffffffffu);
        for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q) {
                int qp = pcomp(q, p);
                if (qp >= 0) c.comp[pair_key(r.one(q, g), r.one(p, f))] = r.one(qp, h);
            }
    }
    c.poset_enriched = a.poset_enriched;
    if (a.poset_enriched) {
        for (auto& [key, x] : a.between) {
            int f = static_cast<int>(key >> 32), g = static_cast<int>(key & 0xffffffffu);
            for (int p = 0; p < 3; ++p) c.between[pair_key(r.one(p, f), r.one(p, g))] = r.two(p, x);
        }
    } else {
        for (auto& [key, v] : a.vcomp) {
            int y = static_cast<int>(key >> 32), x = static_cast<int>(key & 0xffffffffu);
            for (int p = 0; p < 3; ++p) c.vcomp[pair_key(r.two(p, y), r.two(p, x))] = r.two(p, v);
        }
        for (auto& [key, v] : a.hcomp) {
            int y = static_cast<int>(key >> 32), x = static_cast<int>(key & 0xffffffffu);
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q) {
                    int qp = pcomp(q, p);
                    if (qp >= 0) c.hcomp[pair_key(r.two(q, y), r.two(p, x))] = r.two(qp, v);
                }
        }
    }
    r.c = share(std::move(c));
    for (int e = 0; e < 2; ++e) {
        TwoFunctor d{ap, r.c, {}, {}, {}};
        for (int x = 0; x < a.n0(); ++x) d.obj.push_back(r.object(e, x));
        for (int f = 0; f < a.n1(); ++f) d.one.push_back(r.one(e, f));
        for (int x = 0; x < a.n2(); ++x) d.two.push_back(r.two(e, x));
        (e == 0 ? r.d0 : r.d1) = d;
    }
    return r;
}

// ---------------------------------------------------------------- Street nerve

int simplex_len(int m) { return (m + 1) + m * (m + 1) / 2 + (m + 1) * m * (m - 1) / 6; }
int f_pos(int m, int j, int i) { return (m + 1) + j * (j - 1) / 2 + i; }
int a_pos(int m, int k, int j, int i) { return (m + 1) + m * (m + 1) / 2 + k * (k - 1) * (k - 2) / 6 + j * (j - 1) / 2 + i; }

namespace {

struct SimplexView {
    const TwoCat& c;
    const std::vector<int>& s;
    int m;
    int obj(int i) const { return s[i]; }
    int f(int j, int i) const { return i == j ? c.id1[s[i]] : s[f_pos(m, j, i)]; }
    int a(int k, int j, int i) const {
        if (i == j || j == k) return c.id2[f(k, i)];
        return s[a_pos(m, k, j, i)];
    }
};

// theta : [n] -> [m] monotone
std::vector<int> reindex(const TwoCat& c, const std::vector<int>& s, int m, const std::vector<int>& theta) {
    SimplexView v{c, s, m};
    int n = static_cast<int>(theta.size()) - 1;
    std::vector<int> out(simplex_len(n));
    for (int i = 0; i <= n; ++i) out[i] = v.obj(theta[i]);
    for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i) out[f_pos(n, j, i)] = v.f(theta[j], theta[i]);
    for (int k = 2; k <= n; ++k)
        for (int j = 1; j < k; ++j)
            for (int i = 0; i < j; ++i) out[a_pos(n, k, j, i)] = v.a(theta[k], theta[j], theta[i]);
    return out;
}

SSetPtr sset_from_cells(int cap, const std::vector<std::vector<std::vector<int>>>& cells,
                        const std::vector<VecMap<int>>& index,
                        const std::function<std::vector<int>(int, const std::vector<int>&, const std::vector<int>&)>& act,
                        const std::vector<std::string>& names) {
    auto x = std::make_shared<SSet>(cap);
    for (int n = 0; n <= cap; ++n) x->count[n] = static_cast<int>(cells[n].size());
    auto find = [&](int n, const std::vector<int>& v) {
        auto it = index[n].find(v);
        if (it == index[n].end()) throw ShapeError("simplicial operator leaves the enumerated cells");
        return it->second;
    };
    for (int n = 0; n <= cap; ++n)
        for (const auto& s : cells[n]) {
            for (int i = 0; n >= 1 && i <= n; ++i) {
                std::vector<int> th;
                for (int t = 0; t <= n; ++t)
                    if (t != i) th.push_back(t);
                x->d[n].push_back(find(n - 1, act(n, s, th)));
            }
            for (int j = 0; n < cap && j <= n; ++j) {
                std::vector<int> th;
                for (int t = 0; t <= n + 1; ++t) th.push_back(t <= j ? t : t - 1);
                x->s[n].push_back(find(n + 1, act(n, s, th)));
            }
        }
    x->labels[0] = names;
    return x;
}

}  // namespace

Nerve2 nerve2(const TwoCatPtr& cp, int cap, std::uint64_t budget_nodes) {
    const TwoCat& c = *cp;
    Budget budget(budget_nodes, "2-nerve enumeration");
    Nerve2 r;
    r.cells.resize(cap + 1);
    r.index.resize(cap + 1);
    for (int x = 0; x < c.n0(); ++x) r.cells[0].push_back({x});
    for (int m = 1; m <= cap; ++m) {
        for (const auto& p : r.cells[m - 1]) {
            SimplexView pv{c, p, m - 1};
            // copy the prefix into the m-layout
            std::vector<int> base(simplex_len(m), -1);
            for (int i = 0; i < m; ++i) base[i] = p[i];
            for (int j = 1; j < m; ++j)
                for (int i = 0; i < j; ++i) base[f_pos(m, j, i)] = pv.f(j, i);
            for (int k = 2; k < m; ++k)
                for (int j = 1; j < k; ++j)
                    for (int i = 0; i < j; ++i) base[a_pos(m, k, j, i)] = pv.a(k, j, i);
            std::vector<std::pair<int, int>> apairs;  // (j, i) with i < j < m
            for (int j = 1; j < m; ++j)
                for (int i = 0; i < j; ++i) apairs.emplace_back(j, i);
            std::function<void(std::size_t)> choose_a = [&](std::size_t t) {
                if (t == apairs.size()) {
                    r.cells[m].push_back(base);
                    return;
                }
                auto [j, i] = apairs[t];
                SimplexView v{c, base, m};
                int src = v.f(m, i), tgt = c.compose(v.f(m, j), v.f(j, i));
                for (int a : c.out2[src]) {
                    if (c.two[a].tgt != tgt) continue;
                    budget.tick();
                    base[a_pos(m, m, j, i)] = a;
                    bool ok = true;
                    // cocycle for (i' < j < ... ) with k = j playing the middle role: quadruple (i', i, j, m)
                    for (int h = 0; h < i && ok; ++h) {
                        // (f_mj * a_jih) . a_mjh = (a_mji * f_ih) . a_mih
                        int lhs = c.vcompose(c.whisker_left(v.f(m, j), v.a(j, i, h)), v.a(m, j, h));
                        int rhs = c.vcompose(c.whisker_right(v.a(m, j, i), v.f(i, h)), v.a(m, i, h));
                        ok = lhs >= 0 && lhs == rhs;
                    }
                    if (ok) choose_a(t + 1);
                }
                base[a_pos(m, m, j, i)] = -1;
            };
            std::function<void(int)> choose_f = [&](int i) {
                if (i < 0) {
                    choose_a(0);
                    return;
                }
                for (int f : c.hom(base[i], base[m])) {
                    budget.tick();
                    base[f_pos(m, m, i)] = f;
                    choose_f(i - 1);
                }
                base[f_pos(m, m, i)] = -1;
            };
            for (int x = 0; x < c.n0(); ++x) {
                base[m] = x;
                choose_f(m - 1);
            }
        }
        std::sort(r.cells[m].begin(), r.cells[m].end());
    }
    for (int m = 0; m <= cap; ++m)
        for (int k = 0; k < static_cast<int>(r.cells[m].size()); ++k) r.index[m].emplace(r.cells[m][k], k);
    r.x = sset_from_cells(cap, r.cells, r.index,
                          [&](int n, const std::vector<int>& s, const std::vector<int>& th) { return reindex(c, s, n, th); },
                          c.objects);
    return r;
}

SMap nerve2_map(const TwoFunctor& F, const Nerve2& a, const Nerve2& b) {
    int cap = std::min(a.x->cap, b.x->cap);
    SMap out{a.x, b.x, {}};
    for (int m = 0; m <= cap; ++m) {
        std::vector<int> mm;
        for (const auto& s : a.cells[m]) {
            std::vector<int> t(s.size());
            int nf = m * (m + 1) / 2;
            for (int k = 0; k < static_cast<int>(s.size()); ++k)
                t[k] = k <= m ? F.obj[s[k]] : k <= m + nf ? F.one[s[k]] : F.two[s[k]];
            mm.push_back(b.index[m].at(t));
        }
        out.map.push_back(mm);
    }
    return out;
}

SMap unit_map(const Poset& e, const OPoset& o, const Nerve2& n, int cap) {
    cap = std::min(cap, n.x->cap);
    auto ne = nerve(e, cap);
    const TwoCat& c = *o.c;
    SMap out{ne, n.x, {}};
    for (int m = 0; m <= cap; ++m) {
        std::vector<int> mm;
        for (int cell = 0; cell < ne->count[m]; ++cell) {
            auto v = ne->vertices(m, cell);
            std::vector<int> s(simplex_len(m));
            for (int i = 0; i <= m; ++i) s[i] = v[i];
            for (int j = 1; j <= m; ++j)
                for (int i = 0; i < j; ++i) s[f_pos(m, j, i)] = o.one_of({v[i], v[j]});
            for (int k = 2; k <= m; ++k)
                for (int j = 1; j < k; ++j)
                    for (int i = 0; i < j; ++i)
                        s[a_pos(m, k, j, i)] = c.cell_between(o.one_of({v[i], v[k]}), o.one_of({v[i], v[j], v[k]}));
            mm.push_back(n.index[m].at(s));
        }
        out.map.push_back(mm);
    }
    return out;
}

// ---------------------------------------------------------------- bisimplicial nerve

BiSSet bnerve(const TwoCat& c, int pcap, int qcap, std::uint64_t budget_nodes) {
    Budget budget(budget_nodes, "bisimplicial nerve enumeration");
    // q-simplices of each hom category: [f_0..f_q, a_1..a_q]
    std::vector<std::map<std::pair<int, int>, std::vector<std::vector<int>>>> homq(qcap + 1);
    for (auto& [key, fs] : c.homs) {
        int x = static_cast<int>(key >> 32), y = static_cast<int>(key & 0xffffffffu);
        std::vector<std::vector<int>> strings;
        for (int f : fs) strings.push_back({f});
        homq[0][{x, y}] = strings;
        for (int q = 1; q <= qcap; ++q) {
            std::vector<std::vector<int>> next;
            for (const auto& s : strings) {
                int last = s[q - 1];
                for (int a : c.out2[last]) {
                    budget.tick();
                    std::vector<int> fsq(s.begin(), s.begin() + q);
                    fsq.push_back(c.two[a].tgt);
                    std::vector<int> as(s.begin() + q, s.end());
                    as.push_back(a);
                    fsq.insert(fsq.end(), as.begin(), as.end());
                    next.push_back(fsq);
                }
            }
            strings = next;
            homq[q][{x, y}] = strings;
        }
    }
    BiSSet b;
    b.pcap = pcap;
    b.qcap = qcap;
    b.count.assign(pcap + 1, std::vector<int>(qcap + 1, 0));
    std::vector<std::vector<std::vector<std::vector<int>>>> cells(pcap + 1, std::vector<std::vector<std::vector<int>>>(qcap + 1));
    std::vector<std::vector<VecMap<int>>> index(pcap + 1, std::vector<VecMap<int>>(qcap + 1));
    for (int p = 0; p <= pcap; ++p)
        for (int q = 0; q <= qcap; ++q) {
            int w = 2 * q + 1;
            std::vector<int> cur;
            std::function<void(int)> rec = [&](int t) {
                if (t == p + 1) {
                    // objects chosen; now factors
                    std::function<void(int)> fac = [&](int k) {
                        if (k == p) {
                            cells[p][q].push_back(cur);
                            return;
                        }
                        auto it = homq[q].find({cur[k], cur[k + 1]});
                        if (it == homq[q].end()) return;
                        for (const auto& s : it->second) {
                            budget.tick();
                            cur.insert(cur.end(), s.begin(), s.end());
                            fac(k + 1);
                            cur.resize(cur.size() - w);
                        }
                    };
                    fac(0);
                    return;
                }
                for (int x = 0; x < c.n0(); ++x) {
                    cur.push_back(x);
                    rec(t + 1);
                    cur.pop_back();
                }
            };
            rec(0);
            b.count[p][q] = static_cast<int>(cells[p][q].size());
            for (int k = 0; k < b.count[p][q]; ++k) index[p][q].emplace(cells[p][q][k], k);
        }
    auto find = [&](int p, int q, const std::vector<int>& v) {
        auto it = index[p][q].find(v);
        if (it == index[p][q].end()) throw ShapeError("bisimplicial operator leaves the enumerated cells");
        return it->second;
    };
    b.dh.assign(pcap + 1, std::vector<std::vector<int>>(qcap + 1));
    b.sh = b.dv = b.sv = b.dh;
    for (int p = 0; p <= pcap; ++p)
        for (int q = 0; q <= qcap; ++q) {
            int w = 2 * q + 1;
            for (const auto& s : cells[p][q]) {
                auto factor = [&](int k) { return std::vector<int>(s.begin() + p + 1 + k * w, s.begin() + p + 1 + (k + 1) * w); };
                auto assemble = [&](const std::vector<int>& objs, const std::vector<std::vector<int>>& fs) {
                    std::vector<int> v = objs;
                    for (auto& f : fs) v.insert(v.end(), f.begin(), f.end());
                    return v;
                };
                std::vector<int> objs(s.begin(), s.begin() + p + 1);
                std::vector<std::vector<int>> fs;
                for (int k = 0; k < p; ++k) fs.push_back(factor(k));
                for (int i = 0; p >= 1 && i <= p; ++i) {
                    auto o2 = objs;
                    o2.erase(o2.begin() + i);
                    std::vector<std::vector<int>> f2;
                    if (i == 0) {
                        f2.assign(fs.begin() + 1, fs.end());
                    } else if (i == p) {
                        f2.assign(fs.begin(), fs.end() - 1);
                    } else {
                        for (int k = 0; k < p; ++k) {
                            if (k == i) continue;
                            if (k == i - 1) {
                                std::vector<int> merged(w);
                                for (int t = 0; t <= q; ++t) merged[t] = c.compose(fs[i][t], fs[i - 1][t]);
                                for (int t = q + 1; t < w; ++t) merged[t] = c.hcompose(fs[i][t], fs[i - 1][t]);
                                f2.push_back(merged);
                            } else {
                                f2.push_back(fs[k]);
                            }
                        }
                    }
                    b.dh[p][q].push_back(find(p - 1, q, assemble(o2, f2)));
                }
                for (int i = 0; p < pcap && i <= p; ++i) {
                    auto o2 = objs;
                    o2.insert(o2.begin() + i + 1, objs[i]);
                    std::vector<int> idf(w);
                    for (int t = 0; t <= q; ++t) idf[t] = c.id1[objs[i]];
                    for (int t = q + 1; t < w; ++t) idf[t] = c.id2[c.id1[objs[i]]];
                    auto f2 = fs;
                    f2.insert(f2.begin() + i, idf);
                    b.sh[p][q].push_back(find(p + 1, q, assemble(o2, f2)));
                }
                for (int j = 0; q >= 1 && j <= q; ++j) {
                    std::vector<std::vector<int>> f2;
                    for (const auto& f : fs) {
                        std::vector<int> ones(f.begin(), f.begin() + q + 1), twos(f.begin() + q + 1, f.end());
                        ones.erase(ones.begin() + j);
                        if (j == 0) {
                            twos.erase(twos.begin());
                        } else if (j == q) {
                            twos.pop_back();
                        } else {
                            twos[j - 1] = c.vcompose(twos[j], twos[j - 1]);
                            twos.erase(twos.begin() + j);
                        }
                        ones.insert(ones.end(), twos.begin(), twos.end());
                        f2.push_back(ones);
                    }
                    b.dv[p][q].push_back(find(p, q - 1, assemble(objs, f2)));
                }
                for (int j = 0; q < qcap && j <= q; ++j) {
                    std::vector<std::vector<int>> f2;
                    for (const auto& f : fs) {
                        std::vector<int> ones(f.begin(), f.begin() + q + 1), twos(f.begin() + q + 1, f.end());
                        ones.insert(ones.begin() + j + 1, ones[j]);
                        twos.insert(twos.begin() + j, c.id2[ones[j]]);
                        ones.insert(ones.end(), twos.begin(), twos.end());
                        f2.push_back(ones);
                    }
                    b.sv[p][q].push_back(find(p, q + 1, assemble(objs, f2)));
                }
            }
        }
    return b;
}

}  // namespace cat2
