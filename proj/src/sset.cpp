#include "cat2/sset.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

#include "sset_internal.hpp"

namespace cat2 {

SSet::SSet(int c) : cap(c), count(c + 1, 0), d(c + 1), s(c + 1), labels(1) {}

bool SSet::degenerate(int n, int x) const {
    for (int j = 0; j < n; ++j)
        if (degen(n - 1, j, face(n, j, x)) == x) return true;
    return false;
}

std::vector<int> SSet::nondegenerate(int n) const {
    std::vector<int> out;
    if (n < 0 || n > cap) return out;
    for (int x = 0; x < count[n]; ++x)
        if (!degenerate(n, x)) out.push_back(x);
    return out;
}

int SSet::dimension() const {
    for (int n = cap; n >= 0; --n)
        for (int x = 0; x < count[n]; ++x)
            if (!degenerate(n, x)) return n;
    return -1;
}

int SSet::apply(const std::vector<int>& theta, int n, int x) const {
    std::vector<char> hit(n + 1, 0);
    for (int t : theta) hit[t] = 1;
    int cur = x, deg = n;
    for (int i = n; i >= 0; --i)
        if (!hit[i]) cur = face(deg--, i, cur);
    std::vector<int> pos(n + 1, -1);
    for (int i = 0, p = 0; i <= n; ++i)
        if (hit[i]) pos[i] = p++;
    int k = static_cast<int>(theta.size()) - 1;
    for (int j = 0; j < k; ++j)
        if (pos[theta[j]] == pos[theta[j + 1]]) cur = degen(deg++, j, cur);
    return cur;
}

SSet::EZ SSet::ez(int n, int x) const {
    for (int j = 0; j < n; ++j) {
        int y = face(n, j, x);
        if (degen(n - 1, j, y) == x) {
            EZ r = ez(n - 1, y);
            std::vector<int> eta(n + 1);
            for (int i = 0; i <= n; ++i) eta[i] = r.eta[i <= j ? i : i - 1];
            r.eta = eta;
            return r;
        }
    }
    std::vector<int> id(n + 1);
    std::iota(id.begin(), id.end(), 0);
    return {n, x, id};
}

std::vector<int> SSet::vertices(int n, int x) const {
    std::vector<int> out(n + 1);
    for (int t = 0; t <= n; ++t) out[t] = apply({t}, n, x);
    return out;
}

std::string SSet::label(int n, int x) const {
    auto vs = vertices(n, x);
    std::vector<std::string> parts;
    for (int v : vs)
        parts.push_back(!labels.empty() && v < static_cast<int>(labels[0].size()) ? labels[0][v] : std::to_string(v));
    if (n == 0) return parts[0];
    return "(" + join(parts, ",") + ")#" + std::to_string(x);
}

SMap identity_smap(const SSetPtr& x) {
    SMap f{x, x, {}};
    for (int n = 0; n <= x->cap; ++n) {
        std::vector<int> m(x->count[n]);
        std::iota(m.begin(), m.end(), 0);
        f.map.push_back(m);
    }
    return f;
}

SMap compose(const SMap& g, const SMap& f) {
    SMap h{f.src, g.tgt, {}};
    int c = std::min(f.cap(), g.cap());
    for (int n = 0; n <= c; ++n) {
        std::vector<int> m(f.map[n].size());
        for (std::size_t x = 0; x < m.size(); ++x) m[x] = g.map[n][f.map[n][x]];
        h.map.push_back(m);
    }
    return h;
}

bool same_smap(const SMap& a, const SMap& b) { return a.map == b.map; }

bool injective_in_degree(const SMap& f, int n) {
    std::set<int> seen(f.map[n].begin(), f.map[n].end());
    return seen.size() == f.map[n].size();
}

bool surjective_in_degree(const SMap& f, int n) {
    std::set<int> seen(f.map[n].begin(), f.map[n].end());
    return static_cast<int>(seen.size()) == f.tgt->count[n];
}

std::vector<std::string> validate_sset(const SSet& x, std::size_t max_reports) {
    std::vector<std::string> out;
    auto report = [&](const std::string& msg) {
        if (out.size() < max_reports) out.push_back(msg);
    };
    for (int n = 0; n <= x.cap; ++n) {
        if (n >= 1 && x.d[n].size() != static_cast<std::size_t>(x.count[n]) * (n + 1)) report("face table size in degree " + std::to_string(n));
        if (n < x.cap && x.s[n].size() != static_cast<std::size_t>(x.count[n]) * (n + 1)) report("degeneracy table size in degree " + std::to_string(n));
    }
    if (!out.empty()) return out;
    for (int n = 1; n <= x.cap; ++n)
        for (int v : x.d[n])
            if (v < 0 || v >= x.count[n - 1]) report("face value out of range in degree " + std::to_string(n));
    for (int n = 0; n < x.cap; ++n)
        for (int v : x.s[n])
            if (v < 0 || v >= x.count[n + 1]) report("degeneracy value out of range in degree " + std::to_string(n));
    if (!out.empty()) return out;
    auto where = [](const char* rule, int n, int x, int i, int j) {
        return std::string(rule) + " fails at degree " + std::to_string(n) + " cell " + std::to_string(x) + " (i=" +
               std::to_string(i) + ", j=" + std::to_string(j) + ")";
    };
    for (int n = 2; n <= x.cap; ++n)
        for (int c = 0; c < x.count[n]; ++c)
            for (int j = 1; j <= n; ++j)
                for (int i = 0; i < j; ++i)
                    if (x.face(n - 1, i, x.face(n, j, c)) != x.face(n - 1, j - 1, x.face(n, i, c)))
                        report(where("d_i d_j = d_{j-1} d_i", n, c, i, j));
    for (int n = 0; n < x.cap; ++n)
        for (int c = 0; c < x.count[n]; ++c)
            for (int j = 0; j <= n; ++j) {
                int sc = x.degen(n, j, c);
                for (int i = 0; i <= n + 1; ++i) {
                    int lhs = x.face(n + 1, i, sc);
                    if (i == j || i == j + 1) {
                        if (lhs != c) report(where("d_j s_j = d_{j+1} s_j = id", n, c, i, j));
                    } else if (i < j) {
                        if (lhs != x.degen(n - 1, j - 1, x.face(n, i, c))) report(where("d_i s_j = s_{j-1} d_i", n, c, i, j));
                    } else if (lhs != x.degen(n - 1, j, x.face(n, i - 1, c))) {
                        report(where("d_i s_j = s_j d_{i-1}", n, c, i, j));
                    }
                }
            }
    for (int n = 0; n + 1 < x.cap; ++n)
        for (int c = 0; c < x.count[n]; ++c)
            for (int j = 0; j <= n; ++j)
                for (int i = 0; i <= j; ++i)
                    if (x.degen(n + 1, i, x.degen(n, j, c)) != x.degen(n + 1, j + 1, x.degen(n, i, c)))
                        report(where("s_i s_j = s_{j+1} s_i", n, c, i, j));
    return out;
}

std::vector<std::string> validate_smap(const SMap& f, std::size_t max_reports) {
    std::vector<std::string> out;
    auto report = [&](const std::string& msg) {
        if (out.size() < max_reports) out.push_back(msg);
    };
    const SSet& a = *f.src;
    const SSet& b = *f.tgt;
    int c = f.cap();
    if (c > std::min(a.cap, b.cap)) {
        report("map defined beyond the caps");
        return out;
    }
    for (int n = 0; n <= c; ++n) {
        if (static_cast<int>(f.map[n].size()) != a.count[n]) {
            report("map not total in degree " + std::to_string(n));
            return out;
        }
        for (int v : f.map[n])
            if (v < 0 || v >= b.count[n]) {
                report("map value out of range in degree " + std::to_string(n));
                return out;
            }
    }
    for (int n = 0; n <= c; ++n)
        for (int x = 0; x < a.count[n]; ++x) {
            for (int i = 0; n >= 1 && i <= n; ++i)
                if (f.map[n - 1][a.face(n, i, x)] != b.face(n, i, f.map[n][x]))
                    report("map does not commute with d_" + std::to_string(i) + " at degree " + std::to_string(n) + " cell " + std::to_string(x));
            for (int j = 0; n < c && j <= n; ++j)
                if (f.map[n + 1][a.degen(n, j, x)] != b.degen(n, j, f.map[n][x]))
                    report("map does not commute with s_" + std::to_string(j) + " at degree " + std::to_string(n) + " cell " + std::to_string(x));
        }
    return out;
}

namespace detail {

TupleData build_tuples(int vertices, int cap, const std::function<bool(const std::vector<int>&)>& accept,
                       const std::vector<std::string>& names) {
    TupleData t;
    auto x = std::make_shared<SSet>(cap);
    t.tuples.resize(cap + 1);
    t.index.resize(cap + 1);
    for (int v = 0; v < vertices; ++v)
        if (accept({v})) t.tuples[0].push_back({v});
    for (int n = 1; n <= cap; ++n)
        for (auto& p : t.tuples[n - 1])
            for (int v = 0; v < vertices; ++v) {
                auto q = p;
                q.push_back(v);
                if (accept(q)) t.tuples[n].push_back(std::move(q));
            }
    for (int n = 0; n <= cap; ++n) {
        x->count[n] = static_cast<int>(t.tuples[n].size());
        t.index[n].reserve(t.tuples[n].size());
        for (int c = 0; c < x->count[n]; ++c) t.index[n].emplace(t.tuples[n][c], c);
    }
    auto find = [&](int n, const std::vector<int>& q) {
        auto it = t.index[n].find(q);
        if (it == t.index[n].end()) throw ShapeError("tuple predicate is not closed under simplicial operators");
        return it->second;
    };
    for (int n = 0; n <= cap; ++n) {
        if (n >= 1) {
            x->d[n].resize(static_cast<std::size_t>(x->count[n]) * (n + 1));
            for (int c = 0; c < x->count[n]; ++c)
                for (int i = 0; i <= n; ++i) {
                    auto q = t.tuples[n][c];
                    q.erase(q.begin() + i);
                    x->d[n][static_cast<std::size_t>(c) * (n + 1) + i] = find(n - 1, q);
                }
        }
        if (n < cap) {
            x->s[n].resize(static_cast<std::size_t>(x->count[n]) * (n + 1));
            for (int c = 0; c < x->count[n]; ++c)
                for (int j = 0; j <= n; ++j) {
                    auto q = t.tuples[n][c];
                    q.insert(q.begin() + j, q[j]);
                    x->s[n][static_cast<std::size_t>(c) * (n + 1) + j] = find(n + 1, q);
                }
        }
    }
    x->labels[0].resize(vertices);
    for (int v = 0; v < vertices; ++v) x->labels[0][v] = v < static_cast<int>(names.size()) ? names[v] : std::to_string(v);
    t.x = x;
    return t;
}

const XiNerve& xi_nerve(int n, int cap) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<XiNerve>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, cap}];
    if (!slot) {
        auto out = std::make_unique<XiNerve>();
        Poset dn = simplex_poset(n);
        auto cs = chains(dn);
        out->mask.resize(cs.size());
        out->of_mask.assign(1u << (n + 1), -1);
        std::vector<std::string> names;
        for (std::size_t e = 0; e < cs.size(); ++e) {
            unsigned m = 0;
            for (int b : cs[e]) m |= 1u << b;
            out->mask[e] = m;
            out->of_mask[m] = static_cast<int>(e);
            names.push_back(chain_id(dn, cs[e]));
        }
        const auto& mask = out->mask;
        out->t = build_tuples(static_cast<int>(cs.size()), cap, [&](const std::vector<int>& q) {
            for (std::size_t k = 1; k < q.size(); ++k)
                if ((mask[q[k - 1]] & mask[q[k]]) != mask[q[k - 1]]) return false;
            return true;
        }, names);
        slot = std::move(out);
    }
    return *slot;
}

int xi_apply(const std::vector<int>& theta, const XiNerve& from, const XiNerve& to, int k, int cell) {
    const auto& tup = from.t.tuples[k][cell];
    std::vector<int> img(tup.size());
    for (std::size_t t = 0; t < tup.size(); ++t) {
        unsigned m = from.mask[tup[t]], r = 0;
        for (int b = 0; m; ++b, m >>= 1)
            if (m & 1u) r |= 1u << theta[b];
        img[t] = to.of_mask[r];
    }
    return to.t.index[k].at(img);
}

std::vector<int> last_vertex_theta(const XiNerve& nx, int k, int cell) {
    const auto& tup = nx.t.tuples[k][cell];
    std::vector<int> theta(tup.size());
    for (std::size_t t = 0; t < tup.size(); ++t) {
        unsigned m = nx.mask[tup[t]];
        int top = 0;
        for (int b = 0; m; ++b, m >>= 1)
            if (m & 1u) top = b;
        theta[t] = top;
    }
    return theta;
}

}  // namespace detail

SSetPtr tuple_sset(int vertices, int cap, const std::function<bool(const std::vector<int>&)>& accept,
                   const std::vector<std::string>& vertex_names) {
    return detail::build_tuples(vertices, cap, accept, vertex_names).x;
}

SSetPtr nerve(const Poset& p, int cap) {
    return tuple_sset(p.size(), cap, [&](const std::vector<int>& q) {
        for (std::size_t k = 1; k < q.size(); ++k)
            if (!p.leq(q[k - 1], q[k])) return false;
        return true;
    }, p.ids());
}

SSetPtr empty_sset(int cap) { return std::make_shared<SSet>(cap); }

SubSSet subobject(const SSetPtr& x, const std::function<bool(int, int)>& keep) {
    auto y = std::make_shared<SSet>(x->cap);
    std::vector<std::vector<int>> newid(x->cap + 1), oldid(x->cap + 1);
    for (int n = 0; n <= x->cap; ++n) {
        newid[n].assign(x->count[n], -1);
        for (int c = 0; c < x->count[n]; ++c)
            if (keep(n, c)) {
                newid[n][c] = static_cast<int>(oldid[n].size());
                oldid[n].push_back(c);
            }
        y->count[n] = static_cast<int>(oldid[n].size());
    }
    auto remap = [&](int n, int c) {
        int v = newid[n][c];
        if (v < 0) throw ShapeError("subobject predicate is not closed under simplicial operators");
        return v;
    };
    for (int n = 0; n <= x->cap; ++n) {
        if (n >= 1)
            for (int c : oldid[n])
                for (int i = 0; i <= n; ++i) y->d[n].push_back(remap(n - 1, x->face(n, i, c)));
        if (n < x->cap)
            for (int c : oldid[n])
                for (int j = 0; j <= n; ++j) y->s[n].push_back(remap(n + 1, x->degen(n, j, c)));
    }
    if (!x->labels.empty())
        for (int c : oldid[0]) y->labels[0].push_back(c < static_cast<int>(x->labels[0].size()) ? x->labels[0][c] : std::to_string(c));
    SMap inc{y, x, oldid};
    return {y, inc};
}

SubSSet image(const SMap& f) {
    std::vector<std::vector<char>> hit(f.tgt->cap + 1);
    for (int n = 0; n <= f.tgt->cap; ++n) hit[n].assign(f.tgt->count[n], 0);
    for (int n = 0; n <= f.cap(); ++n)
        for (int v : f.map[n]) hit[n][v] = 1;
    return subobject(f.tgt, [&](int n, int c) { return hit[n][c] != 0; });
}

Standard standard(StandardKind kind, int m, std::optional<int> k, int cap) {
    if (m < 0) throw IndexError("m must be nonnegative");
    if (kind == StandardKind::horn && (!k || m <= 0 || *k < 0 || *k > m))
        throw IndexError("horn needs m > 0 and 0 <= k <= m");
    auto full = nerve(simplex_poset(m), cap);
    if (kind == StandardKind::simplex) return {full, identity_smap(full)};
    auto sub = subobject(full, [&](int n, int c) {
        auto vs = full->vertices(n, c);
        std::vector<char> hit(m + 1, 0);
        for (int v : vs) hit[v] = 1;
        int missing = 0;
        for (int t = 0; t <= m; ++t)
            if (!hit[t] && (kind == StandardKind::boundary || t != *k)) ++missing;
        return missing > 0;
    });
    return {sub.x, sub.inclusion};
}

// ---------------------------------------------------------------- Sd

SdResult sd(const SSetPtr& x, int cap) {
    int dimx = x->dimension();
    if (dimx > cap) throw CapError("cap " + std::to_string(cap) + " below the dimension " + std::to_string(dimx) + " of the input");
    if (dimx > x->cap) throw CapError("input cap too small");
    SdResult r;
    r.base = x;
    r.nd_of.resize(x->cap + 1);
    for (int n = 0; n <= x->cap; ++n) {
        r.nd_of[n].assign(x->count[n], -1);
        for (int c : x->nondegenerate(n)) {
            r.nd_of[n][c] = static_cast<int>(r.nd.size());
            r.nd.emplace_back(n, c);
        }
    }
    std::vector<const detail::XiNerve*> nx(std::max(dimx, 0) + 1);
    for (int n = 0; n <= dimx; ++n) nx[n] = &detail::xi_nerve(n, cap);

    auto out = std::make_shared<SSet>(cap);
    r.offset.resize(cap + 1);
    r.cls.resize(cap + 1);
    std::vector<std::vector<std::pair<int, int>>> rep(cap + 1);
    for (int k = 0; k <= cap; ++k) {
        long total = 0;
        r.offset[k].resize(r.nd.size());
        for (std::size_t p = 0; p < r.nd.size(); ++p) {
            r.offset[k][p] = total;
            total += nx[r.nd[p].first]->t.x->count[k];
        }
        UnionFind uf(static_cast<int>(total));
        for (std::size_t p = 0; p < r.nd.size(); ++p) {
            auto [n, c] = r.nd[p];
            if (n == 0) continue;
            const auto& low = *nx[n - 1];
            for (int i = 0; i <= n; ++i) {
                auto e = x->ez(n - 1, x->face(n, i, c));
                std::vector<int> delta(n);
                for (int t = 0; t < n; ++t) delta[t] = t < i ? t : t + 1;
                int q = r.nd_of[e.dim][e.cell];
                for (int s = 0; s < low.t.x->count[k]; ++s) {
                    int a = detail::xi_apply(delta, low, *nx[n], k, s);
                    int b = detail::xi_apply(e.eta, low, *nx[e.dim], k, s);
                    uf.unite(static_cast<int>(r.offset[k][p] + a), static_cast<int>(r.offset[k][q] + b));
                }
            }
        }
        r.cls[k].assign(total, -1);
        int next = 0;
        for (std::size_t p = 0; p < r.nd.size(); ++p) {
            int n = r.nd[p].first;
            for (int s = 0; s < nx[n]->t.x->count[k]; ++s) {
                long id = r.offset[k][p] + s;
                int root = uf.find(static_cast<int>(id));
                if (root == id) {
                    r.cls[k][id] = next++;
                    rep[k].emplace_back(static_cast<int>(p), s);
                }
            }
        }
        for (long id = 0; id < total; ++id) r.cls[k][id] = r.cls[k][uf.find(static_cast<int>(id))];
        out->count[k] = next;
    }
    auto cls_of = [&](int k, int p, int s) { return r.cls[k][r.offset[k][p] + s]; };
    for (int k = 0; k <= cap; ++k) {
        if (k >= 1) out->d[k].resize(static_cast<std::size_t>(out->count[k]) * (k + 1));
        if (k < cap) out->s[k].resize(static_cast<std::size_t>(out->count[k]) * (k + 1));
        for (int c = 0; c < out->count[k]; ++c) {
            auto [p, s] = rep[k][c];
            const auto& nn = *nx[r.nd[p].first]->t.x;
            for (int i = 0; k >= 1 && i <= k; ++i) out->d[k][static_cast<std::size_t>(c) * (k + 1) + i] = cls_of(k - 1, p, nn.face(k, i, s));
            for (int j = 0; k < cap && j <= k; ++j) out->s[k][static_cast<std::size_t>(c) * (k + 1) + j] = cls_of(k + 1, p, nn.degen(k, j, s));
        }
    }
    out->labels[0].resize(out->count[0]);
    for (int c = 0; c < out->count[0]; ++c) {
        auto [p, s] = rep[0][c];
        out->labels[0][c] = x->label(r.nd[p].first, r.nd[p].second) + "@" + nx[r.nd[p].first]->t.x->labels[0][s];
    }
    r.sd = out;
    r.alpha.src = out;
    r.alpha.tgt = x;
    int ac = std::min(cap, x->cap);
    for (int k = 0; k <= ac; ++k) {
        std::vector<int> m(out->count[k]);
        for (int c = 0; c < out->count[k]; ++c) {
            auto [p, s] = rep[k][c];
            auto [n, xc] = r.nd[p];
            m[c] = x->apply(detail::last_vertex_theta(*nx[n], k, s), n, xc);
        }
        r.alpha.map.push_back(m);
    }
    r.rep = rep;
    return r;
}

SMap sd_map(const SMap& f, const SdResult& a, const SdResult& b) {
    int c = std::min(a.sd->cap, b.sd->cap);
    SMap g{a.sd, b.sd, {}};
    for (int k = 0; k <= c; ++k) {
        std::vector<int> m(a.sd->count[k]);
        for (int cell = 0; cell < a.sd->count[k]; ++cell) {
            auto [p, s] = a.rep[k][cell];
            auto [n, x] = a.nd[p];
            if (n > f.cap()) throw CapError("map not defined in degree " + std::to_string(n));
            auto e = b.base->ez(n, f.map[n][x]);
            const auto& from = detail::xi_nerve(n, a.sd->cap);
            const auto& to = detail::xi_nerve(e.dim, b.sd->cap);
            int s2 = detail::xi_apply(e.eta, from, to, k, s);
            int q = b.nd_of[e.dim][e.cell];
            m[cell] = b.cls[k][b.offset[k][q] + s2];
        }
        g.map.push_back(m);
    }
    return g;
}

// ---------------------------------------------------------------- map search

namespace {

struct Plan {
    std::vector<std::pair<int, int>> order;      // nondegenerate cells of K
    std::vector<std::vector<int>> slot;          // slot[n][c] position in order, -1 if degenerate
    // per item: for each face, (slot of nondegenerate source, eta)
    std::vector<std::vector<std::pair<int, std::vector<int>>>> faces;
};

Plan make_plan(const SSet& k) {
    Plan pl;
    int top = k.cap;
    pl.slot.resize(top + 1);
    std::vector<std::pair<int, int>> cells;
    std::vector<std::vector<int>> verts;
    for (int n = 0; n <= top; ++n) {
        pl.slot[n].assign(k.count[n], -1);
        for (int c : k.nondegenerate(n)) {
            cells.emplace_back(n, c);
            verts.push_back(k.vertices(n, c));
        }
    }
    int nv = k.count[0];
    // greedy vertex order: prefer vertices sharing cells with those already placed
    std::vector<std::vector<int>> adj(nv);
    for (std::size_t t = 0; t < cells.size(); ++t)
        if (cells[t].first == 1) {
            int a = verts[t][0], b = verts[t][1];
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    std::vector<int> rank(nv, -1), score(nv, 0);
    for (int step = 0; step < nv; ++step) {
        int best = -1;
        for (int v = 0; v < nv; ++v)
            if (rank[v] < 0 && (best < 0 || score[v] > score[best])) best = v;
        rank[best] = step;
        for (int w : adj[best]) ++score[w];
    }
    std::vector<int> key(cells.size());
    for (std::size_t t = 0; t < cells.size(); ++t) {
        int mx = 0;
        for (int v : verts[t]) mx = std::max(mx, rank[v]);
        key[t] = mx;
    }
    std::vector<int> idx(cells.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (key[a] != key[b]) return key[a] < key[b];
        return cells[a].first < cells[b].first;
    });
    for (int t : idx) {
        pl.slot[cells[t].first][cells[t].second] = static_cast<int>(pl.order.size());
        pl.order.push_back(cells[t]);
    }
    pl.faces.resize(pl.order.size());
    for (std::size_t t = 0; t < pl.order.size(); ++t) {
        auto [n, c] = pl.order[t];
        for (int i = 0; n >= 1 && i <= n; ++i) {
            auto e = k.ez(n - 1, k.face(n, i, c));
            pl.faces[t].emplace_back(pl.slot[e.dim][e.cell], e.eta);
        }
    }
    return pl;
}

bool is_identity(const std::vector<int>& eta) {
    for (std::size_t t = 0; t < eta.size(); ++t)
        if (eta[t] != static_cast<int>(t)) return false;
    return true;
}

class FaceIndex {
public:
    explicit FaceIndex(const SSet& x) : x_(x), built_(x.cap + 1) , idx_(x.cap + 1) {}
    const std::vector<int>* find(int n, const std::vector<int>& faces) {
        if (!built_[n]) {
            built_[n] = true;
            for (int c = 0; c < x_.count[n]; ++c) {
                std::vector<int> f(n + 1);
                for (int i = 0; i <= n; ++i) f[i] = x_.face(n, i, c);
                idx_[n][f].push_back(c);
            }
        }
        auto it = idx_[n].find(faces);
        return it == idx_[n].end() ? nullptr : &it->second;
    }

private:
    const SSet& x_;
    std::vector<char> built_;
    std::vector<VecMap<std::vector<int>>> idx_;
};

}  // namespace

std::uint64_t enumerate_maps(const MapSearch& q, Budget& budget,
                             const std::function<bool(const std::vector<std::vector<int>>&)>& visit) {
    const SSet& k = *q.k;
    const SSet& x = *q.x;
    int dimk = k.dimension();
    if (dimk > x.cap) throw CapError("target cap below source dimension");
    Plan pl = make_plan(k);
    FaceIndex fidx(x);
    std::vector<int> val(pl.order.size(), -1);
    std::vector<int> all0(x.count[0]);
    std::iota(all0.begin(), all0.end(), 0);
    std::uint64_t visited = 0;
    bool stop = false;
    auto eval_face = [&](std::size_t t, int i) {
        const auto& [src, eta] = pl.faces[t][i];
        int v = val[src];
        int dim = pl.order[src].first;
        return is_identity(eta) ? v : x.apply(eta, dim, v);
    };
    std::function<void(std::size_t)> rec = [&](std::size_t t) {
        if (stop) return;
        budget.tick();
        if (t == pl.order.size()) {
            ++visited;
            std::vector<std::vector<int>> nd(k.cap + 1);
            for (int n = 0; n <= k.cap; ++n) nd[n].assign(k.count[n], -1);
            for (std::size_t u = 0; u < pl.order.size(); ++u) nd[pl.order[u].first][pl.order[u].second] = val[u];
            if (!visit(nd)) stop = true;
            return;
        }
        auto [n, c] = pl.order[t];
        const std::vector<int>* cands;
        std::vector<int> faces;
        if (n == 0) {
            cands = &all0;
        } else {
            faces.resize(n + 1);
            for (int i = 0; i <= n; ++i) faces[i] = eval_face(t, i);
            cands = fidx.find(n, faces);
            if (!cands) return;
        }
        int pinned = q.fixed.empty() || n >= static_cast<int>(q.fixed.size()) || q.fixed[n].empty() ? -1 : q.fixed[n][c];
        for (int y : *cands) {
            if (pinned >= 0 && y != pinned) continue;
            if (q.allow && !q.allow(n, c, y)) continue;
            val[t] = y;
            rec(t + 1);
            if (stop) return;
        }
        val[t] = -1;
    };
    rec(0);
    return visited;
}

std::vector<std::vector<int>> extend_map(const SSet& k, const SSet& x, const std::vector<std::vector<int>>& nd_values) {
    int c = std::min(k.cap, x.cap);
    std::vector<std::vector<int>> out(c + 1);
    for (int n = 0; n <= c; ++n) {
        out[n].resize(k.count[n]);
        for (int cell = 0; cell < k.count[n]; ++cell) {
            auto e = k.ez(n, cell);
            int v = nd_values[e.dim][e.cell];
            out[n][cell] = e.dim == n ? v : x.apply(e.eta, e.dim, v);
        }
    }
    return out;
}

// ---------------------------------------------------------------- Ex

ExResult ex(const SSetPtr& x, int cap, std::uint64_t budget_nodes) {
    if (x->cap < cap) throw CapError("Ex cap exceeds the input cap");
    Budget budget(budget_nodes, "Ex enumeration");
    auto out = std::make_shared<SSet>(cap);
    std::vector<const detail::XiNerve*> nx(cap + 1);
    for (int m = 0; m <= cap; ++m) nx[m] = &detail::xi_nerve(m, cap);
    // nondegenerate cells of each N xi Delta_m, as (degree, cell)
    std::vector<std::vector<std::pair<int, int>>> nd(cap + 1);
    std::vector<std::vector<std::vector<int>>> ndpos(cap + 1);
    for (int m = 0; m <= cap; ++m) {
        const SSet& nm = *nx[m]->t.x;
        ndpos[m].resize(cap + 1);
        for (int q = 0; q <= cap; ++q) {
            ndpos[m][q].assign(nm.count[q], -1);
            for (int c : nm.nondegenerate(q)) {
                ndpos[m][q][c] = static_cast<int>(nd[m].size());
                nd[m].emplace_back(q, c);
            }
        }
    }
    std::vector<std::vector<std::vector<int>>> maps(cap + 1);
    std::vector<VecMap<int>> index(cap + 1);
    for (int m = 0; m <= cap; ++m) {
        MapSearch q;
        q.k = nx[m]->t.x.get();
        q.x = x.get();
        enumerate_maps(q, budget, [&](const std::vector<std::vector<int>>& v) {
            std::vector<int> key(nd[m].size());
            for (std::size_t t = 0; t < nd[m].size(); ++t) key[t] = v[nd[m][t].first][nd[m][t].second];
            index[m].emplace(key, static_cast<int>(maps[m].size()));
            maps[m].push_back(std::move(key));
            return true;
        });
        out->count[m] = static_cast<int>(maps[m].size());
    }
    auto eval = [&](int m, const std::vector<int>& key, int q, int cell) {
        const SSet& nm = *nx[m]->t.x;
        auto e = nm.ez(q, cell);
        int v = key[ndpos[m][e.dim][e.cell]];
        return e.dim == q ? v : x->apply(e.eta, e.dim, v);
    };
    for (int m = 0; m <= cap; ++m) {
        if (m >= 1) {
            out->d[m].resize(static_cast<std::size_t>(out->count[m]) * (m + 1));
            for (int i = 0; i <= m; ++i) {
                std::vector<int> delta(m);
                for (int t = 0; t < m; ++t) delta[t] = t < i ? t : t + 1;
                for (int f = 0; f < out->count[m]; ++f) {
                    std::vector<int> key(nd[m - 1].size());
                    for (std::size_t t = 0; t < nd[m - 1].size(); ++t) {
                        auto [q, c] = nd[m - 1][t];
                        int c2 = detail::xi_apply(delta, *nx[m - 1], *nx[m], q, c);
                        key[t] = eval(m, maps[m][f], q, c2);
                    }
                    out->d[m][static_cast<std::size_t>(f) * (m + 1) + i] = index[m - 1].at(key);
                }
            }
        }
        if (m < cap) {
            out->s[m].resize(static_cast<std::size_t>(out->count[m]) * (m + 1));
            for (int j = 0; j <= m; ++j) {
                std::vector<int> sigma(m + 2);
                for (int t = 0; t <= m + 1; ++t) sigma[t] = t <= j ? t : t - 1;
                for (int f = 0; f < out->count[m]; ++f) {
                    std::vector<int> key(nd[m + 1].size());
                    for (std::size_t t = 0; t < nd[m + 1].size(); ++t) {
                        auto [q, c] = nd[m + 1][t];
                        int c2 = detail::xi_apply(sigma, *nx[m + 1], *nx[m], q, c);
                        key[t] = eval(m, maps[m][f], q, c2);
                    }
                    out->s[m][static_cast<std::size_t>(f) * (m + 1) + j] = index[m + 1].at(key);
                }
            }
        }
    }
    ExResult r;
    r.ex = out;
    r.beta.src = x;
    r.beta.tgt = out;
    for (int m = 0; m <= cap; ++m) {
        std::vector<int> mm(x->count[m]);
        for (int c = 0; c < x->count[m]; ++c) {
            std::vector<int> key(nd[m].size());
            for (std::size_t t = 0; t < nd[m].size(); ++t) {
                auto [q, cell] = nd[m][t];
                key[t] = x->apply(detail::last_vertex_theta(*nx[m], q, cell), m, c);
            }
            mm[c] = index[m].at(key);
        }
        r.beta.map.push_back(mm);
    }
    return r;
}

// ---------------------------------------------------------------- lifting

bool has_rlp(const SMap& p, const std::vector<SMap>& tests, std::uint64_t budget_nodes, std::string* failure) {
    Budget budget(budget_nodes, "lifting search");
    const SSet& xs = *p.src;
    const SSet& ys = *p.tgt;
    for (std::size_t t = 0; t < tests.size(); ++t) {
        const SMap& j = tests[t];
        const SSet& ks = *j.src;
        const SSet& ls = *j.tgt;
        bool ok = true;
        MapSearch qb;
        qb.k = &ls;
        qb.x = &ys;
        enumerate_maps(qb, budget, [&](const std::vector<std::vector<int>>& bnd) {
            auto b = extend_map(ls, ys, bnd);
            MapSearch qa;
            qa.k = &ks;
            qa.x = &xs;
            qa.allow = [&](int n, int c, int y) { return p.map[n][y] == b[n][j.map[n][c]]; };
            enumerate_maps(qa, budget, [&](const std::vector<std::vector<int>>& and_) {
                auto a = extend_map(ks, xs, and_);
                MapSearch ql;
                ql.k = &ls;
                ql.x = &xs;
                ql.fixed.resize(ls.cap + 1);
                for (int n = 0; n <= ls.cap; ++n) ql.fixed[n].assign(ls.count[n], -1);
                for (int n = 0; n <= std::min(ks.cap, j.cap()); ++n)
                    for (int c = 0; c < ks.count[n]; ++c) ql.fixed[n][j.map[n][c]] = a[n][c];
                ql.allow = [&](int n, int c, int y) { return p.map[n][y] == b[n][c]; };
                bool found = false;
                enumerate_maps(ql, budget, [&](const std::vector<std::vector<int>>&) {
                    found = true;
                    return false;
                });
                if (!found) ok = false;
                return found;
            });
            return ok;
        });
        if (!ok) {
            if (failure) *failure = "no lift for a square against test map " + std::to_string(t);
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- pushout, product

SPushout sset_pushout(const SMap& f, const SMap& g) {
    if (f.src != g.src && f.src->count != g.src->count) throw ShapeError("pushout legs must share their source");
    int cap = std::min({f.cap(), g.cap(), f.tgt->cap, g.tgt->cap});
    const SSet& x = *f.tgt;
    const SSet& y = *g.tgt;
    const SSet& k = *f.src;
    auto out = std::make_shared<SSet>(cap);
    std::vector<std::vector<int>> cls(cap + 1), rep(cap + 1);
    for (int n = 0; n <= cap; ++n) {
        int nx = x.count[n], ny = y.count[n];
        UnionFind uf(nx + ny);
        for (int c = 0; c < k.count[n]; ++c) uf.unite(f.map[n][c], nx + g.map[n][c]);
        cls[n].assign(nx + ny, -1);
        for (int id = 0; id < nx + ny; ++id)
            if (uf.find(id) == id) {
                cls[n][id] = static_cast<int>(rep[n].size());
                rep[n].push_back(id);
            }
        for (int id = 0; id < nx + ny; ++id) cls[n][id] = cls[n][uf.find(id)];
        out->count[n] = static_cast<int>(rep[n].size());
    }
    for (int n = 0; n <= cap; ++n) {
        int nx = x.count[n];
        for (int id : rep[n]) {
            bool left = id < nx;
            int c = left ? id : id - nx;
            for (int i = 0; n >= 1 && i <= n; ++i) {
                int fc = left ? x.face(n, i, c) : y.face(n, i, c);
                out->d[n].push_back(cls[n - 1][left ? fc : x.count[n - 1] + fc]);
            }
            for (int j = 0; n < cap && j <= n; ++j) {
                int sc = left ? x.degen(n, j, c) : y.degen(n, j, c);
                out->s[n].push_back(cls[n + 1][left ? sc : x.count[n + 1] + sc]);
            }
        }
    }
    SPushout r{out, {f.tgt, out, {}}, {g.tgt, out, {}}};
    for (int n = 0; n <= cap; ++n) {
        std::vector<int> l(x.count[n]), rr(y.count[n]);
        for (int c = 0; c < x.count[n]; ++c) l[c] = cls[n][c];
        for (int c = 0; c < y.count[n]; ++c) rr[c] = cls[n][x.count[n] + c];
        r.left.map.push_back(l);
        r.right.map.push_back(rr);
    }
    return r;
}

SMap pushout_induced(const SPushout& p, const SMap& a, const SMap& b) {
    if (a.src != p.left.src || b.src != p.right.src || a.tgt != b.tgt) throw ShapeError("maps do not form a cocone on the pushout");
    int cap = std::min({p.apex->cap, a.cap(), b.cap()});
    SMap m{p.apex, a.tgt, {}};
    for (int n = 0; n <= cap; ++n) {
        std::vector<int> row(p.apex->count[n], -1);
        auto put = [&](const SMap& leg, const SMap& val) {
            for (int c = 0; c < static_cast<int>(leg.map[n].size()); ++c) {
                int& slot = row[leg.map[n][c]];
                if (slot >= 0 && slot != val.map[n][c]) throw ShapeError("maps do not agree on the pushout");
                slot = val.map[n][c];
            }
        };
        put(p.left, a);
        put(p.right, b);
        m.map.push_back(std::move(row));
    }
    return m;
}

SSetPtr product(const SSetPtr& a, const SSetPtr& b) {
    int cap = std::min(a->cap, b->cap);
    auto out = std::make_shared<SSet>(cap);
    for (int n = 0; n <= cap; ++n) {
        int nb = b->count[n];
        out->count[n] = a->count[n] * nb;
        if (n >= 1) {
            out->d[n].resize(static_cast<std::size_t>(out->count[n]) * (n + 1));
            for (int x = 0; x < a->count[n]; ++x)
                for (int y = 0; y < nb; ++y)
                    for (int i = 0; i <= n; ++i)
                        out->d[n][static_cast<std::size_t>(x * nb + y) * (n + 1) + i] =
                            a->face(n, i, x) * b->count[n - 1] + b->face(n, i, y);
        }
        if (n < cap) {
            out->s[n].resize(static_cast<std::size_t>(out->count[n]) * (n + 1));
            for (int x = 0; x < a->count[n]; ++x)
                for (int y = 0; y < nb; ++y)
                    for (int j = 0; j <= n; ++j)
                        out->s[n][static_cast<std::size_t>(x * nb + y) * (n + 1) + j] =
                            a->degen(n, j, x) * b->count[n + 1] + b->degen(n, j, y);
        }
    }
    return out;
}

std::optional<SMap> simplicial_homotopy(const SMap& f, const SMap& g, std::uint64_t budget_nodes) {
    int cap = std::min({f.cap(), g.cap(), f.src->cap, f.tgt->cap});
    auto interval = nerve(simplex_poset(1), cap);
    auto p = product(interval, f.src);
    Budget budget(budget_nodes, "homotopy search");
    auto attempt = [&](const SMap& from, const SMap& to) -> std::optional<SMap> {
        MapSearch q;
        q.k = p.get();
        q.x = f.tgt.get();
        q.fixed.resize(cap + 1);
        for (int n = 0; n <= cap; ++n) {
            q.fixed[n].assign(p->count[n], -1);
            int nb = f.src->count[n];
            int last = interval->count[n] - 1;  // constant-1 simplex is lexicographically last
            for (int x = 0; x < nb; ++x) {
                q.fixed[n][0 * nb + x] = from.map[n][x];
                q.fixed[n][last * nb + x] = to.map[n][x];
            }
        }
        std::optional<SMap> found;
        enumerate_maps(q, budget, [&](const std::vector<std::vector<int>>& v) {
            found = SMap{p, f.tgt, extend_map(*p, *f.tgt, v)};
            return false;
        });
        return found;
    };
    if (auto h = attempt(f, g)) return h;
    return attempt(g, f);
}

// ---------------------------------------------------------------- vertex isomorphisms

std::optional<IsoPair> find_vertex_iso(const SSetPtr& a, const SSetPtr& b, const std::vector<int>& colors_a,
                                       const std::vector<int>& colors_b) {
    int cap = std::min(a->cap, b->cap);
    for (int n = 0; n <= cap; ++n)
        if (a->count[n] != b->count[n]) return std::nullopt;
    int nv = a->count[0];
    auto tuples = [&](const SSet& x) {
        std::vector<std::vector<std::vector<int>>> out(cap + 1);
        std::vector<VecMap<int>> idx(cap + 1);
        for (int n = 0; n <= cap; ++n)
            for (int c = 0; c < x.count[n]; ++c) {
                out[n].push_back(x.vertices(n, c));
                if (!idx[n].emplace(out[n].back(), c).second)
                    throw PreconditionError("cells are not determined by their vertices");
            }
        return std::make_pair(out, idx);
    };
    auto [ta, ia] = tuples(*a);
    auto [tb, ib] = tuples(*b);
    auto edges = [&](const std::vector<std::vector<std::vector<int>>>& t) {
        std::vector<char> e(static_cast<std::size_t>(nv) * nv, 0);
        if (cap >= 1)
            for (auto& q : t[1]) e[static_cast<std::size_t>(q[0]) * nv + q[1]] = 1;
        return e;
    };
    auto ea = edges(ta), eb = edges(tb);
    // color refinement over the disjoint union
    std::vector<long> col(2 * nv);
    for (int v = 0; v < nv; ++v) {
        col[v] = colors_a.empty() ? 0 : colors_a[v];
        col[nv + v] = colors_b.empty() ? 0 : colors_b[v];
    }
    for (int round = 0; round <= nv; ++round) {
        std::map<std::vector<long>, long> palette;
        std::vector<std::vector<long>> sig(2 * nv);
        for (int side = 0; side < 2; ++side) {
            const auto& e = side ? eb : ea;
            for (int v = 0; v < nv; ++v) {
                std::vector<long> outs, ins;
                for (int w = 0; w < nv; ++w) {
                    if (w == v) continue;
                    if (e[static_cast<std::size_t>(v) * nv + w]) outs.push_back(col[side * nv + w]);
                    if (e[static_cast<std::size_t>(w) * nv + v]) ins.push_back(col[side * nv + w]);
                }
                std::sort(outs.begin(), outs.end());
                std::sort(ins.begin(), ins.end());
                auto& sg = sig[side * nv + v];
                sg.push_back(col[side * nv + v]);
                sg.push_back(-1);
                sg.insert(sg.end(), outs.begin(), outs.end());
                sg.push_back(-2);
                sg.insert(sg.end(), ins.begin(), ins.end());
            }
        }
        for (auto& sg : sig) palette.emplace(sg, 0);
        long next = 0;
        for (auto& [k, v] : palette) v = next++;
        std::vector<long> nc(2 * nv);
        for (int v = 0; v < 2 * nv; ++v) nc[v] = palette[sig[v]];
        std::set<long> before(col.begin(), col.end()), after(nc.begin(), nc.end());
        col = nc;
        if (after.size() == before.size() && round > 0) break;
    }
    // BFS order on a
    std::vector<int> order;
    std::vector<char> seen(nv, 0);
    for (int root = 0; root < nv; ++root) {
        if (seen[root]) continue;
        std::vector<int> queue{root};
        seen[root] = 1;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            int v = queue[h];
            order.push_back(v);
            for (int w = 0; w < nv; ++w)
                if (!seen[w] && (ea[static_cast<std::size_t>(v) * nv + w] || ea[static_cast<std::size_t>(w) * nv + v])) {
                    seen[w] = 1;
                    queue.push_back(w);
                }
        }
    }
    std::vector<int> phi(nv, -1);
    std::vector<char> used(nv, 0);
    std::optional<IsoPair> result;
    auto verify = [&]() {
        SMap fwd{a, b, {}}, bwd{b, a, {}};
        for (int n = 0; n <= cap; ++n) {
            std::vector<int> m(a->count[n]), inv(b->count[n], -1);
            for (int c = 0; c < a->count[n]; ++c) {
                std::vector<int> q(ta[n][c].size());
                for (std::size_t t = 0; t < q.size(); ++t) q[t] = phi[ta[n][c][t]];
                auto it = ib[n].find(q);
                if (it == ib[n].end()) return false;
                m[c] = it->second;
                if (inv[m[c]] >= 0) return false;
                inv[m[c]] = c;
            }
            fwd.map.push_back(m);
            bwd.map.push_back(inv);
        }
        result = IsoPair{fwd, bwd};
        return true;
    };
    std::function<bool(std::size_t)> rec = [&](std::size_t t) {
        if (t == order.size()) return verify();
        int v = order[t];
        for (int w = 0; w < nv; ++w) {
            if (used[w] || col[nv + w] != col[v]) continue;
            bool ok = true;
            for (std::size_t s = 0; s < t && ok; ++s) {
                int u = order[s], pu = phi[u];
                ok = ea[static_cast<std::size_t>(u) * nv + v] == eb[static_cast<std::size_t>(pu) * nv + w] &&
                     ea[static_cast<std::size_t>(v) * nv + u] == eb[static_cast<std::size_t>(w) * nv + pu];
            }
            if (!ok) continue;
            phi[v] = w;
            used[w] = 1;
            if (rec(t + 1)) return true;
            used[w] = 0;
            phi[v] = -1;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    return result;
}

// ---------------------------------------------------------------- bisimplicial

std::vector<std::string> validate_bisset(const BiSSet& b, std::size_t max_reports) {
    std::vector<std::string> out;
    auto report = [&](const std::string& m) {
        if (out.size() < max_reports) out.push_back(m);
    };
    // each row and column is a simplicial set
    for (int q = 0; q <= b.qcap; ++q) {
        SSet row(b.pcap);
        for (int p = 0; p <= b.pcap; ++p) {
            row.count[p] = b.count[p][q];
            row.d[p] = b.dh[p][q];
            row.s[p] = b.sh[p][q];
        }
        for (auto& m : validate_sset(row, max_reports)) report("row q=" + std::to_string(q) + ": " + m);
    }
    for (int p = 0; p <= b.pcap; ++p) {
        SSet column(b.qcap);
        for (int q = 0; q <= b.qcap; ++q) {
            column.count[q] = b.count[p][q];
            column.d[q] = b.dv[p][q];
            column.s[q] = b.sv[p][q];
        }
        for (auto& m : validate_sset(column, max_reports)) report("column p=" + std::to_string(p) + ": " + m);
    }
    if (!out.empty()) return out;
    for (int p = 0; p <= b.pcap; ++p)
        for (int q = 0; q <= b.qcap; ++q)
            for (int x = 0; x < b.count[p][q]; ++x) {
                for (int i = 0; p >= 1 && i <= p; ++i)
                    for (int j = 0; q >= 1 && j <= q; ++j)
                        if (b.vface(p - 1, q, j, b.hface(p, q, i, x)) != b.hface(p, q - 1, i, b.vface(p, q, j, x)))
                            report("horizontal and vertical faces do not commute at (" + std::to_string(p) + "," + std::to_string(q) + ")");
                for (int i = 0; p < b.pcap && i <= p; ++i)
                    for (int j = 0; q >= 1 && j <= q; ++j)
                        if (b.vface(p + 1, q, j, b.hdegen(p, q, i, x)) != b.hdegen(p, q - 1, i, b.vface(p, q, j, x)))
                            report("horizontal degeneracy and vertical face do not commute");
                for (int i = 0; p >= 1 && i <= p; ++i)
                    for (int j = 0; q < b.qcap && j <= q; ++j)
                        if (b.hface(p, q + 1, i, b.vdegen(p, q, j, x)) != b.vdegen(p - 1, q, j, b.hface(p, q, i, x)))
                            report("vertical degeneracy and horizontal face do not commute");
                for (int i = 0; p < b.pcap && i <= p; ++i)
                    for (int j = 0; q < b.qcap && j <= q; ++j)
                        if (b.hdegen(p, q + 1, i, b.vdegen(p, q, j, x)) != b.vdegen(p + 1, q, j, b.hdegen(p, q, i, x)))
                            report("degeneracies do not commute");
            }
    return out;
}

SSetPtr diagonal(const BiSSet& b) {
    if (b.pcap != b.qcap) throw CapError("diagonal needs equal caps");
    int cap = b.pcap;
    auto out = std::make_shared<SSet>(cap);
    for (int n = 0; n <= cap; ++n) out->count[n] = b.count[n][n];
    for (int n = 0; n <= cap; ++n)
        for (int x = 0; x < out->count[n]; ++x) {
            for (int i = 0; n >= 1 && i <= n; ++i) out->d[n].push_back(b.hface(n, n - 1, i, b.vface(n, n, i, x)));
            for (int j = 0; n < cap && j <= n; ++j) out->s[n].push_back(b.hdegen(n, n + 1, j, b.vdegen(n, n, j, x)));
        }
    return out;
}

BiSSet external_product(const SSet& a, const SSet& b) {
    BiSSet r;
    r.pcap = a.cap;
    r.qcap = b.cap;
    int P = a.cap, Q = b.cap;
    r.count.assign(P + 1, std::vector<int>(Q + 1));
    r.dh.assign(P + 1, std::vector<std::vector<int>>(Q + 1));
    r.sh = r.dv = r.sv = r.dh;
    for (int p = 0; p <= P; ++p)
        for (int q = 0; q <= Q; ++q) {
            int nb = b.count[q];
            r.count[p][q] = a.count[p] * nb;
            for (int x = 0; x < a.count[p]; ++x)
                for (int y = 0; y < nb; ++y) {
                    for (int i = 0; p >= 1 && i <= p; ++i) r.dh[p][q].push_back(a.face(p, i, x) * nb + y);
                    for (int i = 0; p < P && i <= p; ++i) r.sh[p][q].push_back(a.degen(p, i, x) * nb + y);
                    for (int j = 0; q >= 1 && j <= q; ++j) r.dv[p][q].push_back(x * b.count[q - 1] + b.face(q, j, y));
                    for (int j = 0; q < Q && j <= q; ++j) r.sv[p][q].push_back(x * b.count[q + 1] + b.degen(q, j, y));
                }
        }
    return r;
}

}  // namespace cat2
