#include "cat2/poset.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cat2 {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k) out += sep;
        out += parts[k];
    }
    return out;
}

int Poset::find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? -1 : it->second;
}

int Poset::index(const std::string& id) const {
    int x = find(id);
    if (x < 0) throw IndexError("unknown poset element '" + id + "'");
    return x;
}

Poset Poset::build(std::vector<std::string> ids, const std::vector<std::pair<int, int>>& rel) {
    Poset p;
    int n = static_cast<int>(ids.size());
    p.ids_ = std::move(ids);
    for (int x = 0; x < n; ++x) {
        if (!p.index_.emplace(p.ids_[x], x).second) throw ShapeError("duplicate element id '" + p.ids_[x] + "'");
    }
    p.leq_.assign(static_cast<std::size_t>(n) * n, 0);
    for (int x = 0; x < n; ++x) p.leq_[x * n + x] = 1;
    for (auto [a, b] : rel) {
        if (a < 0 || b < 0 || a >= n || b >= n) throw IndexError("relation index out of range");
        p.leq_[a * n + b] = 1;
    }
    for (int k = 0; k < n; ++k)
        for (int a = 0; a < n; ++a)
            if (p.leq_[a * n + k])
                for (int b = 0; b < n; ++b)
                    if (p.leq_[k * n + b]) p.leq_[a * n + b] = 1;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (p.leq_[a * n + b] && p.leq_[b * n + a])
                throw CycleError("relation has a cycle through '" + p.ids_[a] + "' and '" + p.ids_[b] + "'");
    return p;
}

std::vector<std::pair<int, int>> Poset::strict_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size(); ++a)
        for (int b = 0; b < size(); ++b)
            if (lt(a, b)) out.emplace_back(a, b);
    return out;
}

std::vector<std::pair<int, int>> Poset::covers() const {
    std::vector<std::pair<int, int>> out;
    for (auto [a, b] : strict_pairs()) {
        bool between = false;
        for (int c = 0; c < size() && !between; ++c) between = lt(a, c) && lt(c, b);
        if (!between) out.emplace_back(a, b);
    }
    return out;
}

Poset make_poset(const std::vector<std::string>& ids,
                 const std::vector<std::pair<std::string, std::string>>& rel) {
    std::unordered_map<std::string, int> idx;
    for (int k = 0; k < static_cast<int>(ids.size()); ++k)
        if (!idx.emplace(ids[k], k).second) throw ShapeError("duplicate element id '" + ids[k] + "'");
    std::vector<std::pair<int, int>> r;
    for (auto& [a, b] : rel) {
        auto ia = idx.find(a), ib = idx.find(b);
        if (ia == idx.end() || ib == idx.end()) throw IndexError("relation mentions unknown id");
        r.emplace_back(ia->second, ib->second);
    }
    return Poset::build(ids, r);
}

Poset simplex_poset(int m) {
    std::vector<std::string> ids;
    std::vector<std::pair<int, int>> rel;
    for (int k = 0; k <= m; ++k) {
        ids.push_back(std::to_string(k));
        if (k) rel.emplace_back(k - 1, k);
    }
    return Poset::build(ids, rel);
}

Poset antichain(int n) {
    std::vector<std::string> ids;
    for (int k = 0; k < n; ++k) ids.push_back(std::to_string(k));
    return Poset::build(ids, {});
}

Poset opposite(const Poset& p) {
    std::vector<std::pair<int, int>> rel;
    for (auto [a, b] : p.strict_pairs()) rel.emplace_back(b, a);
    return Poset::build(p.ids(), rel);
}

Poset subposet(const Poset& p, const std::vector<int>& elems) {
    std::vector<std::string> ids;
    std::vector<std::pair<int, int>> rel;
    for (int a : elems) ids.push_back(p.id(a));
    for (int x = 0; x < static_cast<int>(elems.size()); ++x)
        for (int y = 0; y < static_cast<int>(elems.size()); ++y)
            if (x != y && p.leq(elems[x], elems[y])) rel.emplace_back(x, y);
    return Poset::build(ids, rel);
}

MonotoneMap::MonotoneMap(Poset s, Poset t, std::vector<int> m)
    : source(std::move(s)), target(std::move(t)), map(std::move(m)) {
    if (static_cast<int>(map.size()) != source.size()) throw ShapeError("map is not total on its source");
    for (int x : map)
        if (x < 0 || x >= target.size()) throw ShapeError("map value outside target");
    for (int a = 0; a < source.size(); ++a)
        for (int b = 0; b < source.size(); ++b)
            if (source.leq(a, b) && !target.leq(map[a], map[b]))
                throw ShapeError("map is not monotone at " + source.id(a) + " <= " + source.id(b));
}

bool MonotoneMap::injective() const {
    std::set<int> seen(map.begin(), map.end());
    return seen.size() == map.size();
}

MonotoneMap identity_map(const Poset& p) {
    std::vector<int> m(p.size());
    std::iota(m.begin(), m.end(), 0);
    return MonotoneMap(p, p, m);
}

MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
    if (!(f.target == g.source)) throw ShapeError("maps are not composable");
    std::vector<int> m(f.source.size());
    for (int x = 0; x < f.source.size(); ++x) m[x] = g.map[f.map[x]];
    return MonotoneMap(f.source, g.target, m);
}

MonotoneMap inclusion_map(const Poset& sub, const Poset& whole) {
    std::vector<int> m(sub.size());
    for (int x = 0; x < sub.size(); ++x) m[x] = whole.index(sub.id(x));
    return MonotoneMap(sub, whole, m);
}

bool same_map(const MonotoneMap& a, const MonotoneMap& b) {
    return a.source == b.source && a.target == b.target && a.map == b.map;
}

std::vector<std::vector<int>> chains(const Poset& p) {
    int n = p.size();
    // order elements by number of predecessors so that chains come out increasing
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> height(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (p.lt(b, a)) ++height[a];
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return height[a] < height[b]; });
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int from) {
        for (int k = from; k < n; ++k) {
            int x = order[k];
            if (!cur.empty() && !p.lt(cur.back(), x)) continue;
            cur.push_back(x);
            out.push_back(cur);
            rec(k + 1);
            cur.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

std::string chain_id(const Poset& p, const std::vector<int>& chain) {
    std::vector<std::string> parts;
    for (int x : chain) parts.push_back(p.id(x));
    return "[" + join(parts, ",") + "]";
}

namespace {

std::vector<int> sort_chain(const Poset& p, std::vector<int> c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    std::sort(c.begin(), c.end(), [&](int a, int b) { return p.lt(a, b); });
    return c;
}

}  // namespace

Poset xi(const Poset& e) {
    auto cs = chains(e);
    std::vector<std::string> ids;
    for (auto& c : cs) ids.push_back(chain_id(e, c));
    std::vector<std::pair<int, int>> rel;
    for (int a = 0; a < static_cast<int>(cs.size()); ++a)
        for (int b = 0; b < static_cast<int>(cs.size()); ++b)
            if (a != b && cs[a].size() < cs[b].size() &&
                std::all_of(cs[a].begin(), cs[a].end(), [&](int x) {
                    return std::find(cs[b].begin(), cs[b].end(), x) != cs[b].end();
                }))
                rel.emplace_back(a, b);
    return Poset::build(ids, rel);
}

MonotoneMap xi_map(const MonotoneMap& phi) {
    Poset xs = xi(phi.source), xt = xi(phi.target);
    auto cs = chains(phi.source);
    std::vector<int> m(cs.size());
    for (std::size_t k = 0; k < cs.size(); ++k) {
        std::vector<int> img;
        for (int x : cs[k]) img.push_back(phi(x));
        m[k] = xt.index(chain_id(phi.target, sort_chain(phi.target, img)));
    }
    return MonotoneMap(xs, xt, m);
}

MonotoneMap last_vertex(const Poset& e) {
    auto cs = chains(e);
    std::vector<int> m;
    for (auto& c : cs) m.push_back(c.back());
    return MonotoneMap(xi(e), e, m);
}

namespace {

Poset subsets_poset(int m, const std::function<bool(const std::vector<int>&)>& keep) {
    Poset x = xi(simplex_poset(m));
    auto cs = chains(simplex_poset(m));
    std::vector<int> elems;
    for (int k = 0; k < static_cast<int>(cs.size()); ++k)
        if (keep(cs[k])) elems.push_back(k);
    return subposet(x, elems);
}

void check_named(NamedPoset name, int m, std::optional<int> k) {
    if (m < 0) throw IndexError("m must be nonnegative");
    if (name == NamedPoset::phi_horn) {
        if (!k || m <= 0 || *k < 0 || *k > m) throw IndexError("horn needs m > 0 and 0 <= k <= m");
    }
}

}  // namespace

Poset named_poset(NamedPoset name, int m, std::optional<int> k) {
    check_named(name, m, k);
    switch (name) {
        case NamedPoset::simplex:
            return simplex_poset(m);
        case NamedPoset::partial_phi:
            return subsets_poset(m, [&](const std::vector<int>& s) { return static_cast<int>(s.size()) <= m; });
        case NamedPoset::phi_horn:
            return subsets_poset(m, [&](const std::vector<int>& s) {
                int missing = 0;
                for (int t = 0; t <= m; ++t)
                    if (t != *k && !std::binary_search(s.begin(), s.end(), t)) ++missing;
                return missing > 0;
            });
    }
    return {};
}

MonotoneMap named_inclusion(NamedPoset name, int m, std::optional<int> k) {
    if (name == NamedPoset::simplex) return identity_map(xi(simplex_poset(m)));
    return inclusion_map(named_poset(name, m, k), xi(simplex_poset(m)));
}

bool downward_closed(const Poset& p, const std::vector<char>& mask) {
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b)
            if (mask[b] && p.leq(a, b) && !mask[a]) return false;
    return true;
}

bool upward_closed(const Poset& p, const std::vector<char>& mask) {
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b)
            if (mask[a] && p.leq(a, b) && !mask[b]) return false;
    return true;
}

PosetSieveReport analyze_sieve(const MonotoneMap& i, const std::optional<MonotoneMap>& r) {
    PosetSieveReport rep;
    if (!i.injective()) throw NotInjective("sieve analysis needs an injective map");
    bool full = true;
    for (int a = 0; a < i.source.size(); ++a)
        for (int b = 0; b < i.source.size(); ++b)
            if (i.target.leq(i(a), i(b)) && !i.source.leq(a, b)) full = false;
    std::vector<char> mask(i.target.size(), 0);
    for (int x : i.map) mask[x] = 1;
    rep.full_embedding = full;
    rep.is_sieve = full && downward_closed(i.target, mask);
    rep.is_cosieve = full && upward_closed(i.target, mask);
    if (r) {
        if (!(r->source == i.target) || !(r->target == i.source))
            throw ShapeError("retraction does not go back along the inclusion");
        bool ok = true;
        for (int a = 0; a < i.source.size(); ++a) ok = ok && (*r)(i(a)) == a;
        for (int x = 0; x < i.target.size(); ++x) ok = ok && i.target.leq(i((*r)(x)), x);
        rep.retraction_is_right_adjoint = ok;
    }
    return rep;
}

MonotoneMap characteristic_map(const MonotoneMap& i) {
    auto rep = analyze_sieve(i);
    if (!rep.is_sieve && !rep.is_cosieve) throw NotASieve("neither a sieve nor a cosieve");
    std::vector<int> m(i.target.size(), rep.is_sieve ? 1 : 0);
    for (int x : i.map) m[x] = rep.is_sieve ? 0 : 1;
    return MonotoneMap(i.target, simplex_poset(1), m);
}

XiSieveFactorization factor_xi_sieve(const MonotoneMap& i) {
    if (!i.injective() || !analyze_sieve(i).is_sieve) throw NotASieve("factorization needs a sieve");
    Poset xe = xi(i.source), xf = xi(i.target);
    auto cf = chains(i.target);
    std::vector<int> inv(i.target.size(), -1);
    for (int a = 0; a < i.source.size(); ++a) inv[i(a)] = a;
    std::vector<int> welems;
    for (int k = 0; k < static_cast<int>(cf.size()); ++k) {
        bool meets = false;
        for (int x : cf[k]) meets = meets || inv[x] >= 0;
        if (meets) welems.push_back(k);
    }
    Poset w = subposet(xf, welems);
    MonotoneMap xi_i = xi_map(i);
    std::vector<int> km(xe.size());
    for (int s = 0; s < xe.size(); ++s) km[s] = w.index(xf.id(xi_i(s)));
    std::vector<int> rm(w.size());
    for (int s = 0; s < w.size(); ++s) {
        std::vector<int> part;
        for (int x : cf[welems[s]])
            if (inv[x] >= 0) part.push_back(inv[x]);
        rm[s] = xe.index(chain_id(i.source, sort_chain(i.source, part)));
    }
    return {MonotoneMap(xe, w, km), inclusion_map(w, xf), MonotoneMap(w, xe, rm)};
}

std::optional<MonotoneMap> right_adjoint_retraction(const MonotoneMap& i) {
    std::vector<int> m(i.target.size(), -1);
    for (int x = 0; x < i.target.size(); ++x) {
        for (int a = 0; a < i.source.size(); ++a) {
            if (!i.target.leq(i(a), x)) continue;
            bool top = true;
            for (int b = 0; b < i.source.size(); ++b)
                if (i.target.leq(i(b), x) && !i.source.leq(b, a)) top = false;
            if (top) m[x] = a;
        }
        if (m[x] < 0) return std::nullopt;
    }
    try {
        return MonotoneMap(i.target, i.source, m);
    } catch (const ShapeError&) {
        return std::nullopt;
    }
}

namespace {

std::string canonical_form(int n, const std::vector<char>& rel) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::string best;
    do {
        std::string s(static_cast<std::size_t>(n) * n, '0');
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (rel[a * n + b]) s[perm[a] * n + perm[b]] = '1';
        if (best.empty() || s < best) best = s;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

std::vector<Poset> posets_up_to_iso(int n) {
    std::vector<std::pair<int, int>> slots;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) slots.emplace_back(a, b);
    std::map<std::string, std::vector<char>> found;
    std::vector<char> rel(static_cast<std::size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a) rel[a * n + a] = 1;
    // each unordered pair is unrelated, a<b, or b<a; keep transitive choices
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == slots.size()) {
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    for (int c = 0; c < n; ++c)
                        if (rel[a * n + b] && rel[b * n + c] && !rel[a * n + c]) return;
            auto key = canonical_form(n, rel);
            found.emplace(key, rel);
            return;
        }
        auto [a, b] = slots[k];
        for (int choice = 0; choice < 3; ++choice) {
            rel[a * n + b] = choice == 1;
            rel[b * n + a] = choice == 2;
            rec(k + 1);
        }
        rel[a * n + b] = rel[b * n + a] = 0;
    };
    rec(0);
    std::vector<Poset> out;
    for (auto& [key, r] : found) {
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (a != b && key[a * n + b] == '1') pairs.emplace_back(a, b);
        out.push_back(Poset::build(antichain(n).ids(), pairs));
    }
    return out;
}

Poset pseudo_circle() {
    return make_poset({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}});
}

}  // namespace cat2
