#include "cat2/homology.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <set>
#include <unordered_map>

namespace cat2 {

namespace {

using Big = boost::multiprecision::cpp_int;

struct Overflow {};

template <class Int>
Int mul(const Int& a, const Int& b) {
    if constexpr (std::is_same_v<Int, long>) {
        long r;
        if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
        return r;
    } else {
        return a * b;
    }
}

template <class Int>
Int add(const Int& a, const Int& b) {
    if constexpr (std::is_same_v<Int, long>) {
        long r;
        if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
        return r;
    } else {
        return a + b;
    }
}

template <class Int>
Int absval(const Int& a) {
    return a < 0 ? Int(-a) : a;
}

// extended gcd: g = s a + t b, g > 0
template <class Int>
void xgcd(Int a, Int b, Int& g, Int& s, Int& t) {
    Int s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
        Int q = a / b;
        Int r = a - mul(q, b);
        a = b;
        b = r;
        Int ns = add(s0, Int(-mul(q, s1)));
        s0 = s1;
        s1 = ns;
        Int nt = add(t0, Int(-mul(q, t1)));
        t0 = t1;
        t1 = nt;
    }
    if (a < 0) {
        a = -a;
        s0 = -s0;
        t0 = -t0;
    }
    g = a;
    s = s0;
    t = t0;
}

template <class Int>
using Row = std::vector<std::pair<int, Int>>;

// ca*x + cb*y
template <class Int>
Row<Int> combine(const Row<Int>& x, const Int& ca, const Row<Int>& y, const Int& cb) {
    Row<Int> out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            Int v = mul(ca, x[i].second);
            if (v != 0) out.emplace_back(x[i].first, v);
            ++i;
        } else if (i == x.size() || y[j].first < x[i].first) {
            Int v = mul(cb, y[j].second);
            if (v != 0) out.emplace_back(y[j].first, v);
            ++j;
        } else {
            Int v = add(mul(ca, x[i].second), mul(cb, y[j].second));
            if (v != 0) out.emplace_back(x[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

struct MatrixInfo {
    long rank = 0;
    std::vector<std::string> torsion;
};

template <class Int>
std::vector<Big> dense_snf(std::vector<std::vector<Int>> m) {
    std::vector<Big> diag;
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<std::vector<Big>> a(rows, std::vector<Big>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = Big(m[i][j]);
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // smallest nonzero entry as pivot
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (pi == rows || absval(a[i][j]) < absval(a[pi][pj]))) {
                    pi = i;
                    pj = j;
                }
        if (pi == rows) break;
        std::swap(a[t], a[pi]);
        for (auto& r : a) std::swap(r[t], r[pj]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                Big q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                Big q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (auto& r : a) std::swap(r[t], r[j]);
                    clean = false;
                }
            }
            if (clean) {
                // divisibility of the remaining block
                for (std::size_t i = t + 1; i < rows && clean; ++i)
                    for (std::size_t j = t + 1; j < cols && clean; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
                            clean = false;
                        }
            }
        }
        diag.push_back(absval(a[t][t]));
        ++t;
    }
    return diag;
}

template <class Int>
MatrixInfo analyze_matrix(const std::vector<std::vector<std::pair<int, long>>>& input) {
    std::unordered_map<int, Row<Int>> pivot;
    for (const auto& raw : input) {
        Row<Int> r;
        r.reserve(raw.size());
        for (auto& [c, v] : raw)
            if (v != 0) r.emplace_back(c, Int(v));
        while (!r.empty()) {
            int c = r[0].first;
            auto it = pivot.find(c);
            if (it == pivot.end()) {
                if (r[0].second < 0)
                    for (auto& e : r) e.second = -e.second;
                pivot.emplace(c, std::move(r));
                break;
            }
            Row<Int>& p = it->second;
            Int a = r[0].second, b = p[0].second;
            if (a % b == 0) {
                r = combine(r, Int(1), p, Int(-(a / b)));
            } else {
                Int g, s, t;
                xgcd(a, b, g, s, t);
                Row<Int> np = combine(r, s, p, t);
                Row<Int> nr = combine(r, Int(-(b / g)), p, Int(a / g));
                p = std::move(np);
                r = std::move(nr);
            }
        }
    }
    MatrixInfo info;
    info.rank = static_cast<long>(pivot.size());
    std::set<int> unit_cols;
    std::vector<Row<Int>> rest;
    for (auto& [c, r] : pivot) {
        if (absval(r[0].second) == 1)
            unit_cols.insert(c);
        else
            rest.push_back(r);
    }
    if (rest.empty()) return info;
    for (auto& r : rest) {
        for (;;) {
            auto hit = std::find_if(r.begin(), r.end(), [&](const auto& e) { return unit_cols.count(e.first) > 0; });
            if (hit == r.end()) break;
            const Row<Int>& u = pivot.at(hit->first);
            Int coef = hit->second * u[0].second;  // u lead is +-1
            r = combine(r, Int(1), u, Int(-coef));
        }
    }
    std::map<int, int> cols;
    for (auto& r : rest)
        for (auto& e : r) cols.emplace(e.first, 0);
    int k = 0;
    for (auto& [c, idx] : cols) idx = k++;
    std::vector<std::vector<Int>> dense(rest.size(), std::vector<Int>(cols.size(), Int(0)));
    for (std::size_t i = 0; i < rest.size(); ++i)
        for (auto& e : rest[i]) dense[i][cols[e.first]] = e.second;
    auto diag = dense_snf(dense);
    // normalize to a divisibility chain
    for (std::size_t i = 0; i < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            Big g = boost::multiprecision::gcd(diag[i], diag[j]);
            if (g == 0) continue;
            Big l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    for (auto& d : diag)
        if (d > 1) info.torsion.push_back(d.str());
    return info;
}

MatrixInfo analyze(const std::vector<std::vector<std::pair<int, long>>>& rows) {
    try {
        return analyze_matrix<long>(rows);
    } catch (const Overflow&) {
        return analyze_matrix<Big>(rows);
    }
}

}  // namespace

std::string HomologyProfile::line(int n) const {
    const auto& g = groups.at(n);
    std::vector<std::string> parts;
    if (g.rank == 1) parts.push_back("Z");
    if (g.rank > 1) parts.push_back("Z^" + std::to_string(g.rank));
    for (auto& t : g.torsion) parts.push_back("Z/" + t);
    return "H_" + std::to_string(n) + " = " + (parts.empty() ? std::string("0") : join(parts, " + "));
}

std::string HomologyProfile::str() const {
    std::vector<std::string> lines;
    for (std::size_t n = 0; n < groups.size(); ++n) lines.push_back(line(static_cast<int>(n)));
    return join(lines, "\n");
}

ChainComplex normalized_chains(const SSet& x, int top) {
    if (top > x.cap) throw CapError("chain complex requested above the cap");
    ChainComplex c;
    std::vector<std::vector<int>> pos(top + 1);
    for (int n = 0; n <= top; ++n) {
        pos[n].assign(x.count[n], -1);
        long k = 0;
        for (int cell : x.nondegenerate(n)) pos[n][cell] = static_cast<int>(k++);
        c.dims.push_back(k);
    }
    c.rows.resize(top + 1);
    for (int n = 0; n <= top; ++n) {
        for (int cell = 0; cell < x.count[n]; ++cell) {
            if (pos[n][cell] < 0) continue;
            std::map<int, long> acc;
            for (int i = 0; n >= 1 && i <= n; ++i) {
                int f = pos[n - 1][x.face(n, i, cell)];
                if (f >= 0) acc[f] += (i % 2 ? -1 : 1);
            }
            std::vector<std::pair<int, long>> row;
            for (auto& [k, v] : acc)
                if (v) row.emplace_back(k, v);
            c.rows[n].push_back(std::move(row));
        }
    }
    return c;
}

ChainComplex mapping_cone(const SMap& f, int top) {
    const SSet& x = *f.src;
    const SSet& y = *f.tgt;
    if (top > y.cap || top - 1 > x.cap || top > f.cap() + 1) throw CapError("cone requested above the cap");
    ChainComplex cx = normalized_chains(x, std::max(top - 1, 0));
    ChainComplex cy = normalized_chains(y, top);
    std::vector<std::vector<int>> ypos(top + 1);
    for (int n = 0; n <= top; ++n) {
        ypos[n].assign(y.count[n], -1);
        int k = 0;
        for (int cell : y.nondegenerate(n)) ypos[n][cell] = k++;
    }
    std::vector<std::vector<int>> xcells(top);
    for (int n = 0; n < top; ++n) xcells[n] = x.nondegenerate(n);
    ChainComplex c;
    c.rows.resize(top + 1);
    for (int n = 0; n <= top; ++n) {
        long nx = n >= 1 ? cx.dims[n - 1] : 0;
        c.dims.push_back(nx + cy.dims[n]);
        // columns of C_{n-1}: X_{n-2} first, then Y_{n-1}
        long shift = n >= 2 ? cx.dims[n - 2] : 0;
        for (long k = 0; k < nx; ++k) {
            std::vector<std::pair<int, long>> row;
            if (n >= 2)
                for (auto& [col, v] : cx.rows[n - 1][k]) row.emplace_back(col, -v);
            int img = ypos[n - 1][f.map[n - 1][xcells[n - 1][k]]];
            if (img >= 0) row.emplace_back(static_cast<int>(shift + img), 1);
            c.rows[n].push_back(std::move(row));
        }
        for (auto& r : cy.rows[n]) {
            std::vector<std::pair<int, long>> row;
            for (auto& [col, v] : r) row.emplace_back(static_cast<int>(shift + col), v);
            c.rows[n].push_back(std::move(row));
        }
    }
    return c;
}

HomologyProfile homology(const ChainComplex& c, int up_to) {
    if (up_to + 1 >= static_cast<int>(c.dims.size())) throw CapError("homology needs one degree above up_to");
    std::vector<MatrixInfo> info(up_to + 2);
    for (int n = 1; n <= up_to + 1; ++n) info[n] = analyze(c.rows[n]);
    HomologyProfile p;
    for (int n = 0; n <= up_to; ++n) {
        HomologyGroup g;
        g.rank = c.dims[n] - info[n].rank - info[n + 1].rank;
        g.torsion = info[n + 1].torsion;
        p.groups.push_back(g);
    }
    return p;
}

HomologyProfile homology(const SSet& x, int up_to) {
    if (up_to + 1 > x.cap) throw CapError("homology up to degree " + std::to_string(up_to) + " needs cap " + std::to_string(up_to + 1));
    return homology(normalized_chains(x, up_to + 1), up_to);
}

HomologyIsoReport homology_iso(const SMap& f, int up_to) {
    HomologyIsoReport r;
    r.source = homology(*f.src, up_to);
    r.target = homology(*f.tgt, up_to);
    r.cone = homology(mapping_cone(f, up_to + 1), up_to);
    bool acyclic = std::all_of(r.cone.groups.begin(), r.cone.groups.end(),
                               [](const HomologyGroup& g) { return g.rank == 0 && g.torsion.empty(); });
    r.iso = acyclic && r.source == r.target;
    return r;
}

}  // namespace cat2
