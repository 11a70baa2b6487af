#include "cat2/io.hpp"

#include <algorithm>
#include <array>
#include <fstream>

namespace cat2 {

namespace {

Json table_json(const PairMap& m) {
    std::vector<std::array<int, 3>> rows;
    for (auto& [key, v] : m) rows.push_back({static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffu), v});
    std::sort(rows.begin(), rows.end());
    return rows;
}

PairMap table_from_json(const Json& j) {
    PairMap m;
    for (auto& row : j) m[pair_key(row.at(0).get<int>(), row.at(1).get<int>())] = row.at(2).get<int>();
    return m;
}

template <class Cell>
Json cells_json(const std::vector<Cell>& cells) {
    Json out = Json::array();
    for (auto& c : cells) out.push_back({{"name", c.name}, {"src", c.src}, {"tgt", c.tgt}});
    return out;
}

template <class Cell>
std::vector<Cell> cells_from_json(const Json& j) {
    std::vector<Cell> out;
    for (auto& c : j) out.push_back({c.at("src").get<int>(), c.at("tgt").get<int>(), c.value("name", std::string())});
    return out;
}

}  // namespace

Json poset_json(const Poset& p) {
    Json leq = Json::array();
    for (auto [a, b] : p.covers()) leq.push_back({p.id(a), p.id(b)});
    return {{"elements", p.ids()}, {"leq", leq}};
}

Poset poset_from_json(const Json& j) {
    try {
        std::vector<std::pair<std::string, std::string>> rel;
        for (auto& r : j.at("leq")) rel.emplace_back(r.at(0).get<std::string>(), r.at(1).get<std::string>());
        return make_poset(j.at("elements").get<std::vector<std::string>>(), rel);
    } catch (const Json::exception& e) {
        throw FormatError(std::string("poset: ") + e.what());
    }
}

Json map_json(const MonotoneMap& f) {
    Json m = Json::object();
    for (int x = 0; x < f.source.size(); ++x) m[f.source.id(x)] = f.target.id(f.map[x]);
    return {{"source", poset_json(f.source)}, {"target", poset_json(f.target)}, {"map", m}};
}

MonotoneMap map_from_json(const Json& j) {
    auto s = poset_from_json(j.at("source"));
    auto t = poset_from_json(j.at("target"));
    std::vector<int> m(s.size(), -1);
    try {
        for (auto& [k, v] : j.at("map").items()) m[s.index(k)] = t.index(v.get<std::string>());
    } catch (const Json::exception& e) {
        throw FormatError(std::string("map: ") + e.what());
    }
    if (std::count(m.begin(), m.end(), -1)) throw FormatError("map: not every element of the source is assigned");
    return MonotoneMap(s, t, m);
}

Json sset_json(const SSet& x) {
    Json cells = Json::array(), d = Json::array(), s = Json::array();
    for (int n = 0; n <= x.cap; ++n) {
        Json row = Json::array(), drow = Json::array(), srow = Json::array();
        for (int c = 0; c < x.count[n]; ++c) {
            row.push_back(x.label(n, c));
            if (n >= 1) {
                std::vector<int> faces;
                for (int i = 0; i <= n; ++i) faces.push_back(x.face(n, i, c));
                drow.push_back(faces);
            }
            if (n < x.cap) {
                std::vector<int> degs;
                for (int i = 0; i <= n; ++i) degs.push_back(x.degen(n, i, c));
                srow.push_back(degs);
            }
        }
        cells.push_back(row);
        d.push_back(drow);
        s.push_back(srow);
    }
    return {{"cap", x.cap}, {"cells", cells}, {"d", d}, {"s", s}};
}

SSetPtr sset_from_json(const Json& j) {
    try {
        int cap = j.at("cap").get<int>();
        auto x = std::make_shared<SSet>(cap);
        for (int n = 0; n <= cap; ++n) {
            const auto& row = j.at("cells").at(n);
            x->count[n] = static_cast<int>(row.size());
            if (n == 0) x->labels[0] = row.get<std::vector<std::string>>();
            if (n >= 1)
                for (auto& faces : j.at("d").at(n))
                    for (auto& v : faces) x->d[n].push_back(v.get<int>());
            if (n < cap)
                for (auto& degs : j.at("s").at(n))
                    for (auto& v : degs) x->s[n].push_back(v.get<int>());
        }
        auto rep = validate_sset(*x, 1);
        if (!rep.empty()) throw FormatError("simplicial set: " + rep.front());
        return x;
    } catch (const Json::exception& e) {
        throw FormatError(std::string("simplicial set: ") + e.what());
    }
}

Json smap_json(const SMap& f) { return {{"source", sset_json(*f.src)}, {"target", sset_json(*f.tgt)}, {"map", f.map}}; }

Json twocat_json(const TwoCat& c) {
    Json j = {{"objects", c.objects}, {"one", cells_json(c.one)}, {"two", cells_json(c.two)},
              {"id1", c.id1},         {"id2", c.id2},             {"comp", table_json(c.comp)},
              {"poset_enriched", c.poset_enriched}};
    if (!c.poset_enriched) {
        j["vcomp"] = table_json(c.vcomp);
        j["hcomp"] = table_json(c.hcomp);
    }
    return j;
}

TwoCat twocat_from_json(const Json& j) {
    try {
        TwoCat c;
        c.objects = j.at("objects").get<std::vector<std::string>>();
        c.one = cells_from_json<Cell1>(j.at("one"));
        c.two = cells_from_json<Cell2>(j.at("two"));
        c.id1 = j.at("id1").get<std::vector<int>>();
        c.id2 = j.at("id2").get<std::vector<int>>();
        c.comp = table_from_json(j.at("comp"));
        c.poset_enriched = j.value("poset_enriched", false);
        if (c.poset_enriched) {
            for (int a = 0; a < c.n2(); ++a) c.between[pair_key(c.two[a].src, c.two[a].tgt)] = a;
        } else {
            c.vcomp = table_from_json(j.at("vcomp"));
            c.hcomp = table_from_json(j.at("hcomp"));
        }
        c.finalize();
        auto rep = validate_twocat(c, 1);
        if (!rep.empty()) throw FormatError("2-category: " + rep.front());
        return c;
    } catch (const Json::exception& e) {
        throw FormatError(std::string("2-category: ") + e.what());
    }
}

Json functor_json(const TwoFunctor& f) {
    return {{"src", twocat_json(*f.src)}, {"tgt", twocat_json(*f.tgt)}, {"obj", f.obj}, {"one", f.one}, {"two", f.two}};
}

TwoFunctor functor_from_json(const Json& j) {
    try {
        TwoFunctor f{share(twocat_from_json(j.at("src"))), share(twocat_from_json(j.at("tgt"))),
                     j.at("obj").get<std::vector<int>>(), j.at("one").get<std::vector<int>>(),
                     j.at("two").get<std::vector<int>>()};
        auto rep = validate_functor(f, 1);
        if (!rep.empty()) throw FormatError("2-functor: " + rep.front());
        return f;
    } catch (const Json::exception& e) {
        throw FormatError(std::string("2-functor: ") + e.what());
    }
}

Json oplax_json(const OplaxFunctor& f) {
    return {{"src", twocat_json(*f.src)}, {"tgt", twocat_json(*f.tgt)}, {"obj", f.obj},
            {"one", f.one},               {"two", f.two},               {"constraint", table_json(f.constraint)}};
}

OplaxFunctor oplax_from_json(const Json& j) {
    try {
        OplaxFunctor f{share(twocat_from_json(j.at("src"))), share(twocat_from_json(j.at("tgt"))),
                       j.at("obj").get<std::vector<int>>(), j.at("one").get<std::vector<int>>(),
                       j.at("two").get<std::vector<int>>(), table_from_json(j.at("constraint"))};
        return f;
    } catch (const Json::exception& e) {
        throw FormatError(std::string("oplax functor: ") + e.what());
    }
}

Json retract_json(const RetractStructure& s) {
    return {{"i", functor_json(s.i)}, {"r", functor_json(s.r)}, {"h", oplax_json(s.h.h)}};
}

RetractStructure retract_from_json(const Json& j) {
    auto i = functor_from_json(j.at("i"));
    auto r = functor_from_json(j.at("r"));
    auto h = oplax_from_json(j.at("h"));
    // share the objects so that the structure is internally consistent
    r.src = i.tgt;
    r.tgt = i.src;
    auto ip = interval_product(i.tgt);
    if (h.src->n0() != ip.c->n0() || h.src->n1() != ip.c->n1() || h.src->n2() != ip.c->n2())
        throw FormatError("homotopy is not defined on the interval product of the target of i");
    h.src = ip.c;
    h.tgt = i.tgt;
    return RetractStructure{i, r, OplaxHomotopy{ip, h}};
}

Json square_json(const CocartSquare& sq) {
    return {{"apex", twocat_json(*sq.apex())},
            {"i", functor_json(sq.i)},
            {"u", functor_json(sq.u)},
            {"i2", functor_json(sq.i2)},
            {"v", functor_json(sq.v)}};
}

Json homology_json(const HomologyProfile& h) {
    Json out = Json::array();
    for (auto& g : h.groups) out.push_back({{"rank", g.rank}, {"torsion", g.torsion}});
    return out;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace cat2
