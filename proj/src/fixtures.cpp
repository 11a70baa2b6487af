#include "cat2/fixtures.hpp"

namespace cat2 {

namespace {

TwoFunctor inclusion_by_name(const TwoCatPtr& a, const TwoCatPtr& b) {
    TwoFunctor f{a, b, {}, {}, {}};
    for (auto& x : a->objects) f.obj.push_back(b->find_object(x));
    for (auto& g : a->one) f.one.push_back(b->find_one(g.name));
    for (int al = 0; al < a->n2(); ++al) f.two.push_back(b->id2[f.one[a->two[al].src]]);
    return f;
}

}  // namespace

Rdf2Counterexample rdf2_counterexample() {
    Rdf2Counterexample out;
    auto a = make_category({"x", "y", "z"}, {{"f", "x", "z"}, {"g", "y", "z"}}, {});
    out.a = share(a);
    auto base = make_category({"x", "y", "z", "t"},
                              {{"f", "x", "z"}, {"g", "y", "z"}, {"h", "z", "t"}, {"p", "x", "t"},
                               {"q", "y", "t"}, {"hf", "x", "t"}, {"hg", "y", "t"}},
                              {{"h", "f", "hf"}, {"h", "g", "hg"}});
    out.b = share(locally_posetal(base, {{base.find_one("p"), base.find_one("hf")},
                                         {base.find_one("q"), base.find_one("hg")}}));
    auto a2 = make_category({"a", "x", "y", "z"},
                            {{"k", "a", "x"}, {"l", "a", "y"}, {"f", "x", "z"}, {"g", "y", "z"}, {"fk", "a", "z"}},
                            {{"f", "k", "fk"}, {"g", "l", "fk"}});
    out.a2 = share(a2);
    out.i = inclusion_by_name(out.a, out.b);
    out.u = inclusion_by_name(out.a, out.a2);
    return out;
}

Category z2_category() {
    auto c = make_category({"*"}, {{"s", "*", "*"}}, {{"s", "s", "1_*"}});
    return c;
}

TwoCatPtr z2_double_suspension() {
    TwoCat c;
    c.objects = {"*"};
    c.one = {{0, 0, "1"}};
    c.id1 = {0};
    c.comp[pair_key(0, 0)] = 0;
    c.two = {{0, 0, "e"}, {0, 0, "s"}};
    c.id2 = {0};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            c.vcomp[pair_key(b, a)] = a ^ b;
            c.hcomp[pair_key(b, a)] = a ^ b;
        }
    return share(c);
}

std::vector<NamedTwoCat> sample_twocats() {
    std::vector<NamedTwoCat> out;
    out.push_back({"suspension of Z/2", share(suspension(z2_category()))});
    auto pair = make_category({"x", "y"}, {{"f", "x", "y"}, {"g", "x", "y"}}, {});
    out.push_back({"parallel pair with f => g", share(locally_posetal(pair, {{pair.find_one("f"), pair.find_one("g")}}))});
    out.push_back({"O(pseudo-circle)", o_poset(pseudo_circle()).c});
    out.push_back({"interval product of the parallel pair", interval_product(out[1].c).c});
    out.push_back({"counterexample B", rdf2_counterexample().b});
    return out;
}

}  // namespace cat2
