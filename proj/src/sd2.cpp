#include <algorithm>

#include "cat2/sset.hpp"

namespace cat2 {

namespace {

struct Side {
    SSetPtr x;
    std::vector<int> colors;  // iterated last vertex in Delta_m
};

struct Subdivided : Side {
    SdResult s1, s2;
};

Subdivided subdivided(const Standard& st, int cap) {
    Subdivided out;
    out.s1 = sd(st.x, cap);
    out.s2 = sd(out.s1.sd, cap);
    out.x = out.s2.sd;
    for (int v = 0; v < out.x->count[0]; ++v)
        out.colors.push_back(st.inclusion(0, out.s1.alpha(0, out.s2.alpha(0, v))));
    return out;
}

Side xi_nerve_side(const Poset& phi, int m, int cap) {
    auto top = last_vertex(simplex_poset(m));
    Poset xm = xi(simplex_poset(m));
    Poset xp = xi(phi);
    auto lv = last_vertex(phi);
    Side out{nerve(xp, cap), {}};
    for (int v = 0; v < xp.size(); ++v) out.colors.push_back(top(xm.index(phi.id(lv(v)))));
    return out;
}

IsoPair iso_or_throw(const Side& a, const Side& b, const std::string& what) {
    auto iso = find_vertex_iso(a.x, b.x, a.colors, b.colors);
    if (!iso) throw WitnessNotFound("no isomorphism for " + what);
    return *iso;
}

}  // namespace

Sd2Witness sd2_generator_witness(int m, std::optional<int> k) {
    int cap = std::max(m, 1);
    auto whole_std = standard(StandardKind::simplex, m, std::nullopt, cap);
    auto part_std = standard(k ? StandardKind::horn : StandardKind::boundary, m, k, cap);
    NamedPoset part_name = k ? NamedPoset::phi_horn : NamedPoset::partial_phi;

    auto a_whole = subdivided(whole_std, cap);
    auto a_part = subdivided(part_std, cap);
    Poset phi = xi(simplex_poset(m));
    Poset phi_part = named_poset(part_name, m, k);
    auto b_whole = xi_nerve_side(phi, m, cap);
    auto b_part = xi_nerve_side(phi_part, m, cap);

    Sd2Witness w{iso_or_throw(a_whole, b_whole, "Sd^2 of the simplex"),
                 iso_or_throw(a_part, b_part, k ? "Sd^2 of the horn" : "Sd^2 of the boundary")};

    // square: whole o Sd^2(inclusion) = N xi(inclusion) o part, checked on vertices
    auto inc1 = sd_map(part_std.inclusion, a_part.s1, a_whole.s1);
    auto inc2 = sd_map(inc1, a_part.s2, a_whole.s2);
    for (int v = 0; v < a_part.x->count[0]; ++v) {
        int left = w.whole.fwd(0, inc2(0, v));
        int right = w.part.fwd(0, v);
        if (b_whole.x->label(0, left) != b_part.x->label(0, right))
            throw WitnessNotFound("witness isomorphisms do not commute with the inclusions");
    }
    return w;
}

}  // namespace cat2
