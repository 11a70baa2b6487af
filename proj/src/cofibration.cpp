#include "cat2/cofibration.hpp"

namespace cat2 {

GeneratingCofibration gen_cofibration(int m, int max_m) {
    if (m < 0) throw PreconditionError("gen_cofibration needs m >= 0");
    if (m > max_m) throw BudgetError("gen_cofibration: m = " + std::to_string(m) + " exceeds the limit " + std::to_string(max_m));
    GeneratingCofibration g;
    g.m = m;
    g.sigma = named_inclusion(NamedPoset::partial_phi, m);
    auto xs = xi_map(g.sigma);
    g.source = o_poset(xs.source);
    g.target = o_poset(xs.target);
    g.f = o_map(xs, g.source, g.target);
    g.sieve = sieve2_analyze(g.f);
    g.factor = factor_xi_sieve(g.sigma);
    g.rdf = poset_sieve_retract(g.factor.k, g.factor.r);
    g.rdf_report = check_retract_structure(g.rdf.s);
    return g;
}

}  // namespace cat2
