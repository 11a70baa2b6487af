#pragma once

#include "cat2/oplax.hpp"
#include "cat2/poset.hpp"
#include "cat2/twocat.hpp"

namespace cat2 {

// The m-th generating cofibration O(xi(sigma_m)) : O(xi dPhi_m) -> O(xi^2 Delta_m),
// where sigma_m : dPhi_m -> xi Delta_m is the boundary inclusion. The sieve
// xi(sigma_m) factors as j k with k carrying a right adjoint retraction r;
// `rdf` is the retract structure built on O(k).
struct GeneratingCofibration {
    int m = 0;
    MonotoneMap sigma;
    OPoset source, target;
    TwoFunctor f;
    Sieve2Report sieve;
    XiSieveFactorization factor;
    PosetRetract rdf;
    RetractReport rdf_report;
};

// Throws BudgetError when m > max_m.
GeneratingCofibration gen_cofibration(int m, int max_m = 3);

}  // namespace cat2
