#pragma once

#include <vector>

#include "cat2/twocat.hpp"

namespace cat2 {

// The sieve A = {x -f-> z <-g- y} inside B, where B adds t, h : z -> t and
// p, q with 2-cells p => hf, q => hg; u : A -> A' adjoins an initial object a
// with fk = gl.
struct Rdf2Counterexample {
    TwoCatPtr a, b, a2;
    TwoFunctor i, u;
};
Rdf2Counterexample rdf2_counterexample();

// Small 2-categories with non-identity 2-cells, named.
struct NamedTwoCat {
    std::string name;
    TwoCatPtr c;
};
std::vector<NamedTwoCat> sample_twocats();

// Cyclic group of order 2 as a one-object category.
Category z2_category();
// One object, one 1-cell, and Z/2 as its 2-cells under both compositions.
TwoCatPtr z2_double_suspension();

}  // namespace cat2
