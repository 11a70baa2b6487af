#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cat2/sset.hpp"

namespace cat2 {

struct HomologyGroup {
    long rank = 0;
    std::vector<std::string> torsion;  // invariant factors > 1, decimal

    bool operator==(const HomologyGroup&) const = default;
};

struct HomologyProfile {
    std::vector<HomologyGroup> groups;  // degrees 0..up_to

    bool operator==(const HomologyProfile&) const = default;
    std::string line(int n) const;      // "H_n = Z^r + Z/d"
    std::string str() const;
};

// Sparse integer chain complex: rows[n][c] is the boundary of the c-th n-cell
// as (column, coefficient) pairs over the (n-1)-cells.
struct ChainComplex {
    std::vector<long> dims;
    std::vector<std::vector<std::vector<std::pair<int, long>>>> rows;
};

ChainComplex normalized_chains(const SSet& x, int top);
// Mapping cone: C_n = X_{n-1} + Y_n, d(x, y) = (-dx, f x + dy).
ChainComplex mapping_cone(const SMap& f, int top);

HomologyProfile homology(const ChainComplex& c, int up_to);
HomologyProfile homology(const SSet& x, int up_to);

struct HomologyIsoReport {
    bool iso = false;
    HomologyProfile source;
    HomologyProfile target;
    HomologyProfile cone;
};

// f_* is an isomorphism in degrees <= up_to: equal profiles plus a cone acyclic
// through up_to (which makes f_* onto, hence iso on finitely generated groups).
HomologyIsoReport homology_iso(const SMap& f, int up_to);

}  // namespace cat2
