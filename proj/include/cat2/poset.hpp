#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cat2/util.hpp"

namespace cat2 {

// Finite poset on opaque string ids. The closed relation is stored densely.
class Poset {
public:
    Poset() = default;

    int size() const { return static_cast<int>(ids_.size()); }
    const std::string& id(int x) const { return ids_.at(x); }
    const std::vector<std::string>& ids() const { return ids_; }
    int index(const std::string& id) const;
    int find(const std::string& id) const;  // -1 when absent
    bool leq(int a, int b) const { return leq_[a * size() + b] != 0; }
    bool lt(int a, int b) const { return a != b && leq(a, b); }
    bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }

    // Pairs a < b with nothing strictly between.
    std::vector<std::pair<int, int>> covers() const;
    // Strict relation pairs, useful as a generating relation.
    std::vector<std::pair<int, int>> strict_pairs() const;

    bool operator==(const Poset& o) const { return ids_ == o.ids_ && leq_ == o.leq_; }

    // Closes the given relation; throws CycleError if antisymmetry fails.
    static Poset build(std::vector<std::string> ids, const std::vector<std::pair<int, int>>& rel);

private:
    std::vector<std::string> ids_;
    std::vector<char> leq_;
    std::unordered_map<std::string, int> index_;
};

Poset make_poset(const std::vector<std::string>& ids,
                 const std::vector<std::pair<std::string, std::string>>& rel);

// Delta_m on ids "0".."m".
Poset simplex_poset(int m);
Poset antichain(int n);
Poset opposite(const Poset& p);
Poset subposet(const Poset& p, const std::vector<int>& elems);

struct MonotoneMap {
    Poset source;
    Poset target;
    std::vector<int> map;

    MonotoneMap() = default;
    // Validates monotonicity (ShapeError otherwise).
    MonotoneMap(Poset s, Poset t, std::vector<int> m);
    int operator()(int x) const { return map[x]; }
    bool injective() const;
};

MonotoneMap identity_map(const Poset& p);
MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f);
MonotoneMap inclusion_map(const Poset& sub, const Poset& whole);  // by id
bool same_map(const MonotoneMap& a, const MonotoneMap& b);

// Nonempty chains, each listed in increasing order. Sorted by size then lexicographically.
std::vector<std::vector<int>> chains(const Poset& p);
std::string chain_id(const Poset& p, const std::vector<int>& chain);

Poset xi(const Poset& e);
MonotoneMap xi_map(const MonotoneMap& phi);
MonotoneMap last_vertex(const Poset& e);

enum class NamedPoset { simplex, partial_phi, phi_horn };
Poset named_poset(NamedPoset name, int m, std::optional<int> k = std::nullopt);
// The inclusion of partial_phi / phi_horn into xi(Delta_m); identity for simplex.
MonotoneMap named_inclusion(NamedPoset name, int m, std::optional<int> k = std::nullopt);

struct PosetSieveReport {
    bool full_embedding = false;
    bool is_sieve = false;
    bool is_cosieve = false;
    std::optional<bool> retraction_is_right_adjoint;
};

PosetSieveReport analyze_sieve(const MonotoneMap& i, const std::optional<MonotoneMap>& r = std::nullopt);

bool downward_closed(const Poset& p, const std::vector<char>& mask);
bool upward_closed(const Poset& p, const std::vector<char>& mask);
// Characteristic map into Delta_1: image of i goes to 0 for a sieve.
MonotoneMap characteristic_map(const MonotoneMap& i);

struct XiSieveFactorization {
    MonotoneMap k;  // xi(E) -> W
    MonotoneMap j;  // W -> xi(F)
    MonotoneMap r;  // W -> xi(E), S |-> S n E
};

XiSieveFactorization factor_xi_sieve(const MonotoneMap& i);

// The right adjoint retraction of a sieve when it exists.
std::optional<MonotoneMap> right_adjoint_retraction(const MonotoneMap& i);

// All posets on n points up to isomorphism, ids "0".."n-1".
std::vector<Poset> posets_up_to_iso(int n);
// Four points a,b below c,d.
Poset pseudo_circle();

}  // namespace cat2
