#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cat2/poset.hpp"
#include "cat2/util.hpp"

namespace cat2 {

// Simplicial set truncated at degree `cap`. All simplices, degenerate ones
// included, are stored with total face and degeneracy tables.
struct SSet {
    int cap = 0;
    std::vector<int> count;                // count[n] for 0 <= n <= cap
    std::vector<std::vector<int>> d;       // d[n][x*(n+1)+i] = d_i x, n >= 1
    std::vector<std::vector<int>> s;       // s[n][x*(n+1)+j] = s_j x, n < cap
    std::vector<std::vector<std::string>> labels;  // labels[0] names vertices

    explicit SSet(int c = 0);

    int face(int n, int i, int x) const { return d[n][static_cast<std::size_t>(x) * (n + 1) + i]; }
    int degen(int n, int j, int x) const { return s[n][static_cast<std::size_t>(x) * (n + 1) + j]; }
    bool degenerate(int n, int x) const;
    std::vector<int> nondegenerate(int n) const;
    // Highest degree holding a nondegenerate cell, -1 when empty.
    int dimension() const;
    std::vector<int> vertices(int n, int x) const;
    std::string label(int n, int x) const;

    // theta^* x for a monotone theta : [k] -> [n] given by its values.
    int apply(const std::vector<int>& theta, int n, int x) const;

    struct EZ {
        int dim;
        int cell;
        std::vector<int> eta;  // surjection [n] -> [dim] with x = eta^* cell
    };
    EZ ez(int n, int x) const;
};

using SSetPtr = std::shared_ptr<const SSet>;

struct SMap {
    SSetPtr src;
    SSetPtr tgt;
    std::vector<std::vector<int>> map;  // degrees 0..min(cap)

    int cap() const { return static_cast<int>(map.size()) - 1; }
    int operator()(int n, int x) const { return map[n][x]; }
};

SMap identity_smap(const SSetPtr& x);
SMap compose(const SMap& g, const SMap& f);
bool same_smap(const SMap& a, const SMap& b);
bool injective_in_degree(const SMap& f, int n);
bool surjective_in_degree(const SMap& f, int n);

// Simplicial identity suite; empty result means valid.
std::vector<std::string> validate_sset(const SSet& x, std::size_t max_reports = 20);
std::vector<std::string> validate_smap(const SMap& f, std::size_t max_reports = 20);

// Simplicial set whose n-cells are the accepted vertex tuples of length n+1;
// `accept` must be closed under deleting and repeating entries.
SSetPtr tuple_sset(int vertices, int cap, const std::function<bool(const std::vector<int>&)>& accept,
                   const std::vector<std::string>& vertex_names = {});

SSetPtr nerve(const Poset& p, int cap);
SSetPtr empty_sset(int cap);

enum class StandardKind { simplex, boundary, horn };
struct Standard {
    SSetPtr x;
    SMap inclusion;  // into nerve(Delta_m)
};
Standard standard(StandardKind kind, int m, std::optional<int> k, int cap);

// Sub-simplicial set on cells satisfying keep (must be closed under faces and degeneracies).
struct SubSSet {
    SSetPtr x;
    SMap inclusion;
};
SubSSet subobject(const SSetPtr& x, const std::function<bool(int, int)>& keep);
// Image of a map as a sub-simplicial set of its target.
SubSSet image(const SMap& f);

struct SdResult {
    SSetPtr sd;
    SMap alpha;
    SSetPtr base;
    // bookkeeping for functoriality
    std::vector<std::pair<int, int>> nd;            // nondegenerate cells of base
    std::vector<std::vector<int>> nd_of;            // nd_of[n][x] = position in nd or -1
    std::vector<std::vector<long>> offset;          // offset[k][p]
    std::vector<std::vector<int>> cls;              // cls[k][offset + s]
    std::vector<std::vector<std::pair<int, int>>> rep;  // rep[k][cell] = (p, s)
};

SdResult sd(const SSetPtr& x, int cap);
SMap sd_map(const SMap& f, const SdResult& a, const SdResult& b);

struct ExResult {
    SSetPtr ex;
    SMap beta;
};
ExResult ex(const SSetPtr& x, int cap, std::uint64_t budget = 50'000'000);

// Exhaustive enumeration of simplicial maps K -> X. `fixed[n][x]` pins values (-1 free);
// `allow(n, x, y)` filters candidate images. The visitor returns false to stop.
struct MapSearch {
    const SSet* k = nullptr;
    const SSet* x = nullptr;
    std::vector<std::vector<int>> fixed;
    std::function<bool(int, int, int)> allow;
};
// Returns the number of maps visited.
std::uint64_t enumerate_maps(const MapSearch& q, Budget& budget,
                             const std::function<bool(const std::vector<std::vector<int>>&)>& visit);
// Extends values on nondegenerate cells to all cells up to min cap.
std::vector<std::vector<int>> extend_map(const SSet& k, const SSet& x, const std::vector<std::vector<int>>& nd_values);

bool has_rlp(const SMap& p, const std::vector<SMap>& tests, std::uint64_t budget = 10'000'000,
             std::string* failure = nullptr);

struct SPushout {
    SSetPtr apex;
    SMap left;   // from f's target
    SMap right;  // from g's target
};
SPushout sset_pushout(const SMap& f, const SMap& g);
// The map out of the pushout induced by a : target of f -> Z and b : target of g -> Z.
SMap pushout_induced(const SPushout& p, const SMap& a, const SMap& b);

SSetPtr product(const SSetPtr& a, const SSetPtr& b);
// Searches h : Delta_1 x X -> Y with h|0 = f and h|1 = g.
std::optional<SMap> simplicial_homotopy(const SMap& f, const SMap& g, std::uint64_t budget = 10'000'000);

// Isomorphism search for simplicial sets whose cells are determined by their vertices.
// Vertices carry colors that must be preserved.
struct IsoPair {
    SMap fwd;
    SMap bwd;
};
std::optional<IsoPair> find_vertex_iso(const SSetPtr& a, const SSetPtr& b, const std::vector<int>& colors_a = {},
                                       const std::vector<int>& colors_b = {});

// Sd^2 of Delta_m against N xi(Phi_m), together with Sd^2 of the boundary (no k)
// or of the horn Lambda_m^k against N xi of the matching subposet. Both isos
// preserve iterated last vertices and commute with the inclusions.
struct Sd2Witness {
    IsoPair whole;
    IsoPair part;
};
Sd2Witness sd2_generator_witness(int m, std::optional<int> k = std::nullopt);

struct BiSSet {
    int pcap = 0, qcap = 0;
    std::vector<std::vector<int>> count;  // count[p][q]
    // flat tables indexed [p][q][x*(p+1)+i] (horizontal) and [p][q][x*(q+1)+j] (vertical)
    std::vector<std::vector<std::vector<int>>> dh, sh, dv, sv;

    int hface(int p, int q, int i, int x) const { return dh[p][q][static_cast<std::size_t>(x) * (p + 1) + i]; }
    int vface(int p, int q, int j, int x) const { return dv[p][q][static_cast<std::size_t>(x) * (q + 1) + j]; }
    int hdegen(int p, int q, int i, int x) const { return sh[p][q][static_cast<std::size_t>(x) * (p + 1) + i]; }
    int vdegen(int p, int q, int j, int x) const { return sv[p][q][static_cast<std::size_t>(x) * (q + 1) + j]; }
};

std::vector<std::string> validate_bisset(const BiSSet& b, std::size_t max_reports = 20);
SSetPtr diagonal(const BiSSet& b);
// External product: (p,q)-cells are pairs (a_p, b_q).
BiSSet external_product(const SSet& a, const SSet& b);

}  // namespace cat2
