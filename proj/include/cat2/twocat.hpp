#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cat2/poset.hpp"
#include "cat2/sset.hpp"
#include "cat2/util.hpp"

namespace cat2 {

struct Cell1 {
    int src = 0, tgt = 0;  // objects
    std::string name;
};

struct Cell2 {
    int src = 0, tgt = 0;  // 1-cells
    std::string name;
};

// Finite strict 2-category with explicit tables. Composition tables are keyed
// by pair_key(second, first): comp[(g, f)] = g o f, vcomp[(b, a)] = b . a,
// hcomp[(b, a)] = b * a.
//
// When poset_enriched is set, vcomp and hcomp are not stored: they are
// recovered from `between`, which holds the unique 2-cell f => g.
struct TwoCat {
    std::vector<std::string> objects;
    std::vector<Cell1> one;
    std::vector<Cell2> two;
    std::vector<int> id1;  // per object
    std::vector<int> id2;  // per 1-cell
    PairMap comp, vcomp, hcomp;
    bool poset_enriched = false;
    PairMap between;

    // filled by finalize()
    std::vector<std::vector<int>> out1, in1;  // 1-cells by source / target object
    std::vector<std::vector<int>> out2, in2;  // 2-cells by source / target 1-cell
    std::unordered_map<std::uint64_t, std::vector<int>> homs;

    int n0() const { return static_cast<int>(objects.size()); }
    int n1() const { return static_cast<int>(one.size()); }
    int n2() const { return static_cast<int>(two.size()); }

    // -1 when the pair is not composable or the entry is missing.
    int compose(int g, int f) const { return lookup(comp, g, f); }
    int vcompose(int b, int a) const;
    int hcompose(int b, int a) const;
    int whisker_left(int g, int a) const { return hcompose(id2[g], a); }   // g * a
    int whisker_right(int b, int f) const { return hcompose(b, id2[f]); }  // b * f
    int cell_between(int f, int g) const;  // poset-enriched lookup, -1 if none
    const std::vector<int>& hom(int x, int y) const;
    int obj_src2(int a) const { return one[two[a].src].src; }
    int obj_tgt2(int a) const { return one[two[a].src].tgt; }
    int find_object(const std::string& name) const;
    int find_one(const std::string& name) const;

    void finalize();
};

using TwoCatPtr = std::shared_ptr<const TwoCat>;
using Category = TwoCat;  // locally discrete: only identity 2-cells

struct TwoFunctor {
    TwoCatPtr src, tgt;
    std::vector<int> obj, one, two;
};

TwoCatPtr share(TwoCat c);

// Axiom report; empty means valid.
std::vector<std::string> validate_twocat(const TwoCat& c, std::size_t max_reports = 20);
std::vector<std::string> validate_functor(const TwoFunctor& f, std::size_t max_reports = 20);

TwoFunctor identity_functor(const TwoCatPtr& c);
TwoFunctor compose(const TwoFunctor& g, const TwoFunctor& f);
bool same_functor(const TwoFunctor& a, const TwoFunctor& b);
bool injective_functor(const TwoFunctor& f);

TwoCat empty_twocat();
TwoCat point_twocat();
// E as a locally discrete 2-category: one arrow x -> y per x <= y.
TwoCat poset_as_twocat(const Poset& e);

// Locally discrete category from named arrows (identities are added as 1_x)
// and the composites of composable non-identity pairs, given as {g, f, g o f}.
struct ArrowSpec {
    std::string name, src, tgt;
};
TwoCat make_category(const std::vector<std::string>& objects, const std::vector<ArrowSpec>& arrows,
                     const std::vector<std::array<std::string, 3>>& composites);

// Locally posetal 2-category on a category (given as a locally discrete
// TwoCat) with 2-cells generated by the given pairs of parallel 1-cells,
// closed under transitivity and whiskering. Throws ShapeError on a cycle.
TwoCat locally_posetal(const TwoCat& base, const std::vector<std::pair<int, int>>& generators);

// Two objects 0, 1 with Hom(0, 1) the given category and nothing else.
TwoCat suspension(const Category& hom);

// Sub-2-category on the kept cells (must be closed), with its inclusion.
struct SubTwoCat {
    TwoCatPtr c;
    TwoFunctor inclusion;
};
SubTwoCat sub_twocat(const TwoCatPtr& c, const std::vector<char>& keep0, const std::vector<char>& keep1,
                     const std::vector<char>& keep2);

// ---- O(E)

struct OPoset {
    TwoCatPtr c;
    Poset e;
    std::vector<std::vector<int>> chain;  // chain[1-cell] as increasing element list
    VecMap<int> cell_of;                  // chain -> 1-cell
    int one_of(std::vector<int> s) const;  // sorts along e
};

OPoset o_poset(const Poset& e);
TwoFunctor o_map(const MonotoneMap& phi, const OPoset& a, const OPoset& b);
TwoFunctor adjunction_counit(const OPoset& o, const TwoCatPtr& e_as_twocat);

// ---- sieves

struct Sieve2Report {
    bool is_sieve = false;
    bool is_cosieve = false;
    std::optional<SubTwoCat> complement;
};
Sieve2Report sieve2_analyze(const TwoFunctor& i);

// ---- truncations and predicates

Category tau_b(const TwoCat& c);
struct Truncation {
    Category cat;
    std::vector<int> cls;  // 1-cell of the input -> 1-cell of cat
};
Truncation tau_i(const TwoCat& c);

struct FreeReport {
    bool free = false;
    std::vector<int> generators;  // indecomposable 1-cells
};
FreeReport is_free_on_graph(const Category& c);
bool is_poset_category(const Category& c);
bool is_poset_enriched(const TwoCat& c);

// Exhaustive search for strict 2-functors A -> B. `fixed` layers pin values
// (-1 free; empty vector means all free). The visitor returns false to stop.
struct FunctorSearch {
    const TwoCat* a = nullptr;
    const TwoCat* b = nullptr;
    std::vector<int> obj, one, two;
    bool injective = false;
};
std::uint64_t enumerate_2functors(const FunctorSearch& q, Budget& budget,
                                  const std::function<bool(const std::vector<int>&, const std::vector<int>&,
                                                           const std::vector<int>&)>& visit);
std::optional<TwoFunctor> find_isomorphism(const TwoCatPtr& a, const TwoCatPtr& b,
                                           std::uint64_t budget = 10'000'000);

// ---- interval product

struct IntervalProduct {
    TwoCatPtr c;
    TwoFunctor d0, d1;  // a |-> (0, a), (1, a)
    int na = 0, n1a = 0, n2a = 0;
    // phi: 0 = identity of 0, 1 = identity of 1, 2 = the arrow 0 -> 1
    int object(int eps, int a) const { return eps * na + a; }
    int one(int phi, int f) const { return phi * n1a + f; }
    int two(int phi, int alpha) const { return phi * n2a + alpha; }
    int phi_of(int cell1) const { return cell1 / n1a; }
    int part_of(int cell1) const { return cell1 % n1a; }
};
IntervalProduct interval_product(const TwoCatPtr& a);

// ---- nerves

// Street 2-nerve. An m-simplex is flattened as the objects x_0..x_m, then the
// 1-cells f_ji (i < j) in order (j, i), then the 2-cells
// a_kji : f_ki => f_kj o f_ji (i < j < k) in order (k, j, i).
struct Nerve2 {
    SSetPtr x;
    std::vector<std::vector<std::vector<int>>> cells;
    std::vector<VecMap<int>> index;
};
Nerve2 nerve2(const TwoCatPtr& c, int cap, std::uint64_t budget = 50'000'000);
SMap nerve2_map(const TwoFunctor& f, const Nerve2& a, const Nerve2& b);
SMap unit_map(const Poset& e, const OPoset& o, const Nerve2& n, int cap);

// Offsets into the flattened simplex.
int simplex_len(int m);
int f_pos(int m, int j, int i);
int a_pos(int m, int k, int j, int i);

BiSSet bnerve(const TwoCat& c, int pcap, int qcap, std::uint64_t budget = 50'000'000);

}  // namespace cat2
