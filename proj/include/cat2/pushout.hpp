#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cat2/oplax.hpp"
#include "cat2/poset.hpp"
#include "cat2/twocat.hpp"
#include "cat2/util.hpp"

namespace cat2 {

// (second, a, first): first is a cell of A' ending at u(a), second a cell of B
// starting at i(a). Used for 1-cells and for generating 2-cells alike.
struct Triplet {
    int second = -1, a = -1, first = -1;
    bool operator==(const Triplet&) const = default;
};

// Presentation of one mixed hom-category B'(x, y) by generators and relations.
struct HomPresentation {
    int x = -1, y = -1;               // objects of A' and of B outside A
    std::vector<Triplet> objects;     // representative triplet per 1-cell class
    std::vector<Triplet> generators;  // all 2-cell triplets
    std::size_t r1 = 0, r2 = 0, r3 = 0;
    std::vector<std::pair<std::pair<int, int>, int>> r3_witness;  // (generator, generator) -> 2-cell of A
    std::size_t rules = 0;           // size of the completed rewriting system
};

// Square  A --u--> A'
//         |i       |i2
//         B --v--> B'
// When built by a pushout construction, the provenance tables describe each apex
// cell: origin 0 = from A', 1 = from B outside A, 2 = mixed.
struct CocartSquare {
    TwoFunctor i, u, i2, v;
    std::vector<char> origin0, origin1, origin2;
    std::vector<int> ref0, ref1, ref2;           // cell of A' or B, -1 when mixed
    std::vector<Triplet> rep1;                   // mixed 1-cells
    std::vector<std::vector<Triplet>> rep2;      // mixed 2-cells as generator words, first applied first
    std::vector<HomPresentation> presentations;  // general construction only

    TwoCatPtr apex() const { return i2.tgt; }
    bool has_provenance() const { return !origin1.empty(); }
};

struct PushoutLimits {
    int max_word = 8;
    std::size_t max_states = 100'000;
};

CocartSquare pushout_sieve_cat(const TwoFunctor& i, const TwoFunctor& u, const PushoutLimits& lim = {});
CocartSquare pushout_sieve_2cat(const TwoFunctor& i, const TwoFunctor& u, const PushoutLimits& lim = {});
// s : E -> F a poset sieve, u : O(E) -> A'.
CocartSquare pushout_o_sieve(const MonotoneMap& s, const OPoset& oe, const OPoset& of, const TwoFunctor& u);

// Square of cosieves  C12 --u--> C2
//                     |i        |i2
//                     C1 --v--> X
// where Ck is the complement of the sieve on the object set uk (disjoint
// masks) and C12 = C1 n C2. Carries no provenance tables.
CocartSquare cosieve_square(const TwoCatPtr& x, const std::vector<char>& u1, const std::vector<char>& u2);

// The map out of the apex induced by a cocone (j : A' -> C, w : B -> C).
TwoFunctor mediate(const CocartSquare& sq, const TwoFunctor& j, const TwoFunctor& w);

// Square commutes, i2 is a sieve, pullback on cells, complement isomorphism.
std::vector<std::string> check_sieve_square(const CocartSquare& sq, std::size_t max_reports = 20);

struct Cocone {
    TwoFunctor j, w;
};

struct CocartesianOptions {
    bool auto_probes = true;
    std::vector<TwoCatPtr> targets;  // defaults to small_twocats() when empty
    std::uint64_t budget = 50'000'000;
};

struct CocartesianReport {
    bool ok = true;
    std::size_t probes = 0;
    std::vector<std::string> failures;
};

// Counts mediating maps for each probe by exhaustive search; ok iff exactly one each.
CocartesianReport verify_cocartesian(const CocartSquare& sq, const std::vector<Cocone>& probes,
                                     const CocartesianOptions& opt = {});

// Poset-enriched 2-categories with at most two objects and hom-posets of at
// most two elements, up to isomorphism.
std::vector<TwoCatPtr> small_twocats();

// Extension of a retract structure on sq.i along the square.
RetractStructure extend_retract(const CocartSquare& sq, const RetractStructure& s);
// r' v = u r and H'(1 x v) = v H, tablewise.
std::vector<std::string> extension_compatibility(const CocartSquare& sq, const RetractStructure& s,
                                                 const RetractStructure& t, std::size_t max_reports = 20);
// Pins H'(1 x v) = v H for enumerate_relative_homotopies on the apex.
HomotopyPins compatibility_pins(const CocartSquare& sq, const RetractStructure& s);

}  // namespace cat2
