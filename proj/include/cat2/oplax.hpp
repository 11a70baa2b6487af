#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cat2/poset.hpp"
#include "cat2/sset.hpp"
#include "cat2/twocat.hpp"
#include "cat2/util.hpp"

namespace cat2 {

// Normalized oplax 2-functor. constraint[(g, f)] is F(g,f) : F(gf) => F(g)F(f)
// for every composable pair of 1-cells.
struct OplaxFunctor {
    TwoCatPtr src, tgt;
    std::vector<int> obj, one, two;
    PairMap constraint;

    int at(int g, int f) const { return lookup(constraint, g, f); }
};

OplaxFunctor coerce(const TwoFunctor& f);
// Drops the constraints; throws ShapeError if one is not an identity.
TwoFunctor strict_part(const OplaxFunctor& f);
bool is_strict(const OplaxFunctor& f);
bool same_oplax(const OplaxFunctor& a, const OplaxFunctor& b);

std::vector<std::string> validate_oplax(const OplaxFunctor& f, std::size_t max_reports = 20);
// (G o F)(g, f) = G(Fg, Ff) . G(F(g, f)).
OplaxFunctor compose_oplax(const OplaxFunctor& g, const OplaxFunctor& f);

SMap nerve_oplax(const OplaxFunctor& f, const Nerve2& a, const Nerve2& b);
SMap nerve_oplax(const OplaxFunctor& f, int cap);

// Oplax functor on the interval product of `ip` with named accessors.
// phi: 0 and 1 are the identities of Delta_1, 2 is the arrow 0 -> 1.
struct OplaxHomotopy {
    IntervalProduct ip;
    OplaxFunctor h;

    int obj(int eps, int x) const { return h.obj[ip.object(eps, x)]; }
    int one(int phi, int f) const { return h.one[ip.one(phi, f)]; }
    int two(int phi, int a) const { return h.two[ip.two(phi, a)]; }
    int constraint(int phi_g, int g, int phi_f, int f) const { return h.at(ip.one(phi_g, g), ip.one(phi_f, f)); }
    // H o d_eps
    OplaxFunctor end(int eps) const;
};

struct RetractStructure {
    TwoFunctor i, r;
    OplaxHomotopy h;
};

struct RetractReport {
    std::vector<std::string> retraction;  // r o i = 1
    std::vector<std::string> homotopy;    // oplax axioms and endpoints i r, 1
    std::vector<std::string> rdf1;
    std::vector<std::string> rdf2;

    bool ok() const { return retraction.empty() && homotopy.empty() && rdf1.empty() && rdf2.empty(); }
    std::vector<std::string> all() const;
};

// Throws NotASieve unless i is a sieve.
RetractReport check_retract_structure(const RetractStructure& s);

// Table identities derived from RDF1/RDF2 (H(0, c) = c on the sieve, A1, A2, B1-B4).
std::vector<std::string> retract_identities(const RetractStructure& s, std::size_t max_reports = 20);

struct PosetRetract {
    OPoset a, b;
    RetractStructure s;
};
// Throws PreconditionError unless i is a sieve and r its right adjoint retraction.
PosetRetract poset_sieve_retract(const MonotoneMap& i, const MonotoneMap& r);

// Optional pins on the free part of a relative homotopy: values of H on
// cells (0 -> 1, w) and on constraints, keyed by cells of the interval product.
struct HomotopyPins {
    std::vector<int> one, two;  // -1 free
    PairMap constraint;
};

// All oplax homotopies from i r to 1 relative to the sieve i (RDF1), in a
// deterministic order. RDF2 is not imposed.
std::vector<OplaxHomotopy> enumerate_relative_homotopies(const TwoFunctor& i, const TwoFunctor& r,
                                                         std::uint64_t budget = 10'000'000,
                                                         const HomotopyPins& pins = {});

// All strict retractions of i (r o i = 1) by exhaustive search.
std::vector<TwoFunctor> retractions(const TwoFunctor& i, std::uint64_t budget = 10'000'000);

}  // namespace cat2
