#pragma once

#include <string>

#include "json.hpp"
#include "cat2/homology.hpp"
#include "cat2/oplax.hpp"
#include "cat2/poset.hpp"
#include "cat2/pushout.hpp"
#include "cat2/sset.hpp"
#include "cat2/twocat.hpp"

namespace cat2 {

using Json = nlohmann::ordered_json;

// Poset: {"elements": [ids], "leq": [[a, b], ...]} with a generating relation.
Json poset_json(const Poset& p);
Poset poset_from_json(const Json& j);
// {"source": poset, "target": poset, "map": {id: id}}
Json map_json(const MonotoneMap& f);
MonotoneMap map_from_json(const Json& j);

// {"cap": n, "cells": [[labels] per degree], "d": [[[faces] per cell] per degree], "s": ...}
Json sset_json(const SSet& x);
SSetPtr sset_from_json(const Json& j);
Json smap_json(const SMap& f);

// Field layout of TwoCat; composition tables as [second, first, result] triples.
Json twocat_json(const TwoCat& c);
TwoCat twocat_from_json(const Json& j);
Json functor_json(const TwoFunctor& f);
TwoFunctor functor_from_json(const Json& j);
Json oplax_json(const OplaxFunctor& f);
OplaxFunctor oplax_from_json(const Json& j);

// {"i": functor, "r": functor, "h": oplax functor on the interval product}
Json retract_json(const RetractStructure& s);
RetractStructure retract_from_json(const Json& j);
// {"apex": twocat, "i", "u", "i2", "v": functors}
Json square_json(const CocartSquare& sq);

Json homology_json(const HomologyProfile& h);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace cat2
