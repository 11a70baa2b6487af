#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cat2/sset.hpp"

namespace cat2::detail {

struct TupleData {
    SSetPtr x;
    std::vector<std::vector<std::vector<int>>> tuples;
    std::vector<VecMap<int>> index;
};

TupleData build_tuples(int vertices, int cap, const std::function<bool(const std::vector<int>&)>& accept,
                       const std::vector<std::string>& names);

// Nerve of xi(Delta_n) with elements encoded as bitmasks of [n].
struct XiNerve {
    TupleData t;
    std::vector<unsigned> mask;
    std::vector<int> of_mask;
};

const XiNerve& xi_nerve(int n, int cap);
// (N xi theta)(cell) for theta : [a] -> [b], cell a k-simplex of `from`.
int xi_apply(const std::vector<int>& theta, const XiNerve& from, const XiNerve& to, int k, int cell);
// Sequence of maxima of a chain of subsets.
std::vector<int> last_vertex_theta(const XiNerve& nx, int k, int cell);

}  // namespace cat2::detail
