#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace cat2 {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define CAT2_ERROR(Name)                    \
    struct Name : Error {                   \
        using Error::Error;                 \
    }

CAT2_ERROR(CycleError);
CAT2_ERROR(IndexError);
CAT2_ERROR(ShapeError);
CAT2_ERROR(NotASieve);
CAT2_ERROR(NotInjective);
CAT2_ERROR(CapError);
CAT2_ERROR(BudgetError);
CAT2_ERROR(WitnessNotFound);
CAT2_ERROR(PreconditionError);
CAT2_ERROR(NormalizationBudgetExceeded);
CAT2_ERROR(UnknownScenario);
CAT2_ERROR(FormatError);

#undef CAT2_ERROR

inline std::uint64_t pair_key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

using PairMap = std::unordered_map<std::uint64_t, int>;

inline int lookup(const PairMap& m, int a, int b) {
    auto it = m.find(pair_key(a, b));
    return it == m.end() ? -1 : it->second;
}

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept {
        std::uint64_t h = 1469598103934665603ull ^ v.size();
        for (int x : v) {
            h ^= static_cast<std::uint32_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

template <class T>
using VecMap = std::unordered_map<std::vector<int>, T, VecHash>;

// Union-find whose class representative is always the least index.
class UnionFind {
public:
    explicit UnionFind(int n = 0) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int add() {
        parent_.push_back(static_cast<int>(parent_.size()));
        return parent_.back();
    }
    int size() const { return static_cast<int>(parent_.size()); }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

private:
    std::vector<int> parent_;
};

// Node counter shared by the backtracking searches.
class Budget {
public:
    explicit Budget(std::uint64_t limit, std::string what = "search")
        : limit_(limit), what_(std::move(what)) {}
    void tick(std::uint64_t n = 1) {
        used_ += n;
        if (used_ > limit_) throw BudgetError(what_ + ": node budget of " + std::to_string(limit_) + " exceeded");
    }
    std::uint64_t used() const { return used_; }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
    std::string what_;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep);

}  // namespace cat2
