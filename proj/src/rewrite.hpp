#pragma once

#include <deque>
#include <vector>

#include "cat2/util.hpp"

namespace cat2::detail {

using Word = std::vector<int>;

// Knuth-Bendix completion for a presentation of a category by letters (typed
// arrows) and relations between parallel words. Words are read in path order
// (first letter applied first); the ordering is shortlex on letter indices.
class Rewriter {
public:
    Rewriter(int max_word, std::size_t max_rules) : max_word_(max_word), max_rules_(max_rules) {}

    void add(Word a, Word b) { pending_.emplace_back(std::move(a), std::move(b)); }
    void complete();
    Word reduce(Word w) const;
    // True when some rule's left side is a suffix of w.
    bool reducible_suffix(const Word& w) const;
    std::size_t size() const { return alive_; }

private:
    struct Rule {
        Word lhs, rhs;
        bool alive = true;
    };
    void add_rule(Word lhs, Word rhs);
    void critical_pairs(int p, int q);

    int max_word_;
    std::size_t max_rules_;
    std::vector<Rule> rules_;
    VecMap<int> by_lhs_;
    std::deque<std::pair<Word, Word>> pending_;
    std::size_t alive_ = 0;
    int longest_ = 0;
};

}  // namespace cat2::detail
