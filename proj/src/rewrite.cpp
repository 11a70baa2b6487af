#include "rewrite.hpp"

#include <algorithm>

namespace cat2::detail {

namespace {

bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

bool contains(const Word& big, const Word& small) {
    return std::search(big.begin(), big.end(), small.begin(), small.end()) != big.end();
}

}  // namespace

Word Rewriter::reduce(Word w) const {
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t pos = 0; pos < w.size() && !changed; ++pos)
            for (int len = 1; len <= longest_ && pos + len <= w.size(); ++len) {
                Word sub(w.begin() + pos, w.begin() + pos + len);
                auto it = by_lhs_.find(sub);
                if (it == by_lhs_.end()) continue;
                const Word& rhs = rules_[it->second].rhs;
                Word next(w.begin(), w.begin() + pos);
                next.insert(next.end(), rhs.begin(), rhs.end());
                next.insert(next.end(), w.begin() + pos + len, w.end());
                w = std::move(next);
                changed = true;
                break;
            }
    }
    return w;
}

bool Rewriter::reducible_suffix(const Word& w) const {
    for (int len = 1; len <= longest_ && len <= static_cast<int>(w.size()); ++len)
        if (by_lhs_.count(Word(w.end() - len, w.end()))) return true;
    return false;
}

void Rewriter::add_rule(Word lhs, Word rhs) {
    if (static_cast<int>(lhs.size()) > max_word_)
        throw NormalizationBudgetExceeded("rewriting rule longer than " + std::to_string(max_word_) + " letters");
    int k = static_cast<int>(rules_.size());
    // rules whose left side the new one rewrites are retired and re-queued
    for (int j = 0; j < k; ++j) {
        auto& r = rules_[j];
        if (!r.alive) continue;
        if (contains(r.lhs, lhs)) {
            r.alive = false;
            by_lhs_.erase(r.lhs);
            --alive_;
            pending_.emplace_back(r.lhs, r.rhs);
        }
    }
    rules_.push_back({lhs, rhs, true});
    by_lhs_[lhs] = k;
    ++alive_;
    longest_ = std::max(longest_, static_cast<int>(lhs.size()));
    if (alive_ > max_rules_) throw NormalizationBudgetExceeded("rewriting system exceeds " + std::to_string(max_rules_) + " rules");
    for (int j = 0; j < k; ++j)
        if (rules_[j].alive) {
            rules_[j].rhs = reduce(rules_[j].rhs);
            critical_pairs(j, k);
            critical_pairs(k, j);
        }
    critical_pairs(k, k);
}

void Rewriter::critical_pairs(int p, int q) {
    const Word& l1 = rules_[p].lhs;
    const Word& l2 = rules_[q].lhs;
    std::size_t top = std::min(l1.size(), l2.size());
    for (std::size_t k = 1; k < top; ++k) {
        if (!std::equal(l1.end() - k, l1.end(), l2.begin())) continue;
        Word a = rules_[p].rhs;
        a.insert(a.end(), l2.begin() + k, l2.end());
        Word b(l1.begin(), l1.end() - k);
        b.insert(b.end(), rules_[q].rhs.begin(), rules_[q].rhs.end());
        pending_.emplace_back(std::move(a), std::move(b));
    }
}

void Rewriter::complete() {
    while (!pending_.empty()) {
        auto [a, b] = std::move(pending_.front());
        pending_.pop_front();
        a = reduce(std::move(a));
        b = reduce(std::move(b));
        if (a == b) continue;
        if (shortlex_less(a, b)) std::swap(a, b);
        add_rule(std::move(a), std::move(b));
        if (pending_.size() > 50 * max_rules_) throw NormalizationBudgetExceeded("rewriting queue overflow");
    }
}

}  // namespace cat2::detail
