#pragma once

/**
 * @file shares.hpp
 * @brief Exact MMS / mmS / PS computation with witness partitions.
 *
 * Share values are found by depth-first assignment of items to bundles
 * with branch-and-bound pruning against a fractional (waterfill) bound.
 * A second pass re-enumerates in original item order to return the
 * lexicographically smallest witness partition (in first-occurrence
 * canonical labeling), so results are reproducible.
 */

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "mms3/instance.hpp"

namespace mms3 {

// Hard enumeration caps on the item count; exceeding them is an explicit
// ResourceError, never a silent approximation.
inline constexpr int kDefaultShareBudget = 14;
inline constexpr int kDefaultAllocationBudget = 12;

// Streams assignment vectors of m items to n labeled parts in lexicographic
// order. With symmetry breaking only canonical vectors are produced: item 0
// goes to part 0 and each later item may open at most the next unused part,
// so every partition into <= n parts appears exactly once up to relabeling.
// With symmetry breaking disabled, all n^m assignments appear.
class PartitionEnumerator {
public:
    PartitionEnumerator(int m, int n, bool symmetry_break = true)
        : m_(m), n_(n), sym_(symmetry_break) {
        if (m < 0 || n < 1)
            throw ArgumentError("PartitionEnumerator: need m >= 0 and n >= 1");
    }

    bool next(std::vector<int>& out) {
        if (done_)
            return false;
        if (!started_) {
            cur_.assign(m_, 0);
            started_ = true;
            out = cur_;
            return true;
        }
        for (int i = m_ - 1; i >= 0; --i) {
            int cap = n_ - 1;
            if (sym_) {
                int max_before = -1;
                for (int j = 0; j < i; ++j)
                    max_before = std::max(max_before, cur_[j]);
                cap = std::min(cap, max_before + 1);
            }
            if (cur_[i] < cap) {
                ++cur_[i];
                std::fill(cur_.begin() + i + 1, cur_.end(), 0);
                out = cur_;
                return true;
            }
        }
        done_ = true;
        return false;
    }

private:
    int m_, n_;
    bool sym_;
    bool started_ = false;
    bool done_ = false;
    std::vector<int> cur_;
};

namespace detail {

// Branch-and-bound over canonical partitions of one agent's values.
class ShareSearch {
public:
    ShareSearch(std::vector<Rational> values, int parts, bool maximin)
        : vals_(std::move(values)), n_(parts), maximin_(maximin) {}

    // Optimal share value: max-min (MMS) or min-max (mmS) over n-partitions.
    Rational value() {
        const int m = static_cast<int>(vals_.size());
        order_.resize(m);
        std::iota(order_.begin(), order_.end(), 0);
        // Largest values first makes the bound bite early.
        std::stable_sort(order_.begin(), order_.end(),
                         [&](int a, int b) { return vals_[a] > vals_[b]; });
        suffix_.assign(m + 1, Rational(0));
        for (int i = m - 1; i >= 0; --i)
            suffix_[i] = suffix_[i + 1] + vals_[order_[i]];
        sums_.assign(n_, Rational(0));
        best_.reset();
        dfs_value(0, 0);
        return *best_;
    }

    // Lexicographically smallest canonical partition achieving `target`.
    std::vector<int> witness(const Rational& target) {
        const int m = static_cast<int>(vals_.size());
        order_.resize(m);
        std::iota(order_.begin(), order_.end(), 0); // original order = lex order
        suffix_.assign(m + 1, Rational(0));
        for (int i = m - 1; i >= 0; --i)
            suffix_[i] = suffix_[i + 1] + vals_[order_[i]];
        sums_.assign(n_, Rational(0));
        assignment_.assign(m, 0);
        found_.assign(m, 0);
        if (!dfs_witness(0, 0, target))
            throw ContractError("share witness search failed to reach the optimal value");
        return found_;
    }

private:
    // Waterfill level: the best final min reachable if the remaining total
    // could be divided fractionally. Upper bound for maximin.
    Rational fill_bound(const Rational& remaining) const {
        std::vector<Rational> t(sums_);
        std::sort(t.begin(), t.end());
        Rational cum;
        for (int k = 1; k < n_; ++k) {
            cum += t[k - 1];
            Rational need = t[k] * k - cum;
            if (need >= remaining)
                return (cum + remaining) / k;
        }
        cum += t[n_ - 1];
        return (cum + remaining) / n_;
    }

    // Lower bound for minimax: the max cannot drop below the average nor
    // below any sum already committed.
    Rational spread_bound(const Rational& remaining) const {
        Rational hi = sums_[0];
        Rational total = sums_[0];
        for (int p = 1; p < n_; ++p) {
            if (sums_[p] > hi)
                hi = sums_[p];
            total += sums_[p];
        }
        Rational avg = (total + remaining) / n_;
        return avg > hi ? avg : hi;
    }

    Rational leaf_value() const {
        Rational v = sums_[0];
        for (int p = 1; p < n_; ++p) {
            if (maximin_ ? sums_[p] < v : sums_[p] > v)
                v = sums_[p];
        }
        return v;
    }

    void dfs_value(int i, int used) {
        const int m = static_cast<int>(vals_.size());
        if (i == m) {
            Rational v = leaf_value();
            if (!best_ || (maximin_ ? v > *best_ : v < *best_))
                best_ = v;
            return;
        }
        if (best_) {
            if (maximin_ && fill_bound(suffix_[i]) <= *best_)
                return;
            if (!maximin_ && spread_bound(suffix_[i]) >= *best_)
                return;
        }
        const Rational& v = vals_[order_[i]];
        int cap = std::min(n_ - 1, used); // canonical: at most one new part
        for (int p = 0; p <= cap; ++p) {
            // Equal-sum parts lead to isomorphic subtrees; try only the first.
            bool dup = false;
            for (int q = 0; q < p && !dup; ++q)
                dup = sums_[q] == sums_[p];
            if (dup)
                continue;
            sums_[p] += v;
            dfs_value(i + 1, p == used ? used + 1 : used);
            sums_[p] -= v;
        }
    }

    bool dfs_witness(int i, int used, const Rational& target) {
        const int m = static_cast<int>(vals_.size());
        if (i == m)
            return leaf_value() == target;
        if (maximin_ && fill_bound(suffix_[i]) < target)
            return false;
        if (!maximin_ && spread_bound(suffix_[i]) > target)
            return false;
        const Rational& v = vals_[order_[i]];
        int cap = std::min(n_ - 1, used);
        for (int p = 0; p <= cap; ++p) {
            sums_[p] += v;
            assignment_[i] = p;
            if (dfs_witness(i + 1, p == used ? used + 1 : used, target)) {
                sums_[p] -= v;
                if (i == 0)
                    found_ = assignment_;
                return true;
            }
            sums_[p] -= v;
        }
        return false;
    }

    std::vector<Rational> vals_;
    int n_;
    bool maximin_;
    std::vector<int> order_;
    std::vector<Rational> suffix_;
    std::vector<Rational> sums_;
    std::vector<int> assignment_;
    std::vector<int> found_;
    std::optional<Rational> best_;
};

inline void check_share_budget(const Instance& inst, int agent, int max_items) {
    if (agent < 0 || agent >= inst.agents())
        throw ArgumentError("share computation: agent index out of range");
    if (inst.items() > max_items)
        throw ResourceError("share enumeration budget exceeded: m=" + std::to_string(inst.items()) +
                            " > " + std::to_string(max_items));
}

} // namespace detail

/// Exact maximin share of one agent with a witness partition. Goods only.
inline std::pair<Rational, Allocation> compute_mms(const Instance& inst, int agent,
                                                   int max_items = kDefaultShareBudget) {
    if (inst.polarity() != Polarity::Goods)
        throw ArgumentError("compute_mms expects a goods instance; negate() chores first");
    detail::check_share_budget(inst, agent, max_items);
    detail::ShareSearch search(inst.values()[agent], inst.agents(), /*maximin=*/true);
    Rational value = search.value();
    std::vector<int> assignment = search.witness(value);
    return {value, Allocation::from_assignment(assignment, inst.agents())};
}

/// Exact minimax share (as a cost magnitude) with a witness. Chores only.
inline std::pair<Rational, Allocation> compute_mmS(const Instance& inst, int agent,
                                                   int max_items = kDefaultShareBudget) {
    if (inst.polarity() != Polarity::Chores)
        throw ArgumentError("compute_mmS expects a chores instance; negate() goods first");
    detail::check_share_budget(inst, agent, max_items);
    detail::ShareSearch search(inst.values()[agent], inst.agents(), /*maximin=*/false);
    Rational value = search.value();
    std::vector<int> assignment = search.witness(value);
    return {value, Allocation::from_assignment(assignment, inst.agents())};
}

inline Rational compute_ps(const Instance& inst, int agent) {
    if (agent < 0 || agent >= inst.agents())
        throw ArgumentError("compute_ps: agent index out of range");
    return inst.total(agent) / Rational(inst.agents());
}

/// Full profile. The witness kept per agent matches the instance polarity
/// (MMS partition for goods, mmS partition for chores); the opposite share
/// is computed on negate(inst), which shares the magnitude table.
inline ShareProfile compute_profile(const Instance& inst, int max_items = kDefaultShareBudget) {
    ShareProfile profile;
    const Instance flipped = negate(inst);
    for (int i = 0; i < inst.agents(); ++i) {
        AgentShares s;
        s.ps = compute_ps(inst, i);
        if (inst.polarity() == Polarity::Goods) {
            auto [mms, witness] = compute_mms(inst, i, max_items);
            s.mms = mms;
            s.mmS = compute_mmS(flipped, i, max_items).first;
            s.witness = std::move(witness);
        } else {
            auto [mmS, witness] = compute_mmS(inst, i, max_items);
            s.mmS = mmS;
            s.mms = compute_mms(flipped, i, max_items).first;
            s.witness = std::move(witness);
        }
        profile.agents.push_back(std::move(s));
    }
    return profile;
}

} // namespace mms3
