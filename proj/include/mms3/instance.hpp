#pragma once

/**
 * @file instance.hpp
 * @brief Allocation instances, allocations and share profiles.
 *
 * Chores are stored as non-negative cost magnitudes together with a
 * polarity flag; negating an instance flips the flag and keeps the
 * magnitude table, so no negative numbers appear anywhere downstream.
 */

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "mms3/errors.hpp"
#include "mms3/rational.hpp"

namespace mms3 {

enum class Polarity { Goods, Chores };

inline const char* to_string(Polarity p) {
    return p == Polarity::Goods ? "goods" : "chores";
}

using Bundle = std::vector<int>; // sorted item indices

class Instance {
public:
    Instance(Polarity polarity,
             std::vector<std::vector<Rational>> values,
             std::vector<std::string> agent_names = {})
        : polarity_(polarity), values_(std::move(values)), names_(std::move(agent_names)) {
        if (values_.empty())
            throw ArgumentError("Instance: need at least one agent");
        const size_t m = values_[0].size();
        for (const auto& row : values_) {
            if (row.size() != m)
                throw ArgumentError("Instance: values table is not rectangular");
            for (const auto& v : row)
                if (v.sign() < 0)
                    throw ArgumentError("Instance: values are stored as non-negative magnitudes");
        }
        if (names_.empty()) {
            if (values_.size() == 3) {
                names_ = {"R", "C", "U"};
            } else {
                for (size_t i = 0; i < values_.size(); ++i)
                    names_.push_back(std::to_string(i + 1));
            }
        }
        if (names_.size() != values_.size())
            throw ArgumentError("Instance: one name per agent expected");
    }

    Polarity polarity() const { return polarity_; }
    int agents() const { return static_cast<int>(values_.size()); }
    int items() const { return static_cast<int>(values_[0].size()); }
    const std::string& agent_name(int i) const { return names_.at(i); }
    const std::vector<std::string>& agent_names() const { return names_; }

    const Rational& value(int agent, int item) const {
        if (agent < 0 || agent >= agents() || item < 0 || item >= items())
            throw ArgumentError("Instance: agent or item index out of range");
        return values_[agent][item];
    }
    const std::vector<std::vector<Rational>>& values() const { return values_; }

    Rational total(int agent) const {
        Rational sum;
        for (const auto& v : values_.at(agent))
            sum += v;
        return sum;
    }

private:
    Polarity polarity_;
    std::vector<std::vector<Rational>> values_;
    std::vector<std::string> names_;
};

/// v^i(S) = sum of the agent's values over the bundle.
inline Rational bundle_value(const Instance& inst, int agent, std::span<const int> bundle) {
    Rational sum;
    for (int item : bundle)
        sum += inst.value(agent, item);
    return sum;
}

inline Rational bundle_value(const Instance& inst, int agent, const Bundle& bundle) {
    return bundle_value(inst, agent, std::span<const int>(bundle));
}

/// The -I transform: flips polarity, keeps the magnitude table. Involution.
inline Instance negate(const Instance& inst) {
    return Instance(inst.polarity() == Polarity::Goods ? Polarity::Chores : Polarity::Goods,
                    inst.values(), inst.agent_names());
}

// An ordered n-partition of the item indices, one bundle per agent.
struct Allocation {
    std::vector<Bundle> bundles;

    Allocation() = default;
    explicit Allocation(std::vector<Bundle> b) : bundles(std::move(b)) {
        for (auto& bundle : bundles)
            std::sort(bundle.begin(), bundle.end());
    }

    static Allocation from_assignment(std::span<const int> agent_of_item, int n) {
        Allocation a;
        a.bundles.resize(n);
        for (size_t item = 0; item < agent_of_item.size(); ++item) {
            int agent = agent_of_item[item];
            if (agent < 0 || agent >= n)
                throw ArgumentError("Allocation: assignment digit out of range");
            a.bundles[agent].push_back(static_cast<int>(item));
        }
        return a;
    }

    /// Inverse of from_assignment; requires the bundles to partition {0..m-1}.
    std::vector<int> assignment(int m) const {
        std::vector<int> owner(m, -1);
        for (size_t agent = 0; agent < bundles.size(); ++agent) {
            for (int item : bundles[agent]) {
                if (item < 0 || item >= m || owner[item] != -1)
                    throw ArgumentError("Allocation: bundles do not partition the items");
                owner[item] = static_cast<int>(agent);
            }
        }
        for (int o : owner)
            if (o == -1)
                throw ArgumentError("Allocation: some item is unassigned");
        return owner;
    }

    bool operator==(const Allocation& o) const { return bundles == o.bundles; }
};

// Per-agent exact shares. `witness` is an optimal MMS partition for goods
// instances and an optimal mmS partition for chores instances.
struct AgentShares {
    Rational mms;
    Rational mmS;
    Rational ps;
    Allocation witness;
};

struct ShareProfile {
    std::vector<AgentShares> agents;
};

namespace detail {

// Ratio of a bundle value against a share benchmark, with the degenerate
// zero-share convention: goods agents with MMS 0 are trivially satisfied
// (ratio 1); a chores agent with mmS 0 must hold a zero-cost bundle.
inline Rational share_ratio(Polarity polarity, const Rational& value, const Rational& share) {
    if (share.is_zero()) {
        if (polarity == Polarity::Goods || value.is_zero())
            return Rational(1);
        throw DegenerateError("zero minimax share with positive bundle cost");
    }
    return value / share;
}

} // namespace detail

/// rho_A: min over agents of v^i(A_i)/MMS^i for goods, max of
/// v^i(A_i)/mmS^i for chores.
inline Rational rho_of(const Instance& inst, const Allocation& alloc, const ShareProfile& shares) {
    if (static_cast<int>(alloc.bundles.size()) != inst.agents() ||
        static_cast<int>(shares.agents.size()) != inst.agents())
        throw ArgumentError("rho_of: allocation/profile size mismatch");
    alloc.assignment(inst.items()); // validates the partition
    const bool goods = inst.polarity() == Polarity::Goods;
    Rational rho;
    for (int i = 0; i < inst.agents(); ++i) {
        Rational v = bundle_value(inst, i, alloc.bundles[i]);
        Rational share = goods ? shares.agents[i].mms : shares.agents[i].mmS;
        Rational ratio = detail::share_ratio(inst.polarity(), v, share);
        if (i == 0 || (goods ? ratio < rho : ratio > rho))
            rho = ratio;
    }
    return rho;
}

} // namespace mms3
