#pragma once

/**
 * @file allocate.hpp
 * @brief The five allocation algorithms and the envy-cycle upgrade.
 *
 * Goods searches maximize the worst share ratio; chores searches minimize
 * the largest one. Ties are broken by the lexicographically smallest
 * assignment vector over the search's decision units (items for exhaustive
 * search, atomic cells for the atomic and coarse searches), so every run
 * is reproducible.
 */

#include <optional>
#include <string>
#include <vector>

#include "mms3/atomic.hpp"
#include "mms3/instance.hpp"
#include "mms3/shares.hpp"

namespace mms3 {

enum class ResultMode { MMS, PMM, PPlusMM, PPlusMPlusM, mmS, Pmm, PPlusmm };

inline const char* to_string(ResultMode m) {
    switch (m) {
    case ResultMode::MMS: return "MMS";
    case ResultMode::PMM: return "PMM";
    case ResultMode::PPlusMM: return "P+MM";
    case ResultMode::PPlusMPlusM: return "P+M+M";
    case ResultMode::mmS: return "mmS";
    case ResultMode::Pmm: return "Pmm";
    case ResultMode::PPlusmm: return "P+mm";
    }
    return "?";
}

enum class CoarseMode { PMM, PPlusMM };
enum class CoarseChoresMode { Pmm, PPlusmm };

struct AllocationResult {
    Allocation allocation;
    Rational rho;
    // Ratio per agent against her own benchmark: MMS (goods) / mmS (chores),
    // except the designated U agent in P-modes, who is measured against PS.
    std::vector<Rational> per_agent_ratio;
    ResultMode mode = ResultMode::MMS;
    std::optional<int> u_agent;
    // For the "+" modes: U actually received her full PS (goods) or stayed
    // within it (chores).
    bool p_constraint_met = false;
    std::string note;
};

namespace detail {

// Best-rho search over disjoint decision units (single items or atomic
// cells). Leaves are visited in lexicographic digit order and only strict
// improvements are kept, so the reported optimum carries the smallest
// assignment vector. Pruning uses the optimistic per-agent ratio bound,
// which can only discard later-or-worse leaves.
class BestAllocationSearch {
public:
    BestAllocationSearch(const Instance& inst, const ShareProfile& profile,
                         std::vector<Bundle> units)
        : inst_(inst), goods_(inst.polarity() == Polarity::Goods), n_(inst.agents()),
          units_(std::move(units)) {
        const int k = static_cast<int>(units_.size());
        unit_values_.assign(n_, std::vector<Rational>(k));
        for (int a = 0; a < n_; ++a)
            for (int u = 0; u < k; ++u)
                unit_values_[a][u] = bundle_value(inst, a, units_[u]);
        shares_.resize(n_);
        for (int a = 0; a < n_; ++a)
            shares_[a] = goods_ ? profile.agents[a].mms : profile.agents[a].mmS;
        suffix_.assign(n_, std::vector<Rational>(k + 1, Rational(0)));
        for (int a = 0; a < n_; ++a)
            for (int u = k - 1; u >= 0; --u)
                suffix_[a][u] = suffix_[a][u + 1] + unit_values_[a][u];
    }

    std::pair<Rational, std::vector<int>> run() {
        sums_.assign(n_, Rational(0));
        digits_.assign(units_.size(), 0);
        best_rho_.reset();
        dfs(0);
        return {*best_rho_, best_digits_};
    }

    Allocation allocation_from_digits(const std::vector<int>& digits) const {
        std::vector<Bundle> bundles(n_);
        for (size_t u = 0; u < units_.size(); ++u)
            for (int item : units_[u])
                bundles[digits[u]].push_back(item);
        return Allocation(std::move(bundles));
    }

private:
    Rational leaf_rho() const {
        Rational rho;
        for (int a = 0; a < n_; ++a) {
            Rational r = share_ratio(inst_.polarity(), sums_[a], shares_[a]);
            if (a == 0 || (goods_ ? r < rho : r > rho))
                rho = r;
        }
        return rho;
    }

    bool prunable(int u) const {
        if (!best_rho_)
            return false;
        if (goods_) {
            // Upper bound: every agent still receives all remaining units.
            Rational bound;
            for (int a = 0; a < n_; ++a) {
                Rational r = shares_[a].is_zero()
                                 ? Rational(1)
                                 : (sums_[a] + suffix_[a][u]) / shares_[a];
                if (a == 0 || r < bound)
                    bound = r;
            }
            return bound <= *best_rho_;
        }
        // Chores: sums only grow, so the current max is a lower bound.
        Rational bound(0);
        bool set = false;
        for (int a = 0; a < n_; ++a) {
            Rational r = share_ratio(Polarity::Chores, sums_[a], shares_[a]);
            if (!set || r > bound) {
                bound = r;
                set = true;
            }
        }
        return bound >= *best_rho_;
    }

    void dfs(int u) {
        if (u == static_cast<int>(units_.size())) {
            Rational rho = leaf_rho();
            if (!best_rho_ || (goods_ ? rho > *best_rho_ : rho < *best_rho_)) {
                best_rho_ = rho;
                best_digits_ = digits_;
            }
            return;
        }
        if (prunable(u))
            return;
        for (int a = 0; a < n_; ++a) {
            sums_[a] += unit_values_[a][u];
            digits_[u] = a;
            dfs(u + 1);
            sums_[a] -= unit_values_[a][u];
        }
        digits_[u] = 0;
    }

    const Instance& inst_;
    bool goods_;
    int n_;
    std::vector<Bundle> units_;
    std::vector<std::vector<Rational>> unit_values_;
    std::vector<Rational> shares_;
    std::vector<std::vector<Rational>> suffix_;
    std::vector<Rational> sums_;
    std::vector<int> digits_;
    std::optional<Rational> best_rho_;
    std::vector<int> best_digits_;
};

inline std::vector<Rational> ratios_against_shares(const Instance& inst,
                                                   const ShareProfile& profile,
                                                   const Allocation& alloc,
                                                   std::optional<int> u_agent) {
    std::vector<Rational> out(inst.agents());
    const bool goods = inst.polarity() == Polarity::Goods;
    for (int a = 0; a < inst.agents(); ++a) {
        Rational v = bundle_value(inst, a, alloc.bundles[a]);
        Rational share = (u_agent && *u_agent == a)
                             ? profile.agents[a].ps
                             : (goods ? profile.agents[a].mms : profile.agents[a].mmS);
        out[a] = share_ratio(inst.polarity(), v, share);
    }
    return out;
}

inline void check_allocation_budget(long long count, int max_units, const char* what) {
    if (count > max_units)
        throw ResourceError(std::string(what) + " enumeration budget exceeded: " +
                            std::to_string(count) + " units > " + std::to_string(max_units));
}

} // namespace detail

/// Tries all n^m allocations; optimal in rho by construction.
inline AllocationResult exhaustive_search(const Instance& inst, const ShareProfile& profile,
                                          int max_items = kDefaultAllocationBudget) {
    if (static_cast<int>(profile.agents.size()) != inst.agents())
        throw ArgumentError("exhaustive_search: profile does not match the instance");
    detail::check_allocation_budget(inst.items(), max_items, "allocation");
    std::vector<Bundle> units;
    for (int item = 0; item < inst.items(); ++item)
        units.push_back({item});
    detail::BestAllocationSearch search(inst, profile, std::move(units));
    auto [rho, digits] = search.run();
    AllocationResult result;
    result.allocation = search.allocation_from_digits(digits);
    result.rho = rho;
    result.per_agent_ratio = detail::ratios_against_shares(inst, profile, result.allocation, {});
    result.mode = inst.polarity() == Polarity::Goods ? ResultMode::MMS : ResultMode::mmS;
    return result;
}

/// Tries all allocations that respect the n^n atomic bundles.
inline AllocationResult atomic_exhaustive_search(const Instance& inst, const ShareProfile& profile,
                                                 int max_cells = kDefaultAllocationBudget) {
    AtomicStructure structure = build_atomic(inst, profile);
    std::vector<Bundle> units;
    for (const auto& cell : structure.bundles)
        if (!cell.empty())
            units.push_back(cell);
    detail::check_allocation_budget(static_cast<long long>(units.size()), max_cells,
                                    "atomic allocation");
    detail::BestAllocationSearch search(inst, profile, std::move(units));
    auto [rho, digits] = search.run();
    AllocationResult result;
    result.allocation = search.allocation_from_digits(digits);
    result.rho = rho;
    result.per_agent_ratio = detail::ratios_against_shares(inst, profile, result.allocation, {});
    result.mode = inst.polarity() == Polarity::Goods ? ResultMode::MMS : ResultMode::mmS;
    return result;
}

namespace detail {

struct CoarseSetup {
    CoarseGrid grid;
    std::vector<Bundle> cells;                      // row-major, empties kept
    std::vector<std::vector<Rational>> cell_values; // [agent][cell]
};

inline CoarseSetup coarse_setup(const Instance& inst, const ShareProfile& profile, int u) {
    if (inst.agents() != 3)
        throw ArgumentError("coarse search is defined for three agents only");
    if (u < 0 || u > 2)
        throw ArgumentError("coarse search: U agent index out of range");
    int r = u == 0 ? 1 : 0;
    int c = u == 2 ? 1 : 2;
    CoarseSetup setup{build_coarse_grid(inst, profile, r, c), {}, {}};
    setup.cell_values.assign(3, std::vector<Rational>(9));
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            setup.cells.push_back(setup.grid.cells[i][j]);
            for (int a = 0; a < 3; ++a)
                setup.cell_values[a][i * 3 + j] = setup.grid.values[a][i][j];
        }
    }
    return setup;
}

} // namespace detail

/// Coarse atomic exhaustive search over the 3^9 allocations of the nine
/// cells. PMM maximizes min(rho_R, rho_C, v^U/PS^U); the ambitious P+MM
/// variant maximizes min(rho_R, rho_C) over allocations granting U her
/// full PS.
inline AllocationResult coarse_search(const Instance& inst, const ShareProfile& profile, int u,
                                      CoarseMode mode) {
    if (inst.polarity() != Polarity::Goods)
        throw ArgumentError("coarse_search expects goods; use coarse_search_chores");
    detail::CoarseSetup setup = detail::coarse_setup(inst, profile, u);
    const int r = setup.grid.row_agent, c = setup.grid.col_agent;
    const Rational& mms_r = profile.agents[r].mms;
    const Rational& mms_c = profile.agents[c].mms;
    const Rational& ps_u = profile.agents[u].ps;

    std::vector<int> digits(9, 0), best_digits;
    std::optional<Rational> best_key;
    std::array<Rational, 3> sums;
    // 3^9 = 19683 assignments; no pruning needed.
    auto dfs = [&](auto&& self, int cell) -> void {
        if (cell == 9) {
            Rational ratio_r = detail::share_ratio(Polarity::Goods, sums[r], mms_r);
            Rational ratio_c = detail::share_ratio(Polarity::Goods, sums[c], mms_c);
            Rational key = ratio_r < ratio_c ? ratio_r : ratio_c;
            if (mode == CoarseMode::PMM) {
                Rational ratio_u = detail::share_ratio(Polarity::Goods, sums[u], ps_u);
                if (ratio_u < key)
                    key = ratio_u;
            } else if (!ps_u.is_zero() && sums[u] < ps_u) {
                return; // P+MM: only allocations with U at full PS qualify
            }
            if (!best_key || key > *best_key) {
                best_key = key;
                best_digits = digits;
            }
            return;
        }
        for (int a = 0; a < 3; ++a) {
            sums[a] += setup.cell_values[a][cell];
            digits[cell] = a;
            self(self, cell + 1);
            sums[a] -= setup.cell_values[a][cell];
        }
        digits[cell] = 0;
    };
    dfs(dfs, 0);
    if (!best_key)
        throw ContractError("coarse_search: no atomic allocation grants U her full PS");

    AllocationResult result;
    std::vector<Bundle> bundles(3);
    for (int cell = 0; cell < 9; ++cell)
        for (int item : setup.cells[cell])
            bundles[best_digits[cell]].push_back(item);
    result.allocation = Allocation(std::move(bundles));
    result.rho = *best_key;
    result.per_agent_ratio = detail::ratios_against_shares(inst, profile, result.allocation, u);
    result.mode = mode == CoarseMode::PMM ? ResultMode::PMM : ResultMode::PPlusMM;
    result.u_agent = u;
    result.p_constraint_met = result.per_agent_ratio[u] >= Rational(1);
    return result;
}

/// Chores mirror: minimizes max(rho_R, rho_C[, v^U/PS^U]); the ambitious
/// P+mm variant restricts to allocations keeping U within her PS.
inline AllocationResult coarse_search_chores(const Instance& inst, const ShareProfile& profile,
                                             int u, CoarseChoresMode mode) {
    if (inst.polarity() != Polarity::Chores)
        throw ArgumentError("coarse_search_chores expects a chores instance");
    detail::CoarseSetup setup = detail::coarse_setup(inst, profile, u);
    const int r = setup.grid.row_agent, c = setup.grid.col_agent;
    const Rational& mms_r = profile.agents[r].mmS;
    const Rational& mms_c = profile.agents[c].mmS;
    const Rational& ps_u = profile.agents[u].ps;

    std::vector<int> digits(9, 0), best_digits;
    std::optional<Rational> best_key;
    std::array<Rational, 3> sums;
    auto dfs = [&](auto&& self, int cell) -> void {
        if (cell == 9) {
            Rational ratio_r = detail::share_ratio(Polarity::Chores, sums[r], mms_r);
            Rational ratio_c = detail::share_ratio(Polarity::Chores, sums[c], mms_c);
            Rational key = ratio_r > ratio_c ? ratio_r : ratio_c;
            if (mode == CoarseChoresMode::Pmm) {
                Rational ratio_u = detail::share_ratio(Polarity::Chores, sums[u], ps_u);
                if (ratio_u > key)
                    key = ratio_u;
            } else if (sums[u] > ps_u) {
                return; // P+mm: U must stay within her PS
            }
            if (!best_key || key < *best_key) {
                best_key = key;
                best_digits = digits;
            }
            return;
        }
        for (int a = 0; a < 3; ++a) {
            sums[a] += setup.cell_values[a][cell];
            digits[cell] = a;
            self(self, cell + 1);
            sums[a] -= setup.cell_values[a][cell];
        }
        digits[cell] = 0;
    };
    dfs(dfs, 0);
    if (!best_key)
        throw ContractError("coarse_search_chores: no atomic allocation keeps U within her PS");

    AllocationResult result;
    std::vector<Bundle> bundles(3);
    for (int cell = 0; cell < 9; ++cell)
        for (int item : setup.cells[cell])
            bundles[best_digits[cell]].push_back(item);
    result.allocation = Allocation(std::move(bundles));
    result.rho = *best_key;
    result.per_agent_ratio = detail::ratios_against_shares(inst, profile, result.allocation, u);
    result.mode = mode == CoarseChoresMode::Pmm ? ResultMode::Pmm : ResultMode::PPlusmm;
    result.u_agent = u;
    result.p_constraint_met = result.per_agent_ratio[u] <= Rational(1);
    return result;
}

/// Coarse atomic partial search (three steps). U gets at least her PS, C at
/// least her MMS, and R at least 9/10 of her MMS.
inline AllocationResult partial_search(const Instance& inst, const ShareProfile& profile, int u) {
    if (inst.polarity() != Polarity::Goods)
        throw ArgumentError("partial_search is defined for goods");
    if (inst.agents() != 3)
        throw ArgumentError("partial_search is defined for three agents only");
    if (u < 0 || u > 2)
        throw ArgumentError("partial_search: U agent index out of range");
    const int r = u == 0 ? 1 : 0;
    const int c = u == 2 ? 1 : 2;
    const Rational& mms_r = profile.agents[r].mms;
    const Rational& ps_u = profile.agents[u].ps;
    const auto& c_bundles = profile.agents[c].witness.bundles;
    if (c_bundles.size() != 3)
        throw ArgumentError("partial_search: C's witness partition must have 3 bundles");

    auto finish = [&](Allocation alloc, std::string note) {
        AllocationResult result;
        result.allocation = std::move(alloc);
        result.per_agent_ratio = detail::ratios_against_shares(inst, profile, result.allocation, u);
        result.rho = result.per_agent_ratio[r];
        result.mode = ResultMode::PPlusMPlusM;
        result.u_agent = u;
        result.p_constraint_met = result.per_agent_ratio[u] >= Rational(1);
        result.note = std::move(note);
        return result;
    };

    // Step 1: two different bundles of C's partition, one worth R's full
    // MMS and the other worth U's full PS.
    std::optional<std::vector<int>> best_vector;
    std::optional<Allocation> best_alloc;
    for (int i = 0; i < 3; ++i) {
        if (bundle_value(inst, r, c_bundles[i]) < mms_r)
            continue;
        for (int j = 0; j < 3; ++j) {
            if (j == i || bundle_value(inst, u, c_bundles[j]) < ps_u)
                continue;
            std::vector<Bundle> bundles(3);
            bundles[r] = c_bundles[i];
            bundles[u] = c_bundles[j];
            bundles[c] = c_bundles[3 - i - j];
            Allocation candidate(std::move(bundles));
            auto vec = candidate.assignment(inst.items());
            if (!best_vector || vec < *best_vector) {
                best_vector = std::move(vec);
                best_alloc = std::move(candidate);
            }
        }
    }
    if (best_alloc)
        return finish(std::move(*best_alloc), "step 1: two distinct C-witness bundles serve R and U");

    // Step 1 failed, so exactly one bundle must be valuable for both R and
    // U; anything else contradicts the trichotomy.
    std::vector<int> good_r, good_u;
    for (int i = 0; i < 3; ++i) {
        if (bundle_value(inst, r, c_bundles[i]) >= mms_r)
            good_r.push_back(i);
        if (bundle_value(inst, u, c_bundles[i]) >= ps_u)
            good_u.push_back(i);
    }
    if (good_r.size() != 1 || good_u.size() != 1 || good_r[0] != good_u[0]) {
        std::ostringstream msg;
        msg << "partial_search step 1: trichotomy violated; bundles giving R >= MMS: {";
        for (int i : good_r)
            msg << " " << i + 1;
        msg << " }, bundles giving U >= PS: {";
        for (int i : good_u)
            msg << " " << i + 1;
        msg << " }";
        throw ContractError(msg.str());
    }
    const int valuable = good_r[0];

    // Step 2: nine atomic cells from the witnesses of R and C.
    CoarseGrid grid = build_coarse_grid(inst, profile, r, c);

    // Step 3: A1 ranges over C's two other bundles; the remaining six cells
    // are split to maximize min(v^R(A2), v^R(A3)). C takes A1, U her better
    // of the two remaining bundles, R the last.
    std::optional<Rational> best_objective;
    best_vector.reset();
    best_alloc.reset();
    std::string best_note;
    for (int a1 = 0; a1 < 3; ++a1) {
        if (a1 == valuable)
            continue;
        std::vector<Bundle> rest_cells;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (j != a1)
                    rest_cells.push_back(grid.cells[i][j]);
        for (unsigned mask = 0; mask < 64; ++mask) {
            Bundle a2, a3;
            for (int t = 0; t < 6; ++t) {
                const Bundle& cell = rest_cells[t];
                Bundle& dest = (mask >> t) & 1u ? a2 : a3;
                dest.insert(dest.end(), cell.begin(), cell.end());
            }
            Rational v2 = bundle_value(inst, r, a2);
            Rational v3 = bundle_value(inst, r, a3);
            Rational objective = v2 < v3 ? v2 : v3;
            if (best_objective && objective < *best_objective)
                continue;
            Rational u2 = bundle_value(inst, u, a2);
            Rational u3 = bundle_value(inst, u, a3);
            std::vector<Bundle> bundles(3);
            bundles[c] = c_bundles[a1];
            bundles[u] = u2 >= u3 ? a2 : a3;
            bundles[r] = u2 >= u3 ? a3 : a2;
            Allocation candidate(std::move(bundles));
            auto vec = candidate.assignment(inst.items());
            if (!best_objective || objective > *best_objective || vec < *best_vector) {
                best_objective = objective;
                best_vector = std::move(vec);
                best_alloc = std::move(candidate);
                best_note = "step 3: A1 = C's witness bundle " + std::to_string(a1 + 1);
            }
        }
    }
    return finish(std::move(*best_alloc), best_note);
}

/// Convenience wrapper: tries each agent as U and returns the best result.
inline AllocationResult coarse_search_best_u(const Instance& inst, const ShareProfile& profile,
                                             CoarseMode mode) {
    std::optional<AllocationResult> best;
    for (int u = 0; u < 3; ++u) {
        AllocationResult r = coarse_search(inst, profile, u, mode);
        if (!best || r.rho > best->rho)
            best = std::move(r);
    }
    return *best;
}

inline AllocationResult coarse_search_chores_best_u(const Instance& inst,
                                                    const ShareProfile& profile,
                                                    CoarseChoresMode mode) {
    std::optional<AllocationResult> best;
    for (int u = 0; u < 3; ++u) {
        AllocationResult r = coarse_search_chores(inst, profile, u, mode);
        if (!best || r.rho < best->rho)
            best = std::move(r);
    }
    return *best;
}

inline AllocationResult partial_search_best_u(const Instance& inst, const ShareProfile& profile) {
    std::optional<AllocationResult> best;
    for (int u = 0; u < 3; ++u) {
        AllocationResult r = partial_search(inst, profile, u);
        if (!best || r.rho > best->rho)
            best = std::move(r);
    }
    return *best;
}

/// Rotates bundles along envy cycles until some agent is envy-free. Every
/// agent ends weakly better off, so any rho-MMS property of the input is
/// preserved, and the envy-free agent holds at least her PS.
inline Allocation envy_upgrade(const Instance& inst, const Allocation& alloc) {
    if (inst.polarity() != Polarity::Goods)
        throw ArgumentError("envy_upgrade is defined for goods");
    const int n = inst.agents();
    if (static_cast<int>(alloc.bundles.size()) != n)
        throw ArgumentError("envy_upgrade: allocation does not match the instance");
    alloc.assignment(inst.items());

    std::vector<Bundle> bundles = alloc.bundles;
    while (true) {
        std::vector<std::vector<Rational>> val(n, std::vector<Rational>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                val[i][j] = bundle_value(inst, i, bundles[j]);
        // successor[i]: the smallest agent i envies, or -1 if envy-free.
        std::vector<int> successor(n, -1);
        bool has_envy_free = false;
        for (int i = 0; i < n && !has_envy_free; ++i) {
            for (int j = 0; j < n; ++j) {
                if (j != i && val[i][j] > val[i][i]) {
                    successor[i] = j;
                    break;
                }
            }
            has_envy_free = successor[i] == -1;
        }
        if (has_envy_free)
            return Allocation(std::move(bundles));
        // Every agent envies someone, so following successors finds a cycle.
        std::vector<int> seen(n, -1);
        int v = 0, step = 0;
        while (seen[v] == -1) {
            seen[v] = step++;
            v = successor[v];
        }
        std::vector<Bundle> rotated = bundles;
        int w = v;
        do {
            rotated[w] = bundles[successor[w]];
            w = successor[w];
        } while (w != v);
        bundles = std::move(rotated);
    }
}

} // namespace mms3
