#pragma once

/**
 * @file atomic.hpp
 * @brief Atomic bundles, the coarse 3x3 grid, instance reduction and grid
 *        normalization.
 *
 * An atomic bundle is an intersection of one bundle from each agent's
 * witness partition; atomic allocations never split atomic bundles. The
 * coarse grid uses only two agents' witnesses (rows and columns), which
 * leaves exactly nine addressable cells.
 */

#include <array>
#include <optional>
#include <sstream>
#include <vector>

#include "mms3/instance.hpp"

namespace mms3 {

// All n^n intersection cells, indexed by the mixed-radix tuple
// (k_0,...,k_{n-1}) with agent 0 as the most significant digit: the cell at
// index sum(k_i * n^(n-1-i)) is the intersection of bundle k_i of every
// agent i's witness. Empty cells are retained with their index.
struct AtomicStructure {
    int agents = 0;
    std::vector<Bundle> bundles; // size n^n

    int nonempty_count() const {
        int k = 0;
        for (const auto& b : bundles)
            if (!b.empty())
                ++k;
        return k;
    }
};

inline AtomicStructure build_atomic(const Instance& inst, const ShareProfile& profile) {
    const int n = inst.agents();
    const int m = inst.items();
    if (static_cast<int>(profile.agents.size()) != n)
        throw ArgumentError("build_atomic: profile does not match the instance");
    long long cells = 1;
    for (int i = 0; i < n; ++i)
        cells *= n;
    AtomicStructure structure;
    structure.agents = n;
    structure.bundles.resize(static_cast<size_t>(cells));
    for (int item = 0; item < m; ++item) {
        long long index = 0;
        for (int agent = 0; agent < n; ++agent) {
            const auto& witness = profile.agents[agent].witness.bundles;
            if (static_cast<int>(witness.size()) != n)
                throw ArgumentError("build_atomic: witness partition must have n bundles");
            int part = -1;
            for (int k = 0; k < n && part < 0; ++k) {
                if (std::binary_search(witness[k].begin(), witness[k].end(), item))
                    part = k;
            }
            if (part < 0)
                throw ArgumentError("build_atomic: witness partitions must cover every item");
            index = index * n + part;
        }
        structure.bundles[static_cast<size_t>(index)].push_back(item);
    }
    return structure;
}

// The nine cells of the intersection of two agents' witness partitions,
// laid out with the row agent's bundles as rows and the column agent's as
// columns, plus every agent's 3x3 matrix of cell values.
struct CoarseGrid {
    Polarity polarity = Polarity::Goods;
    int row_agent = 0;
    int col_agent = 1;
    int u_agent = 2;
    std::array<std::array<Bundle, 3>, 3> cells;
    std::vector<std::array<std::array<Rational, 3>, 3>> values; // one matrix per instance agent
    std::optional<Rational> z_plus_one; // set by normalize_grid

    Rational row_sum(int agent, int i) const {
        return values[agent][i][0] + values[agent][i][1] + values[agent][i][2];
    }
    Rational col_sum(int agent, int j) const {
        return values[agent][0][j] + values[agent][1][j] + values[agent][2][j];
    }
    Rational total(int agent) const {
        return row_sum(agent, 0) + row_sum(agent, 1) + row_sum(agent, 2);
    }
};

inline CoarseGrid build_coarse_grid(const Instance& inst, const ShareProfile& profile,
                                    int row_agent, int col_agent) {
    if (inst.agents() != 3)
        throw ArgumentError("build_coarse_grid is defined for three agents only");
    if (row_agent == col_agent || row_agent < 0 || row_agent > 2 || col_agent < 0 || col_agent > 2)
        throw ArgumentError("build_coarse_grid: need two distinct agents in range");
    if (static_cast<int>(profile.agents.size()) != 3)
        throw ArgumentError("build_coarse_grid: profile does not match the instance");

    CoarseGrid grid;
    grid.polarity = inst.polarity();
    grid.row_agent = row_agent;
    grid.col_agent = col_agent;
    grid.u_agent = 3 - row_agent - col_agent;
    const auto& rows = profile.agents[row_agent].witness.bundles;
    const auto& cols = profile.agents[col_agent].witness.bundles;
    if (rows.size() != 3 || cols.size() != 3)
        throw ArgumentError("build_coarse_grid: witness partitions must have 3 bundles");
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            Bundle cell;
            std::set_intersection(rows[i].begin(), rows[i].end(), cols[j].begin(), cols[j].end(),
                                  std::back_inserter(cell));
            grid.cells[i][j] = std::move(cell);
        }
    }
    grid.values.resize(3);
    for (int agent = 0; agent < 3; ++agent)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                grid.values[agent][i][j] = bundle_value(inst, agent, grid.cells[i][j]);
    return grid;
}

/// New instance with one item per nonempty atomic bundle; each agent values
/// the item at her value of the bundle. Shares are preserved exactly.
inline Instance reduce_to_items(const Instance& inst, const AtomicStructure& structure) {
    std::vector<std::vector<Rational>> values(inst.agents());
    for (const auto& cell : structure.bundles) {
        if (cell.empty())
            continue;
        for (int agent = 0; agent < inst.agents(); ++agent)
            values[agent].push_back(bundle_value(inst, agent, cell));
    }
    return Instance(inst.polarity(), std::move(values), inst.agent_names());
}

/// Rescales the grid so every row of the row agent and every column of the
/// column agent sums to a common z+1 and the third agent's total is
/// 3(z+1), reducing cell values only. z+1 is the smallest of the row sums,
/// column sums and a third of the U total, so every factor is <= 1.
inline CoarseGrid normalize_grid(const CoarseGrid& grid) {
    if (grid.polarity != Polarity::Goods)
        throw ArgumentError("normalize_grid is defined for goods grids");
    Rational target = grid.row_sum(grid.row_agent, 0);
    for (int i = 1; i < 3; ++i)
        target = std::min(target, grid.row_sum(grid.row_agent, i));
    for (int j = 0; j < 3; ++j)
        target = std::min(target, grid.col_sum(grid.col_agent, j));
    target = std::min(target, grid.total(grid.u_agent) / Rational(3));

    CoarseGrid out = grid;
    out.z_plus_one = target;
    if (target.is_zero()) {
        // Only the all-zero grid is normalizable to scale 0.
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (!grid.values[grid.row_agent][i][j].is_zero() ||
                    !grid.values[grid.col_agent][i][j].is_zero() ||
                    !grid.values[grid.u_agent][i][j].is_zero())
                    throw DegenerateError("normalize_grid: a zero row/column/total with positive cells");
        return out;
    }
    for (int i = 0; i < 3; ++i) {
        Rational factor = target / grid.row_sum(grid.row_agent, i);
        for (int j = 0; j < 3; ++j)
            out.values[grid.row_agent][i][j] = grid.values[grid.row_agent][i][j] * factor;
    }
    for (int j = 0; j < 3; ++j) {
        Rational factor = target / grid.col_sum(grid.col_agent, j);
        for (int i = 0; i < 3; ++i)
            out.values[grid.col_agent][i][j] = grid.values[grid.col_agent][i][j] * factor;
    }
    Rational u_factor = target * Rational(3) / grid.total(grid.u_agent);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            out.values[grid.u_agent][i][j] = grid.values[grid.u_agent][i][j] * u_factor;
    return out;
}

/// Diagnostic pretty-printer: one 3x3 value matrix per agent.
inline std::string format_grid(const CoarseGrid& grid, const Instance& inst) {
    std::ostringstream os;
    for (int agent = 0; agent < 3; ++agent) {
        os << "v^" << inst.agent_name(agent) << " =\n";
        for (int i = 0; i < 3; ++i) {
            os << "  (";
            for (int j = 0; j < 3; ++j)
                os << (j ? "  " : " ") << grid.values[agent][i][j].str();
            os << " )\n";
        }
    }
    return os.str();
}

} // namespace mms3
