#pragma once

/**
 * @file milpgen.hpp
 * @brief MILP certificate generators and the MathProg emitter.
 *
 * The generators build the certificate programs for the coarse searches
 * (MILP9G for goods, MILP9C for chores, MILP9P for partial search) and the
 * parametric general model. Strict inequalities never appear in emitted
 * models: bounds that must hold strictly are rewritten with the slack
 * epsilon_bound() certifies. Within each covering case, candidate bundles
 * are enumerated in subset-bitmask order (item j present iff bit j-1 is
 * set), which fixes the constraint order.
 */

#include <array>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mms3/rational.hpp"

namespace mms3 {

enum class Relation { LessEq, Eq, GreaterEq };
enum class LabelScheme { AppendixA, GeneratorB };
enum class BodyStyle { Spaced, Compact, CompactPlusZero };
enum class ConstraintKind { Framing, Activation, Covering };

struct LinearTerm {
    Rational coeff{1};
    std::string var;
    bool operator==(const LinearTerm& o) const { return coeff == o.coeff && var == o.var; }
};

// The big-gamma deactivation term: +gamma*(1-y) or -gamma*(1-y).
struct BigM {
    Rational gamma;
    std::string binary;
    bool positive = true;
    bool operator==(const BigM& o) const {
        return gamma == o.gamma && binary == o.binary && positive == o.positive;
    }
};

// Right-hand sides have the shape  k*z + constant (+/- slack) (+/- gamma*(1-y)).
// `constant` and `slack` are kept apart only so the emitted text reads
// "z+1-1/522" the way the certificates are written; semantically they add.
struct RhsExpr {
    int z_coeff = 0;
    Rational constant;
    Rational slack;
    std::optional<BigM> big_m;

    Rational value(const Rational& z, int binary_value = 0) const {
        Rational v = Rational(z_coeff) * z + constant + slack;
        if (big_m)
            v += (big_m->positive ? big_m->gamma : -big_m->gamma) * Rational(1 - binary_value);
        return v;
    }
    bool operator==(const RhsExpr& o) const {
        return z_coeff == o.z_coeff && constant + slack == o.constant + o.slack &&
               big_m == o.big_m;
    }
};

struct Constraint {
    std::string label;     // AppendixA-scheme label
    std::string alt_label; // GeneratorB-scheme label (equal for framing rows)
    std::vector<LinearTerm> lhs;
    Relation rel = Relation::LessEq;
    RhsExpr rhs;
    BodyStyle style = BodyStyle::Compact;
    ConstraintKind kind = ConstraintKind::Framing;

    bool operator==(const Constraint& o) const {
        return label == o.label && lhs == o.lhs && rel == o.rel && rhs == o.rhs;
    }
};

struct RealVar {
    std::string name;
    Rational lower_bound;
    bool operator==(const RealVar& o) const {
        return name == o.name && lower_bound == o.lower_bound;
    }
};

struct MilpModel {
    std::string name;
    std::string description;
    std::vector<RealVar> real_vars;
    std::vector<std::string> binary_vars;
    std::vector<Constraint> constraints;
    std::string objective = "z"; // minimized

    int covering_count() const {
        int k = 0;
        for (const auto& c : constraints)
            if (c.kind == ConstraintKind::Covering)
                ++k;
        return k;
    }
    bool operator==(const MilpModel& o) const {
        return real_vars == o.real_vars && binary_vars == o.binary_vars &&
               constraints == o.constraints && objective == o.objective;
    }
};

/// Smallest valid slackness epsilon = 1/D for a k-th order certificate:
/// D is the least positive integer with D^2 * 4^k >= (k+1)^(k+1), i.e.
/// D >= (k+1)^((k+1)/2) / 2^k, so any value bounded strictly below 1 by a
/// basic feasible solution stays <= 1 - epsilon.
inline Rational epsilon_bound(int k) {
    if (k < 1 || k > 16)
        throw ArgumentError("epsilon_bound: k must be in [1, 16]");
    BigInt target = 1; // (k+1)^(k+1)
    for (int i = 0; i <= k; ++i)
        target *= k + 1;
    BigInt four_k = 1;
    for (int i = 0; i < k; ++i)
        four_k *= 4;
    BigInt d = boost::multiprecision::sqrt(target / four_k);
    while (d * d * four_k < target)
        ++d;
    while (d > 1 && (d - 1) * (d - 1) * four_k >= target)
        --d;
    return Rational(BigInt(1), d);
}

struct EmitterConfig {
    Rational gamma;
    Rational epsilon;
    LabelScheme label_scheme = LabelScheme::AppendixA;
    bool strict_to_weak = true;

    static EmitterConfig goods() { return {Rational(120), epsilon_bound(10)}; }
    static EmitterConfig chores() { return {Rational(44), epsilon_bound(10)}; }
    static EmitterConfig partial() { return {Rational(120), epsilon_bound(10)}; }
    static EmitterConfig general(int n) {
        Rational g(1);
        for (int i = 0; i < 5; ++i)
            g *= Rational(n);
        return {g, epsilon_bound(10)};
    }
};

namespace milp_detail {

inline void require_weak(const EmitterConfig& config) {
    if (!config.strict_to_weak)
        throw ArgumentError("emitted models cannot carry strict inequalities; "
                            "strict_to_weak must stay enabled");
    if (config.epsilon.sign() <= 0)
        throw ArgumentError("strict-to-weak rewriting needs epsilon > 0");
}

// Paper cell numbering: the 3x3 grid holds items 1..9 row-major.
inline const std::array<std::array<int, 3>, 3> kGridRows = {{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}};
inline const std::array<std::array<int, 3>, 3> kGridCols = {{{1, 4, 7}, {2, 5, 8}, {3, 6, 9}}};

inline std::vector<LinearTerm> cell_terms(const std::vector<int>& items, char agent) {
    std::vector<LinearTerm> terms;
    for (int i : items)
        terms.push_back({Rational(1), "e" + std::to_string(i) + std::string(1, agent)});
    return terms;
}

inline std::vector<LinearTerm> cell_terms(const std::array<int, 3>& items, char agent) {
    return cell_terms(std::vector<int>(items.begin(), items.end()), agent);
}

inline Constraint framing(std::string label, std::vector<LinearTerm> lhs, Relation rel,
                          RhsExpr rhs) {
    Constraint c;
    c.label = label;
    c.alt_label = std::move(label);
    c.lhs = std::move(lhs);
    c.rel = rel;
    c.rhs = std::move(rhs);
    c.style = BodyStyle::Spaced;
    c.kind = ConstraintKind::Framing;
    return c;
}

// One covering case of the nine-cell certificates: a fixed agent keeps one
// of her witness bundles, the other agent of {R, C} picks 1-2 items from
// `partial_source` plus anything from the rest of `free_items`, U takes
// what remains.
struct CoverCase {
    char other_agent;             // whose activation binaries pair with U's
    std::vector<int> free_items;  // ascending
    std::vector<int> partial_source;
};

struct TripleLabels {
    // AppendixA: activations continue the c-numbering, coverings are ycondN.
    // GeneratorB: one shared cond counter for all three lines.
    int next_a;    // next AppendixA c-number
    int next_b;    // next GeneratorB cond-number
    int next_cover = 1;
};

inline void append_triple(MilpModel& model, TripleLabels& labels, std::vector<LinearTerm> act1_lhs,
                          RhsExpr act1_rhs, std::vector<LinearTerm> act2_lhs, RhsExpr act2_rhs,
                          Relation rel) {
    const std::string y1 = "y" + std::to_string(static_cast<int>(model.binary_vars.size()) + 1);
    const std::string y2 = "y" + std::to_string(static_cast<int>(model.binary_vars.size()) + 2);
    model.binary_vars.push_back(y1);
    model.binary_vars.push_back(y2);
    act1_rhs.big_m->binary = y1;
    act2_rhs.big_m->binary = y2;

    Constraint act1;
    act1.label = "c" + std::to_string(labels.next_a++);
    act1.alt_label = "cond" + std::to_string(labels.next_b++);
    act1.lhs = std::move(act1_lhs);
    act1.rel = rel;
    act1.rhs = std::move(act1_rhs);
    act1.style = BodyStyle::CompactPlusZero;
    act1.kind = ConstraintKind::Activation;
    model.constraints.push_back(std::move(act1));

    Constraint act2;
    act2.label = "c" + std::to_string(labels.next_a++);
    act2.alt_label = "cond" + std::to_string(labels.next_b++);
    act2.lhs = std::move(act2_lhs);
    act2.rel = rel;
    act2.rhs = std::move(act2_rhs);
    act2.style = BodyStyle::CompactPlusZero;
    act2.kind = ConstraintKind::Activation;
    model.constraints.push_back(std::move(act2));

    Constraint cover;
    cover.label = "ycond" + std::to_string(labels.next_cover++);
    cover.alt_label = "cond" + std::to_string(labels.next_b++);
    cover.lhs = {{Rational(1), y1}, {Rational(1), y2}};
    cover.rel = Relation::GreaterEq;
    cover.rhs.constant = Rational(1);
    cover.style = BodyStyle::Compact;
    cover.kind = ConstraintKind::Covering;
    model.constraints.push_back(std::move(cover));
}

// Enumerates the 48 qualifying bundles of a cover case in ascending
// subset-bitmask order and appends one triple per bundle.
inline void append_cover_case(MilpModel& model, TripleLabels& labels, const CoverCase& cover,
                              const EmitterConfig& config, bool goods) {
    unsigned free_mask = 0, partial_mask = 0;
    for (int i : cover.free_items)
        free_mask |= 1u << (i - 1);
    for (int i : cover.partial_source)
        partial_mask |= 1u << (i - 1);
    for (unsigned mask = 1; mask < 512; ++mask) {
        if ((mask & ~free_mask) != 0)
            continue;
        int from_partial = __builtin_popcount(mask & partial_mask);
        if (from_partial < 1 || from_partial > 2)
            continue;
        std::vector<int> bundle, remainder;
        for (int i = 1; i <= 9; ++i) {
            if (mask & (1u << (i - 1)))
                bundle.push_back(i);
            else if (free_mask & (1u << (i - 1)))
                remainder.push_back(i);
        }
        RhsExpr act1_rhs;
        act1_rhs.z_coeff = 1;
        act1_rhs.big_m = BigM{config.gamma, "", goods};
        RhsExpr act2_rhs;
        act2_rhs.z_coeff = 1;
        act2_rhs.constant = goods ? Rational(1) : Rational(-1);
        act2_rhs.slack = goods ? -config.epsilon : config.epsilon;
        act2_rhs.big_m = BigM{config.gamma, "", goods};
        append_triple(model, labels, cell_terms(bundle, cover.other_agent), std::move(act1_rhs),
                      cell_terms(remainder, 'U'), std::move(act2_rhs),
                      goods ? Relation::LessEq : Relation::GreaterEq);
    }
}

inline MilpModel nine_cell_model(bool goods, const EmitterConfig& config) {
    require_weak(config);
    MilpModel model;
    model.name = goods ? "MILP9G" : "MILP9C";
    model.description =
        goods ? "MILP9G: worst-case certificate for ambitious coarse atomic exhaustive "
                "search over goods; the optimal z gives rho = z/(z+1)."
              : "MILP9C: worst-case certificate for ambitious coarse atomic exhaustive "
                "search over chores; the optimal z gives rho = z/(z-1).";
    for (char agent : {'R', 'C', 'U'})
        for (int i = 1; i <= 9; ++i)
            model.real_vars.push_back({"e" + std::to_string(i) + std::string(1, agent), Rational(0)});
    model.real_vars.push_back({"z", Rational(0)});

    const Rational share_offset = goods ? Rational(1) : Rational(-1); // shares are z+1 / z-1
    const Relation tight = goods ? Relation::LessEq : Relation::GreaterEq;
    const Rational u_slack = goods ? -config.epsilon : config.epsilon;

    // Witness partitions of R (rows) and C (columns), all equal to the share.
    int label = 1;
    for (int k = 0; k < 3; ++k)
        model.constraints.push_back(framing("c" + std::to_string(label++),
                                            cell_terms(kGridRows[k], 'R'), Relation::Eq,
                                            {1, share_offset}));
    for (int k = 0; k < 3; ++k)
        model.constraints.push_back(framing("c" + std::to_string(label++),
                                            cell_terms(kGridCols[k], 'C'), Relation::Eq,
                                            {1, share_offset}));
    // Rows 2,3 fail C's share and (strictly) U's; columns 2,3 fail R's and U's.
    for (int k = 1; k < 3; ++k)
        model.constraints.push_back(framing("c" + std::to_string(label++),
                                            cell_terms(kGridRows[k], 'C'), tight, {1}));
    for (int k = 1; k < 3; ++k)
        model.constraints.push_back(framing("c" + std::to_string(label++),
                                            cell_terms(kGridRows[k], 'U'), tight,
                                            {1, share_offset, u_slack}));
    for (int k = 1; k < 3; ++k)
        model.constraints.push_back(framing("c" + std::to_string(label++),
                                            cell_terms(kGridCols[k], 'R'), tight, {1}));
    for (int k = 1; k < 3; ++k)
        model.constraints.push_back(framing("c" + std::to_string(label++),
                                            cell_terms(kGridCols[k], 'U'), tight,
                                            {1, share_offset, u_slack}));
    // U's proportional share: the grand bundle is worth 3z+3 (goods) / 3z-3.
    std::vector<int> all_items;
    for (int i = 1; i <= 9; ++i)
        all_items.push_back(i);
    model.constraints.push_back(framing("c" + std::to_string(label++), cell_terms(all_items, 'U'),
                                        Relation::Eq, {3, share_offset * Rational(3)}));

    // Four covering cases, 48 bundles each. For goods the flexible agent
    // must take 1-2 items from the fixed agent's first witness bundle; for
    // chores, from the leftover second/third bundle.
    std::vector<CoverCase> cases;
    auto items_of = [](std::initializer_list<int> rows_or_cols,
                       const std::array<std::array<int, 3>, 3>& table) {
        std::vector<int> items;
        for (int k : rows_or_cols)
            for (int i : table[k])
                items.push_back(i);
        std::sort(items.begin(), items.end());
        return items;
    };
    auto line = [](const std::array<int, 3>& a) { return std::vector<int>(a.begin(), a.end()); };
    if (goods) {
        cases.push_back({'C', items_of({0, 2}, kGridRows), line(kGridRows[0])}); // A_R = r2
        cases.push_back({'C', items_of({0, 1}, kGridRows), line(kGridRows[0])}); // A_R = r3
        cases.push_back({'R', items_of({0, 2}, kGridCols), line(kGridCols[0])}); // A_C = c2
        cases.push_back({'R', items_of({0, 1}, kGridCols), line(kGridCols[0])}); // A_C = c3
    } else {
        cases.push_back({'C', items_of({0, 2}, kGridRows), line(kGridRows[2])}); // A_R = r2
        cases.push_back({'C', items_of({0, 1}, kGridRows), line(kGridRows[1])}); // A_R = r3
        cases.push_back({'R', items_of({0, 2}, kGridCols), line(kGridCols[2])}); // A_C = c2
        cases.push_back({'R', items_of({0, 1}, kGridCols), line(kGridCols[1])}); // A_C = c3
    }
    TripleLabels labels{label, label + 2}; // generator numbering starts past its own framing
    for (const auto& cover : cases)
        append_cover_case(model, labels, cover, config, goods);
    return model;
}

} // namespace milp_detail

/// MILP9G: 27 item-value reals and z, 384 activation binaries, 192 covering
/// constraints grouped by the four cases A_R=r2, A_R=r3, A_C=c2, A_C=c3.
inline MilpModel gen_milp9g(const EmitterConfig& config = EmitterConfig::goods()) {
    return milp_detail::nine_cell_model(/*goods=*/true, config);
}

/// MILP9C: the chores mirror of MILP9G with shares z-1, gamma = 44 and the
/// strict > z-1 bounds rewritten as >= z-1+1/522.
inline MilpModel gen_milp9c(const EmitterConfig& config = EmitterConfig::chores()) {
    return milp_detail::nine_cell_model(/*goods=*/false, config);
}

/// MILP9P: step 3 of coarse atomic partial search. Only R's nine cell
/// values matter; for each candidate A1 in {c2, c3} and each split of the
/// remaining six cells, some resulting bundle must stay at or below z.
inline MilpModel gen_milp9p(const EmitterConfig& config = EmitterConfig::partial()) {
    using namespace milp_detail;
    MilpModel model;
    model.name = "MILP9P";
    model.description = "MILP9P: worst-case certificate for step 3 of coarse atomic partial "
                        "search; only R's nine cell values appear.";
    for (int i = 1; i <= 9; ++i)
        model.real_vars.push_back({"e" + std::to_string(i) + "R", Rational(0)});
    model.real_vars.push_back({"z", Rational(0)});
    int label = 1;
    for (int k = 0; k < 3; ++k)
        model.constraints.push_back(framing("c" + std::to_string(label++),
                                            cell_terms(kGridRows[k], 'R'), Relation::Eq,
                                            {1, Rational(1)}));
    TripleLabels labels{label, label};
    for (int col : {1, 2}) {
        std::vector<int> free_items;
        for (int i = 1; i <= 9; ++i) {
            bool in_col = false;
            for (int j : kGridCols[col])
                in_col = in_col || i == j;
            if (!in_col)
                free_items.push_back(i);
        }
        // Each unordered split once: the last free cell always stays in A3.
        for (unsigned mask = 0; mask < 32; ++mask) {
            std::vector<int> a2, a3;
            for (int t = 0; t < 6; ++t)
                (mask & (1u << t) ? a2 : a3).push_back(free_items[t]);
            RhsExpr rhs1;
            rhs1.z_coeff = 1;
            rhs1.big_m = BigM{config.gamma, "", true};
            RhsExpr rhs2 = rhs1;
            append_triple(model, labels, cell_terms(a2, 'R'), std::move(rhs1),
                          cell_terms(a3, 'R'), std::move(rhs2), Relation::LessEq);
        }
    }
    return model;
}

/// The parametric worst-case model for atomic exhaustive search with n
/// agents and b atomic bundles: x_{ij} value variables, activation binaries
/// for all 2^b bundles per agent, and one covering constraint per n^b
/// allocation. gamma defaults to n^5.
inline MilpModel gen_general_milp(int n, int b, std::optional<EmitterConfig> config = {},
                                  long long max_constraints = 1000000) {
    if (n < 3)
        throw ArgumentError("gen_general_milp: n >= 3 required (two agents always reach rho = 1)");
    if (b < n)
        throw ArgumentError("gen_general_milp: need at least one atomic bundle per witness part");
    const EmitterConfig cfg = config ? *config : EmitterConfig::general(n);
    if (b >= 62)
        throw ResourceError("gen_general_milp: 2^b bundle space is far beyond any emission budget");
    long long bundles = 1LL << b;
    long long allocations = 1;
    for (int j = 0; j < b; ++j) {
        if (allocations > max_constraints / n + 1)
            throw ResourceError("gen_general_milp: n^b covering constraints exceed the emission "
                                "budget of " + std::to_string(max_constraints));
        allocations *= n;
    }
    long long total = static_cast<long long>(n) * n + n * bundles + allocations;
    if (total > max_constraints)
        throw ResourceError("gen_general_milp: " + std::to_string(total) +
                            " constraints exceed the emission budget of " +
                            std::to_string(max_constraints));

    MilpModel model;
    model.name = "MILP-AES-n" + std::to_string(n) + "-b" + std::to_string(b);
    model.description = "Worst-case certificate for atomic exhaustive search with " +
                        std::to_string(n) + " agents and " + std::to_string(b) +
                        " atomic bundles; the optimal z gives rho = z/(z+1).";
    auto xname = [](int i, int j) {
        return "x" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
    };
    auto yname = [](int i, long long mask) {
        return "y" + std::to_string(i + 1) + "_" + std::to_string(mask);
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < b; ++j)
            model.real_vars.push_back({xname(i, j), Rational(0)});
    model.real_vars.push_back({"z", Rational(0)});
    for (int i = 0; i < n; ++i)
        for (long long mask = 0; mask < bundles; ++mask)
            model.binary_vars.push_back(yname(i, mask));

    // Witness partitions: agent i groups item j into part (j + i*(j/n)) % n,
    // a shifted-diagonal family, so distinct agents never share a system of
    // disjoint full parts.
    auto part_of = [n](int agent, int item) { return (item + agent * (item / n)) % n; };
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            std::vector<LinearTerm> terms;
            for (int j = 0; j < b; ++j)
                if (part_of(i, j) == k)
                    terms.push_back({Rational(1), xname(i, j)});
            Constraint c;
            c.label = "mms" + std::to_string(i + 1) + "_" + std::to_string(k + 1);
            c.alt_label = c.label;
            c.lhs = std::move(terms);
            c.rel = Relation::Eq;
            c.rhs = {1, Rational(1)};
            c.style = BodyStyle::Spaced;
            c.kind = ConstraintKind::Framing;
            model.constraints.push_back(std::move(c));
        }
    }
    for (int i = 0; i < n; ++i) {
        for (long long mask = 0; mask < bundles; ++mask) {
            std::vector<LinearTerm> terms;
            for (int j = 0; j < b; ++j)
                if (mask & (1LL << j))
                    terms.push_back({Rational(1), xname(i, j)});
            Constraint c;
            c.label = "act" + std::to_string(i + 1) + "_" + std::to_string(mask);
            c.alt_label = c.label;
            c.lhs = std::move(terms);
            c.rel = Relation::LessEq;
            c.rhs.z_coeff = 1;
            c.rhs.big_m = BigM{cfg.gamma, yname(i, mask), true};
            c.style = BodyStyle::CompactPlusZero;
            c.kind = ConstraintKind::Activation;
            model.constraints.push_back(std::move(c));
        }
    }
    std::vector<int> owner(b, 0);
    for (long long t = 0; t < allocations; ++t) {
        std::vector<long long> agent_mask(n, 0);
        for (int j = 0; j < b; ++j)
            agent_mask[owner[j]] |= 1LL << j;
        Constraint c;
        c.label = "cover" + std::to_string(t + 1);
        c.alt_label = c.label;
        for (int i = 0; i < n; ++i)
            c.lhs.push_back({Rational(1), yname(i, agent_mask[i])});
        c.rel = Relation::GreaterEq;
        c.rhs.constant = Rational(1);
        c.style = BodyStyle::Compact;
        c.kind = ConstraintKind::Covering;
        model.constraints.push_back(std::move(c));
        // Next allocation: item 0 is the most significant digit.
        for (int j = b - 1; j >= 0; --j) {
            if (++owner[j] < n)
                break;
            owner[j] = 0;
        }
    }
    return model;
}

namespace milp_detail {

inline std::string format_rhs(const RhsExpr& rhs) {
    std::ostringstream os;
    bool any = false;
    if (rhs.z_coeff == 1) {
        os << "z";
        any = true;
    } else if (rhs.z_coeff != 0) {
        os << rhs.z_coeff << "*z";
        any = true;
    }
    for (const Rational* part : {&rhs.constant, &rhs.slack}) {
        if (part->is_zero())
            continue;
        if (any)
            os << (part->sign() < 0 ? "-" : "+") << abs(*part).str();
        else
            os << part->str();
        any = true;
    }
    if (rhs.big_m) {
        os << (rhs.big_m->positive ? "+" : "-") << rhs.big_m->gamma.str() << "*(1-"
           << rhs.big_m->binary << ")";
        any = true;
    }
    if (!any)
        os << "0";
    return os.str();
}

inline std::string format_lhs(const Constraint& c) {
    std::ostringstream os;
    const char* sep = c.style == BodyStyle::Spaced ? " + " : "+";
    bool first = true;
    for (const auto& term : c.lhs) {
        if (!first)
            os << sep;
        if (term.coeff != Rational(1))
            os << term.coeff.str() << "*";
        os << term.var;
        first = false;
    }
    if (c.style == BodyStyle::CompactPlusZero)
        os << (first ? "0" : "+0");
    else if (first)
        os << "0";
    return os.str();
}

inline const char* format_relation(Relation rel, BodyStyle style) {
    const bool spaced = style == BodyStyle::Spaced;
    switch (rel) {
    case Relation::LessEq: return spaced ? " <= " : "<=";
    case Relation::Eq: return spaced ? " = " : "=";
    case Relation::GreaterEq: return spaced ? " >= " : ">=";
    }
    return "=";
}

} // namespace milp_detail

/// Deterministic MathProg text: declarations, constraints in model order,
/// the minimize statement and "end;". Rationals print as a/b.
inline std::string emit_mathprog(const MilpModel& model,
                                 const EmitterConfig& config = EmitterConfig::goods()) {
    std::ostringstream os;
    if (!model.description.empty())
        os << "/* " << model.description << " */\n\n";
    for (const auto& v : model.real_vars)
        os << "var " << v.name << ">=" << v.lower_bound.str() << ";\n";
    if (!model.real_vars.empty())
        os << "\n";
    for (const auto& y : model.binary_vars)
        os << "var " << y << ">=0, binary;\n";
    if (!model.binary_vars.empty())
        os << "\n";
    for (const auto& c : model.constraints) {
        const std::string& label =
            config.label_scheme == LabelScheme::AppendixA ? c.label : c.alt_label;
        os << "subject to " << label << ": " << milp_detail::format_lhs(c)
           << milp_detail::format_relation(c.rel, c.style) << milp_detail::format_rhs(c.rhs)
           << ";\n";
    }
    if (!model.constraints.empty())
        os << "\n";
    os << "minimize statement: " << model.objective << ";\n";
    os << "end;\n";
    return os.str();
}

// Exact substitution check: real variables get the supplied values; each
// activation binary is set to 1 exactly when its constraint holds that way,
// then every constraint is re-evaluated.
struct FeasibilityReport {
    bool feasible = true;
    std::string violation;
};

inline FeasibilityReport check_feasibility(const MilpModel& model,
                                           const std::map<std::string, Rational>& reals) {
    std::map<std::string, int> binaries;
    for (const auto& y : model.binary_vars)
        binaries[y] = 1;
    auto lhs_value = [&](const Constraint& c) {
        Rational v;
        for (const auto& term : c.lhs) {
            auto it = reals.find(term.var);
            if (it != reals.end()) {
                v += term.coeff * it->second;
                continue;
            }
            auto bit = binaries.find(term.var);
            if (bit == binaries.end())
                throw ArgumentError("check_feasibility: no value for variable " + term.var);
            v += term.coeff * Rational(bit->second);
        }
        return v;
    };
    auto holds = [&](const Constraint& c, int binary_value) {
        Rational lhs = lhs_value(c);
        auto zit = reals.find("z");
        Rational rhs = c.rhs.value(zit == reals.end() ? Rational(0) : zit->second, binary_value);
        switch (c.rel) {
        case Relation::LessEq: return lhs <= rhs;
        case Relation::Eq: return lhs == rhs;
        case Relation::GreaterEq: return lhs >= rhs;
        }
        return false;
    };
    // A binary stays 1 only if all of its activation constraints allow it.
    for (const auto& c : model.constraints)
        if (c.rhs.big_m && !holds(c, 1))
            binaries[c.rhs.big_m->binary] = 0;
    for (const auto& c : model.constraints) {
        int y = c.rhs.big_m ? binaries.at(c.rhs.big_m->binary) : 0;
        if (!holds(c, y)) {
            std::ostringstream os;
            os << "constraint " << c.label << " violated (lhs = " << lhs_value(c).str() << ")";
            return {false, os.str()};
        }
    }
    return {true, ""};
}

} // namespace mms3
