#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mms3/shares.hpp"
#include "mms3/verify.hpp"

using namespace mms3;

namespace {

Instance random_instance(std::mt19937_64& rng, Polarity polarity, int n, int m, int max_value) {
    std::vector<std::vector<Rational>> values(n);
    for (auto& row : values)
        for (int j = 0; j < m; ++j)
            row.push_back(Rational(static_cast<long long>(rng() % (max_value + 1))));
    return Instance(polarity, std::move(values));
}

// Independent oracle: literal n^m enumeration without symmetry breaking or
// pruning, tracking max-min (or min-max) of the part sums.
Rational brute_force_share(const Instance& inst, int agent, bool maximin) {
    PartitionEnumerator all(inst.items(), inst.agents(), /*symmetry_break=*/false);
    std::vector<int> assignment;
    std::optional<Rational> best;
    while (all.next(assignment)) {
        std::vector<Rational> sums(inst.agents());
        for (int j = 0; j < inst.items(); ++j)
            sums[assignment[j]] += inst.value(agent, j);
        Rational v = sums[0];
        for (const auto& s : sums)
            if (maximin ? s < v : s > v)
                v = s;
        if (!best || (maximin ? v > *best : v < *best))
            best = v;
    }
    return *best;
}

} // namespace

TEST_CASE("partition enumerator counts and canonical form", "[shares]") {
    // All assignments: n^m of them.
    PartitionEnumerator all(4, 3, false);
    std::vector<int> a;
    int count = 0;
    while (all.next(a))
        ++count;
    CHECK(count == 81);

    // Canonical mode: every vector starts at 0 and never skips a label, and
    // each canonical vector appears exactly once.
    PartitionEnumerator canonical(4, 3, true);
    std::vector<std::vector<int>> seen;
    while (canonical.next(a)) {
        CHECK(a[0] == 0);
        int max_used = 0;
        for (int digit : a) {
            CHECK(digit <= max_used + 1);
            max_used = std::max(max_used, digit);
        }
        seen.push_back(a);
    }
    // Partitions of 4 items into <= 3 unordered parts: 14.
    CHECK(seen.size() == 14);
    CHECK(std::is_sorted(seen.begin(), seen.end()));

    PartitionEnumerator empty(0, 3, true);
    CHECK(empty.next(a));
    CHECK(a.empty());
    CHECK_FALSE(empty.next(a));
}

TEST_CASE("MMS of the nine-good instance", "[shares]") {
    Instance inst = paper_goods_instance();
    auto [mms_r, witness_r] = compute_mms(inst, 0);
    CHECK(mms_r == Rational(12));
    auto [mms_u, witness_u] = compute_mms(inst, 2);
    CHECK(mms_u == Rational(11));
    // Witness soundness: the min bundle value equals the returned share.
    Rational lo = bundle_value(inst, 0, witness_r.bundles[0]);
    for (const auto& b : witness_r.bundles)
        lo = std::min(lo, bundle_value(inst, 0, b));
    CHECK(lo == mms_r);
}

TEST_CASE("three items of equal value split one per bundle", "[shares]") {
    Instance inst(Polarity::Goods, {{5, 5, 5}, {5, 5, 5}, {5, 5, 5}});
    auto [mms, witness] = compute_mms(inst, 0);
    CHECK(mms == Rational(5));
    CHECK(witness.bundles == std::vector<Bundle>{{0}, {1}, {2}});

    Instance chores = negate(inst);
    auto [mmS, w] = compute_mmS(chores, 1);
    CHECK(mmS == Rational(5));
}

TEST_CASE("mmS of the nine-chore instance", "[shares]") {
    Instance inst = paper_chores_instance();
    CHECK(compute_mmS(inst, 0).first == Rational(18));
    CHECK(compute_mmS(inst, 1).first == Rational(18));
}

TEST_CASE("proportional shares of the printed instances", "[shares]") {
    CHECK(compute_ps(paper_goods_instance(), 2) == Rational(12));
    CHECK(compute_ps(paper_chores_instance(), 2) == Rational(18));
    Instance zeros(Polarity::Goods, {{0, 0}, {0, 0}, {0, 0}});
    CHECK(compute_ps(zeros, 0) == Rational(0));
}

TEST_CASE("polarity preconditions and budgets are enforced", "[shares]") {
    Instance goods = paper_goods_instance();
    CHECK_THROWS_AS(compute_mmS(goods, 0), ArgumentError);
    CHECK_THROWS_AS(compute_mms(negate(goods), 0), ArgumentError);
    CHECK_THROWS_AS(compute_mms(goods, 0, 8), ResourceError);
    CHECK_THROWS_AS(compute_mms(goods, 5), ArgumentError);
}

TEST_CASE("profile of the nine-good instance", "[shares]") {
    Instance inst = paper_goods_instance();
    ShareProfile profile = compute_profile(inst);
    CHECK(profile.agents[0].mms == Rational(12));
    CHECK(profile.agents[1].mms == Rational(12));
    CHECK(profile.agents[2].mms == Rational(11));
    CHECK(profile.agents[2].ps == Rational(12));
}

TEST_CASE("identical valuations share one witness value", "[shares]") {
    std::vector<Rational> row{9, 4, 4, 1, 7, 2, 3};
    Instance inst(Polarity::Goods, {row, row, row});
    ShareProfile profile = compute_profile(inst);
    for (int i = 1; i < 3; ++i) {
        CHECK(profile.agents[i].mms == profile.agents[0].mms);
        CHECK(profile.agents[i].witness == profile.agents[0].witness);
    }
}

TEST_CASE("pruned search equals the unpruned 3^m oracle", "[shares]") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 40; ++trial) {
        int m = 1 + static_cast<int>(rng() % 8);
        Instance inst = random_instance(rng, Polarity::Goods, 3, m, 20);
        int agent = static_cast<int>(rng() % 3);
        auto [mms, witness] = compute_mms(inst, agent);
        CHECK(mms == brute_force_share(inst, agent, true));
        Rational lo = bundle_value(inst, agent, witness.bundles[0]);
        for (const auto& b : witness.bundles)
            lo = std::min(lo, bundle_value(inst, agent, b));
        CHECK(lo == mms);

        Instance chores = negate(inst);
        auto [mmS, w] = compute_mmS(chores, agent);
        CHECK(mmS == brute_force_share(chores, agent, false));
        Rational hi = bundle_value(chores, agent, w.bundles[0]);
        for (const auto& b : w.bundles)
            hi = std::max(hi, bundle_value(chores, agent, b));
        CHECK(hi == mmS);
    }
}

TEST_CASE("share ordering MMS <= PS <= mmS holds exactly", "[shares]") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 60; ++trial) {
        int m = 1 + static_cast<int>(rng() % 8);
        Polarity polarity = rng() % 2 ? Polarity::Goods : Polarity::Chores;
        Instance inst = random_instance(rng, polarity, 3, m, 25);
        ShareProfile profile = compute_profile(inst);
        for (const auto& s : profile.agents) {
            CHECK(s.mms <= s.ps);
            CHECK(s.ps <= s.mmS);
        }
    }
}

TEST_CASE("minimax value is independent of the polarity-flag path", "[shares]") {
    std::mt19937_64 rng(5151);
    for (int trial = 0; trial < 20; ++trial) {
        Instance chores = random_instance(rng, Polarity::Chores, 3, 7, 15);
        Instance double_flip = negate(negate(chores));
        for (int agent = 0; agent < 3; ++agent)
            CHECK(compute_mmS(chores, agent).first == compute_mmS(double_flip, agent).first);
    }
}

TEST_CASE("witness ties break to the lexicographically smallest vector", "[shares]") {
    // Both {a,d|b|c}-style splits reach MMS 5; the canonical smallest is
    // (0,1,2,0): item order pins item 0 to part 0 and prefers low labels.
    Instance inst(Polarity::Goods, {{3, 5, 5, 2}, {3, 5, 5, 2}, {3, 5, 5, 2}});
    auto [mms, witness] = compute_mms(inst, 0);
    CHECK(mms == Rational(5));
    CHECK(witness.bundles == std::vector<Bundle>{{0, 3}, {1}, {2}});
}
