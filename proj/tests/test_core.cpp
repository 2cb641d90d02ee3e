#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mms3/instance.hpp"
#include "mms3/io.hpp"
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

} // namespace

TEST_CASE("instance validation", "[core]") {
    CHECK_THROWS_AS(Instance(Polarity::Goods, {{Rational(1)}, {Rational(1), Rational(2)}}),
                    ArgumentError);
    CHECK_THROWS_AS(Instance(Polarity::Goods, {}), ArgumentError);
    Instance inst(Polarity::Goods, {{1, 2}, {3, 4}, {5, 6}});
    CHECK(inst.agent_name(0) == "R");
    CHECK(inst.agent_name(2) == "U");
    Instance pair(Polarity::Goods, {{1}, {2}});
    CHECK(pair.agent_name(0) == "1");
    CHECK_THROWS_AS(inst.value(0, 9), ArgumentError);
}

TEST_CASE("bundle_value on the nine-good instance", "[core]") {
    Instance inst = paper_goods_instance();
    // Agent R, bundle {e1,e4,e6,e7} is worth 15.
    CHECK(bundle_value(inst, 0, Bundle{0, 3, 5, 6}) == Rational(15));
    CHECK(bundle_value(inst, 1, Bundle{}) == Rational(0));
    std::mt19937_64 rng(7);
    Instance rnd = random_instance(rng, Polarity::Goods, 3, 8, 20);
    for (int j = 0; j < rnd.items(); ++j)
        CHECK(bundle_value(rnd, 1, Bundle{j}) == rnd.value(1, j));
}

TEST_CASE("bundle_value is additive over disjoint bundles", "[core]") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        Instance inst = random_instance(rng, Polarity::Goods, 3, 9, 30);
        Bundle s, t, both;
        for (int j = 0; j < inst.items(); ++j) {
            switch (rng() % 3) {
            case 0: s.push_back(j); both.push_back(j); break;
            case 1: t.push_back(j); both.push_back(j); break;
            default: break;
            }
        }
        int agent = static_cast<int>(rng() % 3);
        CHECK(bundle_value(inst, agent, both) ==
              bundle_value(inst, agent, s) + bundle_value(inst, agent, t));
        s.clear();
        t.clear();
        both.clear();
    }
}

TEST_CASE("negate flips polarity, keeps magnitudes, and is an involution", "[core]") {
    Instance chores = paper_chores_instance();
    Instance flipped = negate(chores);
    CHECK(flipped.polarity() == Polarity::Goods);
    CHECK(flipped.values() == chores.values());
    Instance back = negate(flipped);
    CHECK(back.polarity() == chores.polarity());
    CHECK(back.values() == chores.values());

    Instance zeros(Polarity::Goods, {{0, 0}, {0, 0}, {0, 0}});
    CHECK(negate(zeros).polarity() == Polarity::Chores);
    CHECK(negate(zeros).values() == zeros.values());
}

TEST_CASE("allocation partition validation", "[core]") {
    Allocation ok(std::vector<Bundle>{{0, 2}, {1}, {}});
    CHECK(ok.assignment(3) == std::vector<int>{0, 1, 0});
    Allocation overlap(std::vector<Bundle>{{0, 1}, {1}, {2}});
    CHECK_THROWS_AS(overlap.assignment(3), ArgumentError);
    Allocation missing(std::vector<Bundle>{{0}, {1}, {}});
    CHECK_THROWS_AS(missing.assignment(3), ArgumentError);
    std::vector<int> digits{2, 0, 1, 2};
    CHECK(Allocation::from_assignment(digits, 3).assignment(4) == digits);
}

TEST_CASE("rho_of the printed MMS allocation is exactly 1", "[core]") {
    Instance inst = paper_goods_instance();
    ShareProfile profile = compute_profile(inst);
    Allocation alloc(std::vector<Bundle>{{0, 3, 5, 6}, {1, 4, 7}, {2, 8}});
    CHECK(rho_of(inst, alloc, profile) == Rational(1));
}

TEST_CASE("rho_of an agent's own witness under identical valuations is 1", "[core]") {
    std::vector<Rational> row{5, 7, 3, 2, 6, 1};
    Instance inst(Polarity::Goods, {row, row, row});
    ShareProfile profile = compute_profile(inst);
    CHECK(rho_of(inst, profile.agents[0].witness, profile) == Rational(1));
}

TEST_CASE("exhaustively best allocation dominates all others under rho_of", "[core]") {
    std::mt19937_64 rng(99);
    Instance inst = random_instance(rng, Polarity::Goods, 3, 5, 12);
    ShareProfile profile = compute_profile(inst);
    std::optional<Rational> best;
    std::vector<int> assignment;
    PartitionEnumerator all(inst.items(), 3, /*symmetry_break=*/false);
    std::vector<Rational> rhos;
    while (all.next(assignment)) {
        Rational rho = rho_of(inst, Allocation::from_assignment(assignment, 3), profile);
        rhos.push_back(rho);
        if (!best || rho > *best)
            best = rho;
    }
    for (const Rational& rho : rhos)
        CHECK(rho <= *best);
}

TEST_CASE("goods agent with zero MMS gets ratio 1", "[core]") {
    // Agent 2 values nothing: her MMS is 0 and rho treats her as satisfied.
    Instance inst(Polarity::Goods, {{4, 5, 6}, {6, 5, 4}, {0, 0, 0}});
    ShareProfile profile = compute_profile(inst);
    CHECK(profile.agents[2].mms == Rational(0));
    Allocation alloc(std::vector<Bundle>{{0, 1}, {2}, {}});
    CHECK(rho_of(inst, alloc, profile) >= Rational(0));
}

TEST_CASE("instance JSON accepts integers, fractions and mixed values", "[core]") {
    const std::string text = R"({
        "polarity": "goods",
        "agents": ["R", "C", "U"],
        "values": [[0, "22/3", "7+1/3"], [1, 2, 3], ["4/2", 0, "1/3"]]
    })";
    Instance inst = parse_instance_text(text);
    CHECK(inst.value(0, 1) == Rational(22, 3));
    CHECK(inst.value(0, 2) == Rational(22, 3));
    CHECK(inst.value(2, 0) == Rational(2));
    CHECK(inst.agent_name(1) == "C");

    Instance reparsed = parse_instance_text(instance_to_json(inst).dump());
    CHECK(reparsed.values() == inst.values());
    CHECK(reparsed.polarity() == inst.polarity());
}

TEST_CASE("instance JSON parse errors carry position and reasons", "[core]") {
    CHECK_THROWS_AS(parse_instance_text("{\"polarity\": \"goods\",\n  \"values\": [[1,]]}"),
                    ParseError);
    try {
        parse_instance_text("{\"polarity\": \"goods\",\n  \"values\": [[1,]]}");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_instance_text("[1,2]"), ParseError);
    CHECK_THROWS_AS(parse_instance_text("{\"polarity\":\"warm\",\"values\":[[1]]}"), ParseError);
    CHECK_THROWS_AS(parse_instance_text("{\"polarity\":\"goods\",\"values\":[[1],[1,2]]}"),
                    ParseError);
    CHECK_THROWS_AS(parse_instance_text("{\"polarity\":\"goods\",\"values\":[[-1]]}"), ParseError);
}
