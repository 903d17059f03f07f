#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "oritatami/ruledesign.hpp"

#include <random>

using namespace oritatami;

namespace {

constexpr BeadType a = 7, m = 8, h = 9;

// Head h at (1,0) after m at (0,0); a at (0,1) touches exactly one free
// neighbour of the head, (1,1).
RuleDesignInstance corner_instance()
{
    RuleDesignInstance inst;
    inst.primary = distinct_primary(2);
    inst.delay = 1;
    inst.scenarios.push_back({Conformation::make({{0, 1}, {0, 0}, {1, 0}}, {a, m, h}), {{1, 1}}});
    return inst;
}

RuleDesignInstance lone_seed_instance()
{
    RuleDesignInstance inst;
    inst.primary = distinct_primary(2);
    inst.delay = 1;
    inst.scenarios.push_back({Conformation::make({{0, 0}}, {0}), {{1, 0}}});
    return inst;
}

} // namespace

TEST_CASE("instance validation")
{
    auto inst = corner_instance();
    CHECK_NOTHROW(inst.validate());
    CHECK(inst.target_length() == 1);
    CHECK(inst.universe() == std::vector<BeadType>{1, 2, a, m, h});

    auto overlap = inst;
    overlap.scenarios[0].target = {{0, 0}};
    CHECK_THROWS(overlap.validate());
    auto gap = inst;
    gap.scenarios[0].target = {{3, 3}};
    CHECK_THROWS_AS(gap.validate(), NonPathError);
    auto short_target = inst;
    short_target.scenarios[0].target.clear();
    CHECK_THROWS_AS(short_target.validate(), std::invalid_argument);
    auto no_delay = inst;
    no_delay.delay = 0;
    CHECK_THROWS_AS(no_delay.validate(), std::invalid_argument);
}

TEST_CASE("six equal minima cannot be made deterministic")
{
    const auto inst = lone_seed_instance();
    CHECK_FALSE(verify_rule(inst, {}));
    CHECK_FALSE(feasible_layer(PartialRule{1, {0, 1, 2}, {}}, inst));
    CHECK_FALSE(design_rule_fpt(inst).has_value());
    CHECK_FALSE(design_rule_bruteforce(inst).has_value());
}

TEST_CASE("one attracting seed bead pins the first bead")
{
    const auto inst = corner_instance();
    CHECK_FALSE(verify_rule(inst, {}));
    CHECK(verify_rule(inst, {{1, a}}));
    CHECK(feasible_layer(PartialRule{1, {1, 2, a, m}, {{1, a}}}, inst));
    // m touches (1,1) and (0,-1): a tie.
    CHECK_FALSE(feasible_layer(PartialRule{1, {1, 2, a, m}, {{1, m}}}, inst));
    CHECK(rule_failure(inst, {{1, m}}).value().find("not deterministic") != std::string::npos);

    DesignStats stats;
    const auto rule = design_rule_fpt(inst, {}, &stats);
    REQUIRE(rule.has_value());
    CHECK(*rule == AttractionRule{{1, a}});
    CHECK(stats.candidate_pairs == 2);
    const auto brute = design_rule_bruteforce(inst);
    REQUIRE(brute.has_value());
    CHECK(verify_rule(inst, *brute));
}

TEST_CASE("environment beads")
{
    // Target runs straight away from a one-bead seed: nothing placed is near.
    RuleDesignInstance far;
    far.primary = distinct_primary(4);
    far.delay = 1;
    far.scenarios.push_back({Conformation::make({{0, 0}}, {0}), {{1, 0}, {2, 0}, {3, 0}}});
    CHECK(environment_beads(far, 1).empty());
    CHECK(environment_beads(far, 2).empty());
    CHECK(environment_beads(far, 3).empty());

    const auto inst = corner_instance();
    CHECK(environment_beads(inst, 1) == std::set<BeadType>{a, m});
    CHECK(layer_support(inst, 1) == std::set<BeadType>{1, 2, a, m});
    CHECK_THROWS_AS(environment_beads(inst, 2), std::out_of_range);

    // Union over scenarios.
    std::mt19937 rng(5);
    for (int rep = 0; rep < 100; ++rep) {
        auto one = oracle::random_instance(rng, 5, 1 + rep % 2, 1, Dynamics::Oblivious);
        auto more = one;
        auto extra = oracle::random_instance(rng, 5, one.delay, 2, Dynamics::Oblivious);
        more.scenarios.insert(more.scenarios.end(), extra.scenarios.begin(), extra.scenarios.end());
        for (std::size_t i = 1; i <= one.target_length(); ++i) {
            const auto small = environment_beads(one, i);
            const auto big = environment_beads(more, i);
            CHECK(std::includes(big.begin(), big.end(), small.begin(), small.end()));
            CHECK_NOTHROW(layer_support(more, i));
        }
    }
}

TEST_CASE("compatibility of partial rules")
{
    PartialRule r{1, {1, 2, 7}, {{2, 7}}};
    PartialRule t{2, {2, 3, 7}, {{2, 7}, {3, 7}}};
    CHECK(compatible(r, t));
    CHECK(compatible(t, r));
    CHECK(compatible(r, r));
    PartialRule u{2, {2, 3, 7}, {{3, 7}}};
    CHECK_FALSE(compatible(r, u));
    CHECK_FALSE(compatible(u, r));
    // Pairs outside the common support do not matter.
    PartialRule v{2, {2, 3, 7}, {{2, 7}}};
    PartialRule w{1, {1, 2, 7}, {{2, 7}, {1, 2}}};
    CHECK(compatible(w, v));

    PartialRule bad{1, {1, 2}, {{1, 9}}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("verify_rule agrees with the frontier recursion")
{
    std::mt19937 rng(11);
    int accepted = 0;
    for (int rep = 0; rep < 400; ++rep) {
        const int delay = 1 + rep % 3;
        const auto d = rep % 2 ? Dynamics::Hasty : Dynamics::Oblivious;
        const auto inst = oracle::random_instance(rng, static_cast<std::size_t>(delay) + 1 + rep % 3, delay,
                                                  1 + rep % 3, d);
        AttractionRule rule;
        std::bernoulli_distribution coin(0.4);
        for (BeadType x : inst.universe())
            for (BeadType y : inst.universe())
                if (x <= y && coin(rng))
                    rule.add(x, y);
        const bool v = verify_rule(inst, rule);
        CHECK(v == oracle::naive_verify(inst, rule));
        accepted += v;
    }
    CHECK(accepted > 0);
}

TEST_CASE("layered search and brute force agree on small instances")
{
    std::mt19937 rng(3);
    int feasible = 0;
    for (int rep = 0; rep < 150; ++rep) {
        const int delay = 1 + rep % 2;
        const auto d = rep % 4 < 2 ? Dynamics::Oblivious : Dynamics::Hasty;
        const auto inst = oracle::random_instance(rng, static_cast<std::size_t>(delay) + 1 + rep % 2, delay,
                                                  1 + rep % 3, d);
        const auto fpt = design_rule_fpt(inst);
        const auto brute = design_rule_bruteforce(inst);
        CHECK(fpt.has_value() == brute.has_value());
        if (fpt) {
            ++feasible;
            CHECK(oracle::naive_verify(inst, *fpt));
        }
        if (brute)
            CHECK(oracle::naive_verify(inst, *brute));
    }
    CHECK(feasible > 10);
}

TEST_CASE("feasible layers along an accepted path")
{
    std::mt19937 rng(8);
    for (int rep = 0; rep < 60; ++rep) {
        const auto inst = oracle::random_instance(rng, 5, 1 + rep % 2, 2, rep % 3 ? Dynamics::Oblivious : Dynamics::Hasty);
        const auto rule = design_rule_fpt(inst);
        if (!rule)
            continue;
        std::vector<Frontier> fs;
        for (const auto& s : inst.scenarios)
            fs.push_back(Frontier{{s.seed}, 0});
        for (std::size_t layer = 1; layer <= inst.target_length(); ++layer) {
            auto check = feasible_layer(inst, *rule, layer, fs);
            CHECK(check.feasible);
            if (inst.dynamics == Dynamics::Oblivious) {
                const auto pinned = feasible_layer(inst, *rule, layer, pinned_frontiers(inst, layer));
                CHECK(pinned.feasible);
                CHECK(pinned.frontiers == check.frontiers);
            }
            fs = std::move(check.frontiers);
        }
    }
}

TEST_CASE("sequence no longer than the delay needs no rule")
{
    RuleDesignInstance inst;
    inst.primary = distinct_primary(2);
    inst.delay = 2;
    inst.scenarios.push_back({Conformation::make({{0, 0}}, {0}), {}});
    const auto rule = design_rule_fpt(inst);
    REQUIRE(rule.has_value());
    CHECK(rule->empty());
    CHECK(verify_rule(inst, {}));
}

TEST_CASE("resource limits")
{
    const auto inst = corner_instance();
    DesignOptions tight;
    tight.max_nodes = 1;
    CHECK_THROWS_AS(design_rule_fpt(inst, tight), DesignResourceLimit);
    try {
        design_rule_fpt(inst, tight);
    } catch (const DesignResourceLimit& e) {
        CHECK(e.layer() == 1);
    }
    DesignOptions narrow;
    narrow.max_frontier = 1;
    CHECK_THROWS_AS(design_rule_fpt(lone_seed_instance(), narrow), DesignResourceLimit);

    RuleDesignInstance wide = lone_seed_instance();
    for (BeadType t = 10; t < 16; ++t)
        wide.scenarios.push_back({Conformation::make({{0, 0}}, {t}), {{1, 0}}});
    CHECK_THROWS_AS(design_rule_bruteforce(wide), OracleTooLarge);
}
