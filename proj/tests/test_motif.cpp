#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "oritatami/motif.hpp"

using namespace oritatami;

TEST_CASE("glider path is a periodic self-avoiding strip")
{
    const auto path = glider_path(120, {3, -1});
    REQUIRE(path.size() == 120);
    CHECK(path[0] == Point{3, -1});
    CHECK(is_self_avoiding(path));
    for (std::size_t i = glider_period; i < path.size(); ++i)
        CHECK(path[i] - path[i - glider_period] == glider_shift);
    // The shift runs along the lattice y axis; the strip spans three x values.
    std::set<int> cols;
    for (const auto& p : path)
        cols.insert(p.x);
    CHECK(cols.size() == 3);
    CHECK(glider_path(0).empty());
}

TEST_CASE("glider instances")
{
    const auto inst = glider_instance(4);
    inst.validate();
    CHECK(inst.primary.size() == 24);
    CHECK(inst.scenarios[0].target.size() == 21);
    CHECK(inst.universe() == std::vector<BeadType>{1, 2, 3, 4, 5, 6});
    CHECK_THROWS_AS(glider_instance(0), std::invalid_argument);
}

TEST_CASE("designed glider rules fold deterministically, checked by the frontier recursion")
{
    for (int delay : {2, 3})
        for (auto d : {Dynamics::Oblivious, Dynamics::Hasty}) {
            CAPTURE(delay);
            const auto inst = glider_instance(3, delay, d);
            const auto rule = design_rule_fpt(inst);
            if (!rule)
                continue;
            CHECK(oracle::naive_verify(inst, *rule));
        }
    const auto inst = glider_instance(5);
    const auto rule = design_rule_fpt(inst);
    REQUIRE(rule);
    CHECK(oracle::naive_verify(inst, *rule));
    CHECK(bond_density(inst.target_conformation(0), *rule, glider_period) == doctest::Approx(1.0 / 3.0).epsilon(0.1));
}

TEST_CASE("bond density")
{
    const auto c = Conformation::make({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {1, 2, 3, 4});
    CHECK(bond_density(c, {{1, 3}}, 2) == doctest::Approx(0.5));
    CHECK(bond_density(c, {{1, 3}, {1, 4}}, 2) == doctest::Approx(1.0));
    CHECK(bond_density(c, {}, 2) == 0.0);
    CHECK(bond_density(c, {{1, 3}}, 4) == 0.0);
}
