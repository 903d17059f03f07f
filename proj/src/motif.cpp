#include "oritatami/motif.hpp"

#include <array>
#include <stdexcept>

namespace oritatami {

namespace {

constexpr std::array<Point, glider_period> glider_word{{{1, 0}, {1, 1}, {0, -1}, {-1, -1}, {-1, 0}, {0, -1}}};

} // namespace

std::vector<Point> glider_path(std::size_t beads, Point origin)
{
    std::vector<Point> out;
    if (beads == 0)
        return out;
    out.push_back(origin);
    for (std::size_t i = 1; i < beads; ++i)
        out.push_back(out.back() + glider_word[(i - 1) % glider_period]);
    return out;
}

RuleDesignInstance glider_instance(std::size_t periods, int delay, Dynamics d)
{
    if (periods == 0 || delay < 1)
        throw std::invalid_argument("glider needs at least one period and a positive delay");
    const std::size_t n = glider_period * periods;
    const auto path = glider_path(glider_period + n);
    RuleDesignInstance inst;
    inst.delay = delay;
    inst.dynamics = d;
    std::vector<BeadType> seed_types;
    for (std::size_t i = 0; i < glider_period; ++i)
        seed_types.push_back(static_cast<BeadType>(i + 1));
    for (std::size_t i = 0; i < n; ++i)
        inst.primary.push_back(seed_types[i % glider_period]);
    Scenario s{Conformation::make({path.begin(), path.begin() + glider_period}, seed_types), {}};
    s.target.assign(path.begin() + glider_period, path.begin() + glider_period + inst.target_length());
    inst.scenarios.push_back(std::move(s));
    return inst;
}

double bond_density(const Conformation& c, const AttractionRule& rule, std::size_t seed_length)
{
    if (c.size() <= seed_length)
        return 0.0;
    std::size_t count = 0;
    for (const auto& [i, j] : bonds(c, rule))
        if (std::max(i, j) >= seed_length)
            ++count;
    return static_cast<double>(count) / static_cast<double>(c.size() - seed_length);
}

} // namespace oritatami
