#pragma once

#include "oritatami/ruledesign.hpp"

#include <cstddef>
#include <vector>

namespace oritatami {

// Glider: the direction word E NE SE SW W SE repeated. The path is a strip
// three columns wide that moves by glider_shift every period.
inline constexpr std::size_t glider_period = 6;
inline constexpr Point glider_shift{0, -2};

std::vector<Point> glider_path(std::size_t beads, Point origin = {0, 0});

// One period of the glider as seed (types 1..6), followed by `periods`
// periods of the primary structure 1..6 repeated, targeted along the path.
RuleDesignInstance glider_instance(std::size_t periods, int delay = 3, Dynamics d = Dynamics::Oblivious);

// Bonds with at least one bead past the seed, per bead past the seed.
double bond_density(const Conformation& c, const AttractionRule& rule, std::size_t seed_length);

} // namespace oritatami
