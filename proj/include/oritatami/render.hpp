#pragma once

#include "oritatami/core.hpp"

#include <functional>
#include <string>

namespace oritatami {

struct RenderStyle {
    double scale = 24.0;
    double radius = 7.0;
    double margin = 16.0;
    bool labels = true;
    // Beads before this index are drawn as seed.
    std::size_t seed_length = 0;
    // Bead names for labels; the type number when unset.
    std::function<std::string(BeadType)> name;
};

// Screen position of a lattice point, unit edges, y up.
struct ScreenPoint {
    double x = 0;
    double y = 0;
};

ScreenPoint screen_position(Point p);

// SVG 1.1: a polyline backbone, dashed bond lines and one circle per bead.
std::string render_svg(const Conformation& c, const AttractionRule& rule, const RenderStyle& style = {});

// Character grid: beads are o (seed beads are @), backbone links are - / \,
// bonds are not drawn.
std::string render_ascii(const Conformation& c, std::size_t seed_length = 0);

} // namespace oritatami
