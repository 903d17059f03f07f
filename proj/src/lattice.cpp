#include "oritatami/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <unordered_set>

namespace oritatami {

std::array<Point, 6> neighbors(Point p)
{
    std::array<Point, 6> out;
    for (std::size_t k = 0; k < kNeighborOffsets.size(); ++k)
        out[k] = p + kNeighborOffsets[k];
    return out;
}

bool adjacent(Point p, Point q)
{
    const Point d = q - p;
    for (const auto& o : kNeighborOffsets)
        if (o == d)
            return true;
    return false;
}

int lattice_distance(Point p, Point q)
{
    const int dx = q.x - p.x;
    const int dy = q.y - p.y;
    if ((dx >= 0 && dy >= 0) || (dx <= 0 && dy <= 0))
        return std::max(std::abs(dx), std::abs(dy));
    return std::abs(dx) + std::abs(dy);
}

bool is_self_avoiding(std::span<const Point> path)
{
    for (std::size_t i = 1; i < path.size(); ++i)
        if (!adjacent(path[i - 1], path[i]))
            throw NonPathError(i, "points " + to_string(path[i - 1]) + " and " + to_string(path[i])
                                      + " are not adjacent");

    std::unordered_set<Point> seen;
    seen.reserve(path.size() * 2);
    for (const auto& p : path)
        if (!seen.insert(p).second)
            return false;
    return true;
}

Point apply_symmetry(const LatticeSymmetry& s, Point p)
{
    Point q = p;
    switch (s.kind) {
    case SymmetryKind::Identity:
        break;
    case SymmetryKind::VerticalMirror:
        q = {p.y - p.x, p.y};
        break;
    case SymmetryKind::Rotate180:
        q = {-p.x, -p.y};
        break;
    }
    return q + s.offset;
}

std::string to_string(Point p)
{
    return "(" + std::to_string(p.x) + "," + std::to_string(p.y) + ")";
}

std::string to_string(SymmetryKind kind)
{
    switch (kind) {
    case SymmetryKind::Identity:
        return "identity";
    case SymmetryKind::VerticalMirror:
        return "vertical-mirror";
    case SymmetryKind::Rotate180:
        return "rotate-180";
    }
    return "?";
}

} // namespace oritatami
