#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace oritatami {

// A vertex of the triangular lattice. Two points are adjacent iff their
// difference is one of the six offsets in kNeighborOffsets.
struct Point {
    int x = 0;
    int y = 0;

    friend constexpr auto operator<=>(const Point&, const Point&) = default;
    friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
};

inline constexpr std::array<Point, 6> kNeighborOffsets = {{
    {-1, 0}, {1, 0}, {0, 1}, {1, 1}, {-1, -1}, {0, -1},
}};

// Offsets in counter-clockwise order starting east; handy for renderers
// and for walking around a vertex.
inline constexpr std::array<Point, 6> kDirectionsCcw = {{
    {1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1},
}};

std::array<Point, 6> neighbors(Point p);

bool adjacent(Point p, Point q);

// Graph distance on the lattice.
int lattice_distance(Point p, Point q);

class NonPathError : public std::runtime_error {
public:
    NonPathError(std::size_t index, const std::string& what)
        : std::runtime_error(what), index_(index) {}
    // Index of the second point of the offending pair.
    std::size_t index() const { return index_; }

private:
    std::size_t index_;
};

// Throws NonPathError if two consecutive points are not adjacent.
bool is_self_avoiding(std::span<const Point> path);

enum class SymmetryKind { Identity, VerticalMirror, Rotate180 };

// An adjacency-preserving map of the lattice followed by a translation.
//
// VerticalMirror reflects across the vertical screen axis through the origin:
// with the screen embedding (x, y) -> (x - y/2, y*sqrt(3)/2) the map is
// (x, y) -> (y - x, y).
struct LatticeSymmetry {
    SymmetryKind kind = SymmetryKind::Identity;
    Point offset{};

    friend constexpr bool operator==(const LatticeSymmetry&, const LatticeSymmetry&) = default;
};

Point apply_symmetry(const LatticeSymmetry& s, Point p);

std::string to_string(Point p);
std::string to_string(SymmetryKind kind);

} // namespace oritatami

template <>
struct std::hash<oritatami::Point> {
    std::size_t operator()(const oritatami::Point& p) const noexcept
    {
        auto ux = static_cast<std::size_t>(static_cast<unsigned>(p.x));
        auto uy = static_cast<std::size_t>(static_cast<unsigned>(p.y));
        return (ux * 0x9E3779B97F4A7C15ull) ^ (uy + 0x7F4A7C15ull + (ux << 6) + (ux >> 2));
    }
};
