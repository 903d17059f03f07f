#pragma once

#include "oritatami/lattice.hpp"

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace oritatami {

// Bead types are small non-negative integers. Names, when any, live in the
// file layer.
using BeadType = int;

// A symmetric attraction relation over bead types. Pairs are stored
// unordered (first <= second); self pairs are allowed.
class AttractionRule {
public:
    using Pair = std::pair<BeadType, BeadType>;

    AttractionRule() = default;
    AttractionRule(std::initializer_list<Pair> pairs);

    static Pair normalize(BeadType a, BeadType b) { return a <= b ? Pair{a, b} : Pair{b, a}; }

    void add(BeadType a, BeadType b);
    void remove(BeadType a, BeadType b);
    bool attracts(BeadType a, BeadType b) const;

    // Sorted, duplicate free.
    const std::vector<Pair>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }

    // True iff every pair of this rule is in other.
    bool subset_of(const AttractionRule& other) const;
    // True iff some pair of the rule involves type t.
    bool involves(BeadType t) const;

    friend bool operator==(const AttractionRule&, const AttractionRule&) = default;

private:
    std::vector<Pair> pairs_;
};

// A self-avoiding labelled path on the lattice.
struct Conformation {
    std::vector<Point> points;
    std::vector<BeadType> labels;

    std::size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }

    // Builds and validates: equal lengths, adjacency, self-avoidance.
    // Throws NonPathError or std::invalid_argument.
    static Conformation make(std::vector<Point> points, std::vector<BeadType> labels);

    friend auto operator<=>(const Conformation&, const Conformation&) = default;
    friend bool operator==(const Conformation&, const Conformation&) = default;
};

using BondList = std::vector<std::pair<std::size_t, std::size_t>>;

// Index pairs (i, j), i < j - 1, with adjacent positions and attracting
// labels. Indices are 0-based positions in the conformation.
BondList bonds(const Conformation& c, const AttractionRule& rule);

// Negated bond count.
int energy(const Conformation& c, const AttractionRule& rule);

// Prefix of length max(|c| - k, floor), never longer than c.
Conformation truncate(const Conformation& c, std::size_t k, std::size_t floor);

Conformation apply_symmetry(const LatticeSymmetry& s, const Conformation& c);

// Visits every self-avoiding extension of c by the first k beads of next.
// The callback receives the new points (k of them) and the energy change
// contributed by the new beads (bonds they form, as a non-positive number).
using ElongationVisitor = std::function<void(std::span<const Point>, int)>;
void for_each_elongation(const Conformation& c, std::span<const BeadType> next, std::size_t k,
                         const AttractionRule& rule, const ElongationVisitor& visit);

// All elongations of c by the first k beads of next, sorted. k = 0 gives {c}.
std::vector<Conformation> elongations(const Conformation& c, std::span<const BeadType> next,
                                      std::size_t k);

enum class Dynamics { Oblivious, Hasty };

const char* to_string(Dynamics d);

// Primary structure, rule and delay. The primary structure is finite here;
// periodic structures are expanded by the file layer.
struct OritatamiSystem {
    std::vector<BeadType> primary;
    AttractionRule rule;
    int delay = 1;

    // Throws std::invalid_argument on delay < 1.
    void validate() const;
};

} // namespace oritatami
