#include "oritatami/core.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace oritatami {

AttractionRule::AttractionRule(std::initializer_list<Pair> pairs)
{
    for (const auto& [a, b] : pairs)
        add(a, b);
}

void AttractionRule::add(BeadType a, BeadType b)
{
    const Pair p = normalize(a, b);
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
    if (it == pairs_.end() || *it != p)
        pairs_.insert(it, p);
}

void AttractionRule::remove(BeadType a, BeadType b)
{
    const Pair p = normalize(a, b);
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), p);
    if (it != pairs_.end() && *it == p)
        pairs_.erase(it);
}

bool AttractionRule::attracts(BeadType a, BeadType b) const
{
    return std::binary_search(pairs_.begin(), pairs_.end(), normalize(a, b));
}

bool AttractionRule::subset_of(const AttractionRule& other) const
{
    return std::includes(other.pairs_.begin(), other.pairs_.end(), pairs_.begin(), pairs_.end());
}

bool AttractionRule::involves(BeadType t) const
{
    return std::any_of(pairs_.begin(), pairs_.end(),
                       [t](const Pair& p) { return p.first == t || p.second == t; });
}

Conformation Conformation::make(std::vector<Point> points, std::vector<BeadType> labels)
{
    if (points.size() != labels.size())
        throw std::invalid_argument("conformation has " + std::to_string(points.size())
                                    + " points but " + std::to_string(labels.size()) + " labels");
    if (!is_self_avoiding(points))
        throw std::invalid_argument("conformation is not self-avoiding");
    return Conformation{std::move(points), std::move(labels)};
}

BondList bonds(const Conformation& c, const AttractionRule& rule)
{
    std::unordered_map<Point, std::size_t> at;
    at.reserve(c.size() * 2);
    for (std::size_t i = 0; i < c.size(); ++i)
        at.emplace(c.points[i], i);

    BondList out;
    for (std::size_t j = 0; j < c.size(); ++j) {
        for (const auto& q : neighbors(c.points[j])) {
            auto it = at.find(q);
            if (it == at.end())
                continue;
            const std::size_t i = it->second;
            if (i + 1 < j && rule.attracts(c.labels[i], c.labels[j]))
                out.emplace_back(i, j);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int energy(const Conformation& c, const AttractionRule& rule)
{
    return -static_cast<int>(bonds(c, rule).size());
}

Conformation truncate(const Conformation& c, std::size_t k, std::size_t floor)
{
    std::size_t len = c.size() > k ? c.size() - k : 0;
    len = std::min(std::max(len, floor), c.size());
    Conformation out;
    out.points.assign(c.points.begin(), c.points.begin() + static_cast<std::ptrdiff_t>(len));
    out.labels.assign(c.labels.begin(), c.labels.begin() + static_cast<std::ptrdiff_t>(len));
    return out;
}

Conformation apply_symmetry(const LatticeSymmetry& s, const Conformation& c)
{
    Conformation out;
    out.labels = c.labels;
    out.points.reserve(c.size());
    for (const auto& p : c.points)
        out.points.push_back(apply_symmetry(s, p));
    return out;
}

namespace {

struct ElongationSearch {
    const Conformation& base;
    std::span<const BeadType> next;
    std::size_t k;
    const AttractionRule& rule;
    const ElongationVisitor& visit;

    std::unordered_map<Point, std::size_t> occupied;
    std::vector<Point> placed;

    void run()
    {
        occupied.reserve((base.size() + k) * 2);
        for (std::size_t i = 0; i < base.size(); ++i)
            occupied.emplace(base.points[i], i);
        placed.reserve(k);
        if (k == 0) {
            visit(std::span<const Point>{}, 0);
            return;
        }
        if (base.empty())
            throw std::invalid_argument("cannot elongate an empty conformation");
        extend(base.points.back(), 0);
    }

    BeadType label_at(std::size_t index) const
    {
        return index < base.size() ? base.labels[index] : next[index - base.size()];
    }

    void extend(Point head, int delta)
    {
        if (placed.size() == k) {
            visit(placed, delta);
            return;
        }
        const std::size_t index = base.size() + placed.size();
        const BeadType label = next[placed.size()];
        for (const auto& q : neighbors(head)) {
            if (occupied.contains(q))
                continue;
            int gained = 0;
            for (const auto& r : neighbors(q)) {
                auto it = occupied.find(r);
                if (it != occupied.end() && it->second + 1 < index
                    && rule.attracts(label_at(it->second), label))
                    --gained;
            }
            occupied.emplace(q, index);
            placed.push_back(q);
            extend(q, delta + gained);
            placed.pop_back();
            occupied.erase(q);
        }
    }
};

} // namespace

void for_each_elongation(const Conformation& c, std::span<const BeadType> next, std::size_t k,
                         const AttractionRule& rule, const ElongationVisitor& visit)
{
    if (k > next.size())
        throw std::invalid_argument("elongation by more beads than available");
    ElongationSearch search{c, next, k, rule, visit, {}, {}};
    search.run();
}

std::vector<Conformation> elongations(const Conformation& c, std::span<const BeadType> next,
                                      std::size_t k)
{
    std::vector<Conformation> out;
    const AttractionRule none;
    for_each_elongation(c, next, k, none, [&](std::span<const Point> pts, int) {
        Conformation e = c;
        e.points.insert(e.points.end(), pts.begin(), pts.end());
        e.labels.insert(e.labels.end(), next.begin(), next.begin() + static_cast<std::ptrdiff_t>(k));
        out.push_back(std::move(e));
    });
    std::sort(out.begin(), out.end());
    return out;
}

const char* to_string(Dynamics d)
{
    return d == Dynamics::Oblivious ? "oblivious" : "hasty";
}

void OritatamiSystem::validate() const
{
    if (delay < 1)
        throw std::invalid_argument("delay must be at least 1, got " + std::to_string(delay));
}

} // namespace oritatami
