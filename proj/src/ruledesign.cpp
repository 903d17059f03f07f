#include "oritatami/ruledesign.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_map>

namespace oritatami {

std::size_t RuleDesignInstance::target_length() const
{
    const auto d = static_cast<std::size_t>(std::max(delay, 0));
    return primary.size() > d ? primary.size() - d : 0;
}

Conformation RuleDesignInstance::target_conformation(std::size_t scenario) const
{
    const Scenario& s = scenarios.at(scenario);
    Conformation c = s.seed;
    c.points.insert(c.points.end(), s.target.begin(), s.target.end());
    c.labels.insert(c.labels.end(), primary.begin(),
                    primary.begin() + static_cast<std::ptrdiff_t>(s.target.size()));
    return c;
}

OritatamiSystem RuleDesignInstance::system(const AttractionRule& rule) const
{
    return OritatamiSystem{primary, rule, delay};
}

std::vector<BeadType> RuleDesignInstance::universe() const
{
    std::set<BeadType> types(primary.begin(), primary.end());
    for (const auto& s : scenarios)
        types.insert(s.seed.labels.begin(), s.seed.labels.end());
    return {types.begin(), types.end()};
}

void RuleDesignInstance::validate() const
{
    if (delay < 1)
        throw std::invalid_argument("delay must be at least 1, got " + std::to_string(delay));
    if (scenarios.empty())
        throw std::invalid_argument("instance has no scenario");
    const std::size_t len = target_length();
    for (std::size_t k = 0; k < scenarios.size(); ++k) {
        const Scenario& s = scenarios[k];
        const std::string where = "scenario " + std::to_string(k + 1) + ": ";
        if (s.seed.empty())
            throw std::invalid_argument(where + "empty seed");
        if (s.seed.points.size() != s.seed.labels.size())
            throw std::invalid_argument(where + "seed labels and points differ in number");
        if (s.target.size() != len)
            throw std::invalid_argument(where + "target has " + std::to_string(s.target.size())
                                        + " beads, expected " + std::to_string(len));
        const Conformation c = target_conformation(k);
        if (!is_self_avoiding(c.points))
            throw std::invalid_argument(where + "seed and target overlap");
    }
}

std::vector<BeadType> distinct_primary(std::size_t n)
{
    std::vector<BeadType> p(n);
    std::iota(p.begin(), p.end(), 1);
    return p;
}

void PartialRule::validate() const
{
    for (const auto& [a, b] : pairs.pairs())
        if (!support.contains(a) || !support.contains(b))
            throw std::invalid_argument("pair (" + std::to_string(a) + "," + std::to_string(b)
                                        + ") leaves the support of layer " + std::to_string(layer));
}

std::set<BeadType> environment_beads(const RuleDesignInstance& inst, std::size_t i)
{
    const std::size_t len = inst.target_length();
    if (i < 1 || i > len)
        throw std::out_of_range("layer " + std::to_string(i) + " outside 1.." + std::to_string(len));
    const auto d = static_cast<std::size_t>(inst.delay);

    std::set<BeadType> out;
    for (std::size_t k = 0; k < inst.scenarios.size(); ++k) {
        const Conformation c = inst.target_conformation(k);
        const std::size_t s = inst.scenarios[k].seed.size();
        std::unordered_map<Point, std::size_t> placed;
        for (std::size_t idx = 0; idx < s + i - 1; ++idx)
            placed.emplace(c.points[idx], idx);
        for (std::size_t j = i; j <= std::min(i + d, len); ++j) {
            const std::size_t self = s + j - 1;
            for (const auto& q : neighbors(c.points[self])) {
                auto it = placed.find(q);
                if (it != placed.end() && it->second + 1 != self)
                    out.insert(c.labels[it->second]);
            }
        }
    }
    return out;
}

std::set<BeadType> layer_support(const RuleDesignInstance& inst, std::size_t i)
{
    std::set<BeadType> support = environment_beads(inst, i);
    const auto d = static_cast<std::size_t>(inst.delay);
    for (std::size_t j = i; j <= std::min(i + d, inst.primary.size()); ++j)
        support.insert(inst.primary[j - 1]);
    const std::size_t bound = 3 * inst.scenarios.size() * (d + 1) * (d + 1);
    if (support.size() > bound)
        throw std::logic_error("layer support of " + std::to_string(support.size())
                               + " types exceeds the bound " + std::to_string(bound));
    return support;
}

bool compatible(const PartialRule& r, const PartialRule& t)
{
    auto common = [&](const AttractionRule::Pair& p) {
        return r.support.contains(p.first) && r.support.contains(p.second)
               && t.support.contains(p.first) && t.support.contains(p.second);
    };
    for (const auto& p : r.pairs.pairs())
        if (common(p) && !t.pairs.attracts(p.first, p.second))
            return false;
    for (const auto& p : t.pairs.pairs())
        if (common(p) && !r.pairs.attracts(p.first, p.second))
            return false;
    return true;
}

std::vector<Frontier> pinned_frontiers(const RuleDesignInstance& inst, std::size_t i)
{
    if (i < 1 || i > inst.target_length())
        throw std::out_of_range("layer " + std::to_string(i) + " outside 1.."
                                + std::to_string(inst.target_length()));
    std::vector<Frontier> out;
    for (std::size_t k = 0; k < inst.scenarios.size(); ++k) {
        const Conformation c = inst.target_conformation(k);
        out.push_back(Frontier{{truncate(c, inst.target_length() - (i - 1), 0)}, i - 1});
    }
    return out;
}

namespace {

// Checks a frontier produced by step `layer` for scenario k.
bool layer_ok(const RuleDesignInstance& inst, std::size_t k, std::size_t layer, const Frontier& f)
{
    if (f.empty())
        return false;
    const Scenario& s = inst.scenarios[k];
    const auto d = static_cast<std::size_t>(inst.delay);
    if (layer >= d) {
        const std::size_t bead = layer + 1 - d;
        const Point want = s.target[bead - 1];
        for (const auto& c : f.members)
            if (c.points[s.seed.size() + bead - 1] != want)
                return false;
    }
    if (layer == inst.target_length())
        return f.size() == 1 && f.members.front() == inst.target_conformation(k);
    return true;
}

} // namespace

LayerCheck feasible_layer(const RuleDesignInstance& inst, const AttractionRule& rule,
                          std::size_t layer, const std::vector<Frontier>& incoming,
                          std::size_t max_frontier)
{
    if (incoming.size() != inst.scenarios.size())
        throw std::invalid_argument("one incoming frontier per scenario is required");
    const OritatamiSystem sys = inst.system(rule);
    LayerCheck out;
    out.feasible = true;
    for (std::size_t k = 0; k < inst.scenarios.size(); ++k) {
        Frontier f = step(inst.dynamics, incoming[k], sys, inst.scenarios[k].seed.size(), max_frontier);
        out.feasible = out.feasible && layer_ok(inst, k, layer, f);
        out.frontiers.push_back(std::move(f));
    }
    return out;
}

bool feasible_layer(const PartialRule& r, const RuleDesignInstance& inst)
{
    r.validate();
    return feasible_layer(inst, r.pairs, r.layer, pinned_frontiers(inst, r.layer)).feasible;
}

std::optional<std::string> rule_failure(const RuleDesignInstance& inst, const AttractionRule& rule,
                                        std::size_t max_frontier)
{
    inst.validate();
    const OritatamiSystem sys = inst.system(rule);
    const std::size_t len = inst.target_length();
    const auto d = static_cast<std::size_t>(inst.delay);
    for (std::size_t k = 0; k < inst.scenarios.size(); ++k) {
        const Scenario& s = inst.scenarios[k];
        const std::string where = "scenario " + std::to_string(k + 1) + ": ";
        Frontier f{{s.seed}, 0};
        for (std::size_t t = 1; t <= len; ++t) {
            f = step(inst.dynamics, f, sys, s.seed.size(), max_frontier);
            if (f.empty())
                return where + "trapped at t=" + std::to_string(t);
            if (t < d)
                continue;
            const std::size_t bead = t + 1 - d;
            const std::size_t idx = s.seed.size() + bead - 1;
            const Point first = f.members.front().points[idx];
            for (const auto& c : f.members) {
                if (c.points[idx] != first)
                    return where + "bead " + std::to_string(bead) + " is not deterministic";
            }
            if (first != s.target[bead - 1])
                return where + "bead " + std::to_string(bead) + " lands at " + to_string(first)
                       + " instead of " + to_string(s.target[bead - 1]);
        }
        if (f.size() != 1)
            return where + std::to_string(f.size()) + " conformations at t=" + std::to_string(len);
        if (f.members.front() != inst.target_conformation(k))
            return where + "final conformation differs from the target";
    }
    return std::nullopt;
}

bool verify_rule(const RuleDesignInstance& inst, const AttractionRule& rule, std::size_t max_frontier)
{
    return !rule_failure(inst, rule, max_frontier);
}

namespace {

using Pair = AttractionRule::Pair;

class LayeredSearch {
public:
    LayeredSearch(const RuleDesignInstance& inst, const DesignOptions& options, DesignStats& stats)
        : inst_(inst), options_(options), stats_(stats), len_(inst.target_length()),
          delay_(static_cast<std::size_t>(inst.delay))
    {
        collect_pairs();
    }

    std::optional<AttractionRule> solve()
    {
        std::vector<int> fids;
        for (std::size_t k = 0; k < inst_.scenarios.size(); ++k)
            fids.push_back(intern(k, Frontier{{inst_.scenarios[k].seed}, 0}));
        if (!dfs(1, fids))
            return std::nullopt;
        AttractionRule rule;
        for (std::size_t p = 0; p < pairs_.size(); ++p)
            if (value_[p] == 1)
                rule.add(pairs_[p].first, pairs_[p].second);
        return rule;
    }

private:
    const RuleDesignInstance& inst_;
    const DesignOptions& options_;
    DesignStats& stats_;
    std::size_t len_;
    std::size_t delay_;

    std::vector<Pair> pairs_;
    std::vector<std::size_t> first_, last_;
    // Per layer: pairs first relevant there, and pairs still undecided-free
    // from an earlier layer.
    std::vector<std::vector<std::size_t>> fresh_, carried_;
    // relevant_[k][layer]: pair indices that can change scenario k's step.
    std::vector<std::vector<std::vector<std::size_t>>> relevant_;
    std::vector<signed char> value_;

    std::vector<std::map<std::vector<Conformation>, int>> ids_;
    std::vector<std::vector<Frontier>> storage_;

    struct StepKey {
        std::size_t layer;
        int fid;
        std::vector<signed char> values;
        auto operator<=>(const StepKey&) const = default;
    };
    std::vector<std::map<StepKey, int>> step_memo_;
    std::set<std::tuple<std::size_t, std::vector<signed char>, std::vector<int>>> dead_;

    // Window of layer T: beads max(1, T-delay+1)..T, the rest fixed at target.
    void collect_pairs()
    {
        const std::size_t nk = inst_.scenarios.size();
        std::map<Pair, std::size_t> index;
        std::vector<std::vector<std::set<std::size_t>>> rel(nk, std::vector<std::set<std::size_t>>(len_ + 1));
        auto note = [&](std::size_t k, std::size_t t, BeadType a, BeadType b) {
            const Pair p = AttractionRule::normalize(a, b);
            auto [it, added] = index.emplace(p, pairs_.size());
            if (added)
                pairs_.push_back(p);
            rel[k][t].insert(it->second);
        };

        for (std::size_t k = 0; k < nk; ++k) {
            const Conformation c = inst_.target_conformation(k);
            const std::size_t s = inst_.scenarios[k].seed.size();
            for (std::size_t t = 1; t <= len_; ++t) {
                const std::size_t first = t >= delay_ ? t + 1 - delay_ : 1;
                const std::size_t fixed = s + first - 1;
                const Point anchor = c.points[fixed - 1];
                for (std::size_t j = first; j <= t; ++j) {
                    const BeadType tj = inst_.primary[j - 1];
                    const int reach = static_cast<int>(j - first) + 2;
                    for (std::size_t q = 0; q < fixed; ++q)
                        if (q + 1 != s + j - 1 && lattice_distance(anchor, c.points[q]) <= reach)
                            note(k, t, tj, c.labels[q]);
                    for (std::size_t j2 = j + 2; j2 <= t; ++j2)
                        note(k, t, tj, inst_.primary[j2 - 1]);
                }
            }
        }

        // Sort pairs so that subset enumeration follows the natural order.
        std::vector<std::size_t> order(pairs_.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pairs_[a] < pairs_[b]; });
        std::vector<std::size_t> rank(pairs_.size());
        for (std::size_t r = 0; r < order.size(); ++r)
            rank[order[r]] = r;
        std::vector<Pair> sorted(pairs_.size());
        for (std::size_t p = 0; p < pairs_.size(); ++p)
            sorted[rank[p]] = pairs_[p];
        pairs_ = std::move(sorted);

        const std::size_t np = pairs_.size();
        stats_.candidate_pairs = np;
        first_.assign(np, len_ + 1);
        last_.assign(np, 0);
        relevant_.assign(nk, std::vector<std::vector<std::size_t>>(len_ + 1));
        for (std::size_t k = 0; k < nk; ++k)
            for (std::size_t t = 1; t <= len_; ++t) {
                for (std::size_t p : rel[k][t]) {
                    const std::size_t r = rank[p];
                    relevant_[k][t].push_back(r);
                    first_[r] = std::min(first_[r], t);
                    last_[r] = std::max(last_[r], t);
                }
                std::sort(relevant_[k][t].begin(), relevant_[k][t].end());
            }

        fresh_.assign(len_ + 2, {});
        carried_.assign(len_ + 2, {});
        for (std::size_t p = 0; p < np; ++p) {
            fresh_[first_[p]].push_back(p);
            for (std::size_t t = first_[p] + 1; t <= last_[p]; ++t)
                carried_[t].push_back(p);
        }
        value_.assign(np, -1);
        ids_.resize(nk);
        storage_.resize(nk);
        step_memo_.resize(nk);
    }

    int intern(std::size_t k, Frontier f)
    {
        auto [it, added] = ids_[k].emplace(f.members, static_cast<int>(storage_[k].size()));
        if (added)
            storage_[k].push_back(std::move(f));
        return it->second;
    }

    // Result frontier id of step `layer`, or -1 when infeasible.
    int advance(std::size_t k, std::size_t layer, int fid)
    {
        StepKey key{layer, fid, {}};
        AttractionRule rule;
        for (std::size_t p : relevant_[k][layer]) {
            key.values.push_back(value_[p]);
            if (value_[p] == 1)
                rule.add(pairs_[p].first, pairs_[p].second);
        }
        auto it = step_memo_[k].find(key);
        if (it != step_memo_[k].end())
            return it->second;

        ++stats_.step_evaluations;
        Frontier next;
        try {
            next = step(inst_.dynamics, storage_[k][static_cast<std::size_t>(fid)], inst_.system(rule),
                        inst_.scenarios[k].seed.size(), options_.max_frontier);
        } catch (const ResourceLimitError& e) {
            throw DesignResourceLimit(layer, e.what());
        }
        const int result = layer_ok(inst_, k, layer, next) ? intern(k, std::move(next)) : -1;
        step_memo_[k].emplace(std::move(key), result);
        return result;
    }

    bool dfs(std::size_t layer, const std::vector<int>& fids)
    {
        stats_.deepest_layer = std::max(stats_.deepest_layer, layer - 1);
        if (layer > len_)
            return true;

        std::vector<signed char> carried;
        for (std::size_t p : carried_[layer])
            carried.push_back(value_[p]);
        auto dead_key = std::make_tuple(layer, std::move(carried), fids);
        if (dead_.contains(dead_key))
            return false;

        const auto& fresh = fresh_[layer];
        if (fresh.size() > options_.max_new_pairs)
            throw DesignResourceLimit(layer, std::to_string(fresh.size()) + " new candidate pairs");
        const std::uint64_t subsets = std::uint64_t{1} << fresh.size();
        for (std::uint64_t mask = 0; mask < subsets; ++mask) {
            if (++stats_.nodes > options_.max_nodes)
                throw DesignResourceLimit(layer, "node budget exhausted");
            for (std::size_t b = 0; b < fresh.size(); ++b)
                value_[fresh[b]] = static_cast<signed char>((mask >> b) & 1);

            std::vector<int> next(fids.size());
            bool ok = true;
            for (std::size_t k = 0; k < fids.size() && ok; ++k) {
                next[k] = advance(k, layer, fids[k]);
                ok = next[k] >= 0;
            }
            if (ok && dfs(layer + 1, next))
                return true;
        }
        for (std::size_t p : fresh)
            value_[p] = -1;
        dead_.insert(std::move(dead_key));
        return false;
    }
};

} // namespace

std::optional<AttractionRule> design_rule_fpt(const RuleDesignInstance& inst, const DesignOptions& options,
                                              DesignStats* stats)
{
    inst.validate();
    DesignStats local;
    DesignStats& st = stats ? *stats : local;
    st = DesignStats{};
    LayeredSearch search(inst, options, st);
    auto rule = search.solve();
    if (rule && !verify_rule(inst, *rule, options.max_frontier))
        throw std::logic_error("layered search emitted a rule that fails verification");
    return rule;
}

std::optional<AttractionRule> design_rule_bruteforce(const RuleDesignInstance& inst, std::size_t max_frontier)
{
    inst.validate();
    const std::vector<BeadType> types = inst.universe();
    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < types.size(); ++a)
        for (std::size_t b = a; b < types.size(); ++b)
            pairs.emplace_back(types[a], types[b]);
    if (pairs.size() > 26)
        throw OracleTooLarge(pairs.size());

    const std::uint64_t subsets = std::uint64_t{1} << pairs.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        AttractionRule rule;
        for (std::size_t b = 0; b < pairs.size(); ++b)
            if ((mask >> b) & 1)
                rule.add(pairs[b].first, pairs[b].second);
        if (verify_rule(inst, rule, max_frontier))
            return rule;
    }
    return std::nullopt;
}

} // namespace oritatami
