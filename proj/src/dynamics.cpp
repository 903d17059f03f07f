#include "oritatami/dynamics.hpp"

#include <algorithm>
#include <climits>
#include <cstdlib>
#include <set>
#include <sstream>

namespace oritatami {

std::size_t default_max_frontier()
{
    if (const char* env = std::getenv("ORITATAMI_MAX_FRONTIER")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return 1'000'000;
}

void normalize(Frontier& f)
{
    std::sort(f.members.begin(), f.members.end());
    f.members.erase(std::unique(f.members.begin(), f.members.end()), f.members.end());
}

namespace {

void require_remaining(const Frontier& f, const OritatamiSystem& sys, std::size_t seed_len)
{
    for (const auto& c : f.members)
        if (c.size() < seed_len || c.size() - seed_len >= sys.primary.size())
            throw std::invalid_argument("no untranscribed bead remains for this frontier");
}

void check_limit(std::size_t size, std::size_t limit)
{
    if (size > limit)
        throw ResourceLimitError(size, limit);
}

} // namespace

Frontier step_oblivious(const Frontier& f, const OritatamiSystem& sys, std::size_t seed_len,
                        std::size_t max_frontier)
{
    sys.validate();
    require_remaining(f, sys, seed_len);
    const auto delay = static_cast<std::size_t>(sys.delay);

    // Members sharing a cut prefix produce the same argmin set.
    std::set<Conformation> prefixes;
    for (const auto& c : f.members) {
        const std::size_t cut = std::min(delay - 1, c.size() - seed_len);
        prefixes.insert(truncate(c, cut, seed_len));
    }

    Frontier out;
    out.time = f.time + 1;
    for (const auto& prefix : prefixes) {
        const std::size_t placed = prefix.size() - seed_len;
        const std::size_t window = f.members.front().size() + 1 - prefix.size();
        std::span<const BeadType> next(sys.primary.data() + placed, window);

        int best = INT_MAX;
        std::vector<std::vector<Point>> argmin;
        for_each_elongation(prefix, next, window, sys.rule, [&](std::span<const Point> pts, int delta) {
            if (delta < best) {
                best = delta;
                argmin.clear();
            }
            if (delta == best)
                argmin.emplace_back(pts.begin(), pts.end());
        });
        for (auto& pts : argmin) {
            Conformation c = prefix;
            c.points.insert(c.points.end(), pts.begin(), pts.end());
            c.labels.insert(c.labels.end(), next.begin(), next.end());
            out.members.push_back(std::move(c));
        }
        check_limit(out.members.size(), max_frontier);
    }
    normalize(out);
    return out;
}

Frontier step_hasty(const Frontier& f, const OritatamiSystem& sys, std::size_t seed_len,
                    std::size_t max_frontier)
{
    sys.validate();
    require_remaining(f, sys, seed_len);
    const auto delay = static_cast<std::size_t>(sys.delay);

    struct Group {
        int best = INT_MAX;
        std::vector<Conformation> members;
    };
    std::map<std::vector<Point>, Group> groups;

    for (const auto& c : f.members) {
        const std::size_t key_len = std::max(c.size() + 1 > delay ? c.size() + 1 - delay : 0, seed_len);
        std::vector<Point> key(c.points.begin(), c.points.begin() + static_cast<std::ptrdiff_t>(key_len));
        Group& g = groups[std::move(key)];

        const int base = energy(c, sys.rule);
        const BeadType label = sys.primary[c.size() - seed_len];
        for_each_elongation(c, std::span<const BeadType>(&label, 1), 1, sys.rule,
                            [&](std::span<const Point> pts, int delta) {
                                const int e = base + delta;
                                if (e < g.best) {
                                    g.best = e;
                                    g.members.clear();
                                }
                                if (e == g.best) {
                                    Conformation x = c;
                                    x.points.push_back(pts[0]);
                                    x.labels.push_back(label);
                                    g.members.push_back(std::move(x));
                                }
                            });
    }

    Frontier out;
    out.time = f.time + 1;
    for (auto& [key, g] : groups) {
        for (auto& c : g.members)
            out.members.push_back(std::move(c));
        check_limit(out.members.size(), max_frontier);
    }
    normalize(out);
    return out;
}

Frontier step(Dynamics d, const Frontier& f, const OritatamiSystem& sys, std::size_t seed_len,
              std::size_t max_frontier)
{
    return d == Dynamics::Oblivious ? step_oblivious(f, sys, seed_len, max_frontier)
                                    : step_hasty(f, sys, seed_len, max_frontier);
}

const char* to_string(RunStatus s)
{
    switch (s) {
    case RunStatus::Completed:
        return "completed";
    case RunStatus::Trapped:
        return "trapped";
    case RunStatus::StepLimit:
        return "step-limit";
    }
    return "?";
}

std::string RunOutcome::describe() const
{
    std::ostringstream os;
    os << to_string(status) << " at t=" << time;
    if (nondeterministic_bead)
        os << ", nondeterministic at bead " << *nondeterministic_bead;
    else
        os << ", deterministic";
    return os.str();
}

namespace {

// Records bead's position when unique across the frontier.
void judge_bead(RunOutcome& out, const Frontier& f, std::size_t seed_len, std::size_t bead)
{
    const std::size_t index = seed_len + bead - 1;
    const Point p = f.members.front().points[index];
    const bool unique = std::all_of(f.members.begin(), f.members.end(),
                                    [&](const Conformation& c) { return c.points[index] == p; });
    if (unique)
        out.final_positions.emplace(bead, p);
    else if (!out.nondeterministic_bead)
        out.nondeterministic_bead = bead;
}

} // namespace

RunOutcome run(const OritatamiSystem& sys, const Conformation& seed, const RunOptions& options)
{
    sys.validate();
    if (seed.empty())
        throw std::invalid_argument("seed must not be empty");
    const std::size_t seed_len = seed.size();
    const auto delay = static_cast<std::size_t>(sys.delay);
    const std::size_t length = sys.primary.size();

    RunOutcome out;
    Frontier current{{seed}, 0};
    out.trace.push_back(current);

    std::size_t t = 0;
    while (t < length) {
        if (t >= options.max_steps) {
            out.status = RunStatus::StepLimit;
            out.time = t;
            return out;
        }
        current = step(options.dynamics, current, sys, seed_len, options.max_frontier);
        ++t;
        if (options.keep_trace)
            out.trace.push_back(current);
        else
            out.trace.back() = current;
        if (current.empty()) {
            out.status = RunStatus::Trapped;
            out.time = t;
            return out;
        }
        if (t >= delay)
            judge_bead(out, current, seed_len, t + 1 - delay);
    }

    out.status = RunStatus::Completed;
    out.time = t;
    // Beads whose finalisation time lies past the end of the sequence.
    const std::size_t first_pending = length + 2 > delay ? length + 2 - delay : 1;
    for (std::size_t bead = std::max<std::size_t>(first_pending, 1); bead <= length; ++bead)
        judge_bead(out, current, seed_len, bead);
    return out;
}

std::optional<std::size_t> check_determinism(const OritatamiSystem& sys, const Conformation& seed,
                                             Dynamics d, std::size_t horizon)
{
    RunOptions options;
    options.dynamics = d;
    options.max_steps = horizon;
    options.keep_trace = false;
    return run(sys, seed, options).nondeterministic_bead;
}

} // namespace oritatami
