#pragma once

#include "oritatami/core.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oritatami {

// The set of partial conformations at time t. Members are sorted and
// distinct, and all extend the same seed by t beads.
struct Frontier {
    std::vector<Conformation> members;
    std::size_t time = 0;

    bool empty() const { return members.empty(); }
    std::size_t size() const { return members.size(); }

    friend bool operator==(const Frontier&, const Frontier&) = default;
};

// Raised when a frontier grows past the configured cap.
class ResourceLimitError : public std::runtime_error {
public:
    ResourceLimitError(std::size_t size, std::size_t limit)
        : std::runtime_error("frontier of " + std::to_string(size) + " conformations exceeds limit "
                             + std::to_string(limit)),
          size_(size), limit_(limit)
    {}
    std::size_t size() const { return size_; }
    std::size_t limit() const { return limit_; }

private:
    std::size_t size_;
    std::size_t limit_;
};

// ORITATAMI_MAX_FRONTIER if set to a positive integer, else 10^6.
std::size_t default_max_frontier();

// Sorts and deduplicates in place.
void normalize(Frontier& f);

// One oblivious step: each member is cut back by delta - 1 beads (never into
// the seed) and re-extended by one more bead than was cut, keeping the
// energy-minimal extensions.
Frontier step_oblivious(const Frontier& f, const OritatamiSystem& sys, std::size_t seed_len,
                        std::size_t max_frontier = default_max_frontier());

// One hasty step: every one-bead extension of every member, grouped by the
// prefix of length |member| + 1 - delta (never shorter than the seed),
// keeping the energy-minimal ones in each group.
Frontier step_hasty(const Frontier& f, const OritatamiSystem& sys, std::size_t seed_len,
                    std::size_t max_frontier = default_max_frontier());

Frontier step(Dynamics d, const Frontier& f, const OritatamiSystem& sys, std::size_t seed_len,
              std::size_t max_frontier = default_max_frontier());

enum class RunStatus { Completed, Trapped, StepLimit };

const char* to_string(RunStatus s);

struct RunOptions {
    Dynamics dynamics = Dynamics::Oblivious;
    std::size_t max_steps = 1'000'000;
    bool keep_trace = true;
    std::size_t max_frontier = default_max_frontier();
};

struct RunOutcome {
    RunStatus status = RunStatus::Completed;
    // Number of steps performed. For Trapped this is the time of the empty
    // frontier.
    std::size_t time = 0;
    // First primary bead (1-based) whose position was not unique at the time
    // it became final. Iteration continues past nondeterminism.
    std::optional<std::size_t> nondeterministic_bead;
    // Frontiers at times 0..time when keep_trace is set; otherwise only the
    // last one.
    std::vector<Frontier> trace;
    // Primary bead (1-based) -> position, for beads that were final and unique.
    std::map<std::size_t, Point> final_positions;

    bool deterministic() const { return !nondeterministic_bead.has_value(); }
    const Frontier& last() const { return trace.back(); }
    std::string describe() const;
};

// Runs the system from seed. Bead i of the primary structure becomes final
// at time i - 1 + delay; beads that never reach that time because the
// sequence ends are judged on the last frontier.
RunOutcome run(const OritatamiSystem& sys, const Conformation& seed, const RunOptions& options);

// None when every bead examined within the horizon is deterministic.
std::optional<std::size_t> check_determinism(const OritatamiSystem& sys, const Conformation& seed,
                                             Dynamics d, std::size_t horizon);

} // namespace oritatami
