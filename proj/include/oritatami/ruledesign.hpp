#pragma once

#include "oritatami/dynamics.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace oritatami {

// One seed together with the target positions of primary beads 1..n-delay.
struct Scenario {
    Conformation seed;
    std::vector<Point> target;
};

struct RuleDesignInstance {
    // Usually 1..n; repeated types are accepted (periodic motifs).
    std::vector<BeadType> primary;
    int delay = 1;
    Dynamics dynamics = Dynamics::Oblivious;
    std::vector<Scenario> scenarios;

    // n - delay, or 0 when the sequence is not longer than the delay.
    std::size_t target_length() const;
    // Seed followed by the labelled target.
    Conformation target_conformation(std::size_t scenario) const;
    OritatamiSystem system(const AttractionRule& rule) const;
    // Every type used by the primary structure or a seed, sorted.
    std::vector<BeadType> universe() const;
    // Throws std::invalid_argument (or NonPathError) when malformed.
    void validate() const;
};

// Primary structure 1, 2, ..., n.
std::vector<BeadType> distinct_primary(std::size_t n);

// A relation on a support set of bead types, attached to a layer.
struct PartialRule {
    std::size_t layer = 1;
    std::set<BeadType> support;
    AttractionRule pairs;

    // Throws std::invalid_argument when a pair leaves the support.
    void validate() const;
};

// Types of already placed beads (seed, and primary beads before i at their
// targets) that sit next to the target of one of beads i..i+delay, excluding
// backbone neighbours. 1 <= i <= n - delay.
std::set<BeadType> environment_beads(const RuleDesignInstance& inst, std::size_t i);

// Support {types of beads i..i+delay} plus environment_beads, with its size
// bound checked.
std::set<BeadType> layer_support(const RuleDesignInstance& inst, std::size_t i);

// R and T agree on every pair whose two types are in both supports.
bool compatible(const PartialRule& r, const PartialRule& t);

// Frontiers just before layer i (time i-1) with every bead at its target.
// Exact for oblivious dynamics, which forget the unfixed window.
std::vector<Frontier> pinned_frontiers(const RuleDesignInstance& inst, std::size_t i);

struct LayerCheck {
    bool feasible = false;
    std::vector<Frontier> frontiers;
};

// Performs step `layer` from the given frontiers (one per scenario) under
// rule. Feasible when no frontier is empty, bead layer+1-delay (if any) is
// at its target in every member, and at the last layer each frontier is
// exactly the target.
LayerCheck feasible_layer(const RuleDesignInstance& inst, const AttractionRule& rule,
                          std::size_t layer, const std::vector<Frontier>& incoming,
                          std::size_t max_frontier = default_max_frontier());

// Same check from pinned frontiers.
bool feasible_layer(const PartialRule& r, const RuleDesignInstance& inst);

// Reason the rule fails, or nothing when every scenario folds
// deterministically into its target.
std::optional<std::string> rule_failure(const RuleDesignInstance& inst, const AttractionRule& rule,
                                        std::size_t max_frontier = default_max_frontier());
bool verify_rule(const RuleDesignInstance& inst, const AttractionRule& rule,
                 std::size_t max_frontier = default_max_frontier());

class DesignResourceLimit : public std::runtime_error {
public:
    DesignResourceLimit(std::size_t layer, const std::string& what)
        : std::runtime_error(what + " at layer " + std::to_string(layer)), layer_(layer)
    {}
    std::size_t layer() const { return layer_; }

private:
    std::size_t layer_;
};

class OracleTooLarge : public std::runtime_error {
public:
    explicit OracleTooLarge(std::size_t pairs)
        : std::runtime_error(std::to_string(pairs) + " candidate pairs exceed the brute-force limit of 26")
    {}
};

struct DesignOptions {
    std::size_t max_frontier = default_max_frontier();
    std::size_t max_nodes = 50'000'000;
    std::size_t max_new_pairs = 24;
};

struct DesignStats {
    std::size_t nodes = 0;
    std::size_t step_evaluations = 0;
    std::size_t deepest_layer = 0;
    std::size_t candidate_pairs = 0;
};

// Layered search over partial rules. Returns the rule of the first accepting
// path in (layer, subset) order, or nothing when the instance is infeasible.
std::optional<AttractionRule> design_rule_fpt(const RuleDesignInstance& inst,
                                              const DesignOptions& options = {},
                                              DesignStats* stats = nullptr);

// Tries every relation over universe() in subset order.
std::optional<AttractionRule> design_rule_bruteforce(const RuleDesignInstance& inst,
                                                     std::size_t max_frontier = default_max_frontier());

} // namespace oritatami
