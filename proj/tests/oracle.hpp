#pragma once

// Independent, from-definition reference implementations used only by the
// tests. Nothing here shares code paths with the library's enumerators.

#include "oritatami/core.hpp"
#include "oritatami/ruledesign.hpp"
#include "oritatami/satreduce.hpp"

#include <deque>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using namespace oritatami;

int naive_energy(const Conformation& c, const AttractionRule& rule);

// Every direction word of length k, filtered for self-avoidance.
std::vector<Conformation> naive_elongations(const Conformation& c, const std::vector<BeadType>& next,
                                            std::size_t k);

// D^t({seed}) for t = 0..steps, straight from the set formulas.
std::vector<std::set<Conformation>> frontiers(const OritatamiSystem& sys, const Conformation& seed,
                                              Dynamics d, std::size_t steps);

struct RandomSystem {
    OritatamiSystem sys;
    Conformation seed;
};

Conformation random_walk(std::mt19937& rng, std::size_t length, int types);

RandomSystem random_system(std::mt19937& rng, int max_types, int max_delay, std::size_t max_primary,
                           std::size_t max_seed);

// Rejection-samples random_system until both dynamics keep every frontier
// within max_frontier members, so the exhaustive recursion stays cheap.
RandomSystem random_tractable_system(std::mt19937& rng, int max_types, int max_delay,
                                     std::size_t max_primary, std::size_t max_seed,
                                     std::size_t max_frontier = 300);

// Rule check straight from the frontier recursion above.
bool naive_verify(const RuleDesignInstance& inst, const AttractionRule& rule);

// Small instance over primary 1..n and seed type 0. Half the time the targets
// are folds of a random rule (so often feasible), otherwise random walks.
RuleDesignInstance random_instance(std::mt19937& rng, std::size_t n, int delay, std::size_t scenarios,
                                   Dynamics d);

// The fixed corpus of small instances used to compare the two rule solvers:
// every target of every listed shape family plus seeded random instances.
// All have at most five bead types.
std::vector<RuleDesignInstance> small_instance_corpus();

// Every 3-CNF with 1..max_vars variables and 1..max_clauses clauses, one
// representative per class under variable renaming and polarity flips.
std::vector<Cnf3> small_cnf_corpus(int max_vars, std::size_t max_clauses);

// Tag system rewriting on a deque of letters, one state per time step
// (word, pointer); halted when the last word is empty.
struct TagRun {
    std::vector<std::string> words;
    std::vector<std::size_t> pointers;
    bool halted = false;
};

TagRun tag_words(const std::vector<std::string>& productions, const std::string& w0, std::size_t max_steps);

} // namespace oracle
