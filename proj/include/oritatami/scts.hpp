#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace oritatami {

// Binary words are strings over '0' and '1'.
using Word = std::string;

// Skipping cyclic tag system.
struct Scts {
    std::vector<Word> productions;

    std::size_t size() const { return productions.size(); }
    std::size_t max_length() const;
    // Throws std::invalid_argument when empty or a word has a non-binary letter.
    void validate() const;
};

// "e,100,1,0" with e (or an empty field) for the empty word.
Scts parse_productions(const std::string& text);
std::string format_productions(const Scts& sys);
Word parse_word(const std::string& text);
// The empty word displays as ε.
std::string display_word(const Word& w);

struct SctsState {
    Word word;
    std::size_t pointer = 0;

    friend bool operator==(const SctsState&, const SctsState&) = default;
};

struct SctsHalt {
    std::size_t output = 0;

    friend bool operator==(const SctsHalt&, const SctsHalt&) = default;
};

std::variant<SctsState, SctsHalt> scts_step(const SctsState& s, const Scts& sys);

class SctsStepLimit : public std::runtime_error {
public:
    explicit SctsStepLimit(std::size_t steps)
        : std::runtime_error("no halt within " + std::to_string(steps) + " steps"), steps_(steps)
    {}
    std::size_t steps() const { return steps_; }

private:
    std::size_t steps_;
};

struct SctsTrace {
    // states[t] is (w^t, q^t); the last state has the empty word.
    std::vector<SctsState> states;
    std::size_t output = 0;

    std::size_t halt_step() const { return states.size() - 1; }
    // (w^t, p_{q^t}) for every t.
    std::vector<std::pair<Word, Word>> pairs(const Scts& sys) const;
};

// Throws SctsStepLimit if w^max_steps is still non-empty.
SctsTrace scts_run(const Scts& sys, const Word& w0, std::size_t max_steps);

// Letter substitution carrying a run of the original system onto a run of the
// normalized one: pointer q maps to factor * q.
struct LetterEncoding {
    Word zero = "0";
    Word one = "1";
    std::size_t factor = 1;

    Word encode(const Word& w) const;
    LetterEncoding then(const LetterEncoding& next) const;
};

struct NormalizedScts {
    Scts system;
    LetterEncoding encoding;
};

class NormalizationUnvalidated : public std::runtime_error {
public:
    explicit NormalizationUnvalidated(const std::string& what) : std::runtime_error(what) {}
};

struct NormalizationCheck {
    // Every input word up to this length is tried.
    std::size_t max_input_length = 8;
    // Steps of the original system per input.
    std::size_t horizon = 200;
};

// 0 -> 00, 1 -> 100, 2n productions: p'_{2j} empty, p'_{2j+1} = enc(p_{j+1 mod n}).
NormalizedScts double_productions(const Scts& sys);

// Steps both systems in lockstep from every sampled input and throws
// NormalizationUnvalidated at the first state that does not project.
void validate_normalization(const Scts& original, const NormalizedScts& normalized,
                            const NormalizationCheck& check = {});

// Identity when n = 0 mod 4, otherwise doubling once or twice; the result
// is validated before it is returned.
NormalizedScts normalize_mod4(const Scts& sys, const NormalizationCheck& check = {});

enum class BlockEventKind { UprightRead0, UprightRead1, MirroredCopyAppend, RotatedCopyRewind, LineFeed, Halt };

std::string to_string(BlockEventKind k);

// Grid letters: B is a bump (0), F is flat (1).
struct BlockEvent {
    BlockEventKind kind = BlockEventKind::Halt;
    // Leading production of the block.
    std::size_t production = 0;
    // Row read by a forward swipe, row written by a copy.
    std::size_t row = 0;
    // Letters copied, in B/F.
    std::string letters;
    // Production letters appended, in B/F.
    std::string appended;

    friend bool operator==(const BlockEvent&, const BlockEvent&) = default;
};

// start is the tape column of the first letter.
struct GridRow {
    std::size_t start = 0;
    std::string letters;

    friend bool operator==(const GridRow&, const GridRow&) = default;
};

struct BlockRun {
    std::vector<BlockEvent> events;
    std::vector<GridRow> grid;
    std::size_t output = 0;
    std::size_t swipes = 0;
};

std::string to_letters(const Word& w);
Word from_letters(const std::string& letters);

// Reads the word off the grid rather than stepping the tag system. Rows
// with no letters are never written. Throws std::invalid_argument unless
// n = 0 mod 4 and SctsStepLimit after max_swipes swipes without halting.
BlockRun block_automaton_run(const Scts& sys, const Word& w0, std::size_t max_swipes);

class BadParameters : public std::invalid_argument {
public:
    explicit BadParameters(const std::string& what) : std::invalid_argument(what) {}
};

struct GeometryCheck {
    std::string name;
    bool holds = false;
};

// Lengths in beads of the modules of one production module.
struct TuringGeometry {
    std::int64_t n = 0;
    std::int64_t L = 0;
    std::int64_t w = 0;
    std::int64_t h = 0;
    std::int64_t A = 0;
    std::int64_t B = 0;
    std::int64_t C = 0;
    std::int64_t D = 0;
    // E[k] for k = 0..L.
    std::vector<std::int64_t> E;
    std::int64_t F = 0;
    std::int64_t G = 0;
    std::vector<GeometryCheck> report;

    bool consistent() const;
};

TuringGeometry turing_geometry(std::int64_t n, std::int64_t L);

struct Color {
    int level = 0;
    int phase = 0;

    friend bool operator==(const Color&, const Color&) = default;
};

// (floor(log3(i + offset)) mod 4, (i + offset) mod 12); i + offset >= 1.
Color coloring(std::int64_t i, std::int64_t offset = 0);
int floor_log3(std::int64_t x);

struct BudgetPart {
    std::string what;
    int count = 1;
    int beads = 0;

    int total() const { return count * beads; }
};

struct ModuleBudget {
    char module = 'A';
    std::vector<BudgetPart> parts;
    // Parts described in the construction but left out of its stated count.
    std::vector<BudgetPart> unaccounted;

    int total() const;
};

struct BeadBudget {
    std::vector<ModuleBudget> modules;

    int of(char module) const;
    int total() const;
};

// Throws BadParameters when the geometry breaks a congruence the periodic
// patterns rely on.
BeadBudget bead_budget(const TuringGeometry& g);

} // namespace oritatami
