#pragma once

#include "oritatami/ruledesign.hpp"

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oritatami {

struct Literal {
    int var = 0;
    bool negated = false;

    friend auto operator<=>(const Literal&, const Literal&) = default;
};

// A 3-CNF formula. Shorter clauses are padded by repeating a literal.
struct Cnf3 {
    int num_vars = 0;
    std::vector<std::array<Literal, 3>> clauses;

    // Throws std::invalid_argument on a literal outside 0..num_vars-1.
    void validate() const;
    bool satisfied_by(const std::vector<bool>& assignment) const;
    // Exhaustive search; only for small formulas.
    std::optional<std::vector<bool>> brute_force_solve() const;
};

class DimacsError : public std::runtime_error {
public:
    DimacsError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Reads "p cnf V C" and zero-terminated clauses of one to three literals.
Cnf3 parse_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const Cnf3& f);

enum class SeedRole {
    Filler,
    // Clause literals, in clause order.
    Literal0,
    Literal1,
    Literal2,
    // Variable gadget literals.
    Positive,
    Negative,
    // Bead that the first produced bead must bind in the variable gadget.
    Anchor,
    // Bead that the last target bead binds when the delay exceeds one.
    Tail,
};

// One seed with a role per bead and the target of beads 1..delay.
struct Gadget {
    std::vector<Point> seed;
    std::vector<SeedRole> roles;
    std::vector<Point> target;
};

struct GadgetGeometry {
    int delay = 1;
    Gadget clause;
    Gadget variable;
};

// The geometry used by reduce_3sat: the delay-one gadgets, extended for a
// larger delay by a straight target line towards an extra seed bead.
GadgetGeometry shipped_geometry(int delay);

// Bead type numbering of a reduced instance: primary 1..2*delay, then
// filler, anchor, tail, and the literals x0, ~x0, x1, ~x1, ...
struct ReductionTypes {
    int delay = 1;

    BeadType filler() const { return 2 * delay + 1; }
    BeadType anchor() const { return 2 * delay + 2; }
    BeadType tail() const { return 2 * delay + 3; }
    BeadType literal(Literal l) const { return 2 * delay + 4 + 2 * l.var + (l.negated ? 1 : 0); }
    std::string name(BeadType t) const;
};

// One scenario per clause followed by one per variable.
RuleDesignInstance reduce_3sat(const Cnf3& f, int delay, const GadgetGeometry& g,
                               Dynamics d = Dynamics::Oblivious);
RuleDesignInstance reduce_3sat(const Cnf3& f, int delay, Dynamics d = Dynamics::Oblivious);

// The rule a satisfying assignment induces: the structural pairs plus bead 1
// with every true literal.
AttractionRule canonical_rule(const Cnf3& f, int delay, const std::vector<bool>& assignment);

// x_i is true iff the first produced bead attracts literal x_i.
std::vector<bool> decode_assignment(const AttractionRule& rule, const Cnf3& f, int delay);

struct SoundnessReport {
    bool sound = true;
    std::size_t rules_checked = 0;
    std::vector<std::string> failures;
};

// Over every rule on the pairs that involve a produced bead: a correct clause
// fold implies a clause literal attracts bead 1, and a correct variable fold
// implies the two literals do not both attract it. Over the structural pairs
// plus any set of bead-1 literal pairs: the clause folds correctly iff the
// set meets the clause, the variable gadget iff it is not both literals.
SoundnessReport check_gadget_soundness(const GadgetGeometry& g, Dynamics d);
bool gadget_soundness(const GadgetGeometry& g, int delay);

} // namespace oritatami
