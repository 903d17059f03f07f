#pragma once

#include "oritatami/core.hpp"
#include "oritatami/counter.hpp"
#include "oritatami/ruledesign.hpp"

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace oritatami {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A bead, or `repeat count { body }`.
struct SequenceItem {
    BeadType bead = 0;
    bool group = false;
    std::size_t count = 0;
    std::vector<SequenceItem> body;

    friend bool operator==(const SequenceItem&, const SequenceItem&) = default;
};

std::vector<BeadType> expand(const std::vector<SequenceItem>& sequence);

// Bead names in declaration order; a name's id is its index.
class BeadNames {
public:
    BeadNames() = default;
    explicit BeadNames(std::vector<std::string> names);

    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return names_.size(); }
    // Throws std::out_of_range for an unknown name or id.
    BeadType id(const std::string& name) const;
    const std::string& name(BeadType t) const;
    bool contains(const std::string& name) const { return ids_.count(name) != 0; }

    friend bool operator==(const BeadNames& a, const BeadNames& b) { return a.names_ == b.names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, BeadType> ids_;
};

// [beads] [sequence] [rule] [delay] [dynamics] [seed]
struct SystemFile {
    BeadNames beads;
    std::vector<SequenceItem> sequence;
    AttractionRule rule;
    int delay = 1;
    Dynamics dynamics = Dynamics::Oblivious;
    Conformation seed;

    OritatamiSystem system() const;

    friend bool operator==(const SystemFile&, const SystemFile&) = default;
};

SystemFile parse_system(std::istream& in);
void write_system(std::ostream& out, const SystemFile& f);

// [beads] [sequence] [delay] [dynamics], then [seed-i] and [target-i] for
// i = 1..k.
struct InstanceFile {
    BeadNames beads;
    std::vector<SequenceItem> sequence;
    RuleDesignInstance instance;

    friend bool operator==(const InstanceFile& a, const InstanceFile& b)
    {
        return a.beads == b.beads && a.sequence == b.sequence && a.instance.primary == b.instance.primary
               && a.instance.delay == b.instance.delay && a.instance.dynamics == b.instance.dynamics
               && a.instance.scenarios.size() == b.instance.scenarios.size()
               && std::equal(a.instance.scenarios.begin(), a.instance.scenarios.end(), b.instance.scenarios.begin(),
                             [](const Scenario& x, const Scenario& y) {
                                 return x.seed == y.seed && x.target == y.target;
                             });
    }
};

InstanceFile parse_instance(std::istream& in);
void write_instance(std::ostream& out, const InstanceFile& f);

// Names every id from 0 to the largest type the instance uses with namer,
// and spells the primary structure bead by bead.
InstanceFile make_instance_file(const RuleDesignInstance& inst, const std::function<std::string(BeadType)>& namer);

// One `a b` pair of bead names per line.
AttractionRule parse_rule(std::istream& in, const BeadNames& names);
void write_rule(std::ostream& out, const AttractionRule& rule, const BeadNames& names);

// [beads] [conformation] with `x y name` lines, and an optional [coding]
// with lines `start|bit0|bit1|silent names...` and `filler name`.
struct ConformationFile {
    BeadNames beads;
    Conformation conformation;
    RowCoding coding;
};

ConformationFile parse_conformation(std::istream& in);
void write_conformation(std::ostream& out, const ConformationFile& f);

// Names used by the default row coding: S0..S2, Z0..Z3, O0..O3, Q0..Q5, _.
ConformationFile counter_conformation_file(const Conformation& c, const RowCoding& coding = {});

} // namespace oritatami
