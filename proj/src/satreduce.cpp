#include "oritatami/satreduce.hpp"

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>

namespace oritatami {

void Cnf3::validate() const
{
    if (num_vars < 0)
        throw std::invalid_argument("negative variable count");
    for (std::size_t c = 0; c < clauses.size(); ++c)
        for (const auto& l : clauses[c])
            if (l.var < 0 || l.var >= num_vars)
                throw std::invalid_argument("clause " + std::to_string(c + 1) + " uses variable "
                                            + std::to_string(l.var) + " of " + std::to_string(num_vars));
}

bool Cnf3::satisfied_by(const std::vector<bool>& assignment) const
{
    for (const auto& clause : clauses) {
        bool any = false;
        for (const auto& l : clause)
            any = any || (assignment.at(static_cast<std::size_t>(l.var)) != l.negated);
        if (!any)
            return false;
    }
    return true;
}

std::optional<std::vector<bool>> Cnf3::brute_force_solve() const
{
    validate();
    if (num_vars > 24)
        throw std::invalid_argument("too many variables for exhaustive search");
    std::vector<bool> a(static_cast<std::size_t>(num_vars));
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << num_vars); ++mask) {
        for (int v = 0; v < num_vars; ++v)
            a[static_cast<std::size_t>(v)] = (mask >> v) & 1;
        if (satisfied_by(a))
            return a;
    }
    return std::nullopt;
}

Cnf3 parse_dimacs(std::istream& in)
{
    Cnf3 f;
    bool header = false;
    std::size_t declared = 0;
    std::size_t lineno = 0;
    std::vector<Literal> pending;
    std::string line;

    auto finish_clause = [&](std::size_t where) {
        if (pending.empty())
            throw DimacsError(where, "empty clause");
        if (pending.size() > 3)
            throw DimacsError(where, "clause with " + std::to_string(pending.size()) + " literals");
        std::array<Literal, 3> c{pending[0], pending[0], pending[0]};
        for (std::size_t i = 1; i < pending.size(); ++i)
            c[i] = pending[i];
        if (pending.size() == 2)
            c[2] = pending[1];
        f.clauses.push_back(c);
        pending.clear();
    };

    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok) || tok[0] == 'c')
            continue;
        if (tok == "%")
            break;
        if (tok == "p") {
            std::string kind;
            long long vars = -1, clauses = -1;
            if (header)
                throw DimacsError(lineno, "second problem line");
            if (!(ls >> kind >> vars >> clauses) || kind != "cnf" || vars < 0 || clauses < 0)
                throw DimacsError(lineno, "expected 'p cnf <variables> <clauses>'");
            header = true;
            f.num_vars = static_cast<int>(vars);
            declared = static_cast<std::size_t>(clauses);
            continue;
        }
        if (!header)
            throw DimacsError(lineno, "clause before the problem line");
        do {
            long long v = 0;
            std::istringstream ts(tok);
            if (!(ts >> v) || !ts.eof())
                throw DimacsError(lineno, "not an integer: '" + tok + "'");
            if (v == 0) {
                finish_clause(lineno);
                continue;
            }
            const long long var = v < 0 ? -v : v;
            if (var > f.num_vars)
                throw DimacsError(lineno, "variable " + std::to_string(var) + " exceeds the declared "
                                              + std::to_string(f.num_vars));
            pending.push_back(Literal{static_cast<int>(var - 1), v < 0});
        } while (ls >> tok);
    }
    if (!header)
        throw DimacsError(lineno, "missing problem line");
    if (!pending.empty())
        throw DimacsError(lineno, "last clause is not terminated by 0");
    if (f.clauses.size() != declared)
        throw DimacsError(lineno, "declared " + std::to_string(declared) + " clauses, found "
                                      + std::to_string(f.clauses.size()));
    return f;
}

void write_dimacs(std::ostream& out, const Cnf3& f)
{
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) {
        for (const auto& l : c)
            out << (l.negated ? -(l.var + 1) : l.var + 1) << ' ';
        out << "0\n";
    }
}

namespace {

using R = SeedRole;

// Shared frame: head at (0,1), bead 1 at (0,0), the line runs along +x.
Gadget base_clause()
{
    return {{{0, -1}, {-1, -1}, {-1, 0}, {-1, 1}, {0, 1}},
            {R::Literal0, R::Literal1, R::Literal2, R::Filler, R::Filler},
            {{0, 0}}};
}

// The trap (1,1) touches both literals; bead 1's target touches the two
// anchors.
Gadget base_variable()
{
    return {{{0, -1}, {-1, -1}, {-2, -1}, {-2, 0}, {-2, 1}, {-1, 2}, {0, 3}, {1, 3}, {2, 3}, {2, 2}, {1, 2}, {0, 1}},
            {R::Anchor, R::Anchor, R::Filler, R::Filler, R::Filler, R::Filler, R::Filler, R::Filler, R::Filler,
             R::Positive, R::Negative, R::Filler},
            {{0, 0}}};
}

// Prepends the tail bead at (delay,0) and a filler row along y = -1, and
// stretches the target into a straight line ending next to the tail.
Gadget extend(Gadget g, int delay)
{
    if (delay == 1)
        return g;
    std::vector<Point> seed{{delay, 0}};
    std::vector<SeedRole> roles{R::Tail};
    for (int x = delay - 1; x >= 1; --x) {
        seed.push_back({x, -1});
        roles.push_back(R::Filler);
    }
    seed.insert(seed.end(), g.seed.begin(), g.seed.end());
    roles.insert(roles.end(), g.roles.begin(), g.roles.end());
    g.seed = std::move(seed);
    g.roles = std::move(roles);
    g.target.clear();
    for (int x = 0; x < delay; ++x)
        g.target.push_back({x, 0});
    return g;
}

Conformation label_seed(const Gadget& g, const ReductionTypes& types, const std::array<Literal, 3>& clause,
                        int var)
{
    std::vector<BeadType> labels;
    for (auto role : g.roles) {
        switch (role) {
        case R::Filler:
            labels.push_back(types.filler());
            break;
        case R::Literal0:
        case R::Literal1:
        case R::Literal2:
            labels.push_back(types.literal(clause[static_cast<std::size_t>(role) - static_cast<std::size_t>(R::Literal0)]));
            break;
        case R::Positive:
            labels.push_back(types.literal({var, false}));
            break;
        case R::Negative:
            labels.push_back(types.literal({var, true}));
            break;
        case R::Anchor:
            labels.push_back(types.anchor());
            break;
        case R::Tail:
            labels.push_back(types.tail());
            break;
        }
    }
    return Conformation::make(g.seed, std::move(labels));
}

AttractionRule structural_rule(int delay)
{
    const ReductionTypes types{delay};
    AttractionRule rule{{1, types.anchor()}};
    if (delay > 1)
        rule.add(delay, types.tail());
    return rule;
}

RuleDesignInstance single(const Gadget& g, const Conformation& seed, int delay, Dynamics d)
{
    RuleDesignInstance inst;
    inst.primary = distinct_primary(2 * static_cast<std::size_t>(delay));
    inst.delay = delay;
    inst.dynamics = d;
    inst.scenarios.push_back({seed, g.target});
    return inst;
}

} // namespace

GadgetGeometry shipped_geometry(int delay)
{
    if (delay < 1)
        throw std::invalid_argument("delay must be at least 1");
    return {delay, extend(base_clause(), delay), extend(base_variable(), delay)};
}

std::string ReductionTypes::name(BeadType t) const
{
    if (t >= 1 && t <= 2 * delay)
        return "b" + std::to_string(t);
    if (t == filler())
        return "f";
    if (t == anchor())
        return "r";
    if (t == tail())
        return "e";
    if (t >= 2 * delay + 4) {
        const int k = t - (2 * delay + 4);
        return (k % 2 ? "~x" : "x") + std::to_string(k / 2);
    }
    return "t" + std::to_string(t);
}

RuleDesignInstance reduce_3sat(const Cnf3& f, int delay, const GadgetGeometry& g, Dynamics d)
{
    f.validate();
    if (delay < 1)
        throw std::invalid_argument("delay must be at least 1");
    if (g.delay != delay)
        throw std::invalid_argument("gadget geometry was built for another delay");
    const ReductionTypes types{delay};
    RuleDesignInstance inst;
    inst.primary = distinct_primary(2 * static_cast<std::size_t>(delay));
    inst.delay = delay;
    inst.dynamics = d;
    for (const auto& clause : f.clauses)
        inst.scenarios.push_back({label_seed(g.clause, types, clause, 0), g.clause.target});
    for (int v = 0; v < f.num_vars; ++v)
        inst.scenarios.push_back({label_seed(g.variable, types, {}, v), g.variable.target});
    inst.validate();
    return inst;
}

RuleDesignInstance reduce_3sat(const Cnf3& f, int delay, Dynamics d)
{
    return reduce_3sat(f, delay, shipped_geometry(delay), d);
}

AttractionRule canonical_rule(const Cnf3& f, int delay, const std::vector<bool>& assignment)
{
    const ReductionTypes types{delay};
    AttractionRule rule = structural_rule(delay);
    for (int v = 0; v < f.num_vars; ++v)
        rule.add(1, types.literal({v, !assignment.at(static_cast<std::size_t>(v))}));
    return rule;
}

std::vector<bool> decode_assignment(const AttractionRule& rule, const Cnf3& f, int delay)
{
    const ReductionTypes types{delay};
    std::vector<bool> out(static_cast<std::size_t>(f.num_vars));
    for (int v = 0; v < f.num_vars; ++v)
        out[static_cast<std::size_t>(v)] = rule.attracts(1, types.literal({v, false}));
    return out;
}

SoundnessReport check_gadget_soundness(const GadgetGeometry& g, Dynamics d)
{
    const int delay = g.delay;
    const ReductionTypes types{delay};
    const std::array<Literal, 3> abc{Literal{0, false}, Literal{1, false}, Literal{2, false}};
    const Literal x{0, false}, nx{0, true};

    struct Case {
        const char* name;
        RuleDesignInstance inst;
        std::vector<BeadType> literals;
        bool clause;
    };
    std::vector<Case> cases;
    cases.push_back({"clause", single(g.clause, label_seed(g.clause, types, abc, 0), delay, d),
                     {types.literal(abc[0]), types.literal(abc[1]), types.literal(abc[2])}, true});
    cases.push_back({"variable", single(g.variable, label_seed(g.variable, types, {}, 0), delay, d),
                     {types.literal(x), types.literal(nx)}, false});

    SoundnessReport report;
    auto fail = [&](const Case& c, const AttractionRule& rule, const std::string& why) {
        report.sound = false;
        std::string pairs;
        for (const auto& [a, b] : rule.pairs())
            pairs += " " + types.name(a) + "-" + types.name(b);
        report.failures.push_back(std::string(c.name) + " (" + to_string(d) + "):" + why + " under {" + pairs + " }");
    };

    for (const auto& c : cases) {
        std::set<BeadType> others;
        for (BeadType t : c.inst.scenarios[0].seed.labels)
            others.insert(t);
        for (BeadType t = 1; t <= delay; ++t)
            others.insert(t);
        std::vector<AttractionRule::Pair> pairs;
        for (BeadType p = 1; p <= delay; ++p)
            for (BeadType t : others)
                if (t > delay || t >= p)
                    pairs.push_back(AttractionRule::normalize(p, t));
        if (pairs.size() > 26)
            throw OracleTooLarge(pairs.size());

        auto bead1_literals = [&](const AttractionRule& rule) {
            std::size_t n = 0;
            for (BeadType l : c.literals)
                n += rule.attracts(1, l);
            return n;
        };

        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
            AttractionRule rule;
            for (std::size_t b = 0; b < pairs.size(); ++b)
                if ((mask >> b) & 1)
                    rule.add(pairs[b].first, pairs[b].second);
            ++report.rules_checked;
            if (!verify_rule(c.inst, rule))
                continue;
            if (c.clause && bead1_literals(rule) == 0)
                fail(c, rule, " folds correctly without a literal bond");
            if (!c.clause && bead1_literals(rule) == 2)
                fail(c, rule, " folds correctly with both literals");
        }

        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << c.literals.size()); ++mask) {
            AttractionRule rule = structural_rule(delay);
            for (std::size_t b = 0; b < c.literals.size(); ++b)
                if ((mask >> b) & 1)
                    rule.add(1, c.literals[b]);
            const std::size_t chosen = bead1_literals(rule);
            const bool expected = c.clause ? chosen > 0 : chosen < 2;
            ++report.rules_checked;
            if (verify_rule(c.inst, rule) != expected)
                fail(c, rule, expected ? " should fold correctly" : " should not fold correctly");
        }
    }
    return report;
}

bool gadget_soundness(const GadgetGeometry& g, int delay)
{
    if (g.delay != delay)
        return false;
    for (auto d : {Dynamics::Oblivious, Dynamics::Hasty})
        if (!check_gadget_soundness(g, d).sound)
            return false;
    return true;
}

} // namespace oritatami
