#include "oritatami/counter.hpp"
#include "oritatami/dynamics.hpp"
#include "oritatami/io.hpp"
#include "oritatami/render.hpp"
#include "oritatami/ruledesign.hpp"
#include "oritatami/satreduce.hpp"
#include "oritatami/scts.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using namespace oritatami;
using json = nlohmann::json;

namespace {

enum Exit { Ok = 0, Fail = 1, Usage = 2, Resource = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot write " + path);
    return out;
}

template <class F>
auto with_file(const std::string& path, F parse)
{
    auto in = open_in(path);
    try {
        return parse(in);
    } catch (const ParseError& e) {
        throw UsageError(path + ": " + e.what());
    } catch (const DimacsError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

Dynamics dynamics_named(const std::string& s)
{
    if (s == "oblivious")
        return Dynamics::Oblivious;
    if (s == "hasty")
        return Dynamics::Hasty;
    throw UsageError("dynamics must be oblivious or hasty");
}

json points_json(const Conformation& c, const BeadNames& names)
{
    json a = json::array();
    for (std::size_t i = 0; i < c.size(); ++i)
        a.push_back({{"x", c.points[i].x}, {"y", c.points[i].y}, {"bead", names.name(c.labels[i])}});
    return a;
}

// simulate

struct SimulateArgs {
    std::string system;
    std::size_t steps = 0;
    std::string render;
    bool ascii = false;
    bool trace = false;
    bool json = false;
};

int simulate(const SimulateArgs& a)
{
    const auto file = with_file(a.system, [](std::istream& in) { return parse_system(in); });
    const auto sys = file.system();
    RunOptions opts;
    opts.dynamics = file.dynamics;
    opts.max_steps = a.steps ? a.steps : sys.primary.size();
    opts.keep_trace = a.trace;
    const auto outcome = run(sys, file.seed, opts);
    const auto& last = outcome.last();
    if (a.json) {
        json j{{"status", to_string(outcome.status)},
               {"time", outcome.time},
               {"deterministic", outcome.deterministic()},
               {"frontier", last.size()}};
        if (outcome.nondeterministic_bead)
            j["nondeterministic_bead"] = *outcome.nondeterministic_bead;
        if (last.size() == 1) {
            j["energy"] = energy(last.members[0], sys.rule);
            j["conformation"] = points_json(last.members[0], file.beads);
        }
        if (a.trace) {
            json sizes = json::array();
            for (const auto& f : outcome.trace)
                sizes.push_back(f.size());
            j["frontier_sizes"] = sizes;
        }
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << outcome.describe() << '\n';
        if (a.trace)
            for (const auto& f : outcome.trace)
                std::cout << "t=" << f.time << " frontier " << f.size() << '\n';
        if (last.size() == 1) {
            const auto& c = last.members[0];
            std::cout << "energy " << energy(c, sys.rule) << '\n';
            for (std::size_t i = file.seed.size(); i < c.size(); ++i)
                std::cout << c.points[i].x << ' ' << c.points[i].y << ' ' << file.beads.name(c.labels[i]) << '\n';
        } else {
            std::cout << "frontier holds " << last.size() << " conformations\n";
        }
    }
    if (!last.empty() && (a.ascii || !a.render.empty())) {
        const auto& c = last.members[0];
        if (a.ascii)
            std::cout << render_ascii(c, file.seed.size());
        if (!a.render.empty()) {
            RenderStyle style;
            style.seed_length = file.seed.size();
            style.name = [&](BeadType t) { return file.beads.name(t); };
            open_out(a.render) << render_svg(c, sys.rule, style);
        }
    }
    return Ok;
}

int check_determinism_cmd(const std::string& path, std::size_t horizon)
{
    const auto file = with_file(path, [](std::istream& in) { return parse_system(in); });
    const auto bead = check_determinism(file.system(), file.seed, file.dynamics, horizon);
    if (bead) {
        std::cout << "nondeterministic at bead " << *bead << '\n';
        return Fail;
    }
    std::cout << "deterministic for " << horizon << " steps\n";
    return Ok;
}

// design-rule

int design_rule_cmd(const std::string& path, bool oracle, const std::string& emit, std::size_t max_nodes)
{
    const auto file = with_file(path, [](std::istream& in) { return parse_instance(in); });
    std::optional<AttractionRule> rule;
    if (oracle) {
        rule = design_rule_bruteforce(file.instance);
    } else {
        DesignOptions opts;
        if (max_nodes)
            opts.max_nodes = max_nodes;
        DesignStats stats;
        rule = design_rule_fpt(file.instance, opts, &stats);
        std::cerr << "nodes " << stats.nodes << ", candidate pairs " << stats.candidate_pairs << '\n';
    }
    if (!rule) {
        std::cout << "infeasible\n";
        return Fail;
    }
    std::cout << "feasible, " << rule->size() << " pairs\n";
    write_rule(std::cout, *rule, file.beads);
    if (!emit.empty()) {
        auto out = open_out(emit);
        write_rule(out, *rule, file.beads);
    }
    return Ok;
}

// reduce 3sat

BeadNames reduction_names(const Cnf3& f, int delay)
{
    const ReductionTypes types{delay};
    return make_instance_file(reduce_3sat(f, delay), [&](BeadType t) { return types.name(t); }).beads;
}

int reduce_cmd(const std::string& cnf, int delay, const std::string& dyn, const std::string& out_path)
{
    if (delay < 1)
        throw UsageError("--delay must be at least 1");
    const auto f = with_file(cnf, [](std::istream& in) { return parse_dimacs(in); });
    const ReductionTypes types{delay};
    const auto inst = reduce_3sat(f, delay, dynamics_named(dyn));
    const auto file = make_instance_file(inst, [&](BeadType t) { return types.name(t); });
    auto out = open_out(out_path);
    write_instance(out, file);
    std::cout << inst.scenarios.size() << " scenarios, " << inst.universe().size() << " bead types\n";
    return Ok;
}

int decode_cmd(const std::string& rule_path, const std::string& cnf, int delay)
{
    const auto f = with_file(cnf, [](std::istream& in) { return parse_dimacs(in); });
    const auto names = reduction_names(f, delay);
    const auto rule = with_file(rule_path, [&](std::istream& in) { return parse_rule(in, names); });
    const auto a = decode_assignment(rule, f, delay);
    for (std::size_t v = 0; v < a.size(); ++v)
        std::cout << (v ? " " : "") << 'x' << v << '=' << (a[v] ? 1 : 0);
    std::cout << '\n';
    const bool sat = f.satisfied_by(a);
    std::cout << (sat ? "satisfies the formula" : "does not satisfy the formula") << '\n';
    return sat ? Ok : Fail;
}

// scts

Scts productions_arg(const std::string& s)
{
    try {
        return parse_productions(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--productions: ") + e.what());
    }
}

Word word_arg(const std::string& s)
{
    try {
        return parse_word(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--input: ") + e.what());
    }
}

int scts_run_cmd(const std::string& prods, const std::string& input, std::size_t max_steps, bool as_json)
{
    const auto sys = productions_arg(prods);
    const auto trace = scts_run(sys, word_arg(input), max_steps);
    if (as_json) {
        json pairs = json::array();
        for (const auto& [w, p] : trace.pairs(sys))
            pairs.push_back({w, p});
        std::cout << json{{"pairs", pairs}, {"halt_step", trace.halt_step()}, {"output", trace.output}}.dump(2)
                  << '\n';
        return Ok;
    }
    for (const auto& [w, p] : trace.pairs(sys))
        std::cout << "<" << display_word(w) << ", " << display_word(p) << ">\n";
    std::cout << "halt at step " << trace.halt_step() << ", output " << trace.output << '\n';
    return Ok;
}

int scts_blocks_cmd(const std::string& prods, const std::string& input, std::size_t max_swipes)
{
    const auto sys = productions_arg(prods);
    const auto run = block_automaton_run(sys, word_arg(input), max_swipes);
    for (const auto& e : run.events) {
        std::cout << to_string(e.kind) << " production " << e.production << " row " << e.row;
        if (!e.letters.empty())
            std::cout << " letters " << e.letters;
        if (!e.appended.empty())
            std::cout << " appended " << e.appended;
        std::cout << '\n';
    }
    std::cout << "grid\n";
    for (const auto& r : run.grid)
        std::cout << std::string(r.start, ' ') << r.letters << '\n';
    std::cout << "halt after " << run.swipes << " swipes, output " << run.output << '\n';
    return Ok;
}

int scts_normalize_cmd(const std::string& prods)
{
    const auto sys = productions_arg(prods);
    const auto norm = normalize_mod4(sys);
    std::cout << format_productions(norm.system) << '\n'
              << "0 -> " << norm.encoding.zero << ", 1 -> " << norm.encoding.one << ", pointer x"
              << norm.encoding.factor << '\n';
    return Ok;
}

// turing geometry

int geometry_cmd(std::int64_t n, std::int64_t L, bool as_json)
{
    TuringGeometry g;
    try {
        g = turing_geometry(n, L);
    } catch (const BadParameters& e) {
        throw UsageError(e.what());
    }
    const auto budget = bead_budget(g);
    if (as_json) {
        json checks = json::array();
        for (const auto& c : g.report)
            checks.push_back({{"check", c.name}, {"holds", c.holds}});
        json b = json::object();
        for (const auto& m : budget.modules)
            b[std::string(1, m.module)] = m.total();
        std::cout << json{{"n", g.n},   {"L", g.L}, {"w", g.w}, {"h", g.h}, {"A", g.A},
                          {"B", g.B},   {"C", g.C}, {"D", g.D}, {"E", g.E}, {"F", g.F},
                          {"G", g.G},   {"checks", checks}, {"budget", b}, {"budget_total", budget.total()}}
                         .dump(2)
                  << '\n';
        return g.consistent() ? Ok : Fail;
    }
    std::cout << "n " << g.n << "  L " << g.L << "  w " << g.w << "  h " << g.h << '\n'
              << "A " << g.A << "  B " << g.B << "  C " << g.C << "  D " << g.D << "  F " << g.F << "  G " << g.G
              << '\n';
    for (std::size_t k = 0; k < g.E.size(); ++k)
        std::cout << "E_" << k << ' ' << g.E[k] << '\n';
    for (const auto& c : g.report)
        std::cout << (c.holds ? "ok   " : "FAIL ") << c.name << '\n';
    for (const auto& m : budget.modules) {
        std::cout << "beads " << m.module << ' ' << m.total();
        for (const auto& u : m.unaccounted)
            std::cout << " (not counted: " << u.what << ' ' << u.total() << ')';
        std::cout << '\n';
    }
    std::cout << "beads total " << budget.total() << '\n';
    return g.consistent() ? Ok : Fail;
}

// counter

int counter_encode_cmd(std::uint64_t n, int b, bool lsb)
{
    try {
        const auto row = encode_seed(n, b, lsb ? BitOrder::LsbFirst : BitOrder::MsbFirst);
        std::cout << to_string(row) << '\n' << row_length(row) << " beads\n";
    } catch (const CounterRangeError& e) {
        throw UsageError(e.what());
    }
    return Ok;
}

int counter_golden_cmd(std::uint64_t n, int b, std::size_t values, bool lsb, const std::string& out_path)
{
    Conformation c;
    try {
        c = counter_golden_trace(n, b, values, {}, lsb ? BitOrder::LsbFirst : BitOrder::MsbFirst);
    } catch (const CounterRangeError& e) {
        throw UsageError(e.what());
    }
    auto out = open_out(out_path);
    write_conformation(out, counter_conformation_file(c));
    std::cout << c.size() << " beads on " << (values ? 6 * (values - 1) + 1 : 0) << " rows\n";
    return Ok;
}

int counter_verify_cmd(const std::string& path, std::uint64_t n, int b, bool lsb)
{
    const auto file = with_file(path, [](std::istream& in) { return parse_conformation(in); });
    try {
        const auto report = verify_counter(file.conformation, n, b, lattice_row_decoder(file.coding), lsb ? BitOrder::LsbFirst : BitOrder::MsbFirst);
        std::cout << (report.pass ? "PASS " : "FAIL ") << report.message << '\n';
        return report.pass ? Ok : Fail;
    } catch (const CounterRangeError& e) {
        throw UsageError(e.what());
    } catch (const MissingRow& e) {
        std::cout << "FAIL " << e.what() << '\n';
    } catch (const DecodeFailure& e) {
        std::cout << "FAIL " << e.what() << '\n';
    }
    return Fail;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Oritatami co-transcriptional folding toolkit"};
    app.require_subcommand(1);
    std::function<int()> action;

    SimulateArgs sim;
    auto* simulate_cmd = app.add_subcommand("simulate", "Fold a system file");
    simulate_cmd->add_option("system", sim.system, "System file")->required();
    simulate_cmd->add_option("--steps", sim.steps, "Steps to run (default: the whole sequence)");
    simulate_cmd->add_option("--render", sim.render, "Write the final conformation as SVG");
    simulate_cmd->add_flag("--ascii", sim.ascii, "Print the final conformation as text");
    simulate_cmd->add_flag("--trace", sim.trace, "Print frontier sizes per step");
    simulate_cmd->add_flag("--json", sim.json, "JSON output");
    simulate_cmd->callback([&] { action = [&] { return simulate(sim); }; });

    std::string det_path;
    std::size_t horizon = 0;
    auto* det = app.add_subcommand("check-determinism", "Check that every bead folds deterministically");
    det->add_option("system", det_path, "System file")->required();
    det->add_option("--horizon", horizon, "Steps to examine")->required();
    det->callback([&] { action = [&] { return check_determinism_cmd(det_path, horizon); }; });

    std::string inst_path, emit;
    bool use_oracle = false;
    std::size_t max_nodes = 0;
    auto* design = app.add_subcommand("design-rule", "Find a rule folding every seed into its target");
    design->add_option("instance", inst_path, "Instance file")->required();
    design->add_flag("--oracle", use_oracle, "Exhaustive search over all rules (small instances only)");
    design->add_option("--emit", emit, "Write the rule to this file");
    design->add_option("--max-nodes", max_nodes, "Search node budget");
    design->callback([&] { action = [&] { return design_rule_cmd(inst_path, use_oracle, emit, max_nodes); }; });

    std::string cnf_path, out_path, dyn = "oblivious";
    int delay = 1;
    auto* reduce = app.add_subcommand("reduce", "Reduce a problem to rule design");
    reduce->require_subcommand(1);
    auto* sat = reduce->add_subcommand("3sat", "Reduce a DIMACS 3-CNF formula");
    sat->add_option("cnf", cnf_path, "DIMACS file")->required();
    sat->add_option("--delay", delay, "Delay of the instance")->required();
    sat->add_option("--dynamics", dyn, "oblivious or hasty");
    sat->add_option("--out", out_path, "Instance file to write")->required();
    sat->callback([&] { action = [&] { return reduce_cmd(cnf_path, delay, dyn, out_path); }; });

    std::string rule_path;
    auto* decode = app.add_subcommand("decode-assignment", "Read a truth assignment off a rule");
    decode->add_option("rule", rule_path, "Rule file")->required();
    decode->add_option("cnf", cnf_path, "DIMACS file")->required();
    decode->add_option("--delay", delay, "Delay used by the reduction");
    decode->callback([&] { action = [&] { return decode_cmd(rule_path, cnf_path, delay); }; });

    std::string prods, input;
    std::size_t max_steps = 100000;
    bool as_json = false;
    auto* scts = app.add_subcommand("scts", "Skipping cyclic tag systems");
    scts->require_subcommand(1);
    auto* scts_run_sub = scts->add_subcommand("run", "Run the tag system");
    auto* scts_blocks_sub = scts->add_subcommand("blocks", "Run the production block automaton");
    for (auto* sub : {scts_run_sub, scts_blocks_sub}) {
        sub->add_option("--productions", prods, "Comma separated productions, e for the empty word")->required();
        sub->add_option("--input", input, "Input word, e for empty")->required();
        sub->add_option("--max-steps", max_steps, "Step (or swipe) limit");
    }
    scts_run_sub->add_flag("--json", as_json, "JSON output");
    scts_run_sub->callback([&] { action = [&] { return scts_run_cmd(prods, input, max_steps, as_json); }; });
    scts_blocks_sub->callback([&] { action = [&] { return scts_blocks_cmd(prods, input, max_steps); }; });
    auto* scts_norm = scts->add_subcommand("normalize", "Rewrite to a multiple of four productions");
    scts_norm->add_option("--productions", prods, "Comma separated productions")->required();
    scts_norm->callback([&] { action = [&] { return scts_normalize_cmd(prods); }; });

    std::int64_t geo_n = 0, geo_L = 0;
    auto* turing = app.add_subcommand("turing", "Tag system simulation construction");
    turing->require_subcommand(1);
    auto* geometry = turing->add_subcommand("geometry", "Module lengths, congruences and bead budget");
    geometry->add_option("--n", geo_n, "Number of productions (multiple of 4)")->required();
    geometry->add_option("--L", geo_L, "Longest production")->required();
    geometry->add_flag("--json", as_json, "JSON output");
    geometry->callback([&] { action = [&] { return geometry_cmd(geo_n, geo_L, as_json); }; });

    std::uint64_t cn = 0;
    int cb = 1;
    std::size_t values = 0;
    bool lsb = false;
    std::string conf_path;
    auto* counter = app.add_subcommand("counter", "Binary counter rows");
    counter->require_subcommand(1);
    auto* encode = counter->add_subcommand("encode", "Row descriptor of n on b bits");
    auto* golden = counter->add_subcommand("golden", "Write a synthetic counting conformation");
    auto* verify = counter->add_subcommand("verify", "Check that row 6i holds n + i");
    for (auto* sub : {encode, golden, verify}) {
        sub->add_option("--n", cn, "Initial value")->required();
        sub->add_option("--b", cb, "Bit width (odd)")->required();
        sub->add_flag("--lsb-first", lsb, "Least significant bit next to the start signal");
    }
    golden->add_option("--values", values, "Rows of values to write")->required();
    golden->add_option("--out", out_path, "Conformation file to write")->required();
    verify->add_option("conformation", conf_path, "Conformation file")->required();
    encode->callback([&] { action = [&] { return counter_encode_cmd(cn, cb, lsb); }; });
    golden->callback([&] { action = [&] { return counter_golden_cmd(cn, cb, values, lsb, out_path); }; });
    verify->callback([&] { action = [&] { return counter_verify_cmd(conf_path, cn, cb, lsb); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? Ok : Usage;
    }
    try {
        return action();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Usage;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return Resource;
    } catch (const DesignResourceLimit& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return Resource;
    } catch (const OracleTooLarge& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return Resource;
    } catch (const SctsStepLimit& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return Resource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Usage;
    }
}
