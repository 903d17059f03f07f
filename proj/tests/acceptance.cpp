// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracle.hpp"
#include "oritatami/counter.hpp"
#include "oritatami/dynamics.hpp"
#include "oritatami/motif.hpp"
#include "oritatami/ruledesign.hpp"
#include "oritatami/satreduce.hpp"
#include "oritatami/scts.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace oritatami;

namespace {

// Pinned limits.
constexpr std::size_t dynamics_corpus = 1000;
constexpr double dynamics_seconds = 60.0;
constexpr std::size_t symmetry_corpus = 100;
constexpr std::size_t block_random_systems = 20;
constexpr std::size_t block_max_steps = 50;
constexpr double solver_seconds = 600.0;
constexpr double reduction_seconds = 600.0;
constexpr std::size_t glider_min_beads = 60;
constexpr double glider_density = 1.0 / 3.0;
constexpr double glider_tolerance = 0.05;

struct Verdict {
    bool pass = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::set<Conformation> as_set(const Frontier& f)
{
    return {f.members.begin(), f.members.end()};
}

std::vector<oracle::RandomSystem> dynamics_systems(std::size_t count, std::uint32_t seed)
{
    std::mt19937 rng(seed);
    std::vector<oracle::RandomSystem> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(oracle::random_tractable_system(rng, 4, 3, 8, 4));
    return out;
}

Verdict dynamics_equivalence()
{
    const auto t0 = Clock::now();
    std::size_t mismatches = 0, steps = 0;
    std::size_t by_delay[4] = {};
    for (const auto& r : dynamics_systems(dynamics_corpus, 1)) {
        ++by_delay[r.sys.delay];
        for (auto d : {Dynamics::Oblivious, Dynamics::Hasty}) {
            RunOptions opt;
            opt.dynamics = d;
            const auto out = run(r.sys, r.seed, opt);
            const auto expected = oracle::frontiers(r.sys, r.seed, d, r.sys.primary.size());
            const std::size_t common = std::min(out.trace.size(), expected.size());
            // The oracle keeps going through empty frontiers; the run stops at the first one.
            bool same = out.trace.size() <= expected.size();
            for (std::size_t t = 0; t < common; ++t) {
                ++steps;
                same = same && as_set(out.trace[t]) == expected[t];
            }
            for (std::size_t t = common; t < expected.size(); ++t)
                same = same && expected[t].empty();
            mismatches += !same;
        }
    }
    const double secs = seconds_since(t0);
    std::ostringstream s;
    s << dynamics_corpus << " systems (delay 1/2/3: " << by_delay[1] << '/' << by_delay[2] << '/' << by_delay[3]
      << "), " << steps << " frontiers compared, " << mismatches << " mismatching runs, " << secs << " s";
    return {mismatches == 0 && secs < dynamics_seconds, s.str()};
}

Verdict delay_one_coincidence()
{
    std::size_t mismatches = 0;
    for (auto r : dynamics_systems(dynamics_corpus, 1)) {
        r.sys.delay = 1;
        const auto o = run(r.sys, r.seed, {Dynamics::Oblivious});
        const auto h = run(r.sys, r.seed, {Dynamics::Hasty});
        mismatches += !(o.trace == h.trace && o.status == h.status);
    }
    std::ostringstream s;
    s << dynamics_corpus << " systems at delay 1, " << mismatches << " differ";
    return {mismatches == 0, s.str()};
}

Verdict symmetry_equivariance()
{
    std::mt19937 rng(3);
    std::size_t mismatches = 0, runs = 0;
    for (std::size_t trial = 0; trial < symmetry_corpus; ++trial) {
        const auto r = oracle::random_tractable_system(rng, 4, 3, 8, 4);
        const int i = static_cast<int>(trial);
        for (auto kind : {SymmetryKind::VerticalMirror, SymmetryKind::Rotate180}) {
            const LatticeSymmetry sym{kind, {i % 5 - 2, 1 - i % 3}};
            for (auto d : {Dynamics::Oblivious, Dynamics::Hasty}) {
                ++runs;
                const auto plain = run(r.sys, r.seed, {d});
                const auto moved = run(r.sys, apply_symmetry(sym, r.seed), {d});
                bool same = plain.trace.size() == moved.trace.size() && plain.status == moved.status;
                for (std::size_t t = 0; same && t < plain.trace.size(); ++t) {
                    std::set<Conformation> image;
                    for (const auto& m : plain.trace[t].members)
                        image.insert(apply_symmetry(sym, m));
                    same = image == as_set(moved.trace[t]);
                }
                mismatches += !same;
            }
        }
    }
    std::ostringstream s;
    s << runs << " transformed runs, " << mismatches << " differ";
    return {mismatches == 0, s.str()};
}

Verdict scts_golden()
{
    // The pairs printed for (e, 100, 1, 0) on 010, up to <0, 1>.
    const std::vector<std::pair<Word, Word>> expected{{"010", ""}, {"10", "100"}, {"01", "0"}, {"1", ""},
                                                      {"100", "1"}, {"000", ""}, {"00", "100"}, {"0", "1"}};
    const Scts sys{{"", "100", "1", "0"}};
    const auto trace = scts_run(sys, "010", 1000);
    const auto pairs = trace.pairs(sys);
    const bool prefix = pairs.size() == expected.size() + 1
                        && std::equal(expected.begin(), expected.end(), pairs.begin());
    const bool halts = trace.halt_step() == expected.size() && pairs.back().first.empty();
    std::ostringstream s;
    s << pairs.size() - 1 << " pairs before the empty word, halt at step " << trace.halt_step() << ", output "
      << trace.output;
    return {prefix && halts, s.str()};
}

Word random_word(std::mt19937& rng, std::size_t max_len)
{
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::bernoulli_distribution bit(0.5);
    Word w(len(rng), '0');
    for (auto& c : w)
        c = bit(rng) ? '1' : '0';
    return w;
}

// Nonempty words at the start and after every step that reads a 1.
std::vector<Word> swipe_words(const oracle::TagRun& run)
{
    std::vector<Word> out;
    if (!run.words[0].empty())
        out.push_back(run.words[0]);
    for (std::size_t t = 0; t + 1 < run.words.size(); ++t)
        if (run.words[t][0] == '1' && !run.words[t + 1].empty())
            out.push_back(run.words[t + 1]);
    return out;
}

Verdict block_faithfulness()
{
    std::mt19937 rng(5);
    std::vector<std::pair<Scts, Word>> cases{{Scts{{"", "100", "1", "0"}}, "010"}};
    // Draw systems that halt within the step bound.
    while (cases.size() < 1 + block_random_systems) {
        Scts sys;
        const std::size_t n = cases.size() % 2 ? 4 : 8;
        for (std::size_t i = 0; i < n; ++i)
            sys.productions.push_back(random_word(rng, 3));
        const Word w0 = random_word(rng, 6);
        if (oracle::tag_words(sys.productions, w0, block_max_steps).halted)
            cases.emplace_back(sys, w0);
    }
    std::size_t bad = 0;
    for (const auto& [sys, w0] : cases) {
        const auto ref = oracle::tag_words(sys.productions, w0, block_max_steps);
        const auto b = block_automaton_run(sys, w0, block_max_steps);
        std::vector<Word> rows;
        for (const auto& r : b.grid)
            rows.push_back(from_letters(r.letters));
        bad += !(rows == swipe_words(ref) && b.output == ref.pointers.back());
    }
    std::ostringstream s;
    s << cases.size() << " systems, " << bad << " grids differ from the word trace";
    return {bad == 0, s.str()};
}

Verdict geometry()
{
    std::size_t violations = 0, checked = 0;
    for (std::int64_t n = 4; n <= 32; n += 4)
        for (std::int64_t L = 1; L <= 6; ++L) {
            const auto g = turing_geometry(n, L);
            ++checked;
            violations += g.w % 6 != 0;
            violations += g.h % 6 != 3;
            violations += (n * (g.w + 6)) % 24 != 0;
            violations += g.E.size() != static_cast<std::size_t>(L + 1);
            for (auto e : g.E)
                violations += e % 24 != 23;
            violations += !g.consistent();
        }
    const auto spot = turing_geometry(4, 3);
    const auto budget = bead_budget(spot);
    const bool spot_ok = spot.w == 90 && spot.h == 291;
    const bool budget_ok =
        budget.of('D') == 120 && budget.of('E') == 272 && budget.of('F') == 60 && budget.of('G') == 254;
    std::ostringstream s;
    s << checked << " (n, L) pairs, " << violations << " congruence violations; n=4 L=3 gives (w, h) = (" << spot.w
      << ", " << spot.h << "); beads D E F G = " << budget.of('D') << ' ' << budget.of('E') << ' '
      << budget.of('F') << ' ' << budget.of('G');
    return {violations == 0 && spot_ok && budget_ok, s.str()};
}

Verdict solver_completeness()
{
    const auto t0 = Clock::now();
    const auto corpus = oracle::small_instance_corpus();
    std::size_t feasible = 0, disagree = 0, unverified = 0;
    for (const auto& inst : corpus) {
        const auto fpt = design_rule_fpt(inst);
        const auto brute = design_rule_bruteforce(inst);
        disagree += fpt.has_value() != brute.has_value();
        if (fpt) {
            ++feasible;
            unverified += !verify_rule(inst, *fpt) || !oracle::naive_verify(inst, *fpt);
        }
    }
    const double secs = seconds_since(t0);
    std::ostringstream s;
    s << corpus.size() << " instances, " << feasible << " feasible, " << disagree << " disagreements, "
      << unverified << " emitted rules failing verification, " << secs << " s";
    return {disagree == 0 && unverified == 0 && secs < solver_seconds, s.str()};
}

Verdict reduction_round_trip()
{
    const auto t0 = Clock::now();
    const auto corpus = oracle::small_cnf_corpus(3, 3);
    std::size_t cases = 0, satisfiable = 0, wrong = 0;
    for (int delay : {1, 2})
        for (auto d : {Dynamics::Oblivious, Dynamics::Hasty})
            for (const auto& f : corpus) {
                ++cases;
                const bool sat = f.brute_force_solve().has_value();
                satisfiable += sat;
                const auto rule = design_rule_fpt(reduce_3sat(f, delay, d));
                wrong += sat != rule.has_value();
                if (rule)
                    wrong += !f.satisfied_by(decode_assignment(*rule, f, delay));
            }
    const double secs = seconds_since(t0);
    std::ostringstream s;
    s << corpus.size() << " formulas x 2 delays x 2 dynamics = " << cases << " cases, " << satisfiable
      << " satisfiable, " << wrong << " wrong, " << secs << " s";
    return {wrong == 0 && secs < reduction_seconds, s.str()};
}

Verdict glider_motif()
{
    const std::size_t periods = (glider_min_beads + glider_period - 1) / glider_period + 1;
    const auto inst = glider_instance(periods);
    const auto rule = design_rule_fpt(inst);
    if (!rule)
        return {false, "the solver found no rule for the glider"};
    RunOptions opt;
    opt.dynamics = inst.dynamics;
    const auto out = run(inst.system(*rule), inst.scenarios[0].seed, opt);
    const std::size_t seed = inst.scenarios[0].seed.size();
    const bool det = out.status == RunStatus::Completed && out.deterministic() && out.last().size() == 1;
    std::size_t beads = 0;
    double density = 0;
    bool periodic = det;
    if (det) {
        const auto& c = out.last().members[0];
        beads = c.size() - seed;
        density = bond_density(c, *rule, seed);
        for (std::size_t i = seed + glider_period; i < c.size(); ++i)
            periodic = periodic && c.points[i] - c.points[i - glider_period] == glider_shift;
    }
    std::ostringstream s;
    s << "rule of " << rule->size() << " pairs; " << beads << " beads " << (det ? "deterministic" : "not deterministic")
      << ", head shift per period " << (periodic ? "constant" : "irregular") << ", bond density " << density;
    return {det && periodic && beads >= glider_min_beads && std::abs(density - glider_density) <= glider_tolerance,
            s.str()};
}

Verdict counter_harness()
{
    std::size_t round_trips = 0, bad = 0;
    for (int b : {1, 3, 5, 7, 9})
        for (std::uint64_t n = 0; n < (std::uint64_t{1} << b); ++n) {
            ++round_trips;
            for (auto order : {BitOrder::MsbFirst, BitOrder::LsbFirst})
                bad += decode_row(encode_seed(n, b, order), order) != n;
        }
    const RowCoding coding;
    const auto decoder = lattice_row_decoder(coding);
    const auto golden = counter_golden_trace(0, 3, 8, coding);
    const auto pass = verify_counter(golden, 0, 3, decoder);

    // Negative control: flip every bead of the first bit block in row 6.
    auto flipped = golden;
    for (std::size_t i = 0; i < flipped.size(); ++i) {
        const Point p = flipped.points[i];
        if (p.y != -6 || p.x < 3 || p.x >= 7)
            continue;
        const auto k = static_cast<std::size_t>(p.x - 3);
        flipped.labels[i] = flipped.labels[i] == coding.bit0[k] ? coding.bit1[k] : coding.bit0[k];
    }
    const auto fail = verify_counter(flipped, 0, 3, decoder);
    std::ostringstream s;
    s << round_trips << " round trips with " << bad << " errors; golden: " << (pass.pass ? "PASS " : "FAIL ")
      << pass.message << "; flipped: " << (fail.pass ? "PASS " : "FAIL ") << fail.message;
    return {bad == 0 && pass.pass && pass.rows_checked == 8 && !fail.pass && fail.failed_i == std::size_t{1}, s.str()};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"dynamics oracle equivalence", dynamics_equivalence},
        {"delay 1 coincidence", delay_one_coincidence},
        {"symmetry equivariance", symmetry_equivariance},
        {"tag system golden trace", scts_golden},
        {"block automaton faithfulness", block_faithfulness},
        {"turing geometry congruences", geometry},
        {"rule design soundness and completeness", solver_completeness},
        {"3-SAT reduction round trip", reduction_round_trip},
        {"glider motif", glider_motif},
        {"counter harness", counter_harness},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::cout << "criterion " << i + 1 << " " << (v.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
                  << v.detail << std::endl;
    }
    return failed ? 1 : 0;
}
