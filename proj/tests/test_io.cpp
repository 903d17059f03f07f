#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracle.hpp"
#include "oritatami/dynamics.hpp"
#include "oritatami/io.hpp"
#include "oritatami/render.hpp"
#include "oritatami/satreduce.hpp"

#include <fstream>
#include <regex>
#include <sstream>

using namespace oritatami;
using namespace oracle;

namespace {

const std::string data_dir = ORITATAMI_DATA_DIR;

std::string slurp(const std::string& name)
{
    std::ifstream in(data_dir + "/" + name);
    REQUIRE(in);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

template <class F>
auto parse_text(const std::string& text, F parse)
{
    std::istringstream in(text);
    return parse(in);
}

std::size_t count(const std::string& text, const std::string& pattern)
{
    const std::regex re(pattern);
    return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), {}));
}

std::size_t error_line(const std::string& text)
{
    try {
        parse_text(text, parse_system);
    } catch (const ParseError& e) {
        return e.line();
    }
    FAIL("no parse error");
    return 0;
}

} // namespace

TEST_CASE("shipped system files round trip")
{
    for (const char* name : {"corner.osys", "empty.osys", "glider.osys"}) {
        CAPTURE(name);
        const auto f = parse_text(slurp(name), parse_system);
        std::ostringstream out;
        write_system(out, f);
        const auto again = parse_text(out.str(), parse_system);
        CHECK(again == f);
        std::ostringstream out2;
        write_system(out2, again);
        CHECK(out2.str() == out.str());
    }
    const auto corner = parse_text(slurp("corner.osys"), parse_system);
    CHECK(corner.seed.size() == 3);
    CHECK(corner.system().primary.size() == 1);
    const auto empty = parse_text(slurp("empty.osys"), parse_system);
    CHECK(empty.system().primary.empty());
    CHECK(empty.delay == 2);
}

TEST_CASE("shipped instance, formulas and conformation round trip")
{
    for (const char* name : {"corner.inst", "glider.inst"}) {
        const auto inst = parse_text(slurp(name), parse_instance);
        CHECK(inst.instance.scenarios.size() == 1);
        std::ostringstream out;
        write_instance(out, inst);
        CHECK(parse_text(out.str(), parse_instance) == inst);
    }

    for (const char* name : {"sat.cnf", "unsat.cnf"}) {
        const auto f = parse_text(slurp(name), parse_dimacs);
        std::ostringstream o;
        write_dimacs(o, f);
        const auto g = parse_text(o.str(), parse_dimacs);
        CHECK(g.num_vars == f.num_vars);
        CHECK(g.clauses == f.clauses);
    }
    CHECK(parse_text(slurp("sat.cnf"), parse_dimacs).brute_force_solve());
    CHECK_FALSE(parse_text(slurp("unsat.cnf"), parse_dimacs).brute_force_solve());

    const auto conf = parse_text(slurp("count8.conf"), parse_conformation);
    std::ostringstream o;
    write_conformation(o, conf);
    const auto again = parse_text(o.str(), parse_conformation);
    CHECK(again.conformation == conf.conformation);
    CHECK(again.beads == conf.beads);
    const auto report = verify_counter(conf.conformation, 0, 3, lattice_row_decoder(conf.coding));
    CHECK(report.pass);
    CHECK(report.rows_checked == 8);
}

TEST_CASE("sequence repeat groups expand")
{
    const std::string text = "[beads]\na b c\n[sequence]\na repeat 2 { b repeat 3 { c } }\n[delay]\n1\n[seed]\n0 0 a\n";
    const auto f = parse_text(text, parse_system);
    CHECK(f.system().primary == std::vector<BeadType>{0, 1, 2, 2, 2, 1, 2, 2, 2});
    std::ostringstream out;
    write_system(out, f);
    CHECK(parse_text(out.str(), parse_system).system().primary == f.system().primary);
}

TEST_CASE("errors name the offending line")
{
    const std::string head = "[beads]\na b\n[sequence]\na\n[delay]\n1\n[seed]\n";
    CHECK(error_line(head + "0 0 a\n2 0 b\n") == 9);
    CHECK(error_line(head + "0 0 a\n1 0 b\n0 0 a\n") == 10);
    CHECK(error_line(head + "0 0 a\n1 0 z\n") == 9);
    CHECK(error_line("[beads]\na\n[sequence]\na q\n[delay]\n1\n[seed]\n0 0 a\n") == 4);
    CHECK(error_line("[beads]\na\n[sequence]\na\n[delay]\n0\n[seed]\n0 0 a\n") == 6);
    CHECK(error_line("[beads]\na\n[sequence]\nrepeat 2 { a\n[delay]\n1\n[seed]\n0 0 a\n") == 4);
    CHECK(error_line("[beads]\na\n[sequence]\na\n[delay]\n1\n[seed]\n") == 7);
    CHECK(error_line("[beads]\na\n[sequence]\na\n[delay]\n1\n[dynamics]\nlazy\n[seed]\n0 0 a\n") == 8);
    CHECK(error_line("[beads]\na\n[bogus]\n") == 3);

    try {
        parse_text(head + "0 0 a\n2 0 b\n", parse_system);
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 9") != std::string::npos);
        CHECK(std::string(e.what()).find("not adjacent") != std::string::npos);
    }

    BeadNames names({"a", "b"});
    std::istringstream rule("a b\nb c\n");
    CHECK_THROWS_AS(parse_rule(rule, names), ParseError);
}

TEST_CASE("reduced 3-SAT instances re-parse equal")
{
    for (const auto& f : small_cnf_corpus(2, 2))
        for (int delay : {1, 2, 3})
            for (auto d : {Dynamics::Oblivious, Dynamics::Hasty}) {
                const ReductionTypes types{delay};
                const auto file =
                    make_instance_file(reduce_3sat(f, delay, d), [&](BeadType t) { return types.name(t); });
                std::ostringstream out;
                write_instance(out, file);
                const auto again = parse_text(out.str(), parse_instance);
                REQUIRE(again == file);

                // The rule survives a trip through its names.
                const auto rule = canonical_rule(f, delay, std::vector<bool>(f.num_vars, true));
                std::ostringstream r;
                write_rule(r, rule, file.beads);
                std::istringstream rin(r.str());
                CHECK(parse_rule(rin, again.beads) == rule);
            }
}

TEST_CASE("svg counts beads, backbone segments and bonds")
{
    const BeadType a = 0, b = 1, c = 2;
    const auto two = Conformation::make({{0, 0}, {1, 0}}, {a, b});
    const auto svg2 = render_svg(two, {{a, b}});
    CHECK(count(svg2, "<circle ") == 2);
    CHECK(count(svg2, "<polyline class=\"backbone\"") == 1);
    CHECK(count(svg2, "points=\"[^\" ]+ [^\" ]+\"") == 1);
    CHECK(count(svg2, "<line class=\"bond\"") == 0);

    const auto three = Conformation::make({{0, 0}, {1, 0}, {1, 1}}, {a, b, c});
    const auto svg3 = render_svg(three, {{a, c}});
    CHECK(count(svg3, "<circle ") == 3);
    CHECK(count(svg3, "stroke-dasharray") == 1);
    CHECK(svg3.rfind("<?xml", 0) == 0);
    CHECK(svg3.find("version=\"1.1\"") != std::string::npos);

    const auto one = Conformation::make({{0, 0}}, {a});
    const auto svg1 = render_svg(one, {});
    CHECK(count(svg1, "<circle ") == 1);
    CHECK(count(svg1, "<polyline") == 0);
}

TEST_CASE("rendering is deterministic and lattice adjacent beads sit one unit apart")
{
    std::mt19937 rng(11);
    for (int k = 0; k < 30; ++k) {
        const auto c = random_walk(rng, 2 + k % 12, 4);
        AttractionRule rule{{0, 1}, {2, 3}, {1, 1}};
        CHECK(render_svg(c, rule) == render_svg(c, rule));
        CHECK(render_ascii(c, 1) == render_ascii(c, 1));
        for (std::size_t i = 0; i + 1 < c.size(); ++i) {
            const auto p = screen_position(c.points[i]);
            const auto q = screen_position(c.points[i + 1]);
            CHECK(std::hypot(p.x - q.x, p.y - q.y) == doctest::Approx(1.0));
        }
        const auto art = render_ascii(c, 1);
        CHECK(std::count(art.begin(), art.end(), '@') == 1);
        CHECK(std::count(art.begin(), art.end(), 'o') == static_cast<long>(c.size() - 1));
    }
}

TEST_CASE("ascii drawing of the corner")
{
    const auto c = Conformation::make({{0, 1}, {0, 0}, {1, 0}, {1, 1}}, {0, 1, 2, 3});
    CHECK(render_ascii(c, 3) == "@   o\n \\   \\\n  @---@\n");
}

TEST_CASE("simulating the shipped corner system")
{
    const auto f = parse_text(slurp("corner.osys"), parse_system);
    RunOptions opts;
    opts.max_steps = 10;
    const auto out = run(f.system(), f.seed, opts);
    REQUIRE(out.deterministic());
    REQUIRE(out.last().size() == 1);
    CHECK(out.last().members[0].points.back() == Point{1, 1});
    CHECK(energy(out.last().members[0], f.rule) == -1);
}
