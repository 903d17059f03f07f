#include "oritatami/scts.hpp"

#include <algorithm>
#include <sstream>

namespace oritatami {

std::size_t Scts::max_length() const
{
    std::size_t m = 0;
    for (const auto& p : productions)
        m = std::max(m, p.size());
    return m;
}

namespace {

void check_word(const Word& w)
{
    for (char c : w)
        if (c != '0' && c != '1')
            throw std::invalid_argument("non-binary letter '" + std::string(1, c) + "' in word " + w);
}

} // namespace

void Scts::validate() const
{
    if (productions.empty())
        throw std::invalid_argument("a tag system needs at least one production");
    for (const auto& p : productions)
        check_word(p);
}

Word parse_word(const std::string& text)
{
    if (text == "e" || text == "ε")
        return {};
    check_word(text);
    return text;
}

Scts parse_productions(const std::string& text)
{
    Scts sys;
    std::string field;
    std::istringstream in(text);
    while (std::getline(in, field, ','))
        sys.productions.push_back(parse_word(field));
    if (!text.empty() && text.back() == ',')
        sys.productions.emplace_back();
    sys.validate();
    return sys;
}

std::string format_productions(const Scts& sys)
{
    std::string out;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        if (i)
            out += ',';
        out += sys.productions[i].empty() ? "e" : sys.productions[i];
    }
    return out;
}

std::string display_word(const Word& w)
{
    return w.empty() ? "ε" : w;
}

std::variant<SctsState, SctsHalt> scts_step(const SctsState& s, const Scts& sys)
{
    const std::size_t n = sys.size();
    if (s.pointer >= n)
        throw std::out_of_range("pointer outside the productions");
    if (s.word.empty())
        return SctsHalt{s.pointer};
    SctsState next{s.word.substr(1), 0};
    if (s.word[0] == '0') {
        next.pointer = (s.pointer + 1) % n;
    } else {
        next.word += sys.productions[(s.pointer + 1) % n];
        next.pointer = (s.pointer + 2) % n;
    }
    return next;
}

std::vector<std::pair<Word, Word>> SctsTrace::pairs(const Scts& sys) const
{
    std::vector<std::pair<Word, Word>> out;
    for (const auto& s : states)
        out.emplace_back(s.word, sys.productions.at(s.pointer));
    return out;
}

SctsTrace scts_run(const Scts& sys, const Word& w0, std::size_t max_steps)
{
    sys.validate();
    check_word(w0);
    SctsTrace trace;
    trace.states.push_back({w0, 0});
    for (;;) {
        const auto next = scts_step(trace.states.back(), sys);
        if (const auto* halt = std::get_if<SctsHalt>(&next)) {
            trace.output = halt->output;
            return trace;
        }
        if (trace.states.size() > max_steps)
            throw SctsStepLimit(max_steps);
        trace.states.push_back(std::get<SctsState>(next));
    }
}

Word LetterEncoding::encode(const Word& w) const
{
    Word out;
    for (char c : w)
        out += c == '0' ? zero : one;
    return out;
}

LetterEncoding LetterEncoding::then(const LetterEncoding& next) const
{
    return {next.encode(zero), next.encode(one), factor * next.factor};
}

NormalizedScts double_productions(const Scts& sys)
{
    sys.validate();
    NormalizedScts out;
    out.encoding = {"00", "100", 2};
    const std::size_t n = sys.size();
    for (std::size_t j = 0; j < n; ++j) {
        out.system.productions.emplace_back();
        out.system.productions.push_back(out.encoding.encode(sys.productions[(j + 1) % n]));
    }
    return out;
}

namespace {

// Append-only tape with a read head; the word is tape[head..).
struct Tape {
    std::string tape;
    std::size_t head = 0;
    std::size_t q = 0;

    bool halted() const { return head == tape.size(); }

    // Returns the letter read.
    char step(const Scts& sys)
    {
        const std::size_t n = sys.size();
        const char c = tape[head++];
        if (c == '0') {
            q = (q + 1) % n;
        } else {
            tape += sys.productions[(q + 1) % n];
            q = (q + 2) % n;
        }
        return c;
    }
};

std::string describe(const Word& input, std::size_t t, const std::string& what)
{
    return "input " + display_word(input) + ", step " + std::to_string(t) + ": " + what;
}

void validate_from(const Scts& original, const NormalizedScts& normalized, const Word& input, std::size_t horizon)
{
    const LetterEncoding& enc = normalized.encoding;
    Tape o{input};
    Tape m{enc.encode(input)};
    std::string expected = m.tape;
    std::size_t expected_head = 0;
    std::size_t checked = 0;
    for (std::size_t t = 0;; ++t) {
        if (m.tape.size() != expected.size() || m.tape.compare(checked, std::string::npos, expected, checked) != 0)
            throw NormalizationUnvalidated(describe(input, t, "word does not project"));
        checked = expected.size();
        if (m.head != expected_head)
            throw NormalizationUnvalidated(describe(input, t, "read position does not project"));
        if (m.q != enc.factor * o.q)
            throw NormalizationUnvalidated(describe(input, t, "pointer " + std::to_string(m.q) + " does not project to "
                                                                  + std::to_string(o.q)));
        if (o.halted() || t == horizon)
            return;
        const std::size_t before = o.tape.size();
        const char c = o.step(original);
        expected += enc.encode(o.tape.substr(before));
        const Word& letter = c == '0' ? enc.zero : enc.one;
        expected_head += letter.size();
        for (std::size_t k = 0; k < letter.size(); ++k) {
            if (m.halted())
                throw NormalizationUnvalidated(describe(input, t, "normalized system halts early"));
            m.step(normalized.system);
        }
    }
}

} // namespace

void validate_normalization(const Scts& original, const NormalizedScts& normalized, const NormalizationCheck& check)
{
    original.validate();
    normalized.system.validate();
    const auto& enc = normalized.encoding;
    if (enc.factor == 0 || enc.zero.empty() || enc.one.empty())
        throw NormalizationUnvalidated("degenerate letter encoding");
    for (std::size_t len = 0; len <= check.max_input_length; ++len) {
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
            Word input(len, '0');
            for (std::size_t i = 0; i < len; ++i)
                if ((bits >> i) & 1)
                    input[len - 1 - i] = '1';
            validate_from(original, normalized, input, check.horizon);
        }
    }
}

NormalizedScts normalize_mod4(const Scts& sys, const NormalizationCheck& check)
{
    sys.validate();
    NormalizedScts out{sys, {}};
    while (out.system.size() % 4 != 0) {
        auto next = double_productions(out.system);
        out = {std::move(next.system), out.encoding.then(next.encoding)};
    }
    validate_normalization(sys, out, check);
    return out;
}

std::string to_string(BlockEventKind k)
{
    switch (k) {
    case BlockEventKind::UprightRead0:
        return "upright-read-0";
    case BlockEventKind::UprightRead1:
        return "upright-read-1";
    case BlockEventKind::MirroredCopyAppend:
        return "mirrored-copy-append";
    case BlockEventKind::RotatedCopyRewind:
        return "rotated-copy-rewind";
    case BlockEventKind::LineFeed:
        return "line-feed";
    case BlockEventKind::Halt:
        return "halt";
    }
    return "?";
}

std::string to_letters(const Word& w)
{
    std::string out;
    for (char c : w)
        out += c == '0' ? 'B' : 'F';
    return out;
}

Word from_letters(const std::string& letters)
{
    Word out;
    for (char c : letters) {
        if (c != 'B' && c != 'F')
            throw std::invalid_argument("grid letter must be B or F");
        out += c == 'B' ? '0' : '1';
    }
    return out;
}

BlockRun block_automaton_run(const Scts& sys, const Word& w0, std::size_t max_swipes)
{
    sys.validate();
    check_word(w0);
    const std::size_t n = sys.size();
    if (n % 4 != 0)
        throw std::invalid_argument("the block automaton needs n = 0 mod 4 productions");
    BlockRun run;
    GridRow current{0, to_letters(w0)};
    std::size_t row = 0;
    if (!current.letters.empty())
        run.grid.push_back(current);
    std::size_t q = 0;
    std::size_t head = 0;
    for (;;) {
        // Forward swipe, upright blocks: trim bumps until a flat letter.
        while (head < current.letters.size() && current.letters[head] == 'B') {
            run.events.push_back({BlockEventKind::UprightRead0, q, row, {}, {}});
            q = (q + 1) % n;
            ++head;
        }
        if (head == current.letters.size()) {
            run.events.push_back({BlockEventKind::Halt, q, row, {}, {}});
            run.output = q;
            return run;
        }
        if (run.swipes == max_swipes)
            throw SctsStepLimit(max_swipes);
        ++run.swipes;
        run.events.push_back({BlockEventKind::UprightRead1, q, row, {}, {}});
        // Mirrored blocks copy the rest of the row and append the next production.
        const std::size_t appended_from = (q + 1) % n;
        GridRow next{current.start + head + 1, current.letters.substr(head + 1)};
        const std::string appended = to_letters(sys.productions[appended_from]);
        run.events.push_back({BlockEventKind::MirroredCopyAppend, appended_from, row + 1, next.letters, appended});
        next.letters += appended;
        q = (q + 2) % n;
        // Backward swipe, rotated blocks, back to the column after the flat letter.
        ++row;
        run.events.push_back({BlockEventKind::RotatedCopyRewind, q, row, next.letters, {}});
        run.events.push_back({BlockEventKind::LineFeed, q, row, {}, {}});
        if (!next.letters.empty())
            run.grid.push_back(next);
        current = std::move(next);
        head = 0;
    }
}

bool TuringGeometry::consistent() const
{
    return std::all_of(report.begin(), report.end(), [](const GeometryCheck& c) { return c.holds; });
}

TuringGeometry turing_geometry(std::int64_t n, std::int64_t L)
{
    if (n <= 0 || n % 4 != 0)
        throw BadParameters("n must be a positive multiple of 4, got " + std::to_string(n));
    if (L < 0)
        throw BadParameters("L must be non-negative");
    TuringGeometry g;
    g.n = n;
    g.L = L;
    g.w = 6 * (L + 9) + 18;
    g.h = n * (g.w + 6) - (g.w + 3);
    g.A = 3 * g.h - 2;
    g.B = 5;
    g.C = 3 * g.h - 10;
    g.D = 3 * n * (g.w + 6);
    for (std::int64_t k = 0; k <= L; ++k)
        g.E.push_back(3 * n * (L - k + 9) * (g.w + 6) + 8 * g.h - 1);
    g.F = 4 * g.h;
    g.G = 6 * g.h - 1;

    const std::int64_t span = n * (g.w + 6);
    auto& r = g.report;
    r.push_back({"w = 0 mod 6", g.w % 6 == 0});
    r.push_back({"n(w+6) = 0 mod 24", span % 24 == 0});
    r.push_back({"h = 3 mod 6", g.h % 6 == 3});
    r.push_back({"A glider repeats ((3h-2)-7)/6 integral", (g.A - 7) % 6 == 0});
    r.push_back({"C switchbacks (3h-9)/2 integral", (3 * g.h - 9) % 2 == 0});
    r.push_back({"D switchback n(w+6)/2 = 0 mod 12", span % 2 == 0 && (span / 2) % 12 == 0});
    for (std::int64_t k = 0; k <= L; ++k) {
        const std::int64_t len = g.E[static_cast<std::size_t>(k)];
        const std::string ks = std::to_string(k);
        r.push_back({"E_" + ks + " = 23 mod 24", len % 24 == 23});
        const std::int64_t c = (len + 1) / 4;
        r.push_back({"E_" + ks + " fold back c = (l+1)/4 = 0 mod 6", (len + 1) % 4 == 0 && c % 6 == 0});
        r.push_back({"E_" + ks + " fold back 3c inside the short switchbacks", 3 * c < 3 * n * (L - k + 9) * (g.w + 6)});
    }
    r.push_back({"G glider width h+3 = n(w+6)-w", g.h + 3 == span - g.w});
    return g;
}

int floor_log3(std::int64_t x)
{
    if (x < 1)
        throw std::invalid_argument("log3 of a non-positive number");
    int k = 0;
    while (x >= 3) {
        x /= 3;
        ++k;
    }
    return k;
}

Color coloring(std::int64_t i, std::int64_t offset)
{
    const std::int64_t j = i + offset;
    if (j < 1)
        throw std::invalid_argument("coloring needs a positive index");
    return {floor_log3(j) % 4, static_cast<int>(j % 12)};
}

int ModuleBudget::total() const
{
    int t = 0;
    for (const auto& p : parts)
        t += p.total();
    return t;
}

int BeadBudget::of(char module) const
{
    for (const auto& m : modules)
        if (m.module == module)
            return m.total();
    throw std::out_of_range(std::string("no module ") + module);
}

int BeadBudget::total() const
{
    int t = 0;
    for (const auto& m : modules)
        t += m.total();
    return t;
}

BeadBudget bead_budget(const TuringGeometry& g)
{
    if (!g.consistent() || g.report.empty())
        throw BadParameters("geometry breaks its congruences");
    BeadBudget b;
    b.modules.push_back({'A', {{"first beads", 1, 5}, {"glider period", 1, 6}, {"conclusion", 1, 2}}, {}});
    b.modules.push_back({'B', {{"probe", 1, static_cast<int>(g.B)}}, {}});
    b.modules.push_back({'C', {{"switchback period", 4, 6}}, {}});
    b.modules.push_back({'D', {{"switchback period", 4, 12}, {"bump", 1, 8}, {"boots", 4, 16}}, {}});
    b.modules.push_back({'E',
                         {{"short switchback, before fold back", 4, 12},
                          {"short switchback boots, before fold back", 4, 16},
                          {"short switchback, after fold back", 4, 12},
                          {"short switchback boots, after fold back", 4, 16},
                          {"long glider", 1, 18},
                          {"long switchbacks", 5, 6}},
                         {}});
    b.modules.push_back({'F', {{"colored side", 4, 12}, {"glider", 1, 12}}, {}});
    b.modules.push_back({'G',
                         {{"black parts", 7, 12},
                          {"red parts", 3, 14},
                          {"red part", 1, 18},
                          {"red part", 1, 15},
                          {"red part", 1, 29},
                          {"red part", 1, 6},
                          {"colored glider", 1, 60}},
                         {{"first black part", 1, 48}}});
    return b;
}

} // namespace oritatami
