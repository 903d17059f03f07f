#include "oritatami/io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace oritatami {

std::vector<BeadType> expand(const std::vector<SequenceItem>& sequence)
{
    std::vector<BeadType> out;
    for (const auto& item : sequence) {
        if (!item.group) {
            out.push_back(item.bead);
            continue;
        }
        const auto body = expand(item.body);
        for (std::size_t k = 0; k < item.count; ++k)
            out.insert(out.end(), body.begin(), body.end());
    }
    return out;
}

BeadNames::BeadNames(std::vector<std::string> names) : names_(std::move(names))
{
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (!ids_.emplace(names_[i], static_cast<BeadType>(i)).second)
            throw std::invalid_argument("bead " + names_[i] + " declared twice");
}

BeadType BeadNames::id(const std::string& name) const
{
    const auto it = ids_.find(name);
    if (it == ids_.end())
        throw std::out_of_range("unknown bead " + name);
    return it->second;
}

const std::string& BeadNames::name(BeadType t) const
{
    if (t < 0 || static_cast<std::size_t>(t) >= names_.size())
        throw std::out_of_range("no bead with id " + std::to_string(t));
    return names_[static_cast<std::size_t>(t)];
}

namespace {

struct Line {
    std::size_t number = 0;
    std::vector<std::string> tokens;
};

struct Section {
    std::size_t header_line = 0;
    std::vector<Line> lines;
};

struct Sections {
    std::map<std::string, Section> by_name;
    std::vector<std::string> order;
    std::size_t last_line = 0;

    bool has(const std::string& name) const { return by_name.count(name) != 0; }
    const Section& get(const std::string& name) const
    {
        const auto it = by_name.find(name);
        if (it == by_name.end())
            throw ParseError(last_line, "missing section [" + name + "]");
        return it->second;
    }
};

std::vector<std::string> tokenize(const std::string& text)
{
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty())
            out.push_back(std::move(cur));
        cur.clear();
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else if (c == '{' || c == '}') {
            flush();
            out.emplace_back(1, c);
        } else {
            cur += c;
        }
    }
    flush();
    return out;
}

Sections read_sections(std::istream& in, const std::function<bool(const std::string&)>& known)
{
    Sections s;
    std::string text;
    std::string current;
    std::size_t number = 0;
    while (std::getline(in, text)) {
        ++number;
        if (const auto hash = text.find('#'); hash != std::string::npos)
            text.erase(hash);
        const auto first = text.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        const auto last = text.find_last_not_of(" \t\r");
        const std::string trimmed = text.substr(first, last - first + 1);
        if (trimmed.front() == '[') {
            if (trimmed.back() != ']')
                throw ParseError(number, "unterminated section header");
            current = trimmed.substr(1, trimmed.size() - 2);
            if (!known(current))
                throw ParseError(number, "unknown section [" + current + "]");
            if (s.has(current))
                throw ParseError(number, "section [" + current + "] repeated");
            s.by_name[current].header_line = number;
            s.order.push_back(current);
            continue;
        }
        if (current.empty())
            throw ParseError(number, "content before the first section");
        s.by_name[current].lines.push_back({number, tokenize(trimmed)});
    }
    s.last_line = number;
    return s;
}

long parse_int(const std::string& token, std::size_t line, const std::string& what)
{
    long v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError(line, what + " expected, got '" + token + "'");
    return v;
}

BeadType bead_id(const BeadNames& names, const std::string& token, std::size_t line)
{
    if (!names.contains(token))
        throw ParseError(line, "unknown bead " + token);
    return names.id(token);
}

BeadNames parse_beads(const Sections& s)
{
    std::vector<std::string> names;
    for (const auto& l : s.get("beads").lines)
        for (const auto& t : l.tokens) {
            if (t == "{" || t == "}" || t == "repeat" || std::find(names.begin(), names.end(), t) != names.end())
                throw ParseError(l.number, "bad or repeated bead name " + t);
            names.push_back(t);
        }
    return BeadNames(std::move(names));
}

struct Token {
    std::string text;
    std::size_t line;
};

std::vector<SequenceItem> parse_items(const std::vector<Token>& toks, std::size_t& at, const BeadNames& names,
                                      bool nested)
{
    std::vector<SequenceItem> out;
    while (at < toks.size()) {
        const auto& t = toks[at];
        if (t.text == "}") {
            if (!nested)
                throw ParseError(t.line, "unmatched }");
            ++at;
            return out;
        }
        if (t.text == "repeat") {
            if (at + 2 >= toks.size() || toks[at + 2].text != "{")
                throw ParseError(t.line, "expected repeat K {");
            const long k = parse_int(toks[at + 1].text, toks[at + 1].line, "repeat count");
            if (k < 0)
                throw ParseError(toks[at + 1].line, "negative repeat count");
            at += 3;
            SequenceItem g;
            g.group = true;
            g.count = static_cast<std::size_t>(k);
            g.body = parse_items(toks, at, names, true);
            out.push_back(std::move(g));
            continue;
        }
        if (t.text == "{")
            throw ParseError(t.line, "unexpected {");
        SequenceItem b;
        b.bead = bead_id(names, t.text, t.line);
        out.push_back(b);
        ++at;
    }
    if (nested)
        throw ParseError(toks.empty() ? 0 : toks.back().line, "missing }");
    return out;
}

std::vector<SequenceItem> parse_sequence(const Section& sec, const BeadNames& names)
{
    std::vector<Token> toks;
    for (const auto& l : sec.lines)
        for (const auto& t : l.tokens)
            toks.push_back({t, l.number});
    std::size_t at = 0;
    return parse_items(toks, at, names, false);
}

const Line& single_line(const Section& sec, const std::string& name)
{
    if (sec.lines.size() != 1 || sec.lines[0].tokens.size() != 1)
        throw ParseError(sec.header_line, "[" + name + "] takes a single value");
    return sec.lines[0];
}

int parse_delay(const Sections& s)
{
    const auto& l = single_line(s.get("delay"), "delay");
    const long d = parse_int(l.tokens[0], l.number, "delay");
    if (d < 1 || d > 16)
        throw ParseError(l.number, "delay must be between 1 and 16");
    return static_cast<int>(d);
}

Dynamics parse_dynamics(const Sections& s)
{
    if (!s.has("dynamics"))
        return Dynamics::Oblivious;
    const auto& l = single_line(s.get("dynamics"), "dynamics");
    if (l.tokens[0] == "oblivious")
        return Dynamics::Oblivious;
    if (l.tokens[0] == "hasty")
        return Dynamics::Hasty;
    throw ParseError(l.number, "dynamics must be oblivious or hasty");
}

Point parse_point(const Line& l, std::size_t expected_tokens)
{
    if (l.tokens.size() != expected_tokens)
        throw ParseError(l.number, "expected " + std::to_string(expected_tokens) + " fields");
    return {static_cast<int>(parse_int(l.tokens[0], l.number, "x coordinate")),
            static_cast<int>(parse_int(l.tokens[1], l.number, "y coordinate"))};
}

// Checks adjacency and self-avoidance line by line, continuing `before`.
void check_path(const std::vector<Point>& points, const std::vector<std::size_t>& lines,
                std::vector<Point> before = {})
{
    std::set<Point> seen(before.begin(), before.end());
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!seen.insert(points[i]).second)
            throw ParseError(lines[i], "position " + to_string(points[i]) + " used twice");
        const Point* prev = i ? &points[i - 1] : before.empty() ? nullptr : &before.back();
        if (prev && !adjacent(*prev, points[i]))
            throw ParseError(lines[i], to_string(points[i]) + " is not adjacent to " + to_string(*prev));
    }
}

Conformation parse_labelled_path(const Section& sec, const BeadNames& names)
{
    std::vector<Point> points;
    std::vector<BeadType> labels;
    std::vector<std::size_t> lines;
    for (const auto& l : sec.lines) {
        points.push_back(parse_point(l, 3));
        labels.push_back(bead_id(names, l.tokens[2], l.number));
        lines.push_back(l.number);
    }
    check_path(points, lines);
    return Conformation::make(std::move(points), std::move(labels));
}

void write_sequence(std::ostream& out, const std::vector<SequenceItem>& seq, const BeadNames& names)
{
    std::size_t on_line = 0;
    std::function<void(const std::vector<SequenceItem>&)> emit = [&](const std::vector<SequenceItem>& items) {
        for (const auto& item : items) {
            if (on_line == 16) {
                out << '\n';
                on_line = 0;
            }
            if (on_line)
                out << ' ';
            ++on_line;
            if (item.group) {
                out << "repeat " << item.count << " {";
                emit(item.body);
                out << " }";
            } else {
                out << names.name(item.bead);
            }
        }
    };
    emit(seq);
    out << '\n';
}

void write_beads(std::ostream& out, const BeadNames& names)
{
    out << "[beads]\n";
    for (std::size_t i = 0; i < names.size(); ++i)
        out << names.names()[i] << (i + 1 == names.size() || i % 16 == 15 ? "\n" : " ");
}

void write_path(std::ostream& out, const Conformation& c, const BeadNames& names)
{
    for (std::size_t i = 0; i < c.size(); ++i)
        out << c.points[i].x << ' ' << c.points[i].y << ' ' << names.name(c.labels[i]) << '\n';
}

AttractionRule parse_rule_section(const Section& sec, const BeadNames& names)
{
    AttractionRule rule;
    for (const auto& l : sec.lines) {
        if (l.tokens.size() != 2)
            throw ParseError(l.number, "a rule line is two bead names");
        rule.add(bead_id(names, l.tokens[0], l.number), bead_id(names, l.tokens[1], l.number));
    }
    return rule;
}

} // namespace

OritatamiSystem SystemFile::system() const
{
    return {expand(sequence), rule, delay};
}

SystemFile parse_system(std::istream& in)
{
    static const std::set<std::string> known{"beads", "sequence", "rule", "delay", "dynamics", "seed"};
    const auto s = read_sections(in, [](const std::string& n) { return known.count(n) != 0; });
    SystemFile f;
    f.beads = parse_beads(s);
    f.sequence = parse_sequence(s.get("sequence"), f.beads);
    if (s.has("rule"))
        f.rule = parse_rule_section(s.get("rule"), f.beads);
    f.delay = parse_delay(s);
    f.dynamics = parse_dynamics(s);
    const auto& seed = s.get("seed");
    if (seed.lines.empty())
        throw ParseError(seed.header_line, "the seed needs at least one bead");
    f.seed = parse_labelled_path(seed, f.beads);
    return f;
}

void write_system(std::ostream& out, const SystemFile& f)
{
    write_beads(out, f.beads);
    out << "[sequence]\n";
    write_sequence(out, f.sequence, f.beads);
    out << "[rule]\n";
    write_rule(out, f.rule, f.beads);
    out << "[delay]\n" << f.delay << "\n[dynamics]\n" << to_string(f.dynamics) << "\n[seed]\n";
    write_path(out, f.seed, f.beads);
}

InstanceFile parse_instance(std::istream& in)
{
    static const std::set<std::string> known{"beads", "sequence", "delay", "dynamics"};
    auto is_known = [](const std::string& n) {
        if (known.count(n))
            return true;
        for (const std::string prefix : {"seed-", "target-"}) {
            if (n.rfind(prefix, 0) == 0 && n.size() > prefix.size()
                && std::all_of(n.begin() + static_cast<std::ptrdiff_t>(prefix.size()), n.end(),
                               [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                return true;
        }
        return false;
    };
    const auto s = read_sections(in, is_known);
    InstanceFile f;
    f.beads = parse_beads(s);
    f.sequence = parse_sequence(s.get("sequence"), f.beads);
    f.instance.primary = expand(f.sequence);
    f.instance.delay = parse_delay(s);
    f.instance.dynamics = parse_dynamics(s);
    const std::size_t len = f.instance.target_length();
    for (std::size_t i = 1;; ++i) {
        const std::string seed_name = "seed-" + std::to_string(i);
        const std::string target_name = "target-" + std::to_string(i);
        if (!s.has(seed_name)) {
            if (s.has(target_name))
                throw ParseError(s.get(target_name).header_line, "[" + target_name + "] without a seed");
            break;
        }
        const auto& seed_sec = s.get(seed_name);
        if (seed_sec.lines.empty())
            throw ParseError(seed_sec.header_line, "the seed needs at least one bead");
        Scenario sc;
        sc.seed = parse_labelled_path(seed_sec, f.beads);
        const auto& target_sec = s.get(target_name);
        std::vector<std::size_t> lines;
        for (const auto& l : target_sec.lines) {
            sc.target.push_back(parse_point(l, 2));
            lines.push_back(l.number);
        }
        if (sc.target.size() != len)
            throw ParseError(target_sec.header_line, "target covers " + std::to_string(sc.target.size())
                                                         + " beads, expected " + std::to_string(len));
        check_path(sc.target, lines, sc.seed.points);
        f.instance.scenarios.push_back(std::move(sc));
    }
    // Numbered sections must be consecutive.
    for (const auto& name : s.order)
        if (name.rfind("seed-", 0) == 0 || name.rfind("target-", 0) == 0) {
            const auto num = std::stoul(name.substr(name.find('-') + 1));
            if (num == 0 || num > f.instance.scenarios.size())
                throw ParseError(s.get(name).header_line, "[" + name + "] is out of sequence");
        }
    if (f.instance.scenarios.empty())
        throw ParseError(s.last_line, "an instance needs [seed-1] and [target-1]");
    try {
        f.instance.validate();
    } catch (const std::exception& e) {
        throw ParseError(s.last_line, e.what());
    }
    return f;
}

void write_instance(std::ostream& out, const InstanceFile& f)
{
    write_beads(out, f.beads);
    out << "[sequence]\n";
    write_sequence(out, f.sequence, f.beads);
    out << "[delay]\n" << f.instance.delay << "\n[dynamics]\n" << to_string(f.instance.dynamics) << '\n';
    for (std::size_t i = 0; i < f.instance.scenarios.size(); ++i) {
        const auto& sc = f.instance.scenarios[i];
        out << "[seed-" << i + 1 << "]\n";
        write_path(out, sc.seed, f.beads);
        out << "[target-" << i + 1 << "]\n";
        for (Point p : sc.target)
            out << p.x << ' ' << p.y << '\n';
    }
}

InstanceFile make_instance_file(const RuleDesignInstance& inst, const std::function<std::string(BeadType)>& namer)
{
    BeadType top = 0;
    for (BeadType t : inst.universe())
        top = std::max(top, t);
    std::vector<std::string> names;
    for (BeadType t = 0; t <= top; ++t)
        names.push_back(namer(t));
    InstanceFile f;
    f.beads = BeadNames(std::move(names));
    for (BeadType t : inst.primary)
        f.sequence.push_back({t, false, 0, {}});
    f.instance = inst;
    return f;
}

AttractionRule parse_rule(std::istream& in, const BeadNames& names)
{
    AttractionRule rule;
    std::string text;
    std::size_t number = 0;
    while (std::getline(in, text)) {
        ++number;
        if (const auto hash = text.find('#'); hash != std::string::npos)
            text.erase(hash);
        const auto toks = tokenize(text);
        if (toks.empty())
            continue;
        if (toks.size() != 2)
            throw ParseError(number, "a rule line is two bead names");
        rule.add(bead_id(names, toks[0], number), bead_id(names, toks[1], number));
    }
    return rule;
}

void write_rule(std::ostream& out, const AttractionRule& rule, const BeadNames& names)
{
    for (const auto& [a, b] : rule.pairs())
        out << names.name(a) << ' ' << names.name(b) << '\n';
}

ConformationFile parse_conformation(std::istream& in)
{
    static const std::set<std::string> known{"beads", "conformation", "coding"};
    const auto s = read_sections(in, [](const std::string& n) { return known.count(n) != 0; });
    ConformationFile f;
    f.beads = parse_beads(s);
    f.conformation = parse_labelled_path(s.get("conformation"), f.beads);
    if (!s.has("coding")) {
        // Default coding ids must exist in the bead list.
        const auto& c = f.coding;
        BeadType top = c.filler;
        for (const auto* v : {&c.start, &c.bit0, &c.bit1, &c.silent})
            for (BeadType t : *v)
                top = std::max(top, t);
        if (static_cast<std::size_t>(top) >= f.beads.size())
            throw ParseError(s.get("beads").header_line, "no [coding] and too few beads for the default coding");
        return f;
    }
    std::set<std::string> seen;
    for (const auto& l : s.get("coding").lines) {
        if (l.tokens.empty())
            continue;
        const std::string& key = l.tokens[0];
        std::vector<BeadType> ids;
        for (std::size_t i = 1; i < l.tokens.size(); ++i)
            ids.push_back(bead_id(f.beads, l.tokens[i], l.number));
        if (!seen.insert(key).second)
            throw ParseError(l.number, "coding entry " + key + " repeated");
        if (key == "start")
            f.coding.start = ids;
        else if (key == "bit0")
            f.coding.bit0 = ids;
        else if (key == "bit1")
            f.coding.bit1 = ids;
        else if (key == "silent")
            f.coding.silent = ids;
        else if (key == "filler" && ids.size() == 1)
            f.coding.filler = ids[0];
        else
            throw ParseError(l.number, "unknown coding entry " + key);
    }
    try {
        f.coding.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(s.get("coding").header_line, e.what());
    }
    return f;
}

void write_conformation(std::ostream& out, const ConformationFile& f)
{
    write_beads(out, f.beads);
    out << "[coding]\n";
    auto line = [&](const char* key, const std::vector<BeadType>& ids) {
        out << key;
        for (BeadType t : ids)
            out << ' ' << f.beads.name(t);
        out << '\n';
    };
    line("start", f.coding.start);
    line("bit0", f.coding.bit0);
    line("bit1", f.coding.bit1);
    line("silent", f.coding.silent);
    out << "filler " << f.beads.name(f.coding.filler) << "\n[conformation]\n";
    write_path(out, f.conformation, f.beads);
}

ConformationFile counter_conformation_file(const Conformation& c, const RowCoding& coding)
{
    coding.validate();
    std::map<BeadType, std::string> named;
    auto name_all = [&](const std::vector<BeadType>& ids, const std::string& prefix) {
        for (std::size_t i = 0; i < ids.size(); ++i)
            named.emplace(ids[i], prefix + std::to_string(i));
    };
    name_all(coding.start, "S");
    name_all(coding.bit0, "Z");
    name_all(coding.bit1, "O");
    name_all(coding.silent, "Q");
    named.emplace(coding.filler, "_");
    BeadType top = named.rbegin()->first;
    for (BeadType t : c.labels)
        top = std::max(top, t);
    std::vector<std::string> names;
    for (BeadType t = 0; t <= top; ++t) {
        const auto it = named.find(t);
        names.push_back(it != named.end() ? it->second : "t" + std::to_string(t));
    }
    return {BeadNames(std::move(names)), c, coding};
}

} // namespace oritatami
