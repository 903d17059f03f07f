#include "oritatami/counter.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace oritatami {

std::string to_string(RowBlock b)
{
    switch (b) {
    case RowBlock::Start:
        return "Start";
    case RowBlock::Bit0:
        return "Bit0";
    case RowBlock::Bit1:
        return "Bit1";
    case RowBlock::Silent:
        return "Silent";
    }
    return "?";
}

std::string to_string(const RowDescriptor& row)
{
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i)
        out += (i ? " " : "") + to_string(row[i]);
    return out;
}

void CounterLayout::validate() const
{
    if (bit_width < 1 || bit_width % 2 == 0)
        throw CounterRangeError("bit width must be odd and positive, got " + std::to_string(bit_width));
}

int row_length(const RowDescriptor& row)
{
    int len = 0;
    for (auto b : row)
        len += b == RowBlock::Start    ? CounterLayout::start_beads
               : b == RowBlock::Silent ? CounterLayout::silent_beads
                                       : CounterLayout::bit_beads;
    return len;
}

RowDescriptor encode_seed(std::uint64_t n, int b, BitOrder order)
{
    CounterLayout{b}.validate();
    if (b > 63 || n >= (std::uint64_t{1} << b))
        throw CounterRangeError(std::to_string(n) + " does not fit in " + std::to_string(b) + " bits");
    RowDescriptor row{RowBlock::Start};
    for (int k = 0; k < b; ++k) {
        if (k)
            row.push_back(RowBlock::Silent);
        const int bit = order == BitOrder::MsbFirst ? b - 1 - k : k;
        row.push_back((n >> bit) & 1 ? RowBlock::Bit1 : RowBlock::Bit0);
    }
    return row;
}

int bit_count(const RowDescriptor& row)
{
    return static_cast<int>(std::count_if(row.begin(), row.end(),
                                          [](RowBlock x) { return x == RowBlock::Bit0 || x == RowBlock::Bit1; }));
}

std::uint64_t decode_row(const RowDescriptor& row, BitOrder order)
{
    if (row.empty() || row[0] != RowBlock::Start)
        throw MalformedRow("row does not begin with the start signal");
    if (row.size() % 2 != 0)
        throw MalformedRow("row does not end with a bit");
    std::vector<int> bits;
    for (std::size_t i = 1; i < row.size(); ++i) {
        const bool bit_slot = i % 2 == 1;
        if (bit_slot) {
            if (row[i] != RowBlock::Bit0 && row[i] != RowBlock::Bit1)
                throw MalformedRow("block " + std::to_string(i) + " should be a bit");
            bits.push_back(row[i] == RowBlock::Bit1);
        } else if (row[i] != RowBlock::Silent) {
            throw MalformedRow("block " + std::to_string(i) + " should be silent");
        }
    }
    if (bits.size() > 64)
        throw MalformedRow("row holds more than 64 bits");
    if (order == BitOrder::LsbFirst)
        std::reverse(bits.begin(), bits.end());
    std::uint64_t v = 0;
    for (int bit : bits)
        v = (v << 1) | static_cast<std::uint64_t>(bit);
    return v;
}

void RowCoding::validate() const
{
    if (start.size() != CounterLayout::start_beads || bit0.size() != CounterLayout::bit_beads
        || bit1.size() != CounterLayout::bit_beads || silent.size() != CounterLayout::silent_beads)
        throw std::invalid_argument("row coding blocks have the wrong bead counts");
    if (bit0 == bit1)
        throw std::invalid_argument("the two bit codes must differ");
}

std::vector<BeadType> RowCoding::spell(const RowDescriptor& row) const
{
    std::vector<BeadType> out;
    for (auto b : row) {
        const auto& code = b == RowBlock::Start ? start : b == RowBlock::Bit0 ? bit0 : b == RowBlock::Bit1 ? bit1 : silent;
        out.insert(out.end(), code.begin(), code.end());
    }
    return out;
}

RowDescriptor RowCoding::parse(const std::vector<BeadType>& beads) const
{
    validate();
    RowDescriptor row;
    std::size_t at = 0;
    auto match = [&](const std::vector<BeadType>& code) {
        return at + code.size() <= beads.size() && std::equal(code.begin(), code.end(), beads.begin() + at);
    };
    if (!match(start))
        throw MalformedRow("no start signal");
    row.push_back(RowBlock::Start);
    at += start.size();
    bool want_bit = true;
    while (at < beads.size()) {
        if (want_bit) {
            if (match(bit0))
                row.push_back(RowBlock::Bit0);
            else if (match(bit1))
                row.push_back(RowBlock::Bit1);
            else
                throw MalformedRow("no bit code at bead " + std::to_string(at));
            at += CounterLayout::bit_beads;
        } else {
            if (!match(silent))
                throw MalformedRow("no silent code at bead " + std::to_string(at));
            row.push_back(RowBlock::Silent);
            at += silent.size();
        }
        want_bit = !want_bit;
    }
    if (want_bit)
        throw MalformedRow("row does not end with a bit");
    return row;
}

RowDecoder lattice_row_decoder(const RowCoding& coding, int base_y, bool right_to_left)
{
    coding.validate();
    return [coding, base_y, right_to_left](const Conformation& c, std::size_t row) -> std::optional<RowDescriptor> {
        const int y = base_y - static_cast<int>(row);
        std::map<int, BeadType> line;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c.points[i].y == y)
                line[c.points[i].x] = c.labels[i];
        if (line.empty())
            return std::nullopt;
        std::vector<BeadType> beads;
        int prev = line.begin()->first - 1;
        for (const auto& [x, t] : line) {
            if (x != prev + 1)
                throw MalformedRow("gap in the row at x = " + std::to_string(x));
            prev = x;
            beads.push_back(t);
        }
        if (right_to_left)
            std::reverse(beads.begin(), beads.end());
        return coding.parse(beads);
    };
}

Conformation counter_golden_trace(std::uint64_t n, int b, std::size_t values, const RowCoding& coding, BitOrder order)
{
    coding.validate();
    const int len = CounterLayout{b}.row_length();
    std::vector<Point> points;
    std::vector<BeadType> labels;
    const std::size_t rows = values == 0 ? 0 : 6 * (values - 1) + 1;
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<BeadType> line;
        if (r % 6 == 0) {
            const std::uint64_t v = (n + r / 6) % (std::uint64_t{1} << b);
            line = coding.spell(encode_seed(v, b, order));
        } else {
            line.assign(static_cast<std::size_t>(len), coding.filler);
        }
        const int y = -static_cast<int>(r);
        for (int k = 0; k < len; ++k) {
            const int x = r % 2 == 0 ? k : len - 1 - k;
            points.push_back({x, y});
            labels.push_back(line[static_cast<std::size_t>(x)]);
        }
    }
    return Conformation::make(std::move(points), std::move(labels));
}

CounterReport verify_counter(const Conformation& c, std::uint64_t n, int b, const RowDecoder& decoder, BitOrder order,
                             std::optional<std::size_t> max_values)
{
    CounterLayout{b}.validate();
    if (b > 63 || n >= (std::uint64_t{1} << b))
        throw CounterRangeError(std::to_string(n) + " does not fit in " + std::to_string(b) + " bits");
    std::uint64_t count = (std::uint64_t{1} << b) - n;
    if (max_values)
        count = std::min<std::uint64_t>(count, *max_values);
    CounterReport report;
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::size_t row = 6 * static_cast<std::size_t>(i);
        std::optional<RowDescriptor> desc;
        try {
            desc = decoder(c, row);
        } catch (const MalformedRow& e) {
            throw DecodeFailure(row, e.what());
        }
        if (!desc)
            throw MissingRow(row);
        std::uint64_t v = 0;
        try {
            v = decode_row(*desc, order);
        } catch (const MalformedRow& e) {
            throw DecodeFailure(row, e.what());
        }
        ++report.rows_checked;
        if (bit_count(*desc) != b || v != n + i) {
            report.pass = false;
            report.failed_i = static_cast<std::size_t>(i);
            report.expected = n + i;
            report.found = v;
            report.message = "row " + std::to_string(row) + " holds " + std::to_string(v) + " on "
                             + std::to_string(bit_count(*desc)) + " bits, expected " + std::to_string(n + i);
            return report;
        }
    }
    report.message = std::to_string(report.rows_checked) + " rows hold n + i";
    return report;
}

bool Perimeter::contains(Point p) const
{
    return p.x >= x0 && p.x < x0 + width && p.y >= y0 && p.y < y0 + height;
}

void FunctionSpec::validate(const OritatamiSystem& sys) const
{
    if (expected.empty())
        throw std::invalid_argument(name + ": empty function");
    if (module_begin + expected.size() > sys.primary.size())
        throw std::invalid_argument(name + ": module runs past the primary structure");
    if (expected.front() != entry)
        throw std::invalid_argument(name + ": expected conformation does not start at the entry");
    for (Point p : expected)
        if (!perimeter.contains(p))
            throw std::invalid_argument(name + ": expected conformation leaves the perimeter");
    if (surroundings.empty())
        throw std::invalid_argument(name + ": no surroundings");
    std::vector<Point> all = surroundings.points;
    all.insert(all.end(), expected.begin(), expected.end());
    bool ok = false;
    try {
        ok = is_self_avoiding(all);
    } catch (const NonPathError&) {
    }
    if (!ok)
        throw std::invalid_argument(name + ": expected conformation does not continue the surroundings");
}

std::optional<std::string> function_failure(const OritatamiSystem& sys, const FunctionSpec& f, Dynamics d,
                                            std::size_t max_frontier)
{
    sys.validate();
    f.validate(sys);
    const std::size_t len = f.expected.size();
    const std::size_t lookahead = std::min(f.lookahead.value_or(static_cast<std::size_t>(sys.delay - 1)),
                                           sys.primary.size() - f.module_begin - len);
    OritatamiSystem local{{sys.primary.begin() + static_cast<std::ptrdiff_t>(f.module_begin),
                           sys.primary.begin() + static_cast<std::ptrdiff_t>(f.module_begin + len + lookahead)},
                          sys.rule,
                          sys.delay};
    RunOptions opts;
    opts.dynamics = d;
    opts.max_steps = len + lookahead;
    opts.keep_trace = false;
    opts.max_frontier = max_frontier;
    const auto outcome = run(local, f.surroundings, opts);
    if (outcome.nondeterministic_bead && *outcome.nondeterministic_bead <= len)
        return f.name + ": bead " + std::to_string(*outcome.nondeterministic_bead) + " is not deterministic";
    for (std::size_t i = 1; i <= len; ++i) {
        const auto it = outcome.final_positions.find(i);
        if (it == outcome.final_positions.end())
            return f.name + ": bead " + std::to_string(i) + " is never placed";
        if (it->second != f.expected[i - 1])
            return f.name + ": bead " + std::to_string(i) + " folds at (" + std::to_string(it->second.x) + ","
                   + std::to_string(it->second.y) + ")";
    }
    return std::nullopt;
}

bool check_function(const OritatamiSystem& sys, const FunctionSpec& f, Dynamics d)
{
    return !function_failure(sys, f, d).has_value();
}

std::string CounterFunction::name() const
{
    static const char* modules[] = {"half-adder 1", "u-turn 1", "half-adder 2", "u-turn 2"};
    static const char* passes[] = {"zig", "zag", "side"};
    std::string out = std::string(modules[static_cast<int>(module)]) + " " + passes[static_cast<int>(pass)];
    if (read >= 0)
        out += " read " + std::to_string(read);
    if (carry >= 0)
        out += " carry " + std::to_string(carry);
    return out;
}

std::vector<CounterFunction> counter_inventory()
{
    std::vector<CounterFunction> out;
    for (auto m : {CounterModule::HalfAdder1, CounterModule::HalfAdder2}) {
        for (int bit : {0, 1})
            for (int carry : {0, 1})
                out.push_back({m, CounterPass::Zig, bit, carry});
        for (int bit : {0, 1})
            out.push_back({m, CounterPass::Zag, bit, -1});
    }
    for (auto m : {CounterModule::UTurn1, CounterModule::UTurn2}) {
        for (int carry : {0, 1})
            out.push_back({m, CounterPass::Zig, -1, carry});
        out.push_back({m, CounterPass::Zag, -1, -1});
        out.push_back({m, CounterPass::Side, -1, -1});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CounterFunction> counter_schedule(std::uint64_t n, int b, std::size_t values)
{
    CounterLayout{b}.validate();
    if (b > 63 || n >= (std::uint64_t{1} << b))
        throw CounterRangeError(std::to_string(n) + " does not fit in " + std::to_string(b) + " bits");
    const std::uint64_t mask = (std::uint64_t{1} << b) - 1;
    auto module_at = [](std::size_t pos) { return static_cast<CounterModule>(pos % 4); };
    std::vector<CounterFunction> out;
    std::uint64_t v = n;
    const std::size_t width = static_cast<std::size_t>(b);
    for (std::size_t round = 0; round < values; ++round) {
        // Zig: least significant bit first, carry in 1.
        int carry = 1;
        std::size_t pos = 0;
        for (std::size_t j = 0; j < width; ++j) {
            const int bit = static_cast<int>((v >> j) & 1);
            out.push_back({module_at(pos++), CounterPass::Zig, bit, carry});
            carry = bit & carry;
            if (j + 1 < width)
                out.push_back({module_at(pos++), CounterPass::Zig, -1, carry});
        }
        out.push_back({module_at(pos++), CounterPass::Side, -1, -1});
        v = (v + 1) & mask;
        // Zag: most significant bit first, copying.
        for (std::size_t j = 0; j < width; ++j) {
            const int bit = static_cast<int>((v >> (width - 1 - j)) & 1);
            out.push_back({module_at(pos++), CounterPass::Zag, bit, -1});
            if (j + 1 < width)
                out.push_back({module_at(pos++), CounterPass::Zag, -1, -1});
        }
        out.push_back({module_at(pos++), CounterPass::Side, -1, -1});
    }
    return out;
}

} // namespace oritatami
