#pragma once

#include "oritatami/core.hpp"
#include "oritatami/dynamics.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oritatami {

enum class RowBlock { Start, Bit0, Bit1, Silent };

using RowDescriptor = std::vector<RowBlock>;

std::string to_string(RowBlock b);
std::string to_string(const RowDescriptor& row);

// Bead counts of the counter rows and modules.
struct CounterLayout {
    static constexpr int start_beads = 3;
    static constexpr int bit_beads = 4;
    static constexpr int silent_beads = 6;
    static constexpr int rows_per_pass = 3;
    static constexpr int period = 60;
    static constexpr int half_adder_beads = 12;
    static constexpr int u_turn_beads = 18;

    int bit_width = 1;

    // Throws CounterRangeError unless the width is odd and positive.
    void validate() const;
    int row_length() const { return start_beads + bit_beads * bit_width + silent_beads * (bit_width - 1); }
};

// Beads in a row descriptor.
int row_length(const RowDescriptor& row);

enum class BitOrder { MsbFirst, LsbFirst };

class CounterRangeError : public std::out_of_range {
public:
    explicit CounterRangeError(const std::string& what) : std::out_of_range(what) {}
};

class MalformedRow : public std::invalid_argument {
public:
    explicit MalformedRow(const std::string& what) : std::invalid_argument(what) {}
};

class MissingRow : public std::runtime_error {
public:
    explicit MissingRow(std::size_t row)
        : std::runtime_error("row " + std::to_string(row) + " is missing"), row_(row)
    {}
    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

class DecodeFailure : public std::runtime_error {
public:
    DecodeFailure(std::size_t row, const std::string& what)
        : std::runtime_error("row " + std::to_string(row) + ": " + what), row_(row)
    {}
    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

// Start, then b bits separated by silent blocks. Bit order is measured from
// the start signal.
RowDescriptor encode_seed(std::uint64_t n, int b, BitOrder order = BitOrder::MsbFirst);
std::uint64_t decode_row(const RowDescriptor& row, BitOrder order = BitOrder::MsbFirst);
int bit_count(const RowDescriptor& row);

// Bead types spelling each block.
struct RowCoding {
    std::vector<BeadType> start{1, 2, 3};
    std::vector<BeadType> bit0{4, 5, 6, 7};
    std::vector<BeadType> bit1{8, 9, 10, 11};
    std::vector<BeadType> silent{12, 13, 14, 15, 16, 17};
    // Beads of the rows between counter values.
    BeadType filler = 18;

    void validate() const;
    std::vector<BeadType> spell(const RowDescriptor& row) const;
    // Throws MalformedRow when the beads are not a concatenation of blocks.
    RowDescriptor parse(const std::vector<BeadType>& beads) const;
};

// Descriptor of lattice row r, or nothing when the row is absent.
using RowDecoder = std::function<std::optional<RowDescriptor>(const Conformation&, std::size_t row)>;

// Row r is the line y = base_y - r, read by increasing x (or decreasing x).
RowDecoder lattice_row_decoder(const RowCoding& coding, int base_y = 0, bool right_to_left = false);

// A zig-zag conformation of full rows going down from y = 0: row 6i spells
// n + i for i < values, the other rows are filler.
Conformation counter_golden_trace(std::uint64_t n, int b, std::size_t values, const RowCoding& coding = {},
                                  BitOrder order = BitOrder::MsbFirst);

struct CounterReport {
    bool pass = true;
    std::size_t rows_checked = 0;
    // First i whose row 6i does not hold n + i.
    std::optional<std::size_t> failed_i;
    std::uint64_t expected = 0;
    std::uint64_t found = 0;
    std::string message;
};

// Checks row 6i for every i < 2^b - n, or i < max_values when given. Throws
// MissingRow or DecodeFailure.
CounterReport verify_counter(const Conformation& c, std::uint64_t n, int b, const RowDecoder& decoder,
                             BitOrder order = BitOrder::MsbFirst,
                             std::optional<std::size_t> max_values = std::nullopt);

// Slanted rectangle: x0 <= x < x0 + width, y0 <= y < y0 + height.
struct Perimeter {
    int x0 = 0;
    int y0 = 0;
    int width = 0;
    int height = 0;

    bool contains(Point p) const;
};

// One function of a module: the module is primary[module_begin ..) with
// one bead per expected position.
struct FunctionSpec {
    std::string name;
    Perimeter perimeter;
    Point entry;
    // Beads around the perimeter; the last one precedes the module.
    Conformation surroundings;
    std::size_t module_begin = 0;
    std::vector<Point> expected;
    // Beads of the next module simulated but not judged; delay - 1 when unset.
    std::optional<std::size_t> lookahead;

    // Throws std::invalid_argument when the expected path leaves the
    // perimeter, does not start at the entry, or does not continue the
    // surroundings.
    void validate(const OritatamiSystem& sys) const;
};

// Simulates the module and its lookahead beads from the surroundings.
// Nothing when every module bead is deterministic and at its expected
// position.
std::optional<std::string> function_failure(const OritatamiSystem& sys, const FunctionSpec& f, Dynamics d,
                                            std::size_t max_frontier = default_max_frontier());
bool check_function(const OritatamiSystem& sys, const FunctionSpec& f, Dynamics d);

enum class CounterModule { HalfAdder1, UTurn1, HalfAdder2, UTurn2 };
enum class CounterPass { Zig, Zag, Side };

struct CounterFunction {
    CounterModule module = CounterModule::HalfAdder1;
    CounterPass pass = CounterPass::Zig;
    // Bit read by a half-adder, -1 otherwise.
    int read = -1;
    // Carry entering a zig half-adder or carried by a zig U-turn, -1 otherwise.
    int carry = -1;

    std::string name() const;
    friend auto operator<=>(const CounterFunction&, const CounterFunction&) = default;
};

// All functions of the four modules.
std::vector<CounterFunction> counter_inventory();

// Functions performed while the counter increments `values` times from n
// with b bits: each round is a zig pass adding one from the least
// significant bit, a side U-turn, a zag pass copying and a side U-turn.
std::vector<CounterFunction> counter_schedule(std::uint64_t n, int b, std::size_t values);

} // namespace oritatami
