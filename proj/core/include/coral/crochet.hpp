#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace coral {

/// Circumference 2 pi sinh(r) of a hyperbolic circle of radius r (unit curvature -1).
double circle_length(double r);

struct Row {
    int radius = 0;
    double length = 0.0;
    int chains = 0;
};

/// Rows r = 1..max_radius holding chain counts proportional to circle length.
struct RowPlan {
    std::vector<Row> rows;
    double gauge = 0.0; ///< chains per unit hyperbolic length
    int initial_chains = 0;
};

/// chains(r) = round(initial * sinh r / sinh 1), half away from zero.
RowPlan plan_rows(int initial_chains, int max_radius);

enum class PatternMode {
    Even,  ///< larger multipliers spread out evenly (Bresenham)
    Block, ///< repeated fixed blocks, remainder at the end of the row
};

/// A run of `repeat` copies of `unit`.
struct PatternSegment {
    std::vector<int> unit;
    int repeat = 1;
};

/// How many chains to work into each chain of the parent row.
struct StitchPattern {
    std::vector<int> multipliers; ///< one per parent chain, in working order
    int total = 0;                ///< sum of multipliers: the new row's chain count
    PatternMode mode = PatternMode::Block;
    std::vector<PatternSegment> layout; ///< compressed form of `multipliers`

    int parent_chains() const noexcept { return static_cast<int>(multipliers.size()); }
    /// multiplier value -> how many parent chains receive it
    std::map<int, int> histogram() const;
};

/// Spreads target chains over parent chains using multipliers floor(target/parent)
/// and one more. Throws ParameterError for decreases or non-positive counts.
StitchPattern distribute_multipliers(int parent_chains, int target_chains, PatternMode mode);

struct MagicCircle {
    int chains = 6;
};

/// "[3332]x10, 3 3 3" style text for one row's multipliers.
std::string render_segments(const StitchPattern& p);

/// Row-by-row instructions, one line per row, preceded by the magic circle.
std::string render_pattern(const RowPlan& plan, PatternMode mode, MagicCircle circle = {});

struct ParsedRow {
    std::vector<int> multipliers; ///< empty for the foundation line
    int total = 0;
};

/// Reads back the foundation line and every "Row k" line of render_pattern output.
/// Throws ParameterError on malformed lines.
std::vector<ParsedRow> parse_pattern(std::string_view text);

/// "r,l,chains" CSV mirroring the circle-length table. Lengths are truncated to two
/// decimals unless `precise` is set.
std::string chains_csv(const RowPlan& plan, bool precise = false);

std::string chains_text(const RowPlan& plan, bool precise = false);

} // namespace coral
