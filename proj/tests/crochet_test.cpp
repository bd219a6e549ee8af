#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <regex>

#include "coral/crochet.hpp"
#include "coral/errors.hpp"

using namespace coral;

namespace {

std::vector<int> chain_counts(const RowPlan& plan) {
    std::vector<int> out;
    for (const Row& r : plan.rows) {
        out.push_back(r.chains);
    }
    return out;
}

std::string line_starting(const std::string& text, const std::string& prefix) {
    std::size_t pos = text.find("\n" + prefix);
    if (pos == std::string::npos) {
        return {};
    }
    ++pos;
    return text.substr(pos, text.find('\n', pos) - pos);
}

} // namespace

TEST(CircleLength, ReferenceValues) {
    EXPECT_NEAR(circle_length(1), 7.38, 0.01);
    EXPECT_NEAR(circle_length(2), 22.78, 0.01);
    EXPECT_NEAR(circle_length(3), 62.94, 0.01);
    EXPECT_NEAR(circle_length(4), 171.46, 0.01);
    EXPECT_EQ(circle_length(0), 0.0);
    EXPECT_THROW(circle_length(-0.5), ParameterError);
}

TEST(PlanRows, ReferenceChainCounts) {
    const RowPlan plan = plan_rows(14, 4);
    EXPECT_EQ(chain_counts(plan), (std::vector<int>{14, 43, 119, 325}));
    EXPECT_NEAR(plan.gauge, 14 / (2 * std::numbers::pi * std::sinh(1.0)), 1e-15);
    EXPECT_NEAR(plan.gauge, 1.896, 1e-3);
}

TEST(PlanRows, SingleRow) { EXPECT_EQ(chain_counts(plan_rows(14, 1)), std::vector<int>{14}); }

TEST(PlanRows, UnitInitial) { EXPECT_EQ(chain_counts(plan_rows(1, 4)), (std::vector<int>{1, 3, 9, 23})); }

TEST(PlanRows, Errors) {
    EXPECT_THROW(plan_rows(0, 4), ParameterError);
    EXPECT_THROW(plan_rows(14, 0), ParameterError);
    EXPECT_THROW(plan_rows(14, 40), ParameterError);
}

TEST(PlanRows, InvariantsOverManyInitialCounts) {
    for (int initial = 3; initial <= 200; ++initial) {
        const RowPlan plan = plan_rows(initial, 6);
        for (std::size_t i = 0; i < plan.rows.size(); ++i) {
            const Row& row = plan.rows[i];
            EXPECT_NEAR(row.length, 2 * std::numbers::pi * std::sinh(row.radius), 1e-9);
            EXPECT_EQ(row.chains, std::lround(initial * std::sinh(row.radius) / std::sinh(1.0)));
            if (i > 0) {
                EXPECT_GT(row.chains, plan.rows[i - 1].chains);
                // gauge consistency
                EXPECT_NEAR(row.chains / row.length, plan.gauge, 0.05) << initial << " r=" << row.radius;
            }
        }
    }
}

TEST(DistributeMultipliers, ReferenceRows) {
    EXPECT_EQ(distribute_multipliers(14, 43, PatternMode::Block).histogram(), (std::map<int, int>{{3, 13}, {4, 1}}));
    EXPECT_EQ(distribute_multipliers(43, 119, PatternMode::Block).histogram(), (std::map<int, int>{{2, 10}, {3, 33}}));
    EXPECT_EQ(distribute_multipliers(119, 325, PatternMode::Block).histogram(), (std::map<int, int>{{2, 32}, {3, 87}}));
}

TEST(DistributeMultipliers, ReferenceBlockLayouts) {
    // 14 -> 43: three into every chain, four into the last
    const StitchPattern first = distribute_multipliers(14, 43, PatternMode::Block);
    EXPECT_EQ(first.multipliers.back(), 4);
    EXPECT_TRUE(std::all_of(first.multipliers.begin(), first.multipliers.end() - 1, [](int m) { return m == 3; }));

    // 43 -> 119: 3332 over the first 40 chains, then 3 3 3
    const StitchPattern second = distribute_multipliers(43, 119, PatternMode::Block);
    ASSERT_FALSE(second.layout.empty());
    EXPECT_EQ(second.layout.front().unit, (std::vector<int>{3, 3, 3, 2}));
    EXPECT_EQ(second.layout.front().repeat, 10);
    EXPECT_EQ(std::accumulate(second.multipliers.begin(), second.multipliers.begin() + 40, 0), 110);
    EXPECT_EQ(render_segments(second), "[3332]x10, 3 3 3");

    // 119 -> 325: 3332 over the first 116 chains, then 2 2 2
    const StitchPattern third = distribute_multipliers(119, 325, PatternMode::Block);
    EXPECT_EQ(third.layout.front().repeat, 29);
    EXPECT_EQ(std::accumulate(third.multipliers.begin(), third.multipliers.begin() + 116, 0), 319);
    EXPECT_EQ(render_segments(third), "[3332]x29, 2 2 2");
}

TEST(DistributeMultipliers, NoGrowth) {
    const StitchPattern p = distribute_multipliers(20, 20, PatternMode::Even);
    EXPECT_EQ(p.histogram(), (std::map<int, int>{{1, 20}}));
    EXPECT_EQ(distribute_multipliers(20, 20, PatternMode::Block).histogram(), p.histogram());
}

TEST(DistributeMultipliers, Errors) {
    EXPECT_THROW(distribute_multipliers(43, 14, PatternMode::Block), ParameterError);
    EXPECT_THROW(distribute_multipliers(0, 14, PatternMode::Even), ParameterError);
}

TEST(DistributeMultipliers, EvenSpacing) {
    const StitchPattern p = distribute_multipliers(43, 119, PatternMode::Even);
    // Between consecutive 2s there are three or four 3s (33 threes over 10 gaps).
    std::vector<int> positions;
    for (int i = 0; i < p.parent_chains(); ++i) {
        if (p.multipliers[i] == 2) {
            positions.push_back(i);
        }
    }
    ASSERT_EQ(positions.size(), 10u);
    for (std::size_t i = 1; i < positions.size(); ++i) {
        const int gap = positions[i] - positions[i - 1];
        EXPECT_GE(gap, 4);
        EXPECT_LE(gap, 5);
    }
}

// Property: both layouts produce the same multiset, the right total and adjacent values.
TEST(DistributeMultipliers, ModeInvariance) {
    for (int parent = 1; parent <= 60; ++parent) {
        for (int target = parent; target <= 5 * parent + 3; ++target) {
            const StitchPattern even = distribute_multipliers(parent, target, PatternMode::Even);
            const StitchPattern block = distribute_multipliers(parent, target, PatternMode::Block);
            ASSERT_EQ(even.histogram(), block.histogram()) << parent << "->" << target;
            for (const StitchPattern* p : {&even, &block}) {
                ASSERT_EQ(p->parent_chains(), parent);
                ASSERT_EQ(std::accumulate(p->multipliers.begin(), p->multipliers.end(), 0), target);
                ASSERT_EQ(p->total, target);
                const auto h = p->histogram();
                ASSERT_LE(h.size(), 2u);
                if (h.size() == 2) {
                    ASSERT_EQ(h.rbegin()->first - h.begin()->first, 1);
                }
            }
        }
    }
}

TEST(DistributeMultipliers, GrowthRatioFidelity) {
    const RowPlan base = plan_rows(14, 4);
    for (std::size_t i = 1; i < base.rows.size(); ++i) {
        const int parent = base.rows[i - 1].chains;
        const StitchPattern p = distribute_multipliers(parent, base.rows[i].chains, PatternMode::Block);
        const double ratio = std::sinh(base.rows[i].radius) / std::sinh(base.rows[i - 1].radius);
        EXPECT_LE(std::abs(static_cast<double>(p.total) / parent - ratio), 1.0 / parent);
    }
    // Rounding both rows bounds the error by (1 + ratio) / (2 parent) in general.
    for (int initial = 3; initial <= 200; ++initial) {
        const RowPlan plan = plan_rows(initial, 6);
        for (std::size_t i = 1; i < plan.rows.size(); ++i) {
            const int parent = plan.rows[i - 1].chains;
            const double ratio = std::sinh(plan.rows[i].radius) / std::sinh(plan.rows[i - 1].radius);
            EXPECT_LE(std::abs(static_cast<double>(plan.rows[i].chains) / parent - ratio),
                      (1 + ratio) / (2.0 * parent) + 1e-12);
        }
    }
}

TEST(RenderPattern, ReferencePlanBlockMode) {
    const std::string text = render_pattern(plan_rows(14, 4), PatternMode::Block);
    EXPECT_NE(text.find("Magic circle: 6 chains\n"), std::string::npos);
    EXPECT_NE(text.find("Foundation (r=1): 14 chains\n"), std::string::npos);
    EXPECT_EQ(line_starting(text, "Row 2"), "Row 2 (r=3): [3332]x10, 3 3 3 -> 119 chains");
    const std::string row3 = line_starting(text, "Row 3");
    EXPECT_EQ(row3, "Row 3 (r=4): [3332]x29, 2 2 2 -> 325 chains");

    // Expanding row 3 gives 29 consecutive 3332 blocks.
    const std::vector<ParsedRow> parsed = parse_pattern(text);
    ASSERT_EQ(parsed.size(), 4u);
    std::string digits;
    for (int m : parsed[3].multipliers) {
        digits += std::to_string(m);
    }
    int blocks = 0;
    for (std::size_t pos = 0; digits.compare(pos, 4, "3332") == 0; pos += 4) {
        ++blocks;
    }
    EXPECT_EQ(blocks, 29);
}

TEST(RenderPattern, SingleRowPlan) {
    const std::string text = render_pattern(plan_rows(14, 1), PatternMode::Block);
    EXPECT_EQ(text.find("Row "), std::string::npos);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3); // header comment, magic circle, foundation
}

TEST(RenderPattern, MagicCircleValidated) {
    EXPECT_THROW(render_pattern(plan_rows(14, 2), PatternMode::Block, {2}), ParameterError);
    EXPECT_NE(render_pattern(plan_rows(14, 2), PatternMode::Block, {8}).find("Magic circle: 8 chains"),
              std::string::npos);
}

TEST(RenderPattern, EvenAndBlockShareMultisets) {
    const RowPlan plan = plan_rows(14, 4);
    const auto even = parse_pattern(render_pattern(plan, PatternMode::Even));
    const auto block = parse_pattern(render_pattern(plan, PatternMode::Block));
    ASSERT_EQ(even.size(), block.size());
    for (std::size_t i = 1; i < even.size(); ++i) {
        auto a = even[i].multipliers, b = block[i].multipliers;
        if (i == 2) {
            EXPECT_NE(a, b); // 43 -> 119 interleaves differently
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        EXPECT_EQ(a, b);
    }
}

// Property: rendered totals and multipliers re-parse to the plan.
TEST(RenderPattern, RoundTrip) {
    for (int initial : {1, 3, 6, 14, 25, 80}) {
        for (PatternMode mode : {PatternMode::Even, PatternMode::Block}) {
            const RowPlan plan = plan_rows(initial, 5);
            const auto parsed = parse_pattern(render_pattern(plan, mode));
            ASSERT_EQ(parsed.size(), plan.rows.size());
            for (std::size_t i = 0; i < parsed.size(); ++i) {
                EXPECT_EQ(parsed[i].total, plan.rows[i].chains);
                if (i > 0) {
                    EXPECT_EQ(static_cast<int>(parsed[i].multipliers.size()), plan.rows[i - 1].chains);
                    EXPECT_EQ(std::accumulate(parsed[i].multipliers.begin(), parsed[i].multipliers.end(), 0),
                              parsed[i].total);
                }
            }
        }
    }
}

TEST(RenderPattern, LargeMultipliersUseSeparators) {
    const StitchPattern p = distribute_multipliers(2, 23, PatternMode::Block);
    EXPECT_EQ(render_segments(p), "12 11");
    EXPECT_EQ(render_segments(distribute_multipliers(4, 45, PatternMode::Block)), "11 11 11 12");
    EXPECT_EQ(render_segments(distribute_multipliers(8, 90, PatternMode::Block)), "[11.11.11.12]x2");
    const auto parsed = parse_pattern("Row 1 (r=2): [11.11.11.12]x2 -> 90 chains\n");
    ASSERT_EQ(parsed.size(), 1u);
    EXPECT_EQ(parsed[0].multipliers, (std::vector<int>{11, 11, 11, 12, 11, 11, 11, 12}));
}

TEST(ParsePattern, MalformedLines) {
    EXPECT_THROW(parse_pattern("Row 1 (r=2): 3 3 x -> 9 chains\n"), ParameterError);
    EXPECT_THROW(parse_pattern("Row 1 (r=2): [33 -> 9 chains\n"), ParameterError);
    EXPECT_THROW(parse_pattern("Foundation (r=1): many chains\n"), ParameterError);
    EXPECT_TRUE(parse_pattern("# comment only\n").empty());
}

TEST(ChainsOutput, ReferenceTable) {
    const RowPlan plan = plan_rows(14, 4);
    EXPECT_EQ(chains_csv(plan), "r,l,chains\n1,7.38,14\n2,22.78,43\n3,62.94,119\n4,171.46,325\n");
    EXPECT_NE(chains_text(plan).find("171.46"), std::string::npos);
}
