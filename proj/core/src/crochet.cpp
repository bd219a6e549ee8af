#include "coral/crochet.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "coral/errors.hpp"
#include "coral/rounding.hpp"

namespace coral {

double circle_length(double r) {
    if (!(r >= 0.0)) {
        throw ParameterError("circle radius must be non-negative, got " + format_general(r));
    }
    return 2.0 * std::numbers::pi * std::sinh(r);
}

RowPlan plan_rows(int initial_chains, int max_radius) {
    if (initial_chains < 1) {
        throw ParameterError("initial chain count must be positive");
    }
    if (max_radius < 1) {
        throw ParameterError("need at least one row (max_radius >= 1)");
    }
    RowPlan plan;
    plan.initial_chains = initial_chains;
    plan.gauge = initial_chains / circle_length(1.0);
    const double s1 = std::sinh(1.0);
    for (int r = 1; r <= max_radius; ++r) {
        const double exact = initial_chains * std::sinh(static_cast<double>(r)) / s1;
        if (exact > 1e9) {
            throw ParameterError("row " + std::to_string(r) + " would need more than 1e9 chains");
        }
        plan.rows.push_back({r, circle_length(r), static_cast<int>(std::round(exact))});
    }
    return plan;
}

std::map<int, int> StitchPattern::histogram() const {
    std::map<int, int> h;
    for (int m : multipliers) {
        ++h[m];
    }
    return h;
}

namespace {

std::vector<int> expand(const std::vector<PatternSegment>& layout) {
    std::vector<int> out;
    for (const PatternSegment& seg : layout) {
        for (int k = 0; k < seg.repeat; ++k) {
            out.insert(out.end(), seg.unit.begin(), seg.unit.end());
        }
    }
    return out;
}

// Blocks of `k` majority multipliers closed by one minority multiplier, e.g. 3332;
// leftovers of either value trail the blocks.
std::vector<PatternSegment> block_layout(int parent, int base, int larger_count) {
    const int smaller_count = parent - larger_count;
    if (larger_count == 0) {
        return {{{base}, parent}};
    }
    const bool larger_is_major = larger_count >= smaller_count;
    const int major = larger_is_major ? base + 1 : base;
    const int minor = larger_is_major ? base : base + 1;
    const int major_count = std::max(larger_count, smaller_count);
    const int minor_count = std::min(larger_count, smaller_count);

    const int per_block = std::max(1, static_cast<int>(std::lround(
                                          static_cast<double>(major_count) / minor_count)));
    const int blocks = std::min(major_count / per_block, minor_count);

    std::vector<PatternSegment> layout;
    if (blocks > 0) {
        std::vector<int> unit(per_block, major);
        unit.push_back(minor);
        layout.push_back({std::move(unit), blocks});
    }
    for (int k = 0; k < major_count - blocks * per_block; ++k) {
        layout.push_back({{major}, 1});
    }
    for (int k = 0; k < minor_count - blocks; ++k) {
        layout.push_back({{minor}, 1});
    }
    return layout;
}

std::vector<PatternSegment> even_layout(int parent, int base, int larger_count) {
    std::vector<PatternSegment> layout;
    layout.reserve(parent);
    for (long long i = 0; i < parent; ++i) {
        const bool larger = (i + 1) * larger_count / parent > i * larger_count / parent;
        layout.push_back({{larger ? base + 1 : base}, 1});
    }
    return layout;
}

std::string join_unit(const std::vector<int>& unit) {
    const bool compact = std::all_of(unit.begin(), unit.end(), [](int m) { return m < 10; });
    std::string s;
    for (std::size_t i = 0; i < unit.size(); ++i) {
        if (!compact && i > 0) {
            s += '.';
        }
        s += std::to_string(unit[i]);
    }
    return s;
}

int parse_int(std::string_view s) {
    while (!s.empty() && s.front() == ' ') {
        s.remove_prefix(1);
    }
    while (!s.empty() && s.back() == ' ') {
        s.remove_suffix(1);
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw ParameterError("malformed number in pattern: '" + std::string(s) + "'");
    }
    return value;
}

std::vector<int> parse_segments(std::string_view text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(", ", pos);
        std::string_view token = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                                 : comma - pos);
        if (!token.empty() && token.front() == '[') {
            const std::size_t close = token.find("]x");
            if (close == std::string_view::npos) {
                throw ParameterError("malformed block in pattern: '" + std::string(token) + "'");
            }
            const std::string_view inner = token.substr(1, close - 1);
            std::vector<int> unit;
            if (inner.find('.') != std::string_view::npos) {
                std::size_t p = 0;
                while (p <= inner.size()) {
                    std::size_t dot = inner.find('.', p);
                    unit.push_back(parse_int(inner.substr(p, dot == std::string_view::npos ? std::string_view::npos
                                                                                          : dot - p)));
                    if (dot == std::string_view::npos) {
                        break;
                    }
                    p = dot + 1;
                }
            } else {
                for (char c : inner) {
                    unit.push_back(parse_int(std::string_view(&c, 1)));
                }
            }
            const int repeat = parse_int(token.substr(close + 2));
            for (int k = 0; k < repeat; ++k) {
                out.insert(out.end(), unit.begin(), unit.end());
            }
        } else {
            std::size_t p = 0;
            while (p < token.size()) {
                std::size_t space = token.find(' ', p);
                const std::string_view item =
                    token.substr(p, space == std::string_view::npos ? std::string_view::npos : space - p);
                if (!item.empty()) {
                    out.push_back(parse_int(item));
                }
                if (space == std::string_view::npos) {
                    break;
                }
                p = space + 1;
            }
        }
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 2;
    }
    return out;
}

int parse_chain_count(std::string_view s) {
    constexpr std::string_view suffix = " chains";
    if (s.size() < suffix.size() || s.substr(s.size() - suffix.size()) != suffix) {
        throw ParameterError("expected '<count> chains', got '" + std::string(s) + "'");
    }
    return parse_int(s.substr(0, s.size() - suffix.size()));
}

} // namespace

StitchPattern distribute_multipliers(int parent_chains, int target_chains, PatternMode mode) {
    if (parent_chains < 1) {
        throw ParameterError("parent row must have at least one chain");
    }
    if (target_chains < parent_chains) {
        throw ParameterError("decreasing rows are not supported (" + std::to_string(parent_chains) +
                             " -> " + std::to_string(target_chains) + ")");
    }
    const int base = target_chains / parent_chains;
    const int larger_count = target_chains % parent_chains;

    StitchPattern p;
    p.mode = mode;
    p.total = target_chains;
    p.layout = mode == PatternMode::Block ? block_layout(parent_chains, base, larger_count)
                                          : even_layout(parent_chains, base, larger_count);
    p.multipliers = expand(p.layout);
    return p;
}

std::string render_segments(const StitchPattern& p) {
    std::vector<std::string> tokens;
    std::string singles;
    auto flush = [&] {
        if (!singles.empty()) {
            tokens.push_back(std::move(singles));
            singles.clear();
        }
    };
    for (const PatternSegment& seg : p.layout) {
        if (seg.repeat > 1) {
            flush();
            tokens.push_back("[" + join_unit(seg.unit) + "]x" + std::to_string(seg.repeat));
            continue;
        }
        for (int m : seg.unit) {
            if (!singles.empty()) {
                singles += ' ';
            }
            singles += std::to_string(m);
        }
    }
    flush();
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        out += (i == 0 ? "" : ", ") + tokens[i];
    }
    return out;
}

std::string render_pattern(const RowPlan& plan, PatternMode mode, MagicCircle circle) {
    if (circle.chains < 3) {
        throw ParameterError("magic circle needs at least 3 chains");
    }
    if (plan.rows.empty()) {
        throw ParameterError("row plan is empty");
    }
    std::ostringstream os;
    os << "# hyperbolic crochet plan, " << (mode == PatternMode::Block ? "block" : "even")
       << " mode, gauge " << format_general(plan.gauge, 6) << " chains per unit length\n";
    os << "Magic circle: " << circle.chains << " chains\n";
    os << "Foundation (r=" << plan.rows.front().radius << "): " << plan.rows.front().chains << " chains\n";
    for (std::size_t i = 1; i < plan.rows.size(); ++i) {
        const StitchPattern p = distribute_multipliers(plan.rows[i - 1].chains, plan.rows[i].chains, mode);
        os << "Row " << i << " (r=" << plan.rows[i].radius << "): " << render_segments(p) << " -> "
           << p.total << " chains\n";
    }
    return os.str();
}

std::vector<ParsedRow> parse_pattern(std::string_view text) {
    std::vector<ParsedRow> rows;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        if (line.starts_with("Foundation")) {
            const std::size_t colon = line.find("): ");
            if (colon == std::string_view::npos) {
                throw ParameterError("malformed foundation line: '" + std::string(line) + "'");
            }
            rows.push_back({{}, parse_chain_count(line.substr(colon + 3))});
        } else if (line.starts_with("Row ")) {
            const std::size_t colon = line.find("): ");
            const std::size_t arrow = line.rfind(" -> ");
            if (colon == std::string_view::npos || arrow == std::string_view::npos || arrow < colon) {
                throw ParameterError("malformed row line: '" + std::string(line) + "'");
            }
            ParsedRow row;
            row.multipliers = parse_segments(line.substr(colon + 3, arrow - colon - 3));
            row.total = parse_chain_count(line.substr(arrow + 4));
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string chains_csv(const RowPlan& plan, bool precise) {
    std::ostringstream os;
    os << "r,l,chains\n";
    for (const Row& row : plan.rows) {
        os << row.radius << ','
           << (precise ? format_shortest(row.length) : format_rounded(row.length, 2, Rounding::TowardZero))
           << ',' << row.chains << '\n';
    }
    return os.str();
}

std::string chains_text(const RowPlan& plan, bool precise) {
    std::ostringstream os;
    os << std::left << std::setw(6) << "r" << std::setw(precise ? 22 : 12) << "l" << "chains\n";
    for (const Row& row : plan.rows) {
        os << std::left << std::setw(6) << row.radius << std::setw(precise ? 22 : 12)
           << (precise ? format_shortest(row.length) : format_rounded(row.length, 2, Rounding::TowardZero))
           << row.chains << '\n';
    }
    os << "gauge " << format_general(plan.gauge, 6) << " chains per unit length\n";
    return os.str();
}

} // namespace coral
