#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "coral/crochet.hpp"
#include "coral/diffgeo.hpp"
#include "coral/errors.hpp"
#include "coral/mesh.hpp"
#include "coral/oracle.hpp"
#include "coral/rounding.hpp"
#include "coral/surface.hpp"

namespace coral::cli {
namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_number(std::string_view s, std::string_view whole) {
    s = trim(s);
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(x)) {
        throw std::invalid_argument("not a number or pi expression: '" + std::string(whole) + "'");
    }
    return x;
}

SurfaceFamily make_surface(const std::string& name, int n) {
    if (name == "coral") {
        return SurfaceFamily::coral(n);
    }
    if (name == "lettuce") {
        return SurfaceFamily::lettuce(n);
    }
    return SurfaceFamily::paraboloid();
}

/// Writes to `path`, or to `out` when path is empty or "-".
void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file || !(file << text) || !file.flush()) {
        throw IoError("cannot write '" + path + "'");
    }
}

std::string num(double x) { return format_general(x, 12); }

std::string optional_num(const std::optional<double>& x) { return x ? num(*x) : "n/a"; }

std::string report_text(const CurvatureReport& r, const std::string& which) {
    const bool paper = which != "forms";
    const bool forms = which != "paper";
    std::ostringstream os;
    auto line = [&](const std::string& key, const std::string& value) {
        os << std::left;
        os.width(13);
        os << key << value << '\n';
    };
    line("surface", r.surface.describe());
    line("point", "u=" + num(r.point.u) + " v=" + num(r.point.v) +
                      (r.in_canonical_domain ? " (canonical domain)" : " (outside canonical domain)"));
    if (forms) {
        const FirstForm& I = r.forms.first;
        const SecondForm& II = r.forms.second;
        line("E F G", num(I.E) + " " + num(I.F) + " " + num(I.G));
        line("L M N", num(II.L) + " " + num(II.M) + " " + num(II.N));
        line("W", "[[" + num(r.weingarten.w11) + ", " + num(r.weingarten.w12) + "], [" +
                      num(r.weingarten.w21) + ", " + num(r.weingarten.w22) + "]]");
        line("K_forms", num(r.K_forms));
        line("H", num(r.H));
        line("k1 k2", num(r.k1) + " " + num(r.k2));
    }
    if (paper) {
        line("K_paper", optional_num(r.K_paper));
    }
    line("A", optional_num(r.forms.A));
    if (paper && forms && r.discrepancy) {
        line("discrepancy", num(*r.discrepancy) + "  (K_paper - A*K_forms)");
        line("ratio", num(*r.K_paper / r.K_forms) + "  (K_paper / K_forms)");
    }
    return os.str();
}

std::string report_json(const CurvatureReport& r, const std::string& which) {
    using nlohmann::ordered_json;
    auto opt = [](const std::optional<double>& x) { return x ? ordered_json(*x) : ordered_json(nullptr); };
    ordered_json j;
    j["surface"] = r.surface.describe();
    j["n"] = r.surface.n();
    j["u"] = r.point.u;
    j["v"] = r.point.v;
    j["in_canonical_domain"] = r.in_canonical_domain;
    if (which != "paper") {
        j["E"] = r.forms.first.E;
        j["F"] = r.forms.first.F;
        j["G"] = r.forms.first.G;
        j["L"] = r.forms.second.L;
        j["M"] = r.forms.second.M;
        j["N"] = r.forms.second.N;
        j["W"] = {{r.weingarten.w11, r.weingarten.w12}, {r.weingarten.w21, r.weingarten.w22}};
        j["K_forms"] = r.K_forms;
        j["H"] = r.H;
        j["k1"] = r.k1;
        j["k2"] = r.k2;
    }
    if (which != "forms") {
        j["K_paper"] = opt(r.K_paper);
    }
    j["A"] = opt(r.forms.A);
    if (which == "both") {
        j["discrepancy"] = opt(r.discrepancy);
    }
    return j.dump(2) + "\n";
}

std::string report_csv(const CurvatureReport& r) {
    std::ostringstream os;
    auto opt = [](const std::optional<double>& x) { return x ? format_shortest(*x) : std::string{}; };
    os << "surface,n,u,v,K_forms,K_paper,A,discrepancy,H,k1,k2\n";
    os << r.surface.describe() << ',' << r.surface.n() << ',' << format_shortest(r.point.u) << ','
       << format_shortest(r.point.v) << ',' << format_shortest(r.K_forms) << ',' << opt(r.K_paper) << ','
       << opt(r.forms.A) << ',' << opt(r.discrepancy) << ',' << format_shortest(r.H) << ','
       << format_shortest(r.k1) << ',' << format_shortest(r.k2) << '\n';
    return os.str();
}

std::string table_json(const CurvatureTable& t, const TableFormat& fmt) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["n"] = t.n;
    j["rows"] = ordered_json::array();
    auto value = [&](double x) {
        if (std::isnan(x)) {
            return ordered_json(nullptr);
        }
        return fmt.rounding ? ordered_json(round_to(x, fmt.decimals, *fmt.rounding)) : ordered_json(x);
    };
    for (std::size_t iu = 0; iu < t.u.size(); ++iu) {
        for (std::size_t iv = 0; iv < t.v.size(); ++iv) {
            const std::size_t k = t.index(iu, iv);
            ordered_json row;
            row["u"] = t.u[iu];
            row["v"] = t.v[iv];
            row["K_paper"] = value(t.K_paper[k]);
            row["K_forms"] = value(t.K_forms[k]);
            j["rows"].push_back(std::move(row));
        }
    }
    return j.dump(2) + "\n";
}

std::string deviation_text(const SurfaceFamily& s, const GridSpec& g, const DeviationSummary& d) {
    std::ostringstream os;
    os << "K_forms over " << g.nu << "x" << g.nv << " grid, u in [" << num(g.u_floor) << ", "
       << num(g.u_max) << "], v in [0, 2pi], " << s.describe() << '\n'
       << "samples             " << d.samples << '\n'
       << "min K               " << num(d.min_K) << '\n'
       << "max K               " << num(d.max_K) << '\n'
       << "mean K              " << num(d.mean_K) << '\n'
       << "std K               " << num(d.std_K) << '\n'
       << "max |K - mean|      " << num(d.max_abs_deviation) << '\n'
       << "max per-circle std  " << num(d.max_circle_std) << '\n'
       << "everywhere negative " << (d.everywhere_negative ? "yes" : "no") << '\n'
       << "constant            " << (d.std_K > 0.0 ? "no" : "yes") << '\n';
    return os.str();
}

} // namespace

double parse_angle(std::string_view text) {
    std::string_view s = trim(text);
    const std::size_t pi = s.find("pi");
    if (pi == std::string_view::npos) {
        return parse_number(s, text);
    }
    std::string_view coef = trim(s.substr(0, pi));
    std::string_view rest = trim(s.substr(pi + 2));
    if (!coef.empty() && coef.back() == '*') {
        coef = trim(coef.substr(0, coef.size() - 1));
    }
    double factor = 1.0;
    if (coef == "-") {
        factor = -1.0;
    } else if (coef == "+") {
        factor = 1.0;
    } else if (!coef.empty()) {
        factor = parse_number(coef, text);
    }
    double denominator = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') {
            throw std::invalid_argument("not a number or pi expression: '" + std::string(text) + "'");
        }
        denominator = parse_number(rest.substr(1), text);
        if (denominator == 0.0) {
            throw std::invalid_argument("division by zero in '" + std::string(text) + "'");
        }
    }
    return factor * std::numbers::pi / denominator;
}

std::vector<double> parse_angle_list(std::string_view text) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        values.push_back(parse_angle(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                                     : comma - pos)));
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Knitted-coral surfaces: curvature, crochet row plans, meshes and oracle checks", "coral"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    const std::vector<std::string> surfaces{"coral", "lettuce", "paraboloid"};

    // curvature
    auto* curvature = app.add_subcommand("curvature", "Curvature report at one (u, v)");
    std::string c_surface = "coral";
    int c_n = 4;
    std::string c_u = "1";
    std::string c_v = "0";
    std::string c_which = "both";
    std::string c_format = "text";
    curvature->add_option("--surface", c_surface, "Surface family")->check(CLI::IsMember(surfaces));
    curvature->add_option("-n", c_n, "Angular frequency n");
    curvature->add_option("-u,--u", c_u, "Radial parameter u");
    curvature->add_option("-v,--v", c_v, "Angular parameter v in radians (pi expressions allowed)");
    curvature->add_option("--which", c_which, "Which curvature to print")
        ->check(CLI::IsMember({"paper", "forms", "both"}));
    curvature->add_option("--format", c_format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));

    // table
    auto* table = app.add_subcommand("table", "Grid of n-coral curvature values (closed form and forms-based)");
    int t_n = 4;
    std::string t_u = "0.5,1,1.5,2";
    std::string t_v = "2pi,pi/2";
    std::string t_format = "text";
    std::string t_rounding = "truncate";
    bool t_precise = false;
    std::string t_out;
    table->add_option("-n", t_n, "Angular frequency n");
    table->add_option("-u,--u", t_u, "Comma-separated u values");
    table->add_option("-v,--v", t_v, "Comma-separated v values (pi expressions allowed)");
    table->add_option("--format", t_format, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
    table->add_option("--rounding", t_rounding, "Two-decimal rounding rule")
        ->check(CLI::IsMember({"truncate", "half-away"}));
    table->add_flag("--precise", t_precise, "Full precision instead of two decimals");
    table->add_option("-o,--output", t_out, "Output file (default stdout)");

    // chains
    auto* chains = app.add_subcommand("chains", "Chains per row from hyperbolic circle lengths");
    int ch_initial = 14;
    int ch_rows = 4;
    std::string ch_format = "text";
    bool ch_precise = false;
    std::string ch_out;
    chains->add_option("--initial", ch_initial, "Chains in the r = 1 round");
    chains->add_option("--rows", ch_rows, "Largest radius r");
    chains->add_option("--format", ch_format, "Output format")->check(CLI::IsMember({"text", "csv"}));
    chains->add_flag("--precise", ch_precise, "Full-precision lengths");
    chains->add_option("-o,--output", ch_out, "Output file (default stdout)");

    // pattern
    auto* pattern = app.add_subcommand("pattern", "Row-by-row crochet instructions");
    int p_initial = 14;
    int p_rows = 4;
    std::string p_mode = "block";
    int p_magic = 6;
    std::string p_out;
    pattern->add_option("--initial", p_initial, "Chains in the r = 1 round");
    pattern->add_option("--rows", p_rows, "Largest radius r");
    pattern->add_option("--mode", p_mode, "Multiplier layout")->check(CLI::IsMember({"block", "even"}));
    pattern->add_option("--magic", p_magic, "Chains in the magic circle");
    pattern->add_option("-o,--output", p_out, "Output file (default stdout)");

    // mesh
    auto* mesh = app.add_subcommand("mesh", "Curvature-coloured triangle mesh (OBJ or PLY)");
    std::string m_surface = "coral";
    int m_n = 4;
    int m_nu = 64;
    int m_nv = 256;
    double m_umin = kCanonicalUMin;
    double m_umax = kCanonicalUMax;
    std::string m_vmin = "0";
    std::string m_vmax = "2pi";
    bool m_no_wrap = false;
    std::string m_out;
    std::string m_format;
    mesh->add_option("--surface", m_surface, "Surface family")->check(CLI::IsMember(surfaces));
    mesh->add_option("-n", m_n, "Angular frequency n");
    mesh->add_option("--nu", m_nu, "Cells along u");
    mesh->add_option("--nv", m_nv, "Cells along v");
    mesh->add_option("--u-min", m_umin, "Lower u bound");
    mesh->add_option("--u-max", m_umax, "Upper u bound");
    mesh->add_option("--v-min", m_vmin, "Lower v bound (pi expressions allowed)");
    mesh->add_option("--v-max", m_vmax, "Upper v bound (pi expressions allowed)");
    mesh->add_flag("--no-wrap", m_no_wrap, "Keep the v seam open");
    mesh->add_option("-o,--output", m_out, "Output path (.obj or .ply)")->required();
    mesh->add_option("--format", m_format, "Force the output format")->check(CLI::IsMember({"obj", "ply"}));

    // deviation
    auto* deviation = app.add_subcommand("deviation", "Statistics of K_forms over the canonical domain");
    std::string d_surface = "coral";
    int d_n = 4;
    GridSpec d_grid;
    deviation->add_option("--surface", d_surface, "Surface family")->check(CLI::IsMember(surfaces));
    deviation->add_option("-n", d_n, "Angular frequency n");
    deviation->add_option("--nu", d_grid.nu, "Samples along u");
    deviation->add_option("--nv", d_grid.nv, "Samples along v");
    deviation->add_option("--u-floor", d_grid.u_floor, "Smallest u sampled");

    // validate
    auto* validate = app.add_subcommand("validate", "Run the independent oracle suite");
    bool v_json = false;
    ValidationOptions v_opts;
    validate->add_flag("--json", v_json, "JSON report");
    validate->add_option("--grid", v_opts.grid, "Samples per axis");
    validate->add_option("--samples", v_opts.random_samples, "Extra random points (fixed seed)");
    validate->add_option("--seed", v_opts.seed, "Seed for random points");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (curvature->parsed()) {
            double u = 0.0;
            double v = 0.0;
            try {
                u = parse_number(c_u, c_u);
                v = parse_angle(c_v);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const CurvatureReport r = curvature_report(make_surface(c_surface, c_n), {u, v});
            if (c_which == "paper" && !r.K_paper) {
                throw ParameterError("the closed form K_paper exists only for the n-coral");
            }
            if (c_format == "json") {
                out << report_json(r, c_which);
            } else if (c_format == "csv") {
                out << report_csv(r);
            } else {
                out << report_text(r, c_which);
            }
        } else if (table->parsed()) {
            std::vector<double> us;
            std::vector<double> vs;
            try {
                us = parse_angle_list(t_u);
                vs = parse_angle_list(t_v);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const CurvatureTable t = curvature_table(t_n, us, vs);
            TableFormat fmt;
            if (t_precise) {
                fmt.rounding.reset();
            } else {
                fmt.rounding = t_rounding == "truncate" ? Rounding::TowardZero : Rounding::HalfAwayFromZero;
            }
            const std::string text = t_format == "csv"    ? table_csv(t, fmt)
                                     : t_format == "json" ? table_json(t, fmt)
                                                          : table_text(t, fmt);
            emit(text, t_out, out);
        } else if (chains->parsed()) {
            const RowPlan plan = plan_rows(ch_initial, ch_rows);
            emit(ch_format == "csv" ? chains_csv(plan, ch_precise) : chains_text(plan, ch_precise), ch_out, out);
        } else if (pattern->parsed()) {
            const RowPlan plan = plan_rows(p_initial, p_rows);
            const PatternMode mode = p_mode == "even" ? PatternMode::Even : PatternMode::Block;
            emit(render_pattern(plan, mode, MagicCircle{p_magic}), p_out, out);
        } else if (mesh->parsed()) {
            ParamRange vr;
            try {
                vr = {parse_angle(m_vmin), parse_angle(m_vmax)};
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const SurfaceFamily s = make_surface(m_surface, m_n);
            const bool wrap = !m_no_wrap && s.periodic_in_v();
            const Mesh m = tessellate(s, {m_umin, m_umax}, vr, m_nu, m_nv, wrap);
            std::string format = m_format;
            if (format.empty()) {
                const std::string ext = std::filesystem::path(m_out).extension().string();
                format = ext == ".ply" ? "ply" : "obj";
            }
            if (format == "ply") {
                write_ply(m, m_out);
            } else {
                write_obj(m, m_out);
            }
            out << "wrote " << m_out << ": " << m.vertices.size() << " vertices, " << m.triangles.size()
                << " triangles (" << s.describe() << (wrap ? ", seam welded" : "") << ")\n";
        } else if (deviation->parsed()) {
            const SurfaceFamily s = make_surface(d_surface, d_n);
            out << deviation_text(s, d_grid, deviation_report(s, d_grid));
        } else if (validate->parsed()) {
            const ValidationReport report = validate_all(v_opts);
            out << (v_json ? report.to_json() : report.to_text());
            return report.passed() ? kExitOk : kExitDomainError;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomainError;
    }
    return kExitOk;
}

} // namespace coral::cli
