#include "coral/diffgeo.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "coral/errors.hpp"

namespace coral {
namespace {

constexpr double kRegularityTolerance = 1e-12;

std::string where(const SurfaceFamily& s, DomainPoint q) {
    std::ostringstream os;
    os << s.describe() << " at u=" << format_general(q.u) << ", v=" << format_general(q.v);
    return os.str();
}

void require_regular(const FirstForm& I) {
    if (!is_regular(I)) {
        throw SingularMetricError("first fundamental form is singular (EG - F^2 = " +
                                  format_general(I.det()) + ")");
    }
}

} // namespace

bool is_regular(const FirstForm& I) noexcept {
    return I.det() >= kRegularityTolerance * std::max(1.0, I.E * I.G);
}

FirstForm first_form(const Jet2& j) noexcept {
    return {dot(j.ru, j.ru), dot(j.ru, j.rv), dot(j.rv, j.rv)};
}

Vec3 unit_normal(const Jet2& j) {
    const Vec3 c = cross(j.ru, j.rv);
    const double c2 = dot(c, c);
    if (!(c2 >= kRegularityTolerance * std::max(1.0, dot(j.ru, j.ru) * dot(j.rv, j.rv)))) {
        throw SingularPointError("normal undefined: r_u x r_v vanishes");
    }
    return c / std::sqrt(c2);
}

SecondForm second_form(const Jet2& j, const Vec3& normal) noexcept {
    return {dot(j.ruu, normal), dot(j.ruv, normal), dot(j.rvv, normal)};
}

FundamentalForms fundamental_forms(const SurfaceFamily& s, DomainPoint q) {
    const Jet2 j = eval_jet(s, q);
    FundamentalForms f;
    f.first = first_form(j);
    f.second = second_form(j, unit_normal(j));
    if (s.kind() == SurfaceKind::Lettuce) {
        if (q.u > 0.0) {
            f.A = norm(cross(j.ru, j.rv)) / q.u;
        }
    } else {
        f.A = coral_area_factor(s.n(), q);
    }
    return f;
}

WeingartenMatrix weingarten(const FirstForm& I, const SecondForm& II) {
    require_regular(I);
    // I^-1 = (1/det I) [[G, -F], [-F, E]]
    const double inv = 1.0 / I.det();
    return {
        inv * (I.G * II.L - I.F * II.M),
        inv * (I.G * II.M - I.F * II.N),
        inv * (I.E * II.M - I.F * II.L),
        inv * (I.E * II.N - I.F * II.M),
    };
}

double gaussian_curvature_from_forms(const FirstForm& I, const SecondForm& II) {
    require_regular(I);
    return II.det() / I.det();
}

double mean_curvature(const FirstForm& I, const SecondForm& II) {
    require_regular(I);
    return (I.E * II.N - 2.0 * I.F * II.M + I.G * II.L) / (2.0 * I.det());
}

PrincipalCurvatures principal_curvatures(const WeingartenMatrix& W) noexcept {
    const double H = 0.5 * W.trace();
    const double K = W.det();
    const double s = std::sqrt(std::max(0.0, H * H - K));
    // Avoid cancellation in H - s (or H + s) by recovering the small root from K.
    double big = H >= 0.0 ? H + s : H - s;
    double small = big != 0.0 ? K / big : 0.0;
    if (big < small) {
        std::swap(big, small);
    }
    return {big, small};
}

double gaussian_curvature(const Jet2& j) {
    const FirstForm I = first_form(j);
    require_regular(I);
    return gaussian_curvature_from_forms(I, second_form(j, unit_normal(j)));
}

double coral_area_factor(int n, DomainPoint q) {
    const double nn = n;
    const double sn = std::sin(nn * q.v);
    const double cn = std::cos(nn * q.v);
    const double u2 = q.u * q.u;
    return std::sqrt(nn * nn * u2 * sn * sn + 4.0 * u2 * cn * cn + 1.0);
}

double coral_curvature_paper(int n, DomainPoint q) {
    if (n < 2) {
        throw ParameterError("n-coral requires n >= 2, got n = " + std::to_string(n));
    }
    const double nn = n;
    const double sn = std::sin(nn * q.v);
    const double cn = std::cos(nn * q.v);
    const double u2 = q.u * q.u;
    const double numerator = 2.0 * (nn * nn - 2.0) * cn * cn + nn * nn * sn * sn;
    const double base = nn * nn * u2 * sn * sn + 4.0 * u2 * cn * cn + 1.0;
    return -numerator / std::pow(base, 1.5);
}

double coral_apex_curvature(int n, double v) {
    const double nn = n;
    const double sn = std::sin(nn * v);
    const double cn = std::cos(nn * v);
    return -(2.0 * (nn * nn - 2.0) * cn * cn + nn * nn * sn * sn);
}

CurvatureReport curvature_report(const SurfaceFamily& s, DomainPoint q) {
    const Jet2 j = eval_jet(s, q);
    CurvatureReport r{.surface = s, .point = q};
    r.in_canonical_domain = in_canonical_domain(q);
    r.forms.first = first_form(j);
    if (!is_regular(r.forms.first)) {
        throw SingularPointError("singular point of the parametrization: " + where(s, q) +
                                 " (r_u x r_v = 0)");
    }
    r.forms = fundamental_forms(s, q);
    r.weingarten = weingarten(r.forms.first, r.forms.second);
    r.K_forms = gaussian_curvature_from_forms(r.forms.first, r.forms.second);
    r.H = mean_curvature(r.forms.first, r.forms.second);
    const PrincipalCurvatures k = principal_curvatures(r.weingarten);
    r.k1 = k.k1;
    r.k2 = k.k2;
    if (s.kind() == SurfaceKind::NCoral) {
        r.K_paper = coral_curvature_paper(s.n(), q);
        r.discrepancy = *r.K_paper - *r.forms.A * r.K_forms;
    }
    return r;
}

CurvatureTable curvature_table(int n, std::span<const double> u, std::span<const double> v) {
    if (u.empty() || v.empty()) {
        throw ParameterError("curvature table needs at least one u and one v value");
    }
    const SurfaceFamily s = SurfaceFamily::coral(n);
    CurvatureTable t;
    t.n = n;
    t.u.assign(u.begin(), u.end());
    t.v.assign(v.begin(), v.end());
    t.K_paper.reserve(u.size() * v.size());
    t.K_forms.reserve(u.size() * v.size());
    for (double uu : u) {
        for (double vv : v) {
            const DomainPoint q{uu, vv};
            t.K_paper.push_back(coral_curvature_paper(n, q));
            const Jet2 j = eval_jet(s, q);
            t.K_forms.push_back(is_regular(first_form(j)) ? gaussian_curvature(j)
                                                          : std::numeric_limits<double>::quiet_NaN());
        }
    }
    return t;
}

namespace {

std::string cell(double x, const TableFormat& fmt) {
    if (std::isnan(x)) {
        return "nan";
    }
    return fmt.rounding ? format_rounded(x, fmt.decimals, *fmt.rounding) : format_shortest(x);
}

} // namespace

std::string table_csv(const CurvatureTable& t, const TableFormat& fmt) {
    std::ostringstream os;
    os << "u,v,K_paper,K_forms\n";
    for (std::size_t iu = 0; iu < t.u.size(); ++iu) {
        for (std::size_t iv = 0; iv < t.v.size(); ++iv) {
            const std::size_t k = t.index(iu, iv);
            os << format_shortest(t.u[iu]) << ',' << format_shortest(t.v[iv]) << ','
               << cell(t.K_paper[k], fmt) << ',' << cell(t.K_forms[k], fmt) << '\n';
        }
    }
    return os.str();
}

std::string table_text(const CurvatureTable& t, const TableFormat& fmt) {
    std::ostringstream os;
    const int width = fmt.rounding ? 9 : 22;
    auto row = [&](const std::string& label, auto&& value) {
        os << std::left << std::setw(9) << label;
        for (std::size_t iv = 0; iv < t.v.size(); ++iv) {
            for (std::size_t iu = 0; iu < t.u.size(); ++iu) {
                os << std::right << std::setw(width) << value(iu, iv);
            }
        }
        os << '\n';
    };
    os << "n-coral curvature, n = " << t.n << '\n';
    row("v", [&](std::size_t, std::size_t iv) { return format_general(t.v[iv], 6); });
    row("u", [&](std::size_t iu, std::size_t) { return format_general(t.u[iu], 6); });
    row("K_paper", [&](std::size_t iu, std::size_t iv) { return cell(t.K_paper[t.index(iu, iv)], fmt); });
    row("K_forms", [&](std::size_t iu, std::size_t iv) { return cell(t.K_forms[t.index(iu, iv)], fmt); });
    return os.str();
}

DeviationSummary deviation_report(const SurfaceFamily& s, const GridSpec& grid) {
    if (grid.nu < 2 || grid.nv < 2) {
        throw ParameterError("deviation grid needs at least 2 x 2 samples");
    }
    if (!(grid.u_floor < grid.u_max)) {
        throw ParameterError("deviation grid needs u_floor < u_max");
    }

    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(grid.nu) * grid.nv);
    DeviationSummary out;
    for (int i = 0; i < grid.nu; ++i) {
        const double u = grid.u_floor + (grid.u_max - grid.u_floor) * i / (grid.nu - 1);
        std::vector<double> circle;
        circle.reserve(grid.nv);
        for (int j = 0; j < grid.nv; ++j) {
            const double v = kTwoPi * j / (grid.nv - 1);
            const Jet2 jet = eval_jet(s, {u, v});
            if (!is_regular(first_form(jet))) {
                continue;
            }
            circle.push_back(gaussian_curvature(jet));
        }
        if (circle.empty()) {
            continue;
        }
        double m = 0.0;
        for (double k : circle) {
            m += k;
        }
        m /= static_cast<double>(circle.size());
        double var = 0.0;
        for (double k : circle) {
            var += (k - m) * (k - m);
        }
        out.max_circle_std = std::max(out.max_circle_std, std::sqrt(var / circle.size()));
        values.insert(values.end(), circle.begin(), circle.end());
    }
    if (values.empty()) {
        throw ParameterError("deviation grid contains no regular points");
    }

    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    out.min_K = *lo;
    out.max_K = *hi;
    out.samples = values.size();
    double sum = 0.0;
    for (double k : values) {
        sum += k;
    }
    out.mean_K = sum / static_cast<double>(values.size());
    double var = 0.0;
    for (double k : values) {
        var += (k - out.mean_K) * (k - out.mean_K);
        out.max_abs_deviation = std::max(out.max_abs_deviation, std::abs(k - out.mean_K));
    }
    out.std_K = std::sqrt(var / static_cast<double>(values.size()));
    out.everywhere_negative = out.max_K < 0.0;
    return out;
}

} // namespace coral
