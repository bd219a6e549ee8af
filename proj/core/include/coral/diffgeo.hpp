#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coral/rounding.hpp"
#include "coral/surface.hpp"
#include "coral/vec3.hpp"

namespace coral {

/// Coefficients of the first fundamental form in the {r_u, r_v} basis.
struct FirstForm {
    double E = 0.0;
    double F = 0.0;
    double G = 0.0;

    double det() const noexcept { return E * G - F * F; }
};

/// Coefficients of the second fundamental form, relative to the r_u x r_v normal.
struct SecondForm {
    double L = 0.0;
    double M = 0.0;
    double N = 0.0;

    double det() const noexcept { return L * N - M * M; }
};

struct FundamentalForms {
    FirstForm first;
    SecondForm second;
    /// |r_u x r_v| / u. Closed form sqrt(n^2 u^2 sin^2 nv + 4 u^2 cos^2 nv + 1) for
    /// the n-coral and paraboloid; for the lettuce it is reported only when u > 0.
    std::optional<double> A;
};

/// Shape operator W = I^-1 II acting on coordinate columns in the {r_u, r_v} basis.
struct WeingartenMatrix {
    double w11 = 0.0;
    double w12 = 0.0;
    double w21 = 0.0;
    double w22 = 0.0;

    double det() const noexcept { return w11 * w22 - w12 * w21; }
    double trace() const noexcept { return w11 + w22; }
};

struct PrincipalCurvatures {
    double k1 = 0.0; ///< larger
    double k2 = 0.0; ///< smaller
};

struct CurvatureReport {
    SurfaceFamily surface;
    DomainPoint point;
    bool in_canonical_domain = true;
    FundamentalForms forms{};
    WeingartenMatrix weingarten{};
    double K_forms = 0.0;
    /// The closed form with denominator exponent 3/2 (n-coral only).
    std::optional<double> K_paper{};
    double H = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
    /// K_paper - A * K_forms (n-coral only); zero up to rounding.
    std::optional<double> discrepancy{};
};

/// True when E G - F^2 >= 1e-12 max(1, E G).
bool is_regular(const FirstForm& I) noexcept;

FirstForm first_form(const Jet2& j) noexcept;

/// (r_u x r_v) / |r_u x r_v|. Throws SingularPointError where r_u x r_v vanishes.
Vec3 unit_normal(const Jet2& j);

SecondForm second_form(const Jet2& j, const Vec3& normal) noexcept;

/// First and second forms at a regular point, plus the auxiliary scalar A.
FundamentalForms fundamental_forms(const SurfaceFamily& s, DomainPoint q);

/// Throws SingularMetricError when I is not regular.
WeingartenMatrix weingarten(const FirstForm& I, const SecondForm& II);

/// det II / det I. Throws SingularMetricError when I is not regular.
double gaussian_curvature_from_forms(const FirstForm& I, const SecondForm& II);

/// Half trace of W; the sign follows the r_u x r_v orientation.
double mean_curvature(const FirstForm& I, const SecondForm& II);

PrincipalCurvatures principal_curvatures(const WeingartenMatrix& W) noexcept;

/// K_forms for an arbitrary jet (analytic or finite-difference).
double gaussian_curvature(const Jet2& j);

/// sqrt(n^2 u^2 sin^2 nv + 4 u^2 cos^2 nv + 1).
double coral_area_factor(int n, DomainPoint q);

/// -(2(n^2-2) cos^2 nv + n^2 sin^2 nv) / (n^2 u^2 sin^2 nv + 4 u^2 cos^2 nv + 1)^(3/2),
/// evaluated literally. Equals A * K_forms, not K_forms.
double coral_curvature_paper(int n, DomainPoint q);

/// Limit of K_forms as u -> 0+ along the ray at angle v (n-coral and paraboloid).
double coral_apex_curvature(int n, double v);

/// Throws SingularPointError at degenerate points (u = 0 on the coral).
CurvatureReport curvature_report(const SurfaceFamily& s, DomainPoint q);

/// Row-major grid (outer index u, inner index v) of both curvature variants.
struct CurvatureTable {
    int n = 0;
    std::vector<double> u;
    std::vector<double> v;
    std::vector<double> K_paper;
    /// NaN at singular points.
    std::vector<double> K_forms;

    std::size_t index(std::size_t iu, std::size_t iv) const noexcept { return iu * v.size() + iv; }
};

CurvatureTable curvature_table(int n, std::span<const double> u, std::span<const double> v);

struct TableFormat {
    /// Empty: full precision (shortest round-trip text).
    std::optional<Rounding> rounding = Rounding::TowardZero;
    int decimals = 2;
};

/// CSV with header "u,v,K_paper,K_forms", one row per (u, v), u outermost.
std::string table_csv(const CurvatureTable& t, const TableFormat& fmt = {});

/// Aligned text grid in the reference layout: one row per variant, one column per (v, u).
std::string table_text(const CurvatureTable& t, const TableFormat& fmt = {});

struct GridSpec {
    int nu = 64;
    int nv = 64;
    double u_floor = 0.1;
    double u_max = kCanonicalUMax;
};

struct DeviationSummary {
    double min_K = 0.0;
    double max_K = 0.0;
    double mean_K = 0.0;
    double std_K = 0.0;
    double max_abs_deviation = 0.0; ///< max |K - mean|
    double max_circle_std = 0.0;    ///< largest std of K along a fixed-u circle
    std::size_t samples = 0;
    bool everywhere_negative = false;
};

/// Statistics of K_forms over an inclusive nu x nv grid on [u_floor, u_max] x [0, 2 pi].
DeviationSummary deviation_report(const SurfaceFamily& s, const GridSpec& grid = {});

} // namespace coral
