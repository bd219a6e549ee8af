#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "coral/surface.hpp"

namespace coral {

/// Central second-order differences. step must lie in [1e-8, 1e-2].
struct FiniteDifferenceConfig {
    double step = 1e-5;

    /// Throws ParameterError outside the admissible step range.
    void validate() const;
};

/// Jet approximated from positions alone. The stencil is evaluated in long double
/// and rounded once, so second partials are not swamped by cancellation at small steps.
Jet2 fd_jet(const SurfaceFamily& s, DomainPoint q, const FiniteDifferenceConfig& cfg = {});

/// Gaussian curvature of the graph z = f(x, y):
/// (fxx fyy - fxy^2) / (1 + fx^2 + fy^2)^2.
double monge_curvature(double fx, double fy, double fxx, double fxy, double fyy) noexcept;

enum class CheckStatus { Pass, Fail, KnownDiscrepancy };

std::string to_string(CheckStatus status);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    double worst_residual = 0.0;
    double tolerance = 0.0;
    std::string location; ///< where the worst residual occurred
    std::string note;
};

struct ValidationOptions {
    std::vector<int> n_list{2, 3, 4, 5};
    int grid = 21;                    ///< samples per axis over the canonical box
    double fd_step = 1e-5;
    double jet_tolerance = 1e-6;      ///< analytic vs finite-difference partials, absolute
    double curvature_tolerance = 1e-6; ///< analytic vs finite-difference K, absolute
    double metric_tolerance = 1e-9;   ///< relative
    double structural_tolerance = 1e-9;
    double monge_tolerance = 1e-9;
    double symmetry_tolerance = 1e-12;
    double eigen_tolerance = 1e-8;
    /// Extra uniformly random regular points for the structural check; 0 keeps the run grid-only.
    int random_samples = 0;
    std::uint64_t seed = 20240601ULL;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    std::vector<CheckResult> known_discrepancies;
    std::optional<std::uint64_t> seed; ///< set when random samples were drawn

    /// True iff every entry of `checks` passed; known discrepancies do not count.
    bool passed() const noexcept;
    const CheckResult* find(const std::string& name) const noexcept;

    std::string to_text() const;
    /// Keys in the fixed order: name, status, worst_residual, location (then tolerance, note).
    std::string to_json() const;
};

/// Runs every surface and curvature invariant against the independent oracles.
ValidationReport validate_all(const ValidationOptions& opts = {});

} // namespace coral
