#pragma once

#include <cmath>
#include <concepts>
#include <numbers>
#include <string>

#include "coral/vec3.hpp"

namespace coral {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Canonical parameter box of the crocheted piece: u in [0, 2], v in [0, 2*pi].
inline constexpr double kCanonicalUMin = 0.0;
inline constexpr double kCanonicalUMax = 2.0;
inline constexpr double kCanonicalVMin = 0.0;
inline constexpr double kCanonicalVMax = kTwoPi;

enum class SurfaceKind {
    NCoral,               ///< (u cos v, u sin v, -u^2 cos nv)
    Lettuce,              ///< (v, u, -u^2 cos nv)
    HyperbolicParaboloid, ///< (u cos v, u sin v, -u^2 cos 2v)
};

/// A parametrized surface together with its angular frequency.
///
/// Construction validates the frequency: n >= 2 for the n-coral, n >= 1 for the
/// lettuce. The hyperbolic paraboloid always reports n = 2.
class SurfaceFamily {
public:
    SurfaceFamily(SurfaceKind kind, int n);

    static SurfaceFamily coral(int n) { return {SurfaceKind::NCoral, n}; }
    static SurfaceFamily lettuce(int n) { return {SurfaceKind::Lettuce, n}; }
    static SurfaceFamily paraboloid() { return {SurfaceKind::HyperbolicParaboloid, 2}; }

    SurfaceKind kind() const noexcept { return kind_; }
    int n() const noexcept { return n_; }

    /// True when r(u, v + 2*pi) == r(u, v), i.e. the v = 0 and v = 2*pi seams coincide.
    bool periodic_in_v() const noexcept { return kind_ != SurfaceKind::Lettuce; }

    /// "coral(n=4)", "lettuce(n=3)", "paraboloid".
    std::string describe() const;

    friend bool operator==(const SurfaceFamily&, const SurfaceFamily&) = default;

private:
    SurfaceKind kind_;
    int n_;
};

struct DomainPoint {
    double u = 0.0;
    double v = 0.0;
};

bool in_canonical_domain(DomainPoint q) noexcept;

/// Position and every first and second partial derivative at one parameter point.
struct Jet2 {
    Vec3 p;
    Vec3 ru;
    Vec3 rv;
    Vec3 ruu;
    Vec3 ruv;
    Vec3 rvv;
};

/// Position for any floating-point type. The finite-difference oracle evaluates
/// this in extended precision; everything else goes through eval_position.
template <std::floating_point T>
BasicVec3<T> position(const SurfaceFamily& s, T u, T v) {
    using std::cos;
    using std::sin;
    const T n = static_cast<T>(s.n());
    const T height = -u * u * cos(n * v);
    switch (s.kind()) {
    case SurfaceKind::Lettuce:
        return {v, u, height};
    case SurfaceKind::NCoral:
    case SurfaceKind::HyperbolicParaboloid:
        break;
    }
    return {u * cos(v), u * sin(v), height};
}

Vec3 eval_position(const SurfaceFamily& s, DomainPoint q);

/// Closed-form partial derivatives; exact up to floating-point rounding.
Jet2 eval_jet(const SurfaceFamily& s, DomainPoint q);

} // namespace coral
