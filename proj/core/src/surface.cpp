#include "coral/surface.hpp"

#include <cmath>

#include "coral/errors.hpp"

namespace coral {

SurfaceFamily::SurfaceFamily(SurfaceKind kind, int n) : kind_(kind), n_(n) {
    switch (kind) {
    case SurfaceKind::NCoral:
        if (n < 2) {
            throw ParameterError("n-coral requires n >= 2, got n = " + std::to_string(n));
        }
        break;
    case SurfaceKind::Lettuce:
        if (n < 1) {
            throw ParameterError("lettuce requires n >= 1, got n = " + std::to_string(n));
        }
        break;
    case SurfaceKind::HyperbolicParaboloid:
        n_ = 2;
        break;
    }
}

std::string SurfaceFamily::describe() const {
    switch (kind_) {
    case SurfaceKind::NCoral:
        return "coral(n=" + std::to_string(n_) + ")";
    case SurfaceKind::Lettuce:
        return "lettuce(n=" + std::to_string(n_) + ")";
    case SurfaceKind::HyperbolicParaboloid:
        return "paraboloid";
    }
    return "unknown";
}

bool in_canonical_domain(DomainPoint q) noexcept {
    return q.u >= kCanonicalUMin && q.u <= kCanonicalUMax && q.v >= kCanonicalVMin &&
           q.v <= kCanonicalVMax;
}

Vec3 eval_position(const SurfaceFamily& s, DomainPoint q) {
    return position<double>(s, q.u, q.v);
}

Jet2 eval_jet(const SurfaceFamily& s, DomainPoint q) {
    const double u = q.u;
    const double v = q.v;
    const double n = s.n();
    const double cn = std::cos(n * v);
    const double sn = std::sin(n * v);

    Jet2 j;
    j.p = eval_position(s, q);
    // Height -u^2 cos nv is shared by all three families.
    j.ruu = {0.0, 0.0, -2.0 * cn};

    if (s.kind() == SurfaceKind::Lettuce) {
        j.ru = {0.0, 1.0, -2.0 * u * cn};
        j.rv = {1.0, 0.0, n * u * u * sn};
        j.ruv = {0.0, 0.0, 2.0 * n * u * sn};
        j.rvv = {0.0, 0.0, n * n * u * u * cn};
        return j;
    }

    const double c = std::cos(v);
    const double sv = std::sin(v);
    j.ru = {c, sv, -2.0 * u * cn};
    j.rv = {-u * sv, u * c, n * u * u * sn};
    j.ruv = {-sv, c, 2.0 * n * u * sn};
    j.rvv = {-u * c, -u * sv, n * n * u * u * cn};
    return j;
}

} // namespace coral
