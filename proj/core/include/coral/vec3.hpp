#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>

namespace coral {

/// Vector in the fixed orthonormal basis e1, e2, e3.
template <std::floating_point T>
struct BasicVec3 {
    T x{};
    T y{};
    T z{};

    friend constexpr BasicVec3 operator+(const BasicVec3& a, const BasicVec3& b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend constexpr BasicVec3 operator-(const BasicVec3& a, const BasicVec3& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend constexpr BasicVec3 operator*(T s, const BasicVec3& a) { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr BasicVec3 operator*(const BasicVec3& a, T s) { return s * a; }
    friend constexpr BasicVec3 operator/(const BasicVec3& a, T s) { return {a.x / s, a.y / s, a.z / s}; }
    friend constexpr bool operator==(const BasicVec3&, const BasicVec3&) = default;

    template <std::floating_point U>
    constexpr explicit operator BasicVec3<U>() const {
        return {static_cast<U>(x), static_cast<U>(y), static_cast<U>(z)};
    }
};

using Vec3 = BasicVec3<double>;

template <std::floating_point T>
constexpr T dot(const BasicVec3<T>& a, const BasicVec3<T>& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}

template <std::floating_point T>
constexpr BasicVec3<T> cross(const BasicVec3<T>& a, const BasicVec3<T>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

template <std::floating_point T>
T norm(const BasicVec3<T>& a) {
    return std::sqrt(dot(a, a));
}

/// Largest absolute componentwise difference.
template <std::floating_point T>
T max_abs_diff(const BasicVec3<T>& a, const BasicVec3<T>& b) {
    using std::abs;
    using std::max;
    return max({abs(a.x - b.x), abs(a.y - b.y), abs(a.z - b.z)});
}

} // namespace coral
