#pragma once

#include "searchlight/scalar.hpp"

#include <array>
#include <cstdint>

namespace searchlight {

/// Coordinate axes. The z-axis is the vertical (up-down) direction;
/// x is left-right and y is front-back.
enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

inline int axis_index(Axis a) { return static_cast<int>(a); }
inline Axis axis_from_index(int i) { return static_cast<Axis>(i); }

/// The two axes spanning a plane orthogonal to `a`, in increasing index
/// order: X -> (Y,Z), Y -> (X,Z), Z -> (X,Y).
inline std::array<Axis, 2> other_axes(Axis a) {
    switch (a) {
        case Axis::X: return {Axis::Y, Axis::Z};
        case Axis::Y: return {Axis::X, Axis::Z};
        default: return {Axis::X, Axis::Y};
    }
}

struct Vec3 {
    Scalar x, y, z;

    Vec3() : x(0), y(0), z(0) {}
    Vec3(Scalar x_, Scalar y_, Scalar z_)
        : x(std::move(x_)), y(std::move(y_)), z(std::move(z_)) {}

    Scalar& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    const Scalar& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    Scalar& operator[](Axis a) { return (*this)[axis_index(a)]; }
    const Scalar& operator[](Axis a) const { return (*this)[axis_index(a)]; }

    friend Vec3 operator+(const Vec3& a, const Vec3& b) {
        return {a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) {
        return {a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend Vec3 operator*(const Scalar& s, const Vec3& v) {
        return {s * v.x, s * v.y, s * v.z};
    }
    friend bool operator==(const Vec3& a, const Vec3& b) {
        return a.x == b.x && a.y == b.y && a.z == b.z;
    }
    friend bool operator!=(const Vec3& a, const Vec3& b) { return !(a == b); }
};

using Point3 = Vec3;

inline Scalar dot(const Vec3& a, const Vec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline bool is_zero(const Vec3& v) {
    return sgn(v.x) == 0 && sgn(v.y) == 0 && sgn(v.z) == 0;
}

struct Vec2 {
    Scalar x, y;

    Vec2() : x(0), y(0) {}
    Vec2(Scalar x_, Scalar y_) : x(std::move(x_)), y(std::move(y_)) {}

    friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(const Scalar& s, const Vec2& v) { return {s * v.x, s * v.y}; }
    friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Vec2& a, const Vec2& b) { return !(a == b); }
};

using Point2 = Vec2;

inline Scalar cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Scalar dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

/// Sign of the signed area of triangle (a,b,c): +1 for a left turn.
inline int orient(const Point2& a, const Point2& b, const Point2& c) {
    return sgn(cross(b - a, c - a));
}

/// Open or closed line segment in space. Guards are open segments.
struct Segment3 {
    Point3 a, b;
    bool open = false;
};

/// Primitive integer representative of a 2D direction (zero stays zero).
Vec2 primitive_direction(const Vec2& v);

/// Full-circle counterclockwise angular order on nonzero directions,
/// starting just above the positive x-axis.
bool ccw_less(const Vec2& a, const Vec2& b);

}  // namespace searchlight
