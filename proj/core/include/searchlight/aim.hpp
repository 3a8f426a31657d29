#pragma once

#include "searchlight/vec.hpp"

#include <string>

namespace searchlight {

/// Direction a searchlight aims at, expressed in the coordinates of the
/// two axes spanning the guard's rotation plane (in increasing axis-index
/// order). Leftmost/Rightmost are the symbolic extremes of the non-blind
/// arc, resolved per guard.
struct AimDirection {
    enum class Kind { Concrete, Leftmost, Rightmost };
    Kind kind = Kind::Concrete;
    Vec2 dir;  // meaningful only when kind == Concrete; primitive

    static AimDirection concrete(const Vec2& d) {
        return {Kind::Concrete, primitive_direction(d)};
    }
    static AimDirection leftmost() { return {Kind::Leftmost, {}}; }
    static AimDirection rightmost() { return {Kind::Rightmost, {}}; }

    friend bool operator==(const AimDirection& a, const AimDirection& b) {
        return a.kind == b.kind && (a.kind != Kind::Concrete || a.dir == b.dir);
    }
};

/// Exact angle of the form pi_mult * pi + atan(tan_part), kept in the
/// normal form |tan_part| < 1 (arctangent sums collapse by the tangent
/// addition formula, so one term always suffices). By Niven's theorem the
/// value is zero only when both components are, which makes comparisons
/// decidable by interval refinement.
class ArcAngle {
  public:
    ArcAngle() = default;

    static ArcAngle from_pi(const Scalar& multiple);
    static ArcAngle from_atan(const Scalar& t);

    /// Angle of a nonzero direction, counterclockwise from the positive
    /// x-axis, in [0, 2*pi).
    static ArcAngle of_direction(const Vec2& d);

    const Scalar& pi_multiple() const { return pi_mult_; }
    bool is_pi_rational() const { return !has_tan_; }
    const Scalar& tan_part() const { return tan_; }

    ArcAngle operator+(const ArcAngle& o) const;
    ArcAngle operator-(const ArcAngle& o) const;
    ArcAngle operator-() const;

    /// Sign of the value: -1, 0, or +1.
    int sign() const;
    int compare(const ArcAngle& o) const { return (*this - o).sign(); }

    friend bool operator==(const ArcAngle& a, const ArcAngle& b) { return a.compare(b) == 0; }
    friend bool operator!=(const ArcAngle& a, const ArcAngle& b) { return a.compare(b) != 0; }
    friend bool operator<(const ArcAngle& a, const ArcAngle& b) { return a.compare(b) < 0; }
    friend bool operator<=(const ArcAngle& a, const ArcAngle& b) { return a.compare(b) <= 0; }
    friend bool operator>(const ArcAngle& a, const ArcAngle& b) { return a.compare(b) > 0; }
    friend bool operator>=(const ArcAngle& a, const ArcAngle& b) { return a.compare(b) >= 0; }

    double to_double() const;
    /// "3/2 pi" or "1/2 pi + atan(1/3)"; exact, parseable back.
    std::string to_string() const;

  private:
    ArcAngle(Scalar pi_mult, Scalar tan, bool has_tan)
        : pi_mult_(std::move(pi_mult)), tan_(std::move(tan)), has_tan_(has_tan) {}
    void normalize();

    Scalar pi_mult_ = 0;
    Scalar tan_ = 0;
    bool has_tan_ = false;
};

/// Frame coordinates of an aim direction (u, v): the angle frame flips v
/// for y-axis guards so that "counterclockwise" consistently walks the
/// non-blind arc from its start toward its end.
Vec2 frame_coords(Axis guard_axis, const Vec2& uv);

/// Canonical angle of a concrete aim for a guard on the given axis.
ArcAngle aim_angle(Axis guard_axis, const Vec2& uv);

/// Counterclockwise sweep from angle a to angle b, in [0, 2*pi);
/// equal angles give zero.
ArcAngle ccw_sweep(const ArcAngle& from, const ArcAngle& to);

/// Time in seconds to rotate through the given angle at the maximum
/// angular speed of 2*pi radians per second.
struct Duration {
    ArcAngle radians;

    /// Seconds as an exact rational; throws std::domain_error when the
    /// angle is not a rational multiple of pi.
    Scalar seconds() const;
    bool seconds_rational() const { return radians.is_pi_rational(); }
    double seconds_double() const;

    Duration operator+(const Duration& o) const { return {radians + o.radians}; }
    friend bool operator<(const Duration& a, const Duration& b) {
        return a.radians < b.radians;
    }
    friend bool operator<=(const Duration& a, const Duration& b) {
        return a.radians <= b.radians;
    }
    friend bool operator==(const Duration& a, const Duration& b) {
        return a.radians == b.radians;
    }
};

}  // namespace searchlight
