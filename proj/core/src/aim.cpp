#include "searchlight/aim.hpp"

#include <cassert>
#include <cmath>
#include <sstream>
#include <utility>

namespace searchlight {

namespace {

/// Rigorous bounds on atan(t) for 0 < t < 1 from the alternating Leibniz
/// series: partial sums ending on a positive term overshoot, the next one
/// undershoots.
std::pair<Scalar, Scalar> atan_bounds(const Scalar& t, int terms) {
    Scalar t2 = t * t;
    Scalar power = t;
    Scalar sum(0);
    int n = 2 * ((terms + 1) / 2);  // even term count gives a lower bound
    for (int k = 0; k < n; ++k) {
        Scalar term = power / (2 * k + 1);
        if (k % 2 == 0)
            sum += term;
        else
            sum -= term;
        power *= t2;
    }
    return {sum, sum + power / (2 * n + 1)};
}

/// Machin's formula: pi = 16 atan(1/5) - 4 atan(1/239).
std::pair<Scalar, Scalar> pi_bounds(int terms) {
    auto [lo5, hi5] = atan_bounds(ratio(1, 5), terms);
    auto [lo239, hi239] = atan_bounds(ratio(1, 239), terms);
    return {16 * lo5 - 4 * hi239, 16 * hi5 - 4 * lo239};
}

}  // namespace

void ArcAngle::normalize() {
    if (!has_tan_) return;
    if (sgn(tan_) == 0) {
        has_tan_ = false;
        return;
    }
    Scalar a = abs(tan_);
    if (a == 1) {
        pi_mult_ += ratio(sgn(tan_), 4);
        tan_ = 0;
        has_tan_ = false;
    } else if (a > 1) {
        // atan(t) = sgn(t) pi/2 + atan(-1/t)
        pi_mult_ += ratio(sgn(tan_), 2);
        tan_ = Scalar(-1) / tan_;
    }
}

ArcAngle ArcAngle::from_pi(const Scalar& multiple) { return {multiple, Scalar(0), false}; }

ArcAngle ArcAngle::from_atan(const Scalar& t) {
    ArcAngle a{Scalar(0), t, true};
    a.normalize();
    return a;
}

ArcAngle ArcAngle::of_direction(const Vec2& d) {
    int sx = sgn(d.x), sy = sgn(d.y);
    if (sx == 0 && sy == 0) throw std::invalid_argument("angle of zero direction");
    if (sx == 0) return from_pi(sy > 0 ? ratio(1, 2) : ratio(3, 2));
    ArcAngle a = from_atan(d.y / d.x);
    if (sx < 0)
        a.pi_mult_ += 1;
    else if (sy < 0)
        a.pi_mult_ += 2;
    return a;
}

ArcAngle ArcAngle::operator+(const ArcAngle& o) const {
    ArcAngle r{pi_mult_ + o.pi_mult_, Scalar(0), false};
    if (has_tan_ && o.has_tan_) {
        // |tan| < 1 on both sides, so the product stays below 1 and the
        // tangent addition formula needs no quadrant correction.
        r.tan_ = (tan_ + o.tan_) / (1 - tan_ * o.tan_);
        r.has_tan_ = true;
        r.normalize();
    } else if (has_tan_ || o.has_tan_) {
        r.tan_ = has_tan_ ? tan_ : o.tan_;
        r.has_tan_ = true;
    }
    return r;
}

ArcAngle ArcAngle::operator-() const { return {-pi_mult_, -tan_, has_tan_}; }

ArcAngle ArcAngle::operator-(const ArcAngle& o) const { return *this + (-o); }

int ArcAngle::sign() const {
    if (!has_tan_) return sgn(pi_mult_);
    if (sgn(pi_mult_) == 0) return sgn(tan_);
    // |atan(tan_)| < pi/4, so a pi-multiple of at least 1/4 dominates.
    if (abs(pi_mult_) >= ratio(1, 4)) return sgn(pi_mult_);
    // Remaining case: 0 < |pi_mult_| < 1/4 and tan_ != 0. The value is
    // irrational (Niven), hence nonzero; refine intervals until the sign
    // resolves.
    Scalar at = abs(tan_);
    for (int terms = 4;; terms *= 2) {
        auto [pl, ph] = pi_bounds(terms);
        auto [al, ah] = atan_bounds(at, terms);
        if (sgn(tan_) < 0) {
            std::swap(al, ah);
            al = -al;
            ah = -ah;
        }
        Scalar lo, hi;
        if (sgn(pi_mult_) > 0) {
            lo = pi_mult_ * pl + al;
            hi = pi_mult_ * ph + ah;
        } else {
            lo = pi_mult_ * ph + al;
            hi = pi_mult_ * pl + ah;
        }
        if (sgn(lo) > 0) return 1;
        if (sgn(hi) < 0) return -1;
        assert(terms < (1 << 20));
    }
}

double ArcAngle::to_double() const {
    double v = pi_mult_.get_d() * 3.14159265358979323846;
    if (has_tan_) v += std::atan(tan_.get_d());
    return v;
}

std::string ArcAngle::to_string() const {
    if (sgn(pi_mult_) == 0 && !has_tan_) return "0";
    std::ostringstream os;
    if (sgn(pi_mult_) != 0) {
        os << format_scalar(pi_mult_) << " pi";
        if (has_tan_) os << " + ";
    }
    if (has_tan_) os << "atan(" << format_scalar(tan_) << ")";
    return os.str();
}

Vec2 frame_coords(Axis guard_axis, const Vec2& uv) {
    return {uv.x, guard_axis == Axis::Y ? -uv.y : uv.y};
}

ArcAngle aim_angle(Axis guard_axis, const Vec2& uv) {
    return ArcAngle::of_direction(frame_coords(guard_axis, uv));
}

ArcAngle ccw_sweep(const ArcAngle& from, const ArcAngle& to) {
    ArcAngle d = to - from;
    if (d.sign() < 0) d = d + ArcAngle::from_pi(2);
    return d;
}

Scalar Duration::seconds() const {
    if (!radians.is_pi_rational())
        throw std::domain_error("duration is not a rational number of seconds");
    return radians.pi_multiple() / 2;
}

double Duration::seconds_double() const {
    return radians.to_double() / (2 * 3.14159265358979323846);
}

}  // namespace searchlight
