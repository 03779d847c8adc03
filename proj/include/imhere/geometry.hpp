// SPDX-License-Identifier: Apache-2.0
#ifndef IMHERE_GEOMETRY_HPP
#define IMHERE_GEOMETRY_HPP

#include <cmath>
#include <compare>
#include <stdexcept>

namespace imhere {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
    friend constexpr Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
    friend constexpr bool operator==(Vec2 a, Vec2 b) = default;

    double norm() const { return std::hypot(x, y); }
};

inline double distance(Vec2 a, Vec2 b) { return (b - a).norm(); }

// Wraps an angle into [0, 2*pi).
inline double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0.0) a += kTwoPi;
    // fmod of a tiny negative can round back up to 2*pi
    if (a >= kTwoPi) a = 0.0;
    return a;
}

// Absolute smallest difference between two angles, in [0, pi].
inline double angle_diff(double a, double b) {
    double d = std::fabs(wrap_angle(a) - wrap_angle(b));
    return d > kPi ? kTwoPi - d : d;
}

// Direction of a vector as an angle in [0, 2*pi). Zero vector maps to 0.
inline double heading_of(Vec2 v) {
    if (v.x == 0.0 && v.y == 0.0) return 0.0;
    return wrap_angle(std::atan2(v.y, v.x));
}

inline Vec2 unit_from_heading(double heading) {
    return {std::cos(heading), std::sin(heading)};
}

struct Rect {
    Vec2 min{-50.0, -50.0};
    Vec2 max{50.0, 50.0};

    friend constexpr bool operator==(const Rect&, const Rect&) = default;

    Vec2 clamp(Vec2 p) const {
        return {std::fmin(std::fmax(p.x, min.x), max.x),
                std::fmin(std::fmax(p.y, min.y), max.y)};
    }
    bool contains(Vec2 p) const {
        return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
    }
};

}  // namespace imhere

#endif  // IMHERE_GEOMETRY_HPP
