#pragma once

#include <cmath>
#include <stdexcept>

namespace clight {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator*(const Vec3& o) const { return {x * o.x, y * o.y, z * o.z}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 normalized() const {
        double n = norm();
        return {x / n, y / n, z / n};
    }
    double max_component() const { return std::fmax(x, std::fmax(y, z)); }
    double min_component() const { return std::fmin(x, std::fmin(y, z)); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// RGB radiance/albedo triple. Linear values, no gamma.
using Rgb = Vec3;

/// Right-handed orthonormal basis; n is the designated z-axis.
struct Frame {
    Vec3 t, b, n;
};

/// Builds a frame whose z-axis is `axis` (|axis| must be 1 within 1e-6).
/// The tangent is derived from the global axis least aligned with `axis`,
/// so the construction is deterministic and branch-stable away from poles.
inline Frame build_frame(const Vec3& axis) {
    double n = axis.norm();
    if (!(std::fabs(n - 1.0) <= 1e-6))
        throw std::invalid_argument("build_frame: axis must be a unit vector");
    double ax = std::fabs(axis.x), ay = std::fabs(axis.y), az = std::fabs(axis.z);
    Vec3 e = (ax <= ay && ax <= az) ? Vec3{1, 0, 0}
           : (ay <= az)             ? Vec3{0, 1, 0}
                                    : Vec3{0, 0, 1};
    Vec3 t = (e - axis * e.dot(axis)).normalized();
    Vec3 b = axis.cross(t);
    return {t, b, axis};
}

/// Coordinates of (point - origin) expressed in the frame basis.
inline Vec3 to_local(const Frame& f, const Vec3& origin, const Vec3& point) {
    Vec3 d = point - origin;
    return {d.dot(f.t), d.dot(f.b), d.dot(f.n)};
}

/// Rotation-only transform for directions; preserves the norm.
inline Vec3 to_local_dir(const Frame& f, const Vec3& dir) {
    return {dir.dot(f.t), dir.dot(f.b), dir.dot(f.n)};
}

/// Mirror reflection of `view` (pointing from the eye toward the surface)
/// about the unit normal. Returns the outgoing mirror direction.
inline Vec3 reflect(const Vec3& view, const Vec3& normal) {
    return view - normal * (2.0 * view.dot(normal));
}

} // namespace clight
