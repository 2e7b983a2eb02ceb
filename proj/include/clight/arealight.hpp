#pragma once

#include <span>

#include "clight/geometry.hpp"
#include "clight/integrals.hpp"

namespace clight {

/// Rectangular area light. Corners a, b, c span the rectangle
/// a + u*(b-a) + v*(c-a), (u,v) in [0,1]^2; the fourth corner b+c-a is
/// implied. n_a is the unit emission-side normal.
struct RectAreaLight {
    Vec3 a, b, c;
    Vec3 n_a;
    Rgb intensity{1, 1, 1};
};

/// Builds a light from three corners; the normal is taken from
/// normalize(cross(b-a, c-a)), so corner order fixes the emission side.
RectAreaLight make_rect_light(const Vec3& a, const Vec3& b, const Vec3& c,
                              const Rgb& intensity);

/// Checks the light invariants (unit normal orthogonal to both edges,
/// non-degenerate edges); throws std::invalid_argument on violation.
void validate_light(const RectAreaLight& light);

struct Material {
    Rgb kd{0, 0, 0};
    Rgb ks{0, 0, 0};
    int sh = 1;
};

/// Maximum supported shininess; above this the trinomial weights leave the
/// exactly-representable integer range.
constexpr int kMaxShininess = 32;

/// Squared distance from p to the light centroid (the constant-distance
/// stand-in for the squared per-patch distance).
double mean_sq_dist(const Vec3& p, const RectAreaLight& light);

/// Coefficients of z_A(u,v) * (c_A(u,v) . n_a) for corners already
/// expressed in the local frame, obtained by expanding the product of the
/// two affine forms.
PolyCoeffs compute_l_coeffs(const Vec3& a, const Vec3& b, const Vec3& c,
                            const Vec3& n_a);

/// Closed-form Lambertian radiance from one constant rectangular light.
Rgb shade_lambert_const(const Vec3& p, const Vec3& n,
                        const RectAreaLight& light, const Material& mat);

/// Closed-form Phong-like radiance; the integration frame is built on the
/// reflection of `view` about `n`. Cost grows as O(sh^2).
Rgb shade_phong_const(const Vec3& p, const Vec3& n, const Vec3& view,
                      const RectAreaLight& light, const Material& mat);

struct EnvCubemap;

struct ShadeOptions {
    // DCT cutoffs for environment shading; -1 means full resolution.
    int env_cutoff_i = -1;
    int env_cutoff_j = -1;
};

/// Per-point dispatch: sums the Lambertian and Phong terms of every
/// configured light plus the environment contribution, clamping the total
/// at zero per channel.
Rgb shade_dispatch(const Vec3& p, const Vec3& n, const Vec3& view,
                   std::span<const RectAreaLight> lights,
                   const EnvCubemap* env, const Material& mat,
                   const ShadeOptions& opts = {});

} // namespace clight
