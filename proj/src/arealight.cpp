#include "clight/arealight.hpp"

#include "shading_internal.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace clight {

RectAreaLight make_rect_light(const Vec3& a, const Vec3& b, const Vec3& c,
                              const Rgb& intensity) {
    Vec3 n = (b - a).cross(c - a);
    double len = n.norm();
    if (len < 1e-12)
        throw std::invalid_argument("make_rect_light: degenerate corner layout");
    return {a, b, c, n / len, intensity};
}

void validate_light(const RectAreaLight& light) {
    Vec3 e1 = light.b - light.a, e2 = light.c - light.a;
    if (e1.norm() < 1e-9 || e2.norm() < 1e-9)
        throw std::invalid_argument("light edges are degenerate");
    if (std::fabs(light.n_a.norm() - 1.0) > 1e-6)
        throw std::invalid_argument("light normal is not unit length");
    if (std::fabs(light.n_a.dot(e1.normalized())) > 1e-6 ||
        std::fabs(light.n_a.dot(e2.normalized())) > 1e-6)
        throw std::invalid_argument("light normal is not orthogonal to the edges");
}

double mean_sq_dist(const Vec3& p, const RectAreaLight& light) {
    Vec3 centroid = (light.b + light.c) * 0.5;
    return (centroid - p).norm2();
}

PolyCoeffs compute_l_coeffs(const Vec3& a, const Vec3& b, const Vec3& c,
                            const Vec3& n_a) {
    const double a0 = a.dot(n_a);
    const double a1 = (b - a).dot(n_a);
    const double a2 = (c - a).dot(n_a);
    const double du = b.z - a.z;
    const double dv = c.z - a.z;
    PolyCoeffs l;
    l.l00 = a.z * a0;
    l.l10 = a.z * a1 + du * a0;
    l.l01 = a.z * a2 + dv * a0;
    l.l20 = du * a1;
    l.l02 = dv * a2;
    l.l11 = du * a2 + dv * a1;
    return l;
}

namespace {

void check_shade_inputs(const Vec3& p, const Vec3& n, const RectAreaLight& light) {
    if (std::fabs(n.norm() - 1.0) > 1e-6)
        throw std::invalid_argument("shade: normal must be unit length");
    if (mean_sq_dist(p, light) <= 1e-6)
        throw std::invalid_argument("shade: point coincides with the light");
}

Rgb clamp_positive(const Rgb& v) {
    return {std::fmax(v.x, 0.0), std::fmax(v.y, 0.0), std::fmax(v.z, 0.0)};
}

} // namespace

// Unclamped single-light terms; the public entry points clamp after
// summation so dispatch and the environment path share one convention.
Rgb shade_lambert_const_raw(const Vec3& p, const Vec3& n,
                            const RectAreaLight& light, const Material& mat) {
    check_shade_inputs(p, n, light);
    const double d_p = mean_sq_dist(p, light);

    Frame frame = build_frame(n);
    Vec3 a = to_local(frame, p, light.a);
    Vec3 b = to_local(frame, p, light.b);
    Vec3 c = to_local(frame, p, light.c);
    Vec3 na = to_local_dir(frame, light.n_a);

    IntegrationRegion region = classify_region(a.z, b.z, c.z);
    if (region.empty()) return {0, 0, 0};

    double integral = integrate_poly_over_region(compute_l_coeffs(a, b, c, na), region);
    double scale = -integral / (d_p * d_p);
    return mat.kd * light.intensity * scale;
}

Rgb shade_lambert_const(const Vec3& p, const Vec3& n,
                        const RectAreaLight& light, const Material& mat) {
    return clamp_positive(shade_lambert_const_raw(p, n, light, mat));
}

Rgb shade_phong_const_raw(const Vec3& p, const Vec3& n, const Vec3& view,
                          const RectAreaLight& light, const Material& mat) {
    check_shade_inputs(p, n, light);
    if (mat.sh < 1 || mat.sh > kMaxShininess)
        throw std::invalid_argument("shade_phong_const: shininess must be in [1,32]");
    const int sh = mat.sh;
    const double d_p = mean_sq_dist(p, light);

    Vec3 r = reflect(view, n);
    Frame frame = build_frame(r);
    Vec3 a = to_local(frame, p, light.a);
    Vec3 b = to_local(frame, p, light.b);
    Vec3 c = to_local(frame, p, light.c);
    Vec3 na = to_local_dir(frame, light.n_a);

    IntegrationRegion region = classify_region(a.z, b.z, c.z);
    if (region.empty()) return {0, 0, 0};

    MonomialIntegrals mi = region_monomial_integrals(region, sh + 1);

    const double a0 = a.dot(na);
    const double a1 = (b - a).dot(na);
    const double a2 = (c - a).dot(na);
    const double du = b.z - a.z;
    const double dv = c.z - a.z;

    std::vector<double> azp(sh + 1), dup(sh + 1), dvp(sh + 1);
    azp[0] = dup[0] = dvp[0] = 1.0;
    for (int i = 1; i <= sh; ++i) {
        azp[i] = azp[i - 1] * a.z;
        dup[i] = dup[i - 1] * du;
        dvp[i] = dvp[i - 1] * dv;
    }

    // Trinomial expansion of z_A^sh about a_z; weights stay below 3^32 so
    // they are exact in double precision.
    double sum = 0.0;
    double ck = 1.0; // C(sh, k)
    for (int k = 0; k <= sh; ++k) {
        if (k > 0) ck *= (double)(sh - k + 1) / k;
        double cl = 1.0; // C(sh - k, l)
        for (int l = 0; l <= sh - k; ++l) {
            if (l > 0) cl *= (double)(sh - k - l + 1) / l;
            double w = ck * cl * azp[sh - l - k] * dup[l] * dvp[k];
            if (w == 0.0) continue;
            sum += w * (a0 * mi.at(l, k) + a1 * mi.at(l + 1, k) + a2 * mi.at(l, k + 1));
        }
    }

    double scale = -sum / std::pow(d_p, 0.5 * (sh + 3));
    return mat.ks * light.intensity * scale;
}

Rgb shade_phong_const(const Vec3& p, const Vec3& n, const Vec3& view,
                      const RectAreaLight& light, const Material& mat) {
    return clamp_positive(shade_phong_const_raw(p, n, view, light, mat));
}

} // namespace clight
