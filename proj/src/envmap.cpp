#include "clight/envmap.hpp"

#include <cmath>
#include <stdexcept>

#include "shading_internal.hpp"

namespace clight {

namespace {

struct FaceCorners {
    Vec3 a, b, c, n;
};

// Unit-cube corner table; u runs a->b, v runs a->c, normals point inward.
const FaceCorners kFaceTable[6] = {
    /* PosX */ {{1, -1, -1}, {1, 1, -1}, {1, -1, 1}, {-1, 0, 0}},
    /* NegX */ {{-1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}, {1, 0, 0}},
    /* PosY */ {{-1, 1, -1}, {1, 1, -1}, {-1, 1, 1}, {0, -1, 0}},
    /* NegY */ {{-1, -1, -1}, {1, -1, -1}, {-1, -1, 1}, {0, 1, 0}},
    /* PosZ */ {{-1, -1, 1}, {1, -1, 1}, {-1, 1, 1}, {0, 0, -1}},
    /* NegZ */ {{-1, -1, -1}, {1, -1, -1}, {-1, 1, -1}, {0, 0, 1}},
};

} // namespace

void validate_env(const EnvCubemap& env) {
    if (!(env.half_extent > 0.0) || !std::isfinite(env.half_extent))
        throw std::invalid_argument("environment half-extent must be positive");
    int M = env.faces[0].M, N = env.faces[0].N;
    if (M < 2 || N < 2)
        throw std::invalid_argument("environment faces must be at least 2x2");
    for (const DctFace& f : env.faces)
        if (f.M != M || f.N != N)
            throw std::invalid_argument("environment faces must share dimensions");
}

FaceGeometry face_geometry(CubeFace face, const Vec3& p, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("face_geometry: half-extent must be positive");
    const FaceCorners& t = kFaceTable[(int)face];
    return {p + t.a * s, p + t.b * s, p + t.c * s, t.n};
}

Vec3 face_uv_to_dir(CubeFace face, double u, double v) {
    const FaceCorners& t = kFaceTable[(int)face];
    Vec3 q = t.a + (t.b - t.a) * u + (t.c - t.a) * v;
    return q.normalized();
}

void dir_to_face_uv(const Vec3& dir, CubeFace& face, double& u, double& v) {
    double ax = std::fabs(dir.x), ay = std::fabs(dir.y), az = std::fabs(dir.z);
    if (ax >= ay && ax >= az) {
        face = dir.x > 0 ? CubeFace::PosX : CubeFace::NegX;
        u = 0.5 * (dir.y / ax + 1.0);
        v = 0.5 * (dir.z / ax + 1.0);
    } else if (ay >= az) {
        face = dir.y > 0 ? CubeFace::PosY : CubeFace::NegY;
        u = 0.5 * (dir.x / ay + 1.0);
        v = 0.5 * (dir.z / ay + 1.0);
    } else {
        face = dir.z > 0 ? CubeFace::PosZ : CubeFace::NegZ;
        u = 0.5 * (dir.x / az + 1.0);
        v = 0.5 * (dir.y / az + 1.0);
    }
}

namespace {

// Unclamped environment sum. d_p = s^2 plays the role of the squared
// average distance, so the denominator matches the constant-light formula
// and a constant face reduces to it exactly.
Rgb shade_lambert_env_raw(const Vec3& p, const Vec3& n, const EnvCubemap& env,
                          const Material& mat, int cutoff_i, int cutoff_j) {
    if (std::fabs(n.norm() - 1.0) > 1e-6)
        throw std::invalid_argument("shade: normal must be unit length");
    validate_env(env);
    const int N = env.faces[0].N, M = env.faces[0].M;
    if (cutoff_i < 0) cutoff_i = N;
    if (cutoff_j < 0) cutoff_j = M;
    if (cutoff_i < 1 || cutoff_i > N || cutoff_j < 1 || cutoff_j > M)
        throw std::invalid_argument("shade_lambert_env: cutoffs out of range");

    const double s = env.half_extent;
    const double d_p = s * s;
    const Frame frame = build_frame(n);

    Rgb acc{0, 0, 0};
    for (CubeFace fid : kAllFaces) {
        FaceGeometry geom = face_geometry(fid, p, s);
        Vec3 a = to_local(frame, p, geom.a);
        Vec3 b = to_local(frame, p, geom.b);
        Vec3 c = to_local(frame, p, geom.c);
        Vec3 na = to_local_dir(frame, geom.n_a);

        IntegrationRegion region = classify_region(a.z, b.z, c.z);
        if (region.empty()) continue;

        PolyCoeffs P = compute_l_coeffs(a, b, c, na);
        const DctFace& f = env.face(fid);
        for (int i = 0; i < cutoff_i; ++i) {
            for (int j = 0; j < cutoff_j; ++j) {
                double c0 = f.coeff(0, i, j), c1 = f.coeff(1, i, j), c2 = f.coeff(2, i, j);
                if (c0 == 0.0 && c1 == 0.0 && c2 == 0.0) continue;
                double im = integrate_poly_cos2_over_region(
                    P, f.k_i0(i), f.k_i1(i), f.k_j0(j), f.k_j1(j), region);
                double w = f.alpha_i(i) * f.alpha_j(j) * im;
                acc += Rgb{c0, c1, c2} * w;
            }
        }
    }
    return mat.kd * acc * (-1.0 / (d_p * d_p));
}

Rgb shade_lambert_env_dc_raw(const Vec3& p, const Vec3& n, const EnvCubemap& env,
                             const Material& mat) {
    validate_env(env);
    const double s = env.half_extent;
    Rgb acc{0, 0, 0};
    for (CubeFace fid : kAllFaces) {
        const DctFace& f = env.face(fid);
        double scale = 1.0 / std::sqrt((double)f.M * f.N);
        Rgb dc{f.coeff(0, 0, 0) * scale, f.coeff(1, 0, 0) * scale, f.coeff(2, 0, 0) * scale};
        FaceGeometry geom = face_geometry(fid, p, s);
        RectAreaLight light{geom.a, geom.b, geom.c, geom.n_a, dc};
        acc += shade_lambert_const_raw(p, n, light, mat);
    }
    return acc;
}

Rgb clamp_positive(const Rgb& v) {
    return {std::fmax(v.x, 0.0), std::fmax(v.y, 0.0), std::fmax(v.z, 0.0)};
}

} // namespace

Rgb shade_lambert_env(const Vec3& p, const Vec3& n, const EnvCubemap& env,
                      const Material& mat, int cutoff_i, int cutoff_j) {
    return clamp_positive(shade_lambert_env_raw(p, n, env, mat, cutoff_i, cutoff_j));
}

Rgb shade_lambert_env_dc(const Vec3& p, const Vec3& n, const EnvCubemap& env,
                         const Material& mat) {
    return clamp_positive(shade_lambert_env_dc_raw(p, n, env, mat));
}

Rgb shade_dispatch(const Vec3& p, const Vec3& n, const Vec3& view,
                   std::span<const RectAreaLight> lights,
                   const EnvCubemap* env, const Material& mat,
                   const ShadeOptions& opts) {
    if (lights.empty() && env == nullptr)
        throw std::invalid_argument("shade_dispatch: no light source configured");

    const bool diffuse = mat.kd.x > 0 || mat.kd.y > 0 || mat.kd.z > 0;
    const bool specular = mat.ks.x > 0 || mat.ks.y > 0 || mat.ks.z > 0;

    // Each light's lobe term is clamped on its own, so a light facing away
    // contributes nothing rather than darkening the others.
    Rgb acc{0, 0, 0};
    for (const RectAreaLight& light : lights) {
        if (diffuse) acc += shade_lambert_const(p, n, light, mat);
        if (specular) acc += shade_phong_const(p, n, view, light, mat);
    }
    if (env != nullptr && diffuse) {
        if (opts.env_cutoff_i == 1 && opts.env_cutoff_j == 1)
            acc += shade_lambert_env_dc(p, n, *env, mat);
        else
            acc += shade_lambert_env(p, n, *env, mat, opts.env_cutoff_i, opts.env_cutoff_j);
    }
    return acc;
}

} // namespace clight
