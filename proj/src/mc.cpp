#include "clight/mc.hpp"

#include <cmath>
#include <stdexcept>

namespace clight {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double to_unit(uint64_t bits) { return (bits >> 11) * 0x1.0p-53; }

double powi(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

Rgb clamp_positive(const Rgb& v) {
    return {std::fmax(v.x, 0.0), std::fmax(v.y, 0.0), std::fmax(v.z, 0.0)};
}

struct LightEval {
    Vec3 a, eu, ev; // corner and edge vectors
    Vec3 n_a;
    double d_p;          // squared centroid distance
    double inv_dp2;      // 1 / d_p^2
    double inv_dp_phong; // 1 / d_p^((sh+3)/2)
};

// One integrand sample; uniform (u,v) measure over the unit square. The
// diffuse and specular lobes accumulate separately so each lobe's estimate
// can be clamped on its own, mirroring the closed-form dispatch.
void sample_term(const LightEval& le, const Rgb& intensity,
                 const Vec3& p, const Vec3& n, const Vec3& r,
                 const Material& mat, bool diffuse, bool specular,
                 McConfig::Integrand mode, double u, double v,
                 Rgb& out_d, Rgb& out_s) {
    Vec3 cA = le.a + le.eu * u + le.ev * v;
    Vec3 LA = cA - p;
    if (mode == McConfig::Integrand::exact) {
        double r2 = LA.norm2();
        double rinv = 1.0 / std::sqrt(r2);
        Vec3 lhat = LA * rinv;
        double cosA = -lhat.dot(le.n_a);
        if (diffuse) {
            double ci = lhat.dot(n);
            if (ci > 0.0) out_d += mat.kd * intensity * (ci * cosA / r2);
        }
        if (specular) {
            double cr = lhat.dot(r);
            if (cr > 0.0) out_s += mat.ks * intensity * (powi(cr, mat.sh) * cosA / r2);
        }
    } else {
        if (diffuse) {
            double z = LA.dot(n);
            if (z > 0.0) out_d += mat.kd * intensity * (-z * LA.dot(le.n_a) * le.inv_dp2);
        }
        if (specular) {
            double zr = LA.dot(r);
            if (zr > 0.0)
                out_s += mat.ks * intensity * (-powi(zr, mat.sh) * LA.dot(le.n_a) * le.inv_dp_phong);
        }
    }
}

LightEval make_eval(const RectAreaLight& light, const Vec3& p, int sh) {
    LightEval le;
    le.a = light.a;
    le.eu = light.b - light.a;
    le.ev = light.c - light.a;
    le.n_a = light.n_a;
    le.d_p = mean_sq_dist(p, light);
    if (le.d_p <= 1e-6)
        throw std::invalid_argument("mc_shade: point coincides with the light");
    le.inv_dp2 = 1.0 / (le.d_p * le.d_p);
    le.inv_dp_phong = 1.0 / std::pow(le.d_p, 0.5 * (sh + 3));
    return le;
}

// Mean of the integrand over the (u,v) square for one light, clamped per
// lobe. `lookup` returns the light color at (u,v).
template <typename Lookup>
Rgb integrate_light(const LightEval& le, const Vec3& p, const Vec3& n, const Vec3& r,
                    const Material& mat, bool diffuse, bool specular,
                    const McConfig& cfg, uint64_t stream, Lookup&& lookup) {
    Rgb acc_d{0, 0, 0}, acc_s{0, 0, 0};
    uint64_t base = splitmix64(cfg.seed ^ splitmix64(stream ^ 0x51ab3f27c44bfb17ULL));
    double norm;
    if (cfg.stratified) {
        long long g = (long long)std::llround(std::sqrt((double)cfg.samples_per_light));
        if (g < 1) g = 1;
        double inv_g = 1.0 / (double)g;
        long long s = 0;
        for (long long iy = 0; iy < g; ++iy) {
            for (long long ix = 0; ix < g; ++ix, ++s) {
                double ju = to_unit(splitmix64(base + (uint64_t)(2 * s)));
                double jv = to_unit(splitmix64(base + (uint64_t)(2 * s + 1)));
                double u = (ix + ju) * inv_g;
                double v = (iy + jv) * inv_g;
                sample_term(le, lookup(u, v), p, n, r, mat, diffuse, specular,
                            cfg.integrand, u, v, acc_d, acc_s);
            }
        }
        norm = inv_g * inv_g;
    } else {
        for (long long s = 0; s < cfg.samples_per_light; ++s) {
            double u = to_unit(splitmix64(base + (uint64_t)(2 * s)));
            double v = to_unit(splitmix64(base + (uint64_t)(2 * s + 1)));
            sample_term(le, lookup(u, v), p, n, r, mat, diffuse, specular,
                        cfg.integrand, u, v, acc_d, acc_s);
        }
        norm = 1.0 / (double)cfg.samples_per_light;
    }
    return clamp_positive(acc_d * norm) + clamp_positive(acc_s * norm);
}

Rgb mc_shade_impl(const Vec3& p, const Vec3& n, const Vec3& view,
                  std::span<const RectAreaLight> lights, const EnvCubemap* env,
                  const Material& mat, const McConfig& cfg) {
    if (cfg.samples_per_light < 1)
        throw std::invalid_argument("mc_shade: samples_per_light must be >= 1");
    if (lights.empty() && env == nullptr)
        throw std::invalid_argument("mc_shade: no light source configured");

    const bool diffuse = mat.kd.x > 0 || mat.kd.y > 0 || mat.kd.z > 0;
    const bool specular = mat.ks.x > 0 || mat.ks.y > 0 || mat.ks.z > 0;
    Vec3 r = specular ? reflect(view, n) : Vec3{0, 0, 1};

    // Per-light estimates are clamped individually, mirroring the shading
    // dispatch: an away-facing light contributes nothing.
    Rgb acc{0, 0, 0};
    uint64_t stream = 0;
    for (const RectAreaLight& light : lights) {
        LightEval le = make_eval(light, p, mat.sh);
        Rgb intensity = light.intensity;
        acc += integrate_light(le, p, n, r, mat, diffuse, specular, cfg, stream++,
                               [&](double, double) { return intensity; });
    }
    if (env != nullptr && diffuse) {
        validate_env(*env);
        for (CubeFace fid : kAllFaces) {
            FaceGeometry geom = face_geometry(fid, p, env->half_extent);
            RectAreaLight face_light{geom.a, geom.b, geom.c, geom.n_a, {0, 0, 0}};
            LightEval le = make_eval(face_light, p, mat.sh);
            const DctFace& f = env->face(fid);
            acc += integrate_light(le, p, n, r, mat, /*diffuse=*/true, /*specular=*/false,
                                   cfg, stream++, [&](double u, double v) {
                                       return reconstruct_pixel(f, u, v, f.N, f.M);
                                   });
        }
    }
    return acc;
}

} // namespace

Rgb mc_shade(const Vec3& p, const Vec3& n, const Vec3& view,
             const RectAreaLight& light, const Material& mat,
             const McConfig& cfg) {
    return mc_shade_impl(p, n, view, std::span<const RectAreaLight>(&light, 1), nullptr,
                         mat, cfg);
}

Rgb mc_shade(const Vec3& p, const Vec3& n, const Vec3& view,
             std::span<const RectAreaLight> lights, const EnvCubemap* env,
             const Material& mat, const McConfig& cfg) {
    return mc_shade_impl(p, n, view, lights, env, mat, cfg);
}

Rgb mc_variance(const Vec3& p, const Vec3& n, const Vec3& view,
                std::span<const RectAreaLight> lights, const EnvCubemap* env,
                const Material& mat, const McConfig& cfg, int batches) {
    if (batches < 2)
        throw std::invalid_argument("mc_variance: need at least two batches");
    std::vector<Rgb> xs((size_t)batches);
    Rgb mean{0, 0, 0};
    for (int b = 0; b < batches; ++b) {
        McConfig c = cfg;
        c.seed = splitmix64(cfg.seed ^ (0xb5ad4eceda1ce2a9ULL + (uint64_t)b));
        xs[b] = mc_shade_impl(p, n, view, lights, env, mat, c);
        mean += xs[b];
    }
    mean *= 1.0 / batches;
    Rgb var{0, 0, 0};
    for (const Rgb& x : xs) {
        Rgb d = x - mean;
        var += d * d;
    }
    return var * (1.0 / (batches - 1));
}

} // namespace clight
