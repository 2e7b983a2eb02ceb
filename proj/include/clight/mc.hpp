#pragma once

#include <cstdint>
#include <span>

#include "clight/arealight.hpp"
#include "clight/envmap.hpp"

namespace clight {

/// Monte Carlo reference estimator configuration.
///
/// Sampling is uniform in (u,v) over each light's parametric square, so the
/// estimator targets exactly the integrals the closed forms evaluate. The
/// generator is a stateless SplitMix64 counter keyed on
/// (seed, light index, sample index); results are therefore bit-identical
/// for a fixed config regardless of evaluation order or thread schedule.
struct McConfig {
    long long samples_per_light = 1000;
    uint64_t seed = 0;
    enum class Integrand {
        exact,        // true per-patch distance and normalized directions
        approximated  // constant-distance integrand matching the closed form
    };
    Integrand integrand = Integrand::exact;
    // Jittered g x g grid with g = round(sqrt(samples_per_light)); the
    // effective sample count is g^2.
    bool stratified = true;
};

/// Estimates the radiance at p from one constant rectangular light.
Rgb mc_shade(const Vec3& p, const Vec3& n, const Vec3& view,
             const RectAreaLight& light, const Material& mat,
             const McConfig& cfg);

/// Estimates the radiance at p from a set of lights and an optional
/// environment (per-face sampling of the reconstructed light at full
/// cutoffs; environments shade the Lambertian term only).
Rgb mc_shade(const Vec3& p, const Vec3& n, const Vec3& view,
             std::span<const RectAreaLight> lights, const EnvCubemap* env,
             const Material& mat, const McConfig& cfg);

/// Per-channel sample variance of mc_shade across `batches` runs with
/// independently derived seeds.
Rgb mc_variance(const Vec3& p, const Vec3& n, const Vec3& view,
                std::span<const RectAreaLight> lights, const EnvCubemap* env,
                const Material& mat, const McConfig& cfg, int batches);

} // namespace clight
