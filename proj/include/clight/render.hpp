#pragma once

#include <string>

#include "clight/image.hpp"
#include "clight/mc.hpp"
#include "clight/scene.hpp"

namespace clight {

enum class RenderMode { closed_form, mc };

struct RenderJob {
    const Scene* scene = nullptr;
    RenderMode mode = RenderMode::closed_form;
    McConfig mc; // used in mc mode; seeds are derived per pixel
    std::string output_path; // ".ppm" or ".pfm"; empty writes nothing
};

/// Deterministic seed derivation for parallel-safe streams.
uint64_t mix_seed(uint64_t seed, uint64_t stream);

/// Casts one primary ray per pixel and shades the nearest hit with the
/// closed-form dispatch or the Monte Carlo estimator. Misses receive the
/// environment reconstructed along the ray (black without one).
ImageBuffer render(const RenderJob& job);

} // namespace clight
