#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clight/metrics.hpp"
#include "clight/render.hpp"
#include "clight/scene.hpp"

namespace clight {

/// Accuracy of the constant-distance approximation as a function of
/// d^2/Area: renders a two-light Lambertian sphere per ratio, compares the
/// closed form against exact-mode Monte Carlo ground truth in HSI.
struct SweepOptions {
    std::vector<double> ratios{0.4, 0.7, 1.0, 2.0, 4.0, 16.0};
    int image_size = 128;
    long long gt_samples = 2000;
    uint64_t seed = 0x5eedULL;
    std::string out_dir; // empty: write no files
};

struct SweepPoint {
    double ratio = 0;
    double s_psnr = 0;
    double s_rel = 0;
    double h_rel = 0;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::vector<MetricRow> rows;
};

Scene make_sweep_scene(double ratio, int image_size);
SweepResult experiment_ratio_sweep(const SweepOptions& opt);

/// Per-channel RGB/HSI error of the closed form against Monte Carlo ground
/// truth for a Lambertian sphere under synthetic low-frequency cubemaps,
/// at the DC-only and full cutoffs.
struct EnvErrorOptions {
    int face_res = 16;
    int n_envs = 1;
    int image_size = 96;
    long long gt_samples = 2048;
    uint64_t seed = 0x5eedULL;
    bool include_full_cutoff = true;
    std::string out_dir;
};

struct EnvErrorResult {
    std::vector<MetricRow> rows;
    // DC-only closed form vs ground truth after exposure normalization,
    // averaged across environments.
    double dc_rel_h = 0, dc_rel_s = 0, dc_rel_i = 0;
    double full_rel_h = 0, full_rel_s = 0;
};

/// Deterministic low-frequency environment: warm palette with gentle
/// per-face gradients and a small hue tilt. `variant` alters the face
/// scales so several distinct environments can be averaged.
EnvCubemap make_synthetic_env(int face_res, double half_extent, int variant = 0);

EnvErrorResult experiment_env_error(const EnvErrorOptions& opt);

/// Wall-clock comparison of the closed-form render against the Monte Carlo
/// render of the same scene.
struct BenchOptions {
    int image_size = 256;
    long long mc_samples = 1000;
    int reps = 5;
    uint64_t seed = 0x5eedULL;
    // also time DC-only environment shading against sampling the
    // reconstructed environment (rendered at env_image_size)
    bool include_env = false;
    int env_image_size = 64;
    std::string out_dir;
};

struct BenchResult {
    std::vector<double> closed_ms;
    std::vector<double> mc_ms;
    double closed_ms_median = 0;
    double mc_ms_median = 0;
    double speedup = 0;
    double env_dc_ms_median = 0; // when include_env is set
    double env_mc_ms_median = 0;
    double env_speedup = 0;
    std::vector<MetricRow> rows;
};

BenchResult experiment_bench(const BenchOptions& opt);

} // namespace clight
