#include "clight/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>

namespace clight {

namespace {

RectAreaLight make_unit_light_toward(const Vec3& target, const Vec3& dir, double dist,
                                     const Rgb& intensity) {
    Vec3 centroid = target + dir * dist;
    Vec3 n_a = -dir;
    Frame f = build_frame(n_a);
    Vec3 a = centroid - f.t * 0.5 - f.b * 0.5;
    return {a, a + f.t, a + f.b, n_a, intensity};
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double stddev(const std::vector<double>& v) {
    double mean = 0;
    for (double x : v) mean += x;
    mean /= (double)v.size();
    double acc = 0;
    for (double x : v) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / std::fmax(1.0, (double)v.size() - 1));
}

// Scales `img` so its summed intensity matches the reference; H and S are
// invariant to this, it only matters for intensity comparisons.
ImageBuffer exposure_normalized(const ImageBuffer& img, const ImageBuffer& ref) {
    double si = 0, sr = 0;
    for (double v : img.pixels) si += v;
    for (double v : ref.pixels) sr += v;
    ImageBuffer out = img;
    if (si > 0) {
        double s = sr / si;
        for (double& v : out.pixels) v *= s;
    }
    return out;
}

void maybe_write(const ImageBuffer& img, const std::string& out_dir, const std::string& name) {
    if (out_dir.empty()) return;
    std::filesystem::create_directories(out_dir);
    write_pfm(img, out_dir + "/" + name + ".pfm");
    write_ppm(img, out_dir + "/" + name + ".ppm");
}

} // namespace

Scene make_sweep_scene(double ratio, int image_size) {
    Scene scene;
    scene.camera = {{0, 0.1, 2.3}, {0, 0, 0}, {0, 1, 0}, 28.0, image_size, image_size};
    scene.exposure = 1.4;
    scene.materials.push_back({{0.9, 0.55, 0.18}, {0, 0, 0}, 1});

    const double radius = 0.5;
    Mesh sphere = make_uv_sphere({0, 0, 0}, radius, 48, 96);
    sphere.material_id = 0;
    scene.meshes.push_back(std::move(sphere));

    // Unit-area lights, so d = sqrt(ratio), measured from the nearest point
    // of the sphere. The warm key light is the swept one; the cool light
    // stays at a fixed distance so the mixed-color error saturates once the
    // swept light's approximation error falls below it, and a dim fill from
    // the camera side keeps every visible pixel away from numerically
    // meaningless saturation values at zero radiance.
    scene.lights.push_back(make_unit_light_toward(
        {0, 0, 0}, Vec3{0.45, 0.72, 0.52}.normalized(), radius + std::sqrt(ratio),
        {1.5, 0.95, 0.5}));
    scene.lights.push_back(make_unit_light_toward(
        {0, 0, 0}, Vec3{-0.50, 0.62, 0.55}.normalized(), radius + std::sqrt(0.8),
        {0.55, 0.9, 1.45}));
    scene.lights.push_back(make_unit_light_toward(
        {0, 0, 0}, Vec3{0.0, 0.12, 1.0}.normalized(), radius + 8.0, {0.26, 0.25, 0.24}));
    return scene;
}

SweepResult experiment_ratio_sweep(const SweepOptions& opt) {
    SweepResult result;
    for (double ratio : opt.ratios) {
        Scene scene = make_sweep_scene(ratio, opt.image_size);

        RenderJob gt_job;
        gt_job.scene = &scene;
        gt_job.mode = RenderMode::mc;
        gt_job.mc.samples_per_light = opt.gt_samples;
        gt_job.mc.integrand = McConfig::Integrand::exact;
        gt_job.mc.stratified = true;
        gt_job.mc.seed = opt.seed;
        ImageBuffer gt = render(gt_job);

        RenderJob cf_job;
        cf_job.scene = &scene;
        cf_job.mode = RenderMode::closed_form;
        ImageBuffer cf = render(cf_job);

        SweepPoint pt;
        pt.ratio = ratio;
        pt.s_psnr = psnr(cf, gt, Channel::S);
        pt.s_rel = rel_error_pct(cf, gt, Channel::S);
        pt.h_rel = rel_error_pct(cf, gt, Channel::H);
        result.points.push_back(pt);

        result.rows.push_back({"sweep", ratio, "S", "psnr", pt.s_psnr});
        result.rows.push_back({"sweep", ratio, "S", "rel", pt.s_rel});
        result.rows.push_back({"sweep", ratio, "H", "rel", pt.h_rel});
        result.rows.push_back({"sweep", ratio, "I", "rel", rel_error_pct(cf, gt, Channel::I)});

        char tag[64];
        std::snprintf(tag, sizeof(tag), "ratio_%.3g", ratio);
        maybe_write(gt, opt.out_dir, std::string(tag) + "_mc");
        maybe_write(cf, opt.out_dir, std::string(tag) + "_closed");
    }
    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        write_csv(opt.out_dir + "/sweep.csv", result.rows);
    }
    return result;
}

EnvCubemap make_synthetic_env(int face_res, double half_extent, int variant) {
    const int n = face_res;
    // Warm base palette; per-face brightness and gradient signs vary so the
    // six faces are distinct but stay low-frequency and positive.
    const Rgb base{0.82, 0.60, 0.34};
    const double face_scale[6] = {1.00, 0.86, 1.12, 0.92, 1.06, 0.96};
    const double gx_sign[6] = {1, -1, 1, -1, 1, -1};
    const double gy_sign[6] = {1, 1, -1, -1, 1, 1};

    EnvCubemap env;
    env.half_extent = half_extent;
    for (int f = 0; f < 6; ++f) {
        FaceImage img(n, n);
        double s = face_scale[(f + variant) % 6];
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double gx = 2.0 * i / (n - 1) - 1.0;
                double gy = 2.0 * j / (n - 1) - 1.0;
                double level = s * (1.0 + 0.10 * gx_sign[f] * gx + 0.08 * gy_sign[f] * gy);
                // small opposing tilt on R and B shifts the hue a little
                double tilt = 0.015 * gx_sign[f] * gx;
                img.at(j, i, 0) = base.x * level * (1.0 + tilt);
                img.at(j, i, 1) = base.y * level;
                img.at(j, i, 2) = base.z * level * (1.0 - tilt);
            }
        }
        env.faces[f] = dct_forward(img);
    }
    return env;
}

EnvErrorResult experiment_env_error(const EnvErrorOptions& opt) {
    EnvErrorResult result;
    const char* channel_names[6] = {"R", "G", "B", "H", "S", "I"};
    const Channel channels[6] = {Channel::R, Channel::G, Channel::B,
                                 Channel::H, Channel::S, Channel::I};

    double acc_dc[6] = {0}, acc_dc_snr[6] = {0};
    double acc_full[6] = {0};

    for (int e = 0; e < opt.n_envs; ++e) {
        Scene scene;
        // Camera framed so the sphere covers every pixel; the comparison
        // then only sees shaded points.
        scene.camera = {{0, 0, 2.2}, {0, 0, 0}, {0, 1, 0}, 26.0, opt.image_size, opt.image_size};
        scene.exposure = 2.2;
        scene.materials.push_back({{1, 1, 1}, {0, 0, 0}, 1});
        Mesh sphere = make_uv_sphere({0, 0, 0}, 0.8, 48, 96);
        sphere.material_id = 0;
        scene.meshes.push_back(std::move(sphere));
        scene.env = make_synthetic_env(opt.face_res, 10.0, e);

        RenderJob gt_job;
        gt_job.scene = &scene;
        gt_job.mode = RenderMode::mc;
        gt_job.mc.samples_per_light = opt.gt_samples;
        gt_job.mc.integrand = McConfig::Integrand::exact;
        gt_job.mc.stratified = true;
        gt_job.mc.seed = opt.seed + e;
        ImageBuffer gt = render(gt_job);

        scene.env_cutoff_i = 1;
        scene.env_cutoff_j = 1;
        RenderJob dc_job;
        dc_job.scene = &scene;
        dc_job.mode = RenderMode::closed_form;
        ImageBuffer dc = exposure_normalized(render(dc_job), gt);

        char tag[32];
        std::snprintf(tag, sizeof(tag), "env%d", e);
        maybe_write(gt, opt.out_dir, std::string(tag) + "_mc");
        maybe_write(dc, opt.out_dir, std::string(tag) + "_dc");

        for (int c = 0; c < 6; ++c) {
            double rel = rel_error_pct(dc, gt, channels[c]);
            double snr = psnr(dc, gt, channels[c]);
            acc_dc[c] += rel;
            acc_dc_snr[c] += snr;
            result.rows.push_back({std::string(tag), 1, channel_names[c], "rel", rel});
            result.rows.push_back({std::string(tag), 1, channel_names[c], "snr", snr});
        }

        if (opt.include_full_cutoff) {
            scene.env_cutoff_i = -1;
            scene.env_cutoff_j = -1;
            RenderJob full_job;
            full_job.scene = &scene;
            full_job.mode = RenderMode::closed_form;
            ImageBuffer full = exposure_normalized(render(full_job), gt);
            maybe_write(full, opt.out_dir, std::string(tag) + "_full");
            for (int c = 0; c < 6; ++c) {
                double rel = rel_error_pct(full, gt, channels[c]);
                acc_full[c] += rel;
                result.rows.push_back(
                    {std::string(tag), (double)opt.face_res, channel_names[c], "rel", rel});
                result.rows.push_back({std::string(tag), (double)opt.face_res, channel_names[c],
                                       "snr", psnr(full, gt, channels[c])});
            }
        }
    }

    for (int c = 0; c < 6; ++c) {
        acc_dc[c] /= opt.n_envs;
        acc_full[c] /= opt.n_envs;
    }
    result.dc_rel_h = acc_dc[3];
    result.dc_rel_s = acc_dc[4];
    result.dc_rel_i = acc_dc[5];
    result.full_rel_h = acc_full[3];
    result.full_rel_s = acc_full[4];

    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        write_csv(opt.out_dir + "/env_error.csv", result.rows);
    }
    return result;
}

BenchResult experiment_bench(const BenchOptions& opt) {
    Scene scene;
    scene.camera = {{0, 0, 2.4}, {0, 0, 0}, {0, 1, 0}, 40.0, opt.image_size, opt.image_size};
    scene.materials.push_back({{0.75, 0.7, 0.65}, {0, 0, 0}, 1});
    Mesh sphere = make_uv_sphere({0, 0, 0}, 0.7, 32, 64);
    sphere.material_id = 0;
    scene.meshes.push_back(std::move(sphere));
    scene.lights.push_back(make_unit_light_toward(
        {0, 0, 0}, Vec3{0.2, 0.9, 0.35}.normalized(), 2.5, {1.2, 1.1, 1.0}));

    RenderJob closed_job;
    closed_job.scene = &scene;
    closed_job.mode = RenderMode::closed_form;

    RenderJob mc_job;
    mc_job.scene = &scene;
    mc_job.mode = RenderMode::mc;
    mc_job.mc.samples_per_light = opt.mc_samples;
    mc_job.mc.integrand = McConfig::Integrand::exact;
    mc_job.mc.stratified = true;
    mc_job.mc.seed = opt.seed;

    auto time_render = [](const RenderJob& job) {
        auto t0 = std::chrono::steady_clock::now();
        ImageBuffer img = render(job);
        auto t1 = std::chrono::steady_clock::now();
        (void)img;
        return std::chrono::duration<double, std::milli>(t1 - t0).count();
    };

    // one warm-up pass per mode, then timed repetitions
    time_render(closed_job);
    time_render(mc_job);

    BenchResult result;
    for (int r = 0; r < opt.reps; ++r) {
        result.closed_ms.push_back(time_render(closed_job));
        result.mc_ms.push_back(time_render(mc_job));
    }
    result.closed_ms_median = median(result.closed_ms);
    result.mc_ms_median = median(result.mc_ms);
    result.speedup = result.mc_ms_median / result.closed_ms_median;

    for (int r = 0; r < opt.reps; ++r) {
        result.rows.push_back({"bench", (double)r, "-", "closed_ms", result.closed_ms[r]});
        result.rows.push_back({"bench", (double)r, "-", "mc_ms", result.mc_ms[r]});
    }
    result.rows.push_back({"bench", -1, "-", "closed_ms_median", result.closed_ms_median});
    result.rows.push_back({"bench", -1, "-", "mc_ms_median", result.mc_ms_median});
    result.rows.push_back({"bench", -1, "-", "closed_ms_stddev", stddev(result.closed_ms)});
    result.rows.push_back({"bench", -1, "-", "mc_ms_stddev", stddev(result.mc_ms)});
    result.rows.push_back({"bench", -1, "-", "speedup", result.speedup});

    if (opt.include_env) {
        Scene env_scene;
        env_scene.camera = {{0, 0, 2.2}, {0, 0, 0}, {0, 1, 0}, 26.0,
                            opt.env_image_size, opt.env_image_size};
        env_scene.materials.push_back({{0.85, 0.8, 0.75}, {0, 0, 0}, 1});
        Mesh env_sphere = make_uv_sphere({0, 0, 0}, 0.8, 32, 64);
        env_sphere.material_id = 0;
        env_scene.meshes.push_back(std::move(env_sphere));
        env_scene.env = make_synthetic_env(16, 10.0, 0);
        env_scene.env_cutoff_i = 1;
        env_scene.env_cutoff_j = 1;

        RenderJob dc_job;
        dc_job.scene = &env_scene;
        dc_job.mode = RenderMode::closed_form;

        RenderJob env_mc_job;
        env_mc_job.scene = &env_scene;
        env_mc_job.mode = RenderMode::mc;
        env_mc_job.mc.samples_per_light = opt.mc_samples;
        env_mc_job.mc.integrand = McConfig::Integrand::exact;
        env_mc_job.mc.seed = opt.seed;

        time_render(dc_job);
        std::vector<double> dc_ms, env_mc_ms;
        for (int r = 0; r < opt.reps; ++r) {
            dc_ms.push_back(time_render(dc_job));
            env_mc_ms.push_back(time_render(env_mc_job));
        }
        result.env_dc_ms_median = median(dc_ms);
        result.env_mc_ms_median = median(env_mc_ms);
        result.env_speedup = result.env_mc_ms_median / result.env_dc_ms_median;
        result.rows.push_back({"bench_env", -1, "-", "dc_ms_median", result.env_dc_ms_median});
        result.rows.push_back({"bench_env", -1, "-", "mc_ms_median", result.env_mc_ms_median});
        result.rows.push_back({"bench_env", -1, "-", "dc_ms_stddev", stddev(dc_ms)});
        result.rows.push_back({"bench_env", -1, "-", "mc_ms_stddev", stddev(env_mc_ms)});
        result.rows.push_back({"bench_env", -1, "-", "speedup", result.env_speedup});
    }
    if (!opt.out_dir.empty()) {
        std::filesystem::create_directories(opt.out_dir);
        write_csv(opt.out_dir + "/bench.csv", result.rows);
    }
    return result;
}

} // namespace clight
