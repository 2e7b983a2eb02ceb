#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "clight/dct.hpp"
#include "clight/experiments.hpp"
#include "clight/image.hpp"
#include "clight/metrics.hpp"
#include "clight/render.hpp"
#include "clight/scene.hpp"

using namespace clight;

namespace {

int cmd_render(const std::string& scene_path, const std::string& mode,
               long long samples, uint64_t seed, const std::string& integrand,
               bool stratified, const std::string& out) {
    Scene scene = load_scene(scene_path);
    RenderJob job;
    job.scene = &scene;
    job.mode = mode == "mc" ? RenderMode::mc : RenderMode::closed_form;
    job.mc.samples_per_light = samples;
    job.mc.seed = seed;
    job.mc.integrand = integrand == "approx" ? McConfig::Integrand::approximated
                                             : McConfig::Integrand::exact;
    job.mc.stratified = stratified;
    job.output_path = out;
    render(job);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_precompute(const std::vector<std::string>& face_paths, int cutoff_i,
                   int cutoff_j, const std::string& out) {
    std::array<DctFace, 6> faces;
    for (int i = 0; i < 6; ++i)
        faces[i] = dct_forward(read_image(face_paths[i]));
    save_coeffs(faces, out, cutoff_i, cutoff_j);
    std::cout << "wrote " << out << "\n";
    return 0;
}

int cmd_compare(const std::string& a_path, const std::string& b_path,
                const std::string& channel, const std::string& metric) {
    ImageBuffer a = read_image(a_path);
    ImageBuffer b = read_image(b_path);
    Channel ch = channel_from_string(channel);
    double value = metric == "rel" ? rel_error_pct(a, b, ch) : psnr(a, b, ch);
    std::printf("%s %s = %.9g%s\n", metric.c_str(), channel.c_str(), value,
                metric == "rel" ? " %" : " dB");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form area-light and DCT environment lighting renderer"};
    app.require_subcommand(1);

    // render
    auto* render_cmd = app.add_subcommand("render", "Render a scene file");
    std::string scene_path, mode = "closed", integrand = "exact", out = "out.ppm";
    long long samples = 1000;
    uint64_t seed = 0;
    bool no_stratify = false;
    render_cmd->add_option("scene", scene_path, "scene file")->required();
    render_cmd->add_option("--mode", mode, "closed | mc")->check(CLI::IsMember({"closed", "mc"}));
    render_cmd->add_option("--samples", samples, "MC samples per light");
    render_cmd->add_option("--seed", seed, "MC seed");
    render_cmd->add_option("--integrand", integrand, "exact | approx")
        ->check(CLI::IsMember({"exact", "approx"}));
    render_cmd->add_flag("--no-stratify", no_stratify, "disable stratified sampling");
    render_cmd->add_option("-o,--out", out, "output image (.ppm or .pfm)");

    // precompute-dct
    auto* pre_cmd = app.add_subcommand("precompute-dct",
                                       "DCT-transform six face images into a .dctc file");
    std::vector<std::string> face_paths;
    int cutoff_i = -1, cutoff_j = -1;
    std::string pre_out = "env.dctc";
    pre_cmd->add_option("faces", face_paths, "posx negx posy negy posz negz images")
        ->expected(6)
        ->required();
    pre_cmd->add_option("--cutoff", [&](const std::vector<std::string>& vals) {
        cutoff_i = std::stoi(vals.at(0));
        cutoff_j = std::stoi(vals.at(1));
        return true;
    }, "kept low-frequency block (I J)")->expected(2);
    pre_cmd->add_option("-o,--out", pre_out, "output coefficient file");

    // compare
    auto* cmp_cmd = app.add_subcommand("compare", "Channel metric between two images");
    std::string a_path, b_path, channel = "S", metric = "psnr";
    cmp_cmd->add_option("a", a_path, "test image")->required();
    cmp_cmd->add_option("b", b_path, "ground-truth image")->required();
    cmp_cmd->add_option("--channel", channel, "R|G|B|H|S|I");
    cmp_cmd->add_option("--metric", metric, "psnr | rel")
        ->check(CLI::IsMember({"psnr", "rel"}));

    // sweep-ratio
    auto* sweep_cmd = app.add_subcommand("sweep-ratio",
                                         "PSNR / relative error versus d^2/Area");
    SweepOptions sweep_opt;
    sweep_opt.out_dir = "sweep_out";
    sweep_cmd->add_option("--ratios", sweep_opt.ratios, "d^2/Area values");
    sweep_cmd->add_option("--size", sweep_opt.image_size, "image resolution");
    sweep_cmd->add_option("--samples", sweep_opt.gt_samples, "ground-truth MC samples");
    sweep_cmd->add_option("--seed", sweep_opt.seed, "MC seed");
    sweep_cmd->add_option("--out-dir", sweep_opt.out_dir, "output directory");

    // env-error
    auto* env_cmd = app.add_subcommand("env-error",
                                       "Per-channel error under synthetic environments");
    EnvErrorOptions env_opt;
    env_opt.n_envs = 2;
    env_opt.out_dir = "env_out";
    env_cmd->add_option("--res", env_opt.face_res, "face resolution");
    env_cmd->add_option("--envs", env_opt.n_envs, "number of environments");
    env_cmd->add_option("--size", env_opt.image_size, "image resolution");
    env_cmd->add_option("--samples", env_opt.gt_samples, "ground-truth MC samples per face");
    env_cmd->add_option("--seed", env_opt.seed, "MC seed");
    env_cmd->add_option("--out-dir", env_opt.out_dir, "output directory");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Closed-form vs MC render timing");
    BenchOptions bench_opt;
    bench_opt.out_dir = "bench_out";
    bench_cmd->add_option("--size", bench_opt.image_size, "image resolution");
    bench_cmd->add_option("--samples", bench_opt.mc_samples, "MC samples per light");
    bench_cmd->add_option("--reps", bench_opt.reps, "timed repetitions");
    bench_cmd->add_flag("--env", bench_opt.include_env,
                        "also time DC-only environment shading vs sampling");
    bench_cmd->add_option("--env-size", bench_opt.env_image_size,
                          "resolution of the environment timing renders");
    bench_cmd->add_option("--out-dir", bench_opt.out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (render_cmd->parsed())
            return cmd_render(scene_path, mode, samples, seed, integrand, !no_stratify, out);
        if (pre_cmd->parsed())
            return cmd_precompute(face_paths, cutoff_i, cutoff_j, pre_out);
        if (cmp_cmd->parsed())
            return cmd_compare(a_path, b_path, channel, metric);
        if (sweep_cmd->parsed()) {
            SweepResult r = experiment_ratio_sweep(sweep_opt);
            for (const SweepPoint& p : r.points)
                std::printf("ratio %-6g  S-PSNR %7.3f dB  S-rel %.4f %%  H-rel %.4f %%\n",
                            p.ratio, p.s_psnr, p.s_rel, p.h_rel);
            std::cout << "wrote " << sweep_opt.out_dir << "/sweep.csv\n";
            return 0;
        }
        if (env_cmd->parsed()) {
            EnvErrorResult r = experiment_env_error(env_opt);
            std::printf("DC-only vs MC (exposure-normalized, averaged over %d envs):\n",
                        env_opt.n_envs);
            std::printf("  H-rel %.4f %%  S-rel %.4f %%  I-rel %.4f %%\n", r.dc_rel_h,
                        r.dc_rel_s, r.dc_rel_i);
            if (env_opt.include_full_cutoff)
                std::printf("full-cutoff: H-rel %.4f %%  S-rel %.4f %%\n", r.full_rel_h,
                            r.full_rel_s);
            std::cout << "wrote " << env_opt.out_dir << "/env_error.csv\n";
            return 0;
        }
        if (bench_cmd->parsed()) {
            BenchResult r = experiment_bench(bench_opt);
            std::printf("closed %.2f ms (median)  mc %.2f ms (median)  speedup %.1fx\n",
                        r.closed_ms_median, r.mc_ms_median, r.speedup);
            for (int i = 0; i < (int)r.closed_ms.size(); ++i)
                std::printf("  rep %d: closed %.2f ms, mc %.2f ms\n", i, r.closed_ms[i],
                            r.mc_ms[i]);
            if (bench_opt.include_env)
                std::printf("environment: dc %.2f ms vs mc %.2f ms: %.1fx\n",
                            r.env_dc_ms_median, r.env_mc_ms_median, r.env_speedup);
            std::cout << "wrote " << bench_opt.out_dir << "/bench.csv\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
