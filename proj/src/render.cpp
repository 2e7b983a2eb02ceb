#include "clight/render.hpp"

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

} // namespace

uint64_t mix_seed(uint64_t seed, uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream ^ 0x6a09e667f3bcc909ULL));
}

ImageBuffer render(const RenderJob& job) {
    if (job.scene == nullptr) throw std::invalid_argument("render: no scene");
    const Scene& scene = *job.scene;
    validate_scene(scene);

    BvhScene bvh(scene.meshes);
    const EnvCubemap* env = scene.env.has_value() ? &*scene.env : nullptr;
    const int full_ci = env ? env->faces[0].N : 0;
    const int full_cj = env ? env->faces[0].M : 0;
    // Closed-form shading and its backdrop honor the scene cutoffs; the MC
    // reference always evaluates the fully reconstructed light.
    const int ci = scene.env_cutoff_i > 0 ? scene.env_cutoff_i : full_ci;
    const int cj = scene.env_cutoff_j > 0 ? scene.env_cutoff_j : full_cj;
    ShadeOptions opts{ci, cj};

    const Camera& cam = scene.camera;
    ImageBuffer img(cam.width, cam.height);
    std::span<const RectAreaLight> lights(scene.lights);

    for (int y = 0; y < cam.height; ++y) {
        for (int x = 0; x < cam.width; ++x) {
            Ray ray = camera_ray(cam, x, y);
            Hit hit;
            Rgb color{0, 0, 0};
            if (bvh.intersect(ray, hit)) {
                const Material& mat = scene.materials[scene.meshes[hit.mesh_id].material_id];
                if (job.mode == RenderMode::closed_form) {
                    color = shade_dispatch(hit.position, hit.normal, ray.dir, lights, env,
                                           mat, opts);
                } else {
                    McConfig cfg = job.mc;
                    cfg.seed = mix_seed(job.mc.seed, (uint64_t)y * cam.width + x);
                    color = mc_shade(hit.position, hit.normal, ray.dir, lights, env, mat, cfg);
                }
            } else if (env != nullptr) {
                CubeFace face;
                double u, v;
                dir_to_face_uv(ray.dir, face, u, v);
                if (job.mode == RenderMode::closed_form)
                    color = reconstruct_pixel(env->face(face), u, v, ci, cj);
                else
                    color = reconstruct_pixel(env->face(face), u, v, full_ci, full_cj);
            }
            img.set(x, y, color);
        }
    }

    if (!job.output_path.empty()) {
        auto dot = job.output_path.find_last_of('.');
        std::string ext = dot == std::string::npos ? "" : job.output_path.substr(dot + 1);
        if (ext == "pfm")
            write_pfm(img, job.output_path);
        else
            write_ppm(img, job.output_path, scene.exposure);
    }
    return img;
}

} // namespace clight
