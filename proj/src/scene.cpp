#include "clight/scene.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace clight {

namespace {

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void scene_fail(const std::string& path, int line, const std::string& msg) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + msg);
}

} // namespace

Ray camera_ray(const Camera& cam, double x, double y) {
    Vec3 forward = (cam.look_at - cam.position).normalized();
    Vec3 right = forward.cross(cam.up).normalized();
    Vec3 up = right.cross(forward);
    double tanv = std::tan(0.5 * cam.vfov_deg * kPi / 180.0);
    double aspect = (double)cam.width / cam.height;
    double ndc_x = (2.0 * (x + 0.5) / cam.width - 1.0) * tanv * aspect;
    double ndc_y = (1.0 - 2.0 * (y + 0.5) / cam.height) * tanv;
    return {cam.position, (forward + right * ndc_x + up * ndc_y).normalized()};
}

void validate_scene(const Scene& scene) {
    if (scene.lights.empty() && !scene.env.has_value())
        throw std::invalid_argument("scene has neither lights nor an environment");
    if (!(scene.camera.vfov_deg > 0.0 && scene.camera.vfov_deg < 180.0))
        throw std::invalid_argument("camera vfov must be in (0,180)");
    if (scene.camera.width < 1 || scene.camera.height < 1)
        throw std::invalid_argument("image dimensions must be positive");
    for (const Mesh& m : scene.meshes)
        if (m.material_id < 0 || m.material_id >= (int)scene.materials.size())
            throw std::invalid_argument("mesh references an undefined material");
    for (const RectAreaLight& l : scene.lights) validate_light(l);
    if (scene.env.has_value()) validate_env(*scene.env);
}

Scene load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    std::filesystem::path base = std::filesystem::path(path).parent_path();

    Scene scene;
    std::map<std::string, int> material_ids;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;

        if (tag == "camera") {
            Camera& c = scene.camera;
            if (!(ls >> c.position.x >> c.position.y >> c.position.z >> c.look_at.x >>
                  c.look_at.y >> c.look_at.z >> c.up.x >> c.up.y >> c.up.z >> c.vfov_deg >>
                  c.width >> c.height))
                scene_fail(path, lineno, "camera expects: pos(3) lookat(3) up(3) vfov w h");
        } else if (tag == "exposure") {
            if (!(ls >> scene.exposure)) scene_fail(path, lineno, "exposure expects one value");
        } else if (tag == "material") {
            std::string name;
            Material m;
            if (!(ls >> name >> m.kd.x >> m.kd.y >> m.kd.z >> m.ks.x >> m.ks.y >> m.ks.z >> m.sh))
                scene_fail(path, lineno, "material expects: name kd(3) ks(3) sh");
            if (m.sh < 1 || m.sh > kMaxShininess)
                scene_fail(path, lineno, "material shininess must be in [1,32]");
            material_ids[name] = (int)scene.materials.size();
            scene.materials.push_back(m);
        } else if (tag == "mesh") {
            std::string obj_path, mat_name;
            if (!(ls >> obj_path >> mat_name))
                scene_fail(path, lineno, "mesh expects: path material [translate x y z] [scale s]");
            auto it = material_ids.find(mat_name);
            if (it == material_ids.end()) scene_fail(path, lineno, "unknown material " + mat_name);
            Vec3 translate{0, 0, 0};
            double scale = 1.0;
            std::string opt;
            while (ls >> opt) {
                if (opt == "translate") {
                    if (!(ls >> translate.x >> translate.y >> translate.z))
                        scene_fail(path, lineno, "translate expects 3 values");
                } else if (opt == "scale") {
                    if (!(ls >> scale)) scene_fail(path, lineno, "scale expects 1 value");
                } else {
                    scene_fail(path, lineno, "unknown mesh option " + opt);
                }
            }
            std::filesystem::path p(obj_path);
            Mesh mesh = load_obj(p.is_absolute() ? p.string() : (base / p).string());
            for (Vec3& v : mesh.positions) v = v * scale + translate;
            mesh.material_id = it->second;
            scene.meshes.push_back(std::move(mesh));
        } else if (tag == "sphere") {
            Vec3 c;
            double r;
            int stacks, slices;
            std::string mat_name;
            if (!(ls >> c.x >> c.y >> c.z >> r >> stacks >> slices >> mat_name))
                scene_fail(path, lineno, "sphere expects: center(3) radius stacks slices material");
            auto it = material_ids.find(mat_name);
            if (it == material_ids.end()) scene_fail(path, lineno, "unknown material " + mat_name);
            Mesh mesh = make_uv_sphere(c, r, stacks, slices);
            mesh.material_id = it->second;
            scene.meshes.push_back(std::move(mesh));
        } else if (tag == "light") {
            Vec3 a, b, c;
            Rgb i;
            if (!(ls >> a.x >> a.y >> a.z >> b.x >> b.y >> b.z >> c.x >> c.y >> c.z >> i.x >>
                  i.y >> i.z))
                scene_fail(path, lineno, "light expects: a(3) b(3) c(3) intensity(3)");
            scene.lights.push_back(make_rect_light(a, b, c, i));
        } else if (tag == "env") {
            std::string env_path;
            double half_extent;
            if (!(ls >> env_path >> half_extent))
                scene_fail(path, lineno, "env expects: path half_extent [cutoff ci cj]");
            std::string opt;
            while (ls >> opt) {
                if (opt == "cutoff") {
                    if (!(ls >> scene.env_cutoff_i >> scene.env_cutoff_j))
                        scene_fail(path, lineno, "cutoff expects 2 values");
                } else {
                    scene_fail(path, lineno, "unknown env option " + opt);
                }
            }
            std::filesystem::path p(env_path);
            CubemapCoeffs cc = load_coeffs(p.is_absolute() ? p.string() : (base / p).string());
            EnvCubemap env;
            env.faces = std::move(cc.faces);
            env.half_extent = half_extent;
            scene.env = std::move(env);
        } else {
            scene_fail(path, lineno, "unknown record type " + tag);
        }
    }
    validate_scene(scene);
    return scene;
}

} // namespace clight
