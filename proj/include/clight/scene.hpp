#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clight/arealight.hpp"
#include "clight/envmap.hpp"
#include "clight/mesh.hpp"

namespace clight {

struct Camera {
    Vec3 position{0, 0, 5};
    Vec3 look_at{0, 0, 0};
    Vec3 up{0, 1, 0};
    double vfov_deg = 45.0; // vertical field of view, (0,180)
    int width = 256, height = 256;
};

/// Primary ray through the center of pixel (x, y); top-left pixel is (0,0).
Ray camera_ray(const Camera& cam, double x, double y);

struct Scene {
    Camera camera;
    double exposure = 1.0;
    std::vector<Material> materials;
    std::vector<Mesh> meshes; // each mesh's material_id indexes materials
    std::vector<RectAreaLight> lights;
    std::optional<EnvCubemap> env;
    int env_cutoff_i = -1, env_cutoff_j = -1;
};

/// Throws unless the scene has a light source and a valid camera.
void validate_scene(const Scene& scene);

/// Line-oriented scene description; see the README for the grammar.
/// Relative paths inside the file resolve against the file's directory.
Scene load_scene(const std::string& path);

} // namespace clight
