#pragma once

#include <array>
#include <string>
#include <vector>

#include "clight/geometry.hpp"

namespace clight {

struct Ray {
    Vec3 origin;
    Vec3 dir; // unit
};

/// Triangle mesh with per-vertex shading normals.
struct Mesh {
    std::vector<Vec3> positions;
    std::vector<Vec3> normals;                  // parallel to positions
    std::vector<std::array<int, 3>> triangles;  // position/normal indices
    int material_id = 0;
};

/// Parses v/vn/f records (texture coordinates are ignored), triangulates
/// polygons fan-wise, and computes area-weighted vertex normals when the
/// file provides none. Malformed records raise an error carrying the line
/// number.
Mesh load_obj(const std::string& path);

/// UV-sphere triangulation; used by the procedural experiment scenes.
Mesh make_uv_sphere(const Vec3& center, double radius, int stacks, int slices);

/// Moller-Trumbore; hits require t > 1e-6. Returns false on miss.
bool ray_triangle(const Ray& ray, const Vec3& v0, const Vec3& v1, const Vec3& v2,
                  double& t, double& beta, double& gamma);

struct Hit {
    double t = 0;
    Vec3 position;
    Vec3 normal; // interpolated shading normal, unit
    int mesh_id = -1;
};

/// Median-split BVH over a set of meshes.
class BvhScene {
public:
    explicit BvhScene(std::vector<Mesh> meshes);

    bool intersect(const Ray& ray, Hit& hit) const;
    const std::vector<Mesh>& meshes() const { return meshes_; }

private:
    struct Prim {
        int mesh = 0, tri = 0;
        Vec3 lo, hi, centroid;
        Vec3 v0, e1, e2; // packed triangle for the traversal inner loop
    };
    struct Node {
        Vec3 lo, hi;
        int left = -1, right = -1; // interior when left >= 0
        int first = 0, count = 0;  // leaf range into prims_
    };

    int build(int begin, int end);

    std::vector<Mesh> meshes_;
    std::vector<Prim> prims_;
    std::vector<Node> nodes_;
};

} // namespace clight
