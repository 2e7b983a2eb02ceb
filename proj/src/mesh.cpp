#include "clight/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace clight {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kRayEps = 1e-6;

[[noreturn]] void parse_fail(const std::string& path, int line, const std::string& msg) {
    throw std::runtime_error(path + ":" + std::to_string(line) + ": " + msg);
}

// "3", "3/5", "3//7", "3/5/7" -> vertex and optional normal index (1-based).
void parse_face_vertex(const std::string& token, const std::string& path, int line,
                       int& v, int& vn) {
    v = 0;
    vn = 0;
    size_t s1 = token.find('/');
    try {
        if (s1 == std::string::npos) {
            v = std::stoi(token);
            return;
        }
        v = std::stoi(token.substr(0, s1));
        size_t s2 = token.find('/', s1 + 1);
        if (s2 == std::string::npos) return; // v/vt
        std::string third = token.substr(s2 + 1);
        if (!third.empty()) vn = std::stoi(third);
    } catch (const std::exception&) {
        parse_fail(path, line, "malformed face vertex '" + token + "'");
    }
}

} // namespace

Mesh load_obj(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");

    Mesh mesh;
    std::vector<Vec3> file_normals;
    std::vector<std::array<int, 3>> tri_normal_idx;
    bool any_missing_normal = false;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag[0] == '#') continue;
        if (tag == "v") {
            double x, y, z;
            if (!(ls >> x >> y >> z)) parse_fail(path, lineno, "malformed vertex record");
            mesh.positions.push_back({x, y, z});
        } else if (tag == "vn") {
            double x, y, z;
            if (!(ls >> x >> y >> z)) parse_fail(path, lineno, "malformed normal record");
            file_normals.push_back({x, y, z});
        } else if (tag == "f") {
            std::vector<int> vs, vns;
            std::string token;
            while (ls >> token) {
                int v, vn;
                parse_face_vertex(token, path, lineno, v, vn);
                if (v < 0) v = (int)mesh.positions.size() + 1 + v;
                if (vn < 0) vn = (int)file_normals.size() + 1 + vn;
                if (v < 1 || v > (int)mesh.positions.size())
                    parse_fail(path, lineno, "vertex index out of range");
                if (vn > (int)file_normals.size())
                    parse_fail(path, lineno, "normal index out of range");
                vs.push_back(v - 1);
                vns.push_back(vn - 1); // -1 when absent
            }
            if (vs.size() < 3) parse_fail(path, lineno, "face needs at least 3 vertices");
            for (size_t k = 1; k + 1 < vs.size(); ++k) {
                mesh.triangles.push_back({vs[0], vs[k], vs[k + 1]});
                tri_normal_idx.push_back({vns[0], vns[k], vns[k + 1]});
                if (vns[0] < 0 || vns[k] < 0 || vns[k + 1] < 0) any_missing_normal = true;
            }
        }
        // other record types (vt, o, g, s, usemtl, mtllib) are ignored
    }
    if (mesh.positions.empty() || mesh.triangles.empty())
        throw std::runtime_error(path + ": no geometry found");

    if (!file_normals.empty() && !any_missing_normal) {
        // Re-index so normals are per-vertex-slot, duplicating vertices when
        // a position is used with different normals.
        std::vector<Vec3> pos_out, nrm_out;
        std::vector<std::array<int, 3>> tri_out;
        std::vector<std::pair<int, int>> seen; // (v, vn) -> slot via linear map
        std::vector<int> slot_of;
        auto slot = [&](int v, int vn) {
            for (size_t i = 0; i < seen.size(); ++i)
                if (seen[i].first == v && seen[i].second == vn) return (int)i;
            seen.emplace_back(v, vn);
            pos_out.push_back(mesh.positions[v]);
            Vec3 nn = file_normals[vn];
            double len = nn.norm();
            nrm_out.push_back(len > 0 ? nn / len : Vec3{0, 0, 1});
            return (int)seen.size() - 1;
        };
        for (size_t t = 0; t < mesh.triangles.size(); ++t) {
            std::array<int, 3> tri{};
            for (int k = 0; k < 3; ++k)
                tri[k] = slot(mesh.triangles[t][k], tri_normal_idx[t][k]);
            tri_out.push_back(tri);
        }
        mesh.positions = std::move(pos_out);
        mesh.normals = std::move(nrm_out);
        mesh.triangles = std::move(tri_out);
        return mesh;
    }

    // Area-weighted vertex normals: the cross product's length is twice the
    // triangle area, so summing raw cross products weights by area.
    mesh.normals.assign(mesh.positions.size(), {0, 0, 0});
    for (const auto& tri : mesh.triangles) {
        Vec3 e1 = mesh.positions[tri[1]] - mesh.positions[tri[0]];
        Vec3 e2 = mesh.positions[tri[2]] - mesh.positions[tri[0]];
        Vec3 cr = e1.cross(e2);
        for (int k = 0; k < 3; ++k) mesh.normals[tri[k]] += cr;
    }
    for (Vec3& n : mesh.normals) {
        double len = n.norm();
        n = len > 0 ? n / len : Vec3{0, 0, 1};
    }
    return mesh;
}

Mesh make_uv_sphere(const Vec3& center, double radius, int stacks, int slices) {
    Mesh mesh;
    for (int i = 0; i <= stacks; ++i) {
        double theta = kPi * i / stacks;
        for (int j = 0; j < slices; ++j) {
            double phi = 2.0 * kPi * j / slices;
            Vec3 n{std::sin(theta) * std::cos(phi), std::cos(theta),
                   std::sin(theta) * std::sin(phi)};
            mesh.positions.push_back(center + n * radius);
            mesh.normals.push_back(n);
        }
    }
    auto idx = [&](int i, int j) { return i * slices + (j % slices); };
    for (int i = 0; i < stacks; ++i) {
        for (int j = 0; j < slices; ++j) {
            int a = idx(i, j), b = idx(i + 1, j), c = idx(i + 1, j + 1), d = idx(i, j + 1);
            if (i > 0) mesh.triangles.push_back({a, b, d});
            if (i < stacks - 1) mesh.triangles.push_back({b, c, d});
        }
    }
    return mesh;
}

namespace {

inline bool ray_triangle_packed(const Ray& ray, const Vec3& v0, const Vec3& e1,
                                const Vec3& e2, double& t, double& beta, double& gamma) {
    Vec3 pv = ray.dir.cross(e2);
    double det = e1.dot(pv);
    if (std::fabs(det) < 1e-14) return false;
    double inv = 1.0 / det;
    Vec3 tv = ray.origin - v0;
    beta = tv.dot(pv) * inv;
    if (beta < 0.0 || beta > 1.0) return false;
    Vec3 qv = tv.cross(e1);
    gamma = ray.dir.dot(qv) * inv;
    if (gamma < 0.0 || beta + gamma > 1.0) return false;
    t = e2.dot(qv) * inv;
    return t > kRayEps;
}

} // namespace

bool ray_triangle(const Ray& ray, const Vec3& v0, const Vec3& v1, const Vec3& v2,
                  double& t, double& beta, double& gamma) {
    Vec3 e1 = v1 - v0, e2 = v2 - v0;
    Vec3 pv = ray.dir.cross(e2);
    double det = e1.dot(pv);
    if (std::fabs(det) < 1e-14) return false;
    double inv = 1.0 / det;
    Vec3 tv = ray.origin - v0;
    beta = tv.dot(pv) * inv;
    if (beta < 0.0 || beta > 1.0) return false;
    Vec3 qv = tv.cross(e1);
    gamma = ray.dir.dot(qv) * inv;
    if (gamma < 0.0 || beta + gamma > 1.0) return false;
    t = e2.dot(qv) * inv;
    return t > kRayEps;
}

BvhScene::BvhScene(std::vector<Mesh> meshes) : meshes_(std::move(meshes)) {
    for (int m = 0; m < (int)meshes_.size(); ++m) {
        const Mesh& mesh = meshes_[m];
        for (int t = 0; t < (int)mesh.triangles.size(); ++t) {
            const auto& tri = mesh.triangles[t];
            Prim p;
            p.mesh = m;
            p.tri = t;
            const Vec3& a = mesh.positions[tri[0]];
            const Vec3& b = mesh.positions[tri[1]];
            const Vec3& c = mesh.positions[tri[2]];
            p.lo = {std::fmin(a.x, std::fmin(b.x, c.x)), std::fmin(a.y, std::fmin(b.y, c.y)),
                    std::fmin(a.z, std::fmin(b.z, c.z))};
            p.hi = {std::fmax(a.x, std::fmax(b.x, c.x)), std::fmax(a.y, std::fmax(b.y, c.y)),
                    std::fmax(a.z, std::fmax(b.z, c.z))};
            p.centroid = (p.lo + p.hi) * 0.5;
            p.v0 = a;
            p.e1 = b - a;
            p.e2 = c - a;
            prims_.push_back(p);
        }
    }
    if (!prims_.empty()) build(0, (int)prims_.size());
}

int BvhScene::build(int begin, int end) {
    Node node;
    node.lo = {1e300, 1e300, 1e300};
    node.hi = {-1e300, -1e300, -1e300};
    for (int i = begin; i < end; ++i) {
        const Prim& p = prims_[i];
        node.lo = {std::fmin(node.lo.x, p.lo.x), std::fmin(node.lo.y, p.lo.y),
                   std::fmin(node.lo.z, p.lo.z)};
        node.hi = {std::fmax(node.hi.x, p.hi.x), std::fmax(node.hi.y, p.hi.y),
                   std::fmax(node.hi.z, p.hi.z)};
    }
    int id = (int)nodes_.size();
    nodes_.push_back(node);
    if (end - begin <= 4) {
        nodes_[id].first = begin;
        nodes_[id].count = end - begin;
        return id;
    }
    Vec3 extent = node.hi - node.lo;
    int axis = extent.x >= extent.y && extent.x >= extent.z ? 0 : (extent.y >= extent.z ? 1 : 2);
    int mid = (begin + end) / 2;
    std::nth_element(prims_.begin() + begin, prims_.begin() + mid, prims_.begin() + end,
                     [axis](const Prim& a, const Prim& b) {
                         return a.centroid[axis] < b.centroid[axis];
                     });
    int left = build(begin, mid);
    int right = build(mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

namespace {

// Slab test; on hit returns the entry distance through tn.
bool slab_hit(const Vec3& lo, const Vec3& hi, const Ray& ray, const Vec3& inv_dir,
              double tmax, double& tn_out) {
    double t0 = (lo.x - ray.origin.x) * inv_dir.x;
    double t1 = (hi.x - ray.origin.x) * inv_dir.x;
    if (t0 > t1) std::swap(t0, t1);
    double tn = t0, tf = t1;
    t0 = (lo.y - ray.origin.y) * inv_dir.y;
    t1 = (hi.y - ray.origin.y) * inv_dir.y;
    if (t0 > t1) std::swap(t0, t1);
    tn = std::fmax(tn, t0);
    tf = std::fmin(tf, t1);
    t0 = (lo.z - ray.origin.z) * inv_dir.z;
    t1 = (hi.z - ray.origin.z) * inv_dir.z;
    if (t0 > t1) std::swap(t0, t1);
    tn = std::fmax(tn, t0);
    tf = std::fmin(tf, t1);
    tn_out = tn;
    return tn <= tf && tf > kRayEps && tn < tmax;
}

} // namespace

bool BvhScene::intersect(const Ray& ray, Hit& hit) const {
    if (nodes_.empty()) return false;
    Vec3 inv_dir{1.0 / ray.dir.x, 1.0 / ray.dir.y, 1.0 / ray.dir.z};
    double best_t = 1e300;
    int best_prim = -1;
    double best_beta = 0, best_gamma = 0;

    int stack[64];
    double entry[64];
    int sp = 0;
    double tn;
    if (!slab_hit(nodes_[0].lo, nodes_[0].hi, ray, inv_dir, best_t, tn)) return false;
    stack[sp] = 0;
    entry[sp++] = tn;
    while (sp > 0) {
        --sp;
        if (entry[sp] >= best_t) continue;
        const Node& node = nodes_[stack[sp]];
        if (node.left < 0) {
            for (int i = node.first; i < node.first + node.count; ++i) {
                const Prim& p = prims_[i];
                double t, beta, gamma;
                if (ray_triangle_packed(ray, p.v0, p.e1, p.e2, t, beta, gamma) &&
                    t < best_t) {
                    best_t = t;
                    best_prim = i;
                    best_beta = beta;
                    best_gamma = gamma;
                }
            }
        } else {
            // visit the nearer child first so the far one can often be culled
            double tl, tr;
            const Node& ln = nodes_[node.left];
            const Node& rn = nodes_[node.right];
            bool hl = slab_hit(ln.lo, ln.hi, ray, inv_dir, best_t, tl);
            bool hr = slab_hit(rn.lo, rn.hi, ray, inv_dir, best_t, tr);
            if (hl && hr) {
                int near = node.left, far = node.right;
                double tnear = tl, tfar = tr;
                if (tr < tl) {
                    std::swap(near, far);
                    std::swap(tnear, tfar);
                }
                stack[sp] = far;
                entry[sp++] = tfar;
                stack[sp] = near;
                entry[sp++] = tnear;
            } else if (hl) {
                stack[sp] = node.left;
                entry[sp++] = tl;
            } else if (hr) {
                stack[sp] = node.right;
                entry[sp++] = tr;
            }
        }
    }
    if (best_prim < 0) return false;

    const Prim& p = prims_[best_prim];
    const Mesh& mesh = meshes_[p.mesh];
    const auto& tri = mesh.triangles[p.tri];
    Vec3 n = mesh.normals[tri[0]] * (1.0 - best_beta - best_gamma) +
             mesh.normals[tri[1]] * best_beta + mesh.normals[tri[2]] * best_gamma;
    double len = n.norm();
    hit.t = best_t;
    hit.position = ray.origin + ray.dir * best_t;
    hit.normal = len > 0 ? n / len : Vec3{0, 0, 1};
    hit.mesh_id = p.mesh;
    return true;
}

} // namespace clight
