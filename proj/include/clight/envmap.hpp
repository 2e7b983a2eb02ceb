#pragma once

#include <array>

#include "clight/arealight.hpp"
#include "clight/dct.hpp"
#include "clight/geometry.hpp"

namespace clight {

enum class CubeFace { PosX = 0, NegX, PosY, NegY, PosZ, NegZ };

constexpr std::array<CubeFace, 6> kAllFaces = {
    CubeFace::PosX, CubeFace::NegX, CubeFace::PosY,
    CubeFace::NegY, CubeFace::PosZ, CubeFace::NegZ};

/// Distant environment as six DCT-compressed faces of an axis-aligned cube
/// of half-extent s. The cube is centered on the shaded point, so the
/// lighting depends on direction only.
struct EnvCubemap {
    std::array<DctFace, 6> faces; // indexed by CubeFace
    double half_extent = 1.0;

    const DctFace& face(CubeFace f) const { return faces[(int)f]; }
};

void validate_env(const EnvCubemap& env);

/// One cube face as a rectangular light: corners of the parametric form
/// a + u*(b-a) + v*(c-a), normal pointing toward the cube center.
struct FaceGeometry {
    Vec3 a, b, c;
    Vec3 n_a;
};

/// Face corners for the cube of half-extent s centered at p. The (u,v) of
/// the parametric form coincide with the face image's (u,v); for the +Z
/// face (s = 1, p = 0): a = (-1,-1,1), b = (1,-1,1), c = (-1,1,1),
/// n_a = (0,0,-1).
FaceGeometry face_geometry(CubeFace face, const Vec3& p, double s);

/// Direction through the cube center for face parameters (u,v).
Vec3 face_uv_to_dir(CubeFace face, double u, double v);

/// Face and parameters hit by a direction from the cube center.
void dir_to_face_uv(const Vec3& dir, CubeFace& face, double& u, double& v);

/// Closed-form Lambertian radiance under the environment, truncated to the
/// given DCT cutoffs (-1 = full). Cost is O(cutoff_i * cutoff_j) per face.
Rgb shade_lambert_env(const Vec3& p, const Vec3& n, const EnvCubemap& env,
                      const Material& mat, int cutoff_i = -1, int cutoff_j = -1);

/// O(1) shortcut: each face collapses to a constant light of intensity
/// C_00 / sqrt(M*N).
Rgb shade_lambert_env_dc(const Vec3& p, const Vec3& n, const EnvCubemap& env,
                         const Material& mat);

} // namespace clight
