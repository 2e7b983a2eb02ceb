#pragma once

#include "clight/arealight.hpp"

namespace clight {

// Single-light terms without the final clamp; shared by the dispatch and
// environment paths, which clamp once after summation.
Rgb shade_lambert_const_raw(const Vec3& p, const Vec3& n,
                            const RectAreaLight& light, const Material& mat);
Rgb shade_phong_const_raw(const Vec3& p, const Vec3& n, const Vec3& view,
                          const RectAreaLight& light, const Material& mat);

} // namespace clight
