#pragma once

#include <cstddef>

namespace clight {

/// Affine bound u(v) = alpha*v + beta.
struct AffineBound {
    double alpha = 0.0, beta = 0.0;
    double operator()(double v) const { return alpha * v + beta; }
};

/// One v-monotone slab of the integration domain: v in [v0,v1],
/// u between u_lo(v) and u_hi(v).
struct SubRegion {
    double v0 = 0.0, v1 = 0.0;
    AffineBound u_lo, u_hi;
};

/// The part of the unit (u,v) square where the plane
/// w(u,v) = a_z + u*(b_z - a_z) + v*(c_z - a_z) is positive,
/// decomposed into at most two sub-regions with affine u-bounds.
struct IntegrationRegion {
    SubRegion sub[2];
    int count = 0;

    bool empty() const { return count == 0; }
    const SubRegion* begin() const { return sub; }
    const SubRegion* end() const { return sub + count; }
    void push(const SubRegion& s) { sub[count++] = s; }
};

/// Clips the unit square against the open half-plane w(u,v) > 0.
/// All-positive corners give the full square, all-nonpositive corners an
/// empty region; mixed signs give one or two sub-regions.
IntegrationRegion classify_region(double a_z, double b_z, double c_z);

/// Exact area of the region (sum of trapezoids).
double region_area(const IntegrationRegion& region);

} // namespace clight
