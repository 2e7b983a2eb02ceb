#include "clight/region.hpp"

#include <algorithm>
#include <cmath>

namespace clight {

namespace {

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Emits [v0,v1] x [u_lo(v), u_hi(v)] if the slab has positive width.
void emit(IntegrationRegion& r, double v0, double v1,
          const AffineBound& lo, const AffineBound& hi) {
    if (v1 > v0 && r.count < 2) r.push({v0, v1, lo, hi});
}

} // namespace

IntegrationRegion classify_region(double a_z, double b_z, double c_z) {
    IntegrationRegion region;
    const double du = b_z - a_z;
    const double dv = c_z - a_z;

    if (du == 0.0 && dv == 0.0) {
        // Constant plane.
        if (a_z > 0.0) emit(region, 0.0, 1.0, {0, 0}, {0, 1});
        return region;
    }

    if (du == 0.0) {
        // w depends on v only: a_z + dv*v > 0.
        double vc = -a_z / dv;
        double v0 = 0.0, v1 = 1.0;
        if (dv > 0.0) v0 = clamp01(vc); else v1 = clamp01(vc);
        emit(region, v0, v1, {0, 0}, {0, 1});
        return region;
    }

    // For fixed v the cut is at u_line(v) = c1*v + c0.
    const double c1 = -dv / du;
    const double c0 = -a_z / du;

    // v-window where the u-interval is nonempty:
    //   du > 0: need u_line(v) < 1;  du < 0: need u_line(v) > 0.
    double v0 = 0.0, v1 = 1.0;
    const double target = du > 0.0 ? 1.0 : 0.0;
    if (c1 == 0.0) {
        bool nonempty = du > 0.0 ? (c0 < target) : (c0 > target);
        if (!nonempty) return region;
        // Constant cut across all v: single slab, bound clamped to [0,1].
        double cut = clamp01(c0);
        if (du > 0.0) emit(region, 0.0, 1.0, {0, cut}, {0, 1});
        else          emit(region, 0.0, 1.0, {0, 0}, {0, cut});
        return region;
    }

    // The window is the side of u_line(v) = target where the u-interval is
    // nonempty, clipped to [0,1].
    auto ok = [&](double v) {
        double ul = c1 * v + c0;
        return du > 0.0 ? (ul < target) : (ul > target);
    };
    const bool ok0 = ok(0.0), ok1 = ok(1.0);
    if (!ok0 && !ok1) return region;
    if (!(ok0 && ok1)) {
        const double v_edge = (target - c0) / c1;
        if (ok0) v1 = std::min(1.0, v_edge);
        else     v0 = std::max(0.0, v_edge);
    }
    if (!(v1 > v0)) return region;

    // Within the window the clamped bound switches from affine to constant
    // where u_line crosses the opposite square edge.
    const double other = du > 0.0 ? 0.0 : 1.0;
    const double v_break = (other - c0) / c1;
    const AffineBound line{c1, c0};
    const AffineBound const_other{0, other};

    auto bounds_for = [&](double vm, AffineBound& lo, AffineBound& hi) {
        double ul = line(vm);
        if (du > 0.0) { lo = ul > other ? line : const_other; hi = {0, 1}; }
        else          { lo = {0, 0}; hi = ul < other ? line : const_other; }
    };

    if (v_break > v0 && v_break < v1) {
        AffineBound lo, hi;
        bounds_for(0.5 * (v0 + v_break), lo, hi);
        emit(region, v0, v_break, lo, hi);
        bounds_for(0.5 * (v_break + v1), lo, hi);
        emit(region, v_break, v1, lo, hi);
    } else {
        AffineBound lo, hi;
        bounds_for(0.5 * (v0 + v1), lo, hi);
        emit(region, v0, v1, lo, hi);
    }
    return region;
}

double region_area(const IntegrationRegion& region) {
    double area = 0.0;
    for (const SubRegion& s : region) {
        double w0 = s.u_hi(s.v0) - s.u_lo(s.v0);
        double w1 = s.u_hi(s.v1) - s.u_lo(s.v1);
        area += 0.5 * (w0 + w1) * (s.v1 - s.v0);
    }
    return area;
}

} // namespace clight
