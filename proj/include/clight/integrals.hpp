#pragma once

#include <vector>

#include "clight/region.hpp"

namespace clight {

/// Coefficients of P(u,v) = l00 + l01*v + l02*v^2 + l10*u + l11*u*v + l20*u^2.
struct PolyCoeffs {
    double l00 = 0, l01 = 0, l02 = 0, l10 = 0, l11 = 0, l20 = 0;
};

/// Integral of t^n over [t0,t1]. n in [0,64].
double int_poly(int n, double t0, double t1);

/// Integral of t^n * cos(a*t + b) over [t0,t1]. n in [0,64].
///
/// Evaluated by a Maclaurin/shifted series when the phase span across the
/// interval is small, by the integration-by-parts recurrence when |a|
/// dominates n, and piecewise otherwise, so every (n, a) combination stays
/// at full double precision; in particular a = 0 reduces to int_poly and
/// there is no singular case split.
double int_poly_cos(int n, double a, double b, double t0, double t1);

/// Integral of t^n * sin(a*t + b) over [t0,t1].
double int_poly_sin(int n, double a, double b, double t0, double t1);

/// Integrals of u^m * v^q over a region for all m + q <= max_sum.
struct MonomialIntegrals {
    int max_sum = 0;
    int stride = 0;
    std::vector<double> table;
    double at(int m, int q) const { return table[m * stride + q]; }
};

MonomialIntegrals region_monomial_integrals(const IntegrationRegion& region, int max_sum);

/// Closed-form integral of P(u,v) over the region.
double integrate_poly_over_region(const PolyCoeffs& coeffs, const IntegrationRegion& region);

/// Closed-form integral of
///   cos(ki0*u + ki1) * cos(kj0*v + kj1) * P(u,v)
/// over the region. Frequency magnitudes up to 1e4 are supported; zero and
/// near-zero frequencies are handled by the small-phase series branch of
/// int_poly_cos, so the i = 0 / j = 0 cases need no special treatment by
/// the caller.
double integrate_poly_cos2_over_region(const PolyCoeffs& coeffs,
                                       double ki0, double ki1,
                                       double kj0, double kj1,
                                       const IntegrationRegion& region);

} // namespace clight
