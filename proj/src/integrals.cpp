#include "clight/integrals.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace clight {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxPower = 64;
// Phase span below which the series expansion of cos is used. Both the
// series and the recurrence hold ~1e-15 relative accuracy there, so the
// two branches agree far tighter than any downstream tolerance.
constexpr double kSeriesPhase = 0.5;

void check_power(int n) {
    if (n < 0 || n > kMaxPower)
        throw std::invalid_argument("polynomial power must be in [0,64]");
}

double powi(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

// Integral of s^k * cos(a*s + b) over [0,h] with |a*h| <= ~0.5, by the
// Maclaurin series of cos about s = 0. Terms decay at least geometrically,
// so truncation reaches machine precision within ~20 terms.
double series_piece(int k, double a, double b, double h) {
    const double cb = std::cos(b), sb = std::sin(b);
    double sum = 0.0;
    double apow = 1.0; // a^m / m!
    double hk = powi(h, k + 1);
    for (int m = 0; m <= 40; ++m) {
        int p = m / 2;
        double gamma = (m % 2 == 0) ? ((p % 2 == 0) ? cb : -cb) * apow
                                    : ((p % 2 == 0) ? -sb : sb) * apow;
        sum += gamma * hk / (k + m + 1);
        if (std::fabs(apow) * hk < 1e-22 * (std::fabs(sum) + 1e-300)) break;
        apow *= a / (m + 1);
        hk *= h;
    }
    return sum;
}

// Integral of t^n * cos(a*t + b) over [t0, t0+h] with t0 >= 0 and
// |a|*h <= ~0.5: shift to s = t - t0 and expand (t0+s)^n binomially.
// All binomial terms are nonnegative, so the expansion cannot cancel.
double shifted_series(int n, double a, double b, double t0, double h) {
    const double bs = a * t0 + b;
    double sum = 0.0;
    double binom = 1.0; // C(n,k) * t0^(n-k), walked from k = n downward
    for (int k = n; k >= 0; --k) {
        if (k < n) binom *= t0 * (double)(k + 1) / (n - k);
        if (binom == 0.0) break;
        sum += binom * series_piece(k, a, bs, h);
    }
    return sum;
}

// Integration-by-parts loop, used when |a| dominates n so every step of
// the recurrence contracts the accumulated rounding error.
double by_parts(int n, double a, double b, double t0, double t1) {
    const double s0 = std::sin(a * t0 + b), c0 = std::cos(a * t0 + b);
    const double s1 = std::sin(a * t1 + b), c1 = std::cos(a * t1 + b);
    double ic = (s1 - s0) / a;  // integral of t^m cos(at+b), m = 0
    double is = -(c1 - c0) / a; // integral of t^m sin(at+b)
    double p0 = 1.0, p1 = 1.0;
    for (int m = 1; m <= n; ++m) {
        p0 *= t0;
        p1 *= t1;
        double nic = (p1 * s1 - p0 * s0) / a - (m / a) * is;
        double nis = -(p1 * c1 - p0 * c0) / a + (m / a) * ic;
        ic = nic;
        is = nis;
    }
    return ic;
}

double int_poly_cos_nonneg(int n, double a, double b, double t0, double t1) {
    const double range = t1 - t0;
    const double aa = std::fabs(a);
    if (aa * t1 <= kSeriesPhase)
        return shifted_series(n, a, b, 0.0, t1) - shifted_series(n, a, b, 0.0, t0);
    if (aa * range <= kSeriesPhase)
        return shifted_series(n, a, b, t0, range);
    if (aa >= std::max(2.0, 1.2 * n))
        return by_parts(n, a, b, t0, t1);
    // Moderate frequency, several oscillations: piecewise series.
    int pieces = (int)std::ceil(aa * range / kSeriesPhase);
    if (pieces > 200000)
        throw std::invalid_argument("int_poly_cos: interval/frequency out of supported range");
    const double h = range / pieces;
    double sum = 0.0;
    for (int i = 0; i < pieces; ++i)
        sum += shifted_series(n, a, b, t0 + i * h, h);
    return sum;
}

} // namespace

double int_poly(int n, double t0, double t1) {
    check_power(n);
    return (powi(t1, n + 1) - powi(t0, n + 1)) / (n + 1);
}

double int_poly_cos(int n, double a, double b, double t0, double t1) {
    check_power(n);
    if (t0 == t1) return 0.0;
    if (t1 < t0) return -int_poly_cos(n, a, b, t1, t0);
    if (t0 < 0.0) {
        // Reflect t -> -t so evaluation always runs over nonnegative t.
        if (t1 <= 0.0) {
            double sign = (n % 2 == 0) ? 1.0 : -1.0;
            return sign * int_poly_cos_nonneg(n, a, -b, -t1, -t0);
        }
        return int_poly_cos(n, a, b, t0, 0.0) + int_poly_cos(n, a, b, 0.0, t1);
    }
    return int_poly_cos_nonneg(n, a, b, t0, t1);
}

double int_poly_sin(int n, double a, double b, double t0, double t1) {
    return int_poly_cos(n, a, b - 0.5 * kPi, t0, t1);
}

MonomialIntegrals region_monomial_integrals(const IntegrationRegion& region, int max_sum) {
    if (max_sum < 0 || max_sum > kMaxPower)
        throw std::invalid_argument("region_monomial_integrals: max_sum out of range");
    const int S = max_sum;
    MonomialIntegrals out;
    out.max_sum = S;
    out.stride = S + 1;
    out.table.assign((S + 1) * (S + 1), 0.0);

    const int np = S + 2;       // rows of bound powers, up to exponent S+1
    const int jmax = 2 * S + 3; // the g-recurrence consumes one j per q level

    std::vector<double> hip(np * np), lop(np * np);
    std::vector<double> g((S + 1) * (jmax + 1), 0.0);

    for (const SubRegion& s : region) {
        const double dvw = s.v1 - s.v0;
        if (dvw <= 0.0) continue;

        // u-bounds re-expressed on the local parameter tau in [0,1],
        // v = v0 + dvw*tau, keeping every coefficient O(1).
        const double hia = s.u_hi.alpha * dvw, hib = s.u_hi(s.v0);
        const double loa = s.u_lo.alpha * dvw, lob = s.u_lo(s.v0);

        auto fill_powers = [&](std::vector<double>& p, double al, double be) {
            std::fill(p.begin(), p.end(), 0.0);
            p[0] = 1.0;
            for (int k = 1; k < np; ++k) {
                const double* prev = &p[(k - 1) * np];
                double* cur = &p[k * np];
                for (int r = 0; r < k; ++r) {
                    cur[r] += be * prev[r];
                    cur[r + 1] += al * prev[r];
                }
            }
        };
        fill_powers(hip, hia, hib);
        fill_powers(lop, loa, lob);

        // g[q][j] = integral over [0,1] of tau^j * (v0 + dvw*tau)^q, built
        // by parts: g[q][j] = (v1^q - q*dvw*g[q-1][j+1]) / (j+1).
        for (int j = 0; j <= jmax; ++j) g[j] = 1.0 / (j + 1);
        double vb = s.v1;
        for (int q = 1; q <= S; ++q) {
            const double* prev = &g[(q - 1) * (jmax + 1)];
            double* cur = &g[q * (jmax + 1)];
            for (int j = 0; j <= jmax - q; ++j)
                cur[j] = (vb - q * dvw * prev[j + 1]) / (j + 1);
            vb *= s.v1;
        }

        for (int m = 0; m <= S; ++m) {
            const double* hrow = &hip[(m + 1) * np];
            const double* lrow = &lop[(m + 1) * np];
            for (int q = 0; q <= S - m; ++q) {
                const double* grow = &g[q * (jmax + 1)];
                double acc = 0.0;
                for (int r = 0; r <= m + 1; ++r)
                    acc += (hrow[r] - lrow[r]) * grow[r];
                out.table[m * out.stride + q] += dvw * acc / (m + 1);
            }
        }
    }
    return out;
}

double integrate_poly_over_region(const PolyCoeffs& c, const IntegrationRegion& region) {
    // Allocation-free specialization of the monomial-table construction for
    // the degree-2 polynomial; this sits on the per-pixel shading path.
    double total = 0.0;
    for (const SubRegion& s : region) {
        const double dvw = s.v1 - s.v0;
        if (dvw <= 0.0) continue;
        const double ha = s.u_hi.alpha * dvw, hb = s.u_hi(s.v0);
        const double la = s.u_lo.alpha * dvw, lb = s.u_lo(s.v0);

        // B[m][r]: coefficient of tau^r in (hi^(m+1) - lo^(m+1))/(m+1)
        double B[3][4] = {
            {hb - lb, ha - la, 0, 0},
            {0.5 * (hb * hb - lb * lb), hb * ha - lb * la,
             0.5 * (ha * ha - la * la), 0},
            {(hb * hb * hb - lb * lb * lb) / 3.0, hb * hb * ha - lb * lb * la,
             hb * ha * ha - lb * la * la, (ha * ha * ha - la * la * la) / 3.0}};
        // V[q][s]: coefficient of tau^s in (v0 + dvw*tau)^q
        const double v0 = s.v0;
        double V[3][3] = {{1, 0, 0},
                          {v0, dvw, 0},
                          {v0 * v0, 2.0 * v0 * dvw, dvw * dvw}};

        auto M = [&](int m, int q) {
            double acc = 0.0;
            for (int r = 0; r <= m + 1; ++r)
                for (int t = 0; t <= q; ++t) acc += B[m][r] * V[q][t] / (r + t + 1);
            return acc;
        };
        total += dvw * (c.l00 * M(0, 0) + c.l01 * M(0, 1) + c.l02 * M(0, 2) +
                        c.l10 * M(1, 0) + c.l11 * M(1, 1) + c.l20 * M(2, 0));
    }
    return total;
}

namespace {

constexpr int kPolyCap = 40;

// A polynomial in the strip-local parameter tau, attached to sin/cos of
// the affine phase A*tau + B.
struct TrigTerm {
    double A = 0, B = 0;
    std::array<double, kPolyCap> sinp{};
    std::array<double, kPolyCap> cosp{};
    int deg = -1;
};

// dst += (p of degree np) * (q of degree nq) * scale
void mac_poly(std::array<double, kPolyCap>& dst, int& deg,
              const double* p, int np, const double* q, int nq, double scale) {
    for (int i = 0; i <= np; ++i)
        for (int j = 0; j <= nq; ++j)
            dst[i + j] += scale * p[i] * q[j];
    deg = std::max(deg, np + nq);
}

} // namespace

double integrate_poly_cos2_over_region(const PolyCoeffs& c,
                                       double ki0, double ki1,
                                       double kj0, double kj1,
                                       const IntegrationRegion& region) {
    if (region.empty()) return 0.0;
    if (std::fabs(ki0) > 1e4 || std::fabs(kj0) > 1e4)
        throw std::invalid_argument("integrate_poly_cos2_over_region: frequency too large");

    double total = 0.0;
    for (const SubRegion& s : region) {
        const double dvw = s.v1 - s.v0;
        if (dvw <= 0.0) continue;
        const double v0 = s.v0;

        // P's u-power slices as tau-polynomials (v = v0 + dvw*tau).
        const double p0[3] = {c.l00 + v0 * (c.l01 + v0 * c.l02),
                              dvw * (c.l01 + 2.0 * c.l02 * v0),
                              c.l02 * dvw * dvw};
        const double p1[2] = {c.l10 + c.l11 * v0, c.l11 * dvw};
        const double p2[1] = {c.l20};
        const double* pm[3] = {p0, p1, p2};
        const int pmdeg[3] = {2, 1, 0};

        const double hia = s.u_hi.alpha * dvw, hib = s.u_hi(s.v0);
        const double loa = s.u_lo.alpha * dvw, lob = s.u_lo(s.v0);

        const double Aj = kj0 * dvw;
        const double Bj = kj0 * v0 + kj1;

        std::array<double, kPolyCap> polyacc{};
        int polydeg = -1;
        TrigTerm terms[2];
        int nterms = 0;

        if (std::fabs(ki0) >= kSeriesPhase) {
            // Exact antiderivatives of u^m cos(ki0*u + ki1), m <= 2,
            // evaluated at the affine bounds.
            const double a = ki0;
            const double inva = 1.0 / a, inva2 = inva * inva, inva3 = inva2 * inva;
            const double side_a[2] = {hia, loa};
            const double side_b[2] = {hib, lob};
            const double side_sign[2] = {1.0, -1.0};
            for (int sd = 0; sd < 2; ++sd) {
                TrigTerm& t = terms[nterms++];
                t.A = a * side_a[sd];
                t.B = a * side_b[sd] + ki1;
                const double gp[2] = {side_b[sd], side_a[sd]}; // bound as tau-poly
                const double g2[3] = {gp[0] * gp[0], 2.0 * gp[0] * gp[1], gp[1] * gp[1]};
                // m = 0: sin/a
                const double s0p[1] = {inva};
                mac_poly(t.sinp, t.deg, pm[0], pmdeg[0], s0p, 0, side_sign[sd]);
                // m = 1: (u/a) sin + (1/a^2) cos
                const double s1p[2] = {gp[0] * inva, gp[1] * inva};
                const double c1p[1] = {inva2};
                mac_poly(t.sinp, t.deg, pm[1], pmdeg[1], s1p, 1, side_sign[sd]);
                mac_poly(t.cosp, t.deg, pm[1], pmdeg[1], c1p, 0, side_sign[sd]);
                // m = 2: (u^2/a - 2/a^3) sin + (2u/a^2) cos
                const double s2p[3] = {g2[0] * inva - 2.0 * inva3, g2[1] * inva, g2[2] * inva};
                const double c2p[2] = {2.0 * gp[0] * inva2, 2.0 * gp[1] * inva2};
                mac_poly(t.sinp, t.deg, pm[2], pmdeg[2], s2p, 2, side_sign[sd]);
                mac_poly(t.cosp, t.deg, pm[2], pmdeg[2], c2p, 1, side_sign[sd]);
            }
        } else {
            // Small |ki0|: expand cos(ki0*u + ki1) as a series in u; the
            // inner integral becomes a pure tau-polynomial. ki0 = 0 (the
            // i = 0 / j = 0 cases) terminates after the first term.
            double dr[28];
            int R = 0;
            {
                const double cb = std::cos(ki1), sb = std::sin(ki1);
                double apow = 1.0;
                for (int r = 0; r <= 26; ++r) {
                    int p = r / 2;
                    dr[r] = (r % 2 == 0) ? ((p % 2 == 0) ? cb : -cb) * apow
                                         : ((p % 2 == 0) ? -sb : sb) * apow;
                    R = r;
                    if (std::fabs(apow) < 1e-20) break;
                    apow *= ki0 / (r + 1);
                }
            }
            const int npow = 3 + R + 1;
            std::vector<std::vector<double>> hpow(npow + 1), lpow(npow + 1);
            hpow[0].assign(npow + 1, 0.0);
            lpow[0].assign(npow + 1, 0.0);
            hpow[0][0] = 1.0;
            lpow[0][0] = 1.0;
            for (int k = 1; k <= npow; ++k) {
                hpow[k].assign(npow + 1, 0.0);
                lpow[k].assign(npow + 1, 0.0);
                for (int r = 0; r < k; ++r) {
                    hpow[k][r] += hib * hpow[k - 1][r];
                    hpow[k][r + 1] += hia * hpow[k - 1][r];
                    lpow[k][r] += lob * lpow[k - 1][r];
                    lpow[k][r + 1] += loa * lpow[k - 1][r];
                }
            }
            for (int m = 0; m <= 2; ++m) {
                std::array<double, kPolyCap> inner{};
                int ideg = -1;
                for (int r = 0; r <= R; ++r) {
                    int k = m + r + 1;
                    double w = dr[r] / k;
                    for (int t = 0; t <= k; ++t)
                        inner[t] += w * (hpow[k][t] - lpow[k][t]);
                    ideg = std::max(ideg, k);
                }
                if (ideg >= 0)
                    mac_poly(polyacc, polydeg, pm[m], pmdeg[m], inner.data(), ideg, 1.0);
            }
        }

        // Outer integration over tau in [0,1] against cos(Aj*tau + Bj);
        // trig products are reduced with the product-to-sum identities.
        double strip = 0.0;
        for (int k = 0; k <= polydeg; ++k) {
            if (polyacc[k] == 0.0) continue;
            strip += polyacc[k] * int_poly_cos(k, Aj, Bj, 0.0, 1.0);
        }
        for (int it = 0; it < nterms; ++it) {
            const TrigTerm& t = terms[it];
            for (int k = 0; k <= t.deg; ++k) {
                if (t.sinp[k] != 0.0)
                    strip += 0.5 * t.sinp[k] *
                             (int_poly_sin(k, t.A + Aj, t.B + Bj, 0.0, 1.0) +
                              int_poly_sin(k, t.A - Aj, t.B - Bj, 0.0, 1.0));
                if (t.cosp[k] != 0.0)
                    strip += 0.5 * t.cosp[k] *
                             (int_poly_cos(k, t.A + Aj, t.B + Bj, 0.0, 1.0) +
                              int_poly_cos(k, t.A - Aj, t.B - Bj, 0.0, 1.0));
            }
        }
        total += strip * dvw;
    }
    return total;
}

} // namespace clight
