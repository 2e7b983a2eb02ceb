#pragma once

#include <array>
#include <string>
#include <vector>

#include "clight/geometry.hpp"
#include "clight/image.hpp"

namespace clight {

/// Cubemap face input image: height N rows (the u axis), width M columns
/// (the v axis), linear radiance.
using FaceImage = ImageBuffer;

/// Orthonormal type-II DCT of a face image, one coefficient matrix per
/// channel, plus the normalization and phase constants derived from M, N:
///   alpha_0 = 1/sqrt(N), alpha_i = sqrt(2/N) for i >= 1 (M analogously),
///   k_i0 = pi*i*(N-1)/N, k_i1 = pi*i/(2N) (and the j/M twins).
/// With the pixel parametrization u = m/(N-1) the evaluation phase
/// k_i0*u + k_i1 lands exactly on the DCT-II sample phase pi*i*(2m+1)/(2N),
/// which is what makes reconstruction at pixel parameters exact.
struct DctFace {
    int M = 0; // width  (v / j dimension)
    int N = 0; // height (u / i dimension)
    std::array<std::vector<double>, 3> coeffs; // per channel, N x M row-major (i*M + j)

    double coeff(int ch, int i, int j) const { return coeffs[ch][(size_t)i * M + j]; }

    double alpha_i(int i) const { return i == 0 ? 1.0 / std::sqrt((double)N) : std::sqrt(2.0 / N); }
    double alpha_j(int j) const { return j == 0 ? 1.0 / std::sqrt((double)M) : std::sqrt(2.0 / M); }
    double k_i0(int i) const;
    double k_i1(int i) const;
    double k_j0(int j) const;
    double k_j1(int j) const;
};

/// Forward orthonormal DCT-II of a face image. Requires M, N >= 2.
DctFace dct_forward(const FaceImage& img);

/// Evaluates the truncated inverse transform at continuous (u,v) in [0,1].
/// Sums i < cutoff_i, j < cutoff_j; cutoffs must be in [1,N] x [1,M].
Rgb reconstruct_pixel(const DctFace& face, double u, double v,
                      int cutoff_i, int cutoff_j);

/// Zeroes every coefficient with i >= cutoff_i or j >= cutoff_j.
DctFace truncate(const DctFace& face, int cutoff_i, int cutoff_j);

/// "DCTC" coefficient file: fixed header (magic, version, M, N, channels,
/// cutoffs), then per-face, per-channel, the kept cutoff_i x cutoff_j block
/// row-major as little-endian 64-bit floats.
struct CubemapCoeffs {
    std::array<DctFace, 6> faces;
    int cutoff_i = 0;
    int cutoff_j = 0;
};

void save_coeffs(const std::array<DctFace, 6>& faces, const std::string& path,
                 int cutoff_i = -1, int cutoff_j = -1);
CubemapCoeffs load_coeffs(const std::string& path);

} // namespace clight
