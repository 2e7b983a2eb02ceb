#pragma once

#include <string>
#include <vector>

#include "clight/image.hpp"

namespace clight {

struct Hsi {
    double h = 0; // degrees in [0, 360)
    double s = 0; // [0, 1]
    double i = 0; // >= 0
};

/// RGB -> HSI with I = (R+G+B)/3, S = 1 - min/I (0 when I = 0), and the
/// standard inverse-cosine hue (H = 0 for achromatic input). Negative
/// components are rejected.
Hsi rgb_to_hsi(const Rgb& rgb);

enum class Channel { R, G, B, H, S, I };

Channel channel_from_string(const std::string& name);

/// Per-pixel channel plane of an image (H/S/I are derived per pixel).
std::vector<double> channel_plane(const ImageBuffer& img, Channel ch);

/// 10*log10(peak^2 / MSE) over the chosen channel; +infinity when the MSE
/// is zero. peak <= 0 selects the ground-truth image b's channel maximum.
double psnr(const ImageBuffer& a, const ImageBuffer& b, Channel ch, double peak = -1.0);

/// 100 * sum|a - b| / sum|b| over the channel; b is the ground truth.
/// Throws when the ground-truth channel is identically zero.
double rel_error_pct(const ImageBuffer& a, const ImageBuffer& b, Channel ch);

/// One row of the experiment reports.
struct MetricRow {
    std::string scene;
    double ratio_or_cutoff = 0;
    std::string channel;
    std::string metric;
    double value = 0;
};

void write_csv(const std::string& path, const std::vector<MetricRow>& rows);

} // namespace clight
