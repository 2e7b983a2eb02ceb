#include "clight/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace clight {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_same_dims(const ImageBuffer& a, const ImageBuffer& b) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("metrics: image dimensions differ");
}

} // namespace

Hsi rgb_to_hsi(const Rgb& rgb) {
    if (rgb.x < 0 || rgb.y < 0 || rgb.z < 0)
        throw std::invalid_argument("rgb_to_hsi: negative component");
    const double r = rgb.x, g = rgb.y, b = rgb.z;
    Hsi out;
    out.i = (r + g + b) / 3.0;
    out.s = out.i > 0.0 ? 1.0 - rgb.min_component() / out.i : 0.0;
    double den2 = (r - g) * (r - g) + (r - b) * (g - b);
    if (den2 <= 0.0) {
        out.h = 0.0; // achromatic
        return out;
    }
    double num = 0.5 * ((r - g) + (r - b));
    double theta = std::acos(std::clamp(num / std::sqrt(den2), -1.0, 1.0)) * 180.0 / kPi;
    out.h = b <= g ? theta : 360.0 - theta;
    if (out.h >= 360.0) out.h = 0.0;
    return out;
}

Channel channel_from_string(const std::string& name) {
    if (name == "R" || name == "r") return Channel::R;
    if (name == "G" || name == "g") return Channel::G;
    if (name == "B" || name == "b") return Channel::B;
    if (name == "H" || name == "h") return Channel::H;
    if (name == "S" || name == "s") return Channel::S;
    if (name == "I" || name == "i") return Channel::I;
    throw std::invalid_argument("unknown channel: " + name);
}

std::vector<double> channel_plane(const ImageBuffer& img, Channel ch) {
    std::vector<double> out((size_t)img.width * img.height);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            Rgb c = img.rgb(x, y);
            double v = 0;
            switch (ch) {
                case Channel::R: v = c.x; break;
                case Channel::G: v = c.y; break;
                case Channel::B: v = c.z; break;
                case Channel::H: v = rgb_to_hsi(c).h; break;
                case Channel::S: v = rgb_to_hsi(c).s; break;
                case Channel::I: v = rgb_to_hsi(c).i; break;
            }
            out[(size_t)y * img.width + x] = v;
        }
    }
    return out;
}

double psnr(const ImageBuffer& a, const ImageBuffer& b, Channel ch, double peak) {
    check_same_dims(a, b);
    std::vector<double> pa = channel_plane(a, ch);
    std::vector<double> pb = channel_plane(b, ch);
    double mse = 0.0;
    double bmax = 0.0;
    for (size_t i = 0; i < pa.size(); ++i) {
        double d = pa[i] - pb[i];
        mse += d * d;
        bmax = std::fmax(bmax, std::fabs(pb[i]));
    }
    mse /= (double)pa.size();
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    if (peak <= 0.0) peak = bmax;
    return 10.0 * std::log10(peak * peak / mse);
}

double rel_error_pct(const ImageBuffer& a, const ImageBuffer& b, Channel ch) {
    check_same_dims(a, b);
    std::vector<double> pa = channel_plane(a, ch);
    std::vector<double> pb = channel_plane(b, ch);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < pa.size(); ++i) {
        num += std::fabs(pa[i] - pb[i]);
        den += std::fabs(pb[i]);
    }
    if (den == 0.0)
        throw std::runtime_error("rel_error_pct: ground-truth channel is identically zero");
    return 100.0 * num / den;
}

void write_csv(const std::string& path, const std::vector<MetricRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << "scene,ratio_or_cutoff,channel,metric,value\n";
    out.precision(12);
    for (const MetricRow& r : rows)
        out << r.scene << "," << r.ratio_or_cutoff << "," << r.channel << ","
            << r.metric << "," << r.value << "\n";
    if (!out) throw std::runtime_error(path + ": write failed");
}

} // namespace clight
