#pragma once

#include <string>
#include <vector>

#include "clight/geometry.hpp"

namespace clight {

/// Linear-light RGB raster, row-major, top row first.
struct ImageBuffer {
    int width = 0, height = 0;
    std::vector<double> pixels; // width * height * 3

    ImageBuffer() = default;
    ImageBuffer(int w, int h) : width(w), height(h), pixels((size_t)w * h * 3, 0.0) {}

    double& at(int x, int y, int ch) { return pixels[((size_t)y * width + x) * 3 + ch]; }
    double at(int x, int y, int ch) const { return pixels[((size_t)y * width + x) * 3 + ch]; }
    Rgb rgb(int x, int y) const {
        size_t i = ((size_t)y * width + x) * 3;
        return {pixels[i], pixels[i + 1], pixels[i + 2]};
    }
    void set(int x, int y, const Rgb& c) {
        size_t i = ((size_t)y * width + x) * 3;
        pixels[i] = c.x;
        pixels[i + 1] = c.y;
        pixels[i + 2] = c.z;
    }
};

/// Writes binary PPM (P6). Linear values are scaled by `exposure`, clamped
/// to [0,1] and mapped to 8 bits with round-half-up.
void write_ppm(const ImageBuffer& img, const std::string& path, double exposure = 1.0);

/// Reads binary PPM (P6, 8-bit); values are mapped to [0,1] and assumed linear.
ImageBuffer read_ppm(const std::string& path);

/// Writes color PFM (bottom-up rows, little-endian, scale -1).
void write_pfm(const ImageBuffer& img, const std::string& path);

/// Reads color PFM.
ImageBuffer read_pfm(const std::string& path);

/// Reads a PPM or PFM by file extension.
ImageBuffer read_image(const std::string& path);

} // namespace clight
