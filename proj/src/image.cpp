#include "clight/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace clight {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw std::runtime_error(path + ": " + msg);
}

// Skips whitespace and '#' comment lines in a PNM header.
void skip_pnm_space(std::istream& in) {
    for (;;) {
        int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            return;
        }
    }
}

} // namespace

void write_ppm(const ImageBuffer& img, const std::string& path, double exposure) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    std::vector<unsigned char> row((size_t)img.width * 3);
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            for (int ch = 0; ch < 3; ++ch) {
                double v = std::clamp(img.at(x, y, ch) * exposure, 0.0, 1.0);
                row[(size_t)x * 3 + ch] = (unsigned char)std::floor(v * 255.0 + 0.5);
            }
        }
        out.write((const char*)row.data(), (std::streamsize)row.size());
    }
    if (!out) fail(path, "write failed");
}

ImageBuffer read_ppm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    std::string magic;
    in >> magic;
    if (magic != "P6") fail(path, "not a binary PPM (P6)");
    skip_pnm_space(in);
    int w = 0, h = 0, maxval = 0;
    in >> w;
    skip_pnm_space(in);
    in >> h;
    skip_pnm_space(in);
    in >> maxval;
    if (!in || w <= 0 || h <= 0) fail(path, "malformed PPM header");
    if (maxval != 255) fail(path, "only 8-bit PPM supported");
    in.get(); // single whitespace after maxval
    ImageBuffer img(w, h);
    std::vector<unsigned char> data((size_t)w * h * 3);
    in.read((char*)data.data(), (std::streamsize)data.size());
    if (!in) fail(path, "truncated pixel data");
    for (size_t i = 0; i < data.size(); ++i)
        img.pixels[i] = data[i] / 255.0;
    return img;
}

void write_pfm(const ImageBuffer& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(path, "cannot open for writing");
    out << "PF\n" << img.width << " " << img.height << "\n-1.0\n";
    std::vector<float> row((size_t)img.width * 3);
    for (int y = img.height - 1; y >= 0; --y) { // PFM stores bottom row first
        for (int x = 0; x < img.width; ++x)
            for (int ch = 0; ch < 3; ++ch)
                row[(size_t)x * 3 + ch] = (float)img.at(x, y, ch);
        out.write((const char*)row.data(), (std::streamsize)(row.size() * sizeof(float)));
    }
    if (!out) fail(path, "write failed");
}

ImageBuffer read_pfm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open");
    std::string magic;
    in >> magic;
    if (magic != "PF") fail(path, "not a color PFM");
    int w = 0, h = 0;
    double scale = 0.0;
    in >> w >> h >> scale;
    if (!in || w <= 0 || h <= 0 || scale == 0.0) fail(path, "malformed PFM header");
    in.get();
    bool little_endian = scale < 0.0;
    ImageBuffer img(w, h);
    std::vector<float> row((size_t)w * 3);
    for (int yy = 0; yy < h; ++yy) {
        in.read((char*)row.data(), (std::streamsize)(row.size() * sizeof(float)));
        if (!in) fail(path, "truncated pixel data");
        if (!little_endian) {
            for (float& f : row) {
                uint32_t v;
                std::memcpy(&v, &f, 4);
                v = __builtin_bswap32(v);
                std::memcpy(&f, &v, 4);
            }
        }
        int y = h - 1 - yy;
        for (int x = 0; x < w; ++x)
            for (int ch = 0; ch < 3; ++ch)
                img.at(x, y, ch) = row[(size_t)x * 3 + ch];
    }
    return img;
}

ImageBuffer read_image(const std::string& path) {
    auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    if (ext == "pfm" || ext == "PFM") return read_pfm(path);
    if (ext == "ppm" || ext == "PPM") return read_ppm(path);
    fail(path, "unsupported image extension (expect .ppm or .pfm)");
}

} // namespace clight
