#include "clight/dct.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace clight {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_cutoffs(const DctFace& f, int ci, int cj) {
    if (ci < 1 || ci > f.N || cj < 1 || cj > f.M)
        throw std::invalid_argument("cutoffs must be in [1,N] x [1,M]");
}

void write_u32(std::ostream& out, uint32_t v) {
    unsigned char b[4] = {(unsigned char)(v & 0xff), (unsigned char)((v >> 8) & 0xff),
                          (unsigned char)((v >> 16) & 0xff), (unsigned char)((v >> 24) & 0xff)};
    out.write((const char*)b, 4);
}

uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read((char*)b, 4);
    return (uint32_t)b[0] | ((uint32_t)b[1] << 8) | ((uint32_t)b[2] << 16) | ((uint32_t)b[3] << 24);
}

void write_f64(std::ostream& out, double v) {
    uint64_t u;
    std::memcpy(&u, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (unsigned char)((u >> (8 * i)) & 0xff);
    out.write((const char*)b, 8);
}

double read_f64(std::istream& in) {
    unsigned char b[8];
    in.read((char*)b, 8);
    uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= (uint64_t)b[i] << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

} // namespace

double DctFace::k_i0(int i) const { return kPi * i * (N - 1.0) / N; }
double DctFace::k_i1(int i) const { return kPi * i / (2.0 * N); }
double DctFace::k_j0(int j) const { return kPi * j * (M - 1.0) / M; }
double DctFace::k_j1(int j) const { return kPi * j / (2.0 * M); }

DctFace dct_forward(const FaceImage& img) {
    const int N = img.height, M = img.width;
    if (N < 2 || M < 2)
        throw std::invalid_argument("dct_forward: face must be at least 2x2");

    DctFace f;
    f.M = M;
    f.N = N;

    // DCT-II sample-phase tables: cos(pi*i*(2m+1)/(2N)).
    std::vector<double> ci((size_t)N * N), cj((size_t)M * M);
    for (int i = 0; i < N; ++i)
        for (int m = 0; m < N; ++m)
            ci[(size_t)i * N + m] = std::cos(kPi * i * (2.0 * m + 1.0) / (2.0 * N));
    for (int j = 0; j < M; ++j)
        for (int n = 0; n < M; ++n)
            cj[(size_t)j * M + n] = std::cos(kPi * j * (2.0 * n + 1.0) / (2.0 * M));

    std::vector<double> tmp((size_t)N * M);
    for (int ch = 0; ch < 3; ++ch) {
        // Rows first (transform over m for each column n), then columns.
        for (int i = 0; i < N; ++i)
            for (int n = 0; n < M; ++n) {
                double acc = 0.0;
                for (int m = 0; m < N; ++m)
                    acc += img.at(n, m, ch) * ci[(size_t)i * N + m];
                tmp[(size_t)i * M + n] = acc * f.alpha_i(i);
            }
        f.coeffs[ch].assign((size_t)N * M, 0.0);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < M; ++j) {
                double acc = 0.0;
                for (int n = 0; n < M; ++n)
                    acc += tmp[(size_t)i * M + n] * cj[(size_t)j * M + n];
                f.coeffs[ch][(size_t)i * M + j] = acc * f.alpha_j(j);
            }
    }
    return f;
}

Rgb reconstruct_pixel(const DctFace& face, double u, double v,
                      int cutoff_i, int cutoff_j) {
    check_cutoffs(face, cutoff_i, cutoff_j);
    // Separable evaluation: N + M cosine calls instead of N*M.
    double cu[64 + 1];
    double cv[64 + 1];
    std::vector<double> cu_dyn, cv_dyn;
    double* cup = cu;
    double* cvp = cv;
    if (cutoff_i > 65) { cu_dyn.resize(cutoff_i); cup = cu_dyn.data(); }
    if (cutoff_j > 65) { cv_dyn.resize(cutoff_j); cvp = cv_dyn.data(); }
    for (int i = 0; i < cutoff_i; ++i)
        cup[i] = face.alpha_i(i) * std::cos(face.k_i0(i) * u + face.k_i1(i));
    for (int j = 0; j < cutoff_j; ++j)
        cvp[j] = face.alpha_j(j) * std::cos(face.k_j0(j) * v + face.k_j1(j));

    Rgb out{0, 0, 0};
    for (int ch = 0; ch < 3; ++ch) {
        const double* c = face.coeffs[ch].data();
        double acc = 0.0;
        for (int i = 0; i < cutoff_i; ++i) {
            const double* row = c + (size_t)i * face.M;
            double inner = 0.0;
            for (int j = 0; j < cutoff_j; ++j)
                inner += row[j] * cvp[j];
            acc += cup[i] * inner;
        }
        (ch == 0 ? out.x : ch == 1 ? out.y : out.z) = acc;
    }
    return out;
}

DctFace truncate(const DctFace& face, int cutoff_i, int cutoff_j) {
    check_cutoffs(face, cutoff_i, cutoff_j);
    DctFace out = face;
    for (int ch = 0; ch < 3; ++ch)
        for (int i = 0; i < face.N; ++i)
            for (int j = 0; j < face.M; ++j)
                if (i >= cutoff_i || j >= cutoff_j)
                    out.coeffs[ch][(size_t)i * face.M + j] = 0.0;
    return out;
}

void save_coeffs(const std::array<DctFace, 6>& faces, const std::string& path,
                 int cutoff_i, int cutoff_j) {
    const int N = faces[0].N, M = faces[0].M;
    for (const DctFace& f : faces)
        if (f.N != N || f.M != M)
            throw std::invalid_argument("save_coeffs: faces must share dimensions");
    if (cutoff_i < 0) cutoff_i = N;
    if (cutoff_j < 0) cutoff_j = M;
    check_cutoffs(faces[0], cutoff_i, cutoff_j);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out.write("DCTC", 4);
    write_u32(out, 1); // version
    write_u32(out, (uint32_t)M);
    write_u32(out, (uint32_t)N);
    write_u32(out, 3); // channels
    write_u32(out, (uint32_t)cutoff_i);
    write_u32(out, (uint32_t)cutoff_j);
    for (const DctFace& f : faces)
        for (int ch = 0; ch < 3; ++ch)
            for (int i = 0; i < cutoff_i; ++i)
                for (int j = 0; j < cutoff_j; ++j)
                    write_f64(out, f.coeff(ch, i, j));
    if (!out) throw std::runtime_error(path + ": write failed");
}

CubemapCoeffs load_coeffs(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error(path + ": cannot open");
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "DCTC", 4) != 0)
        throw std::runtime_error(path + ": not a DCTC coefficient file");
    uint32_t version = read_u32(in);
    if (version != 1) throw std::runtime_error(path + ": unsupported DCTC version");
    uint32_t M = read_u32(in), N = read_u32(in), channels = read_u32(in);
    uint32_t ci = read_u32(in), cj = read_u32(in);
    if (!in || channels != 3 || M < 2 || N < 2 || ci < 1 || ci > N || cj < 1 || cj > M)
        throw std::runtime_error(path + ": malformed DCTC header");

    CubemapCoeffs out;
    out.cutoff_i = (int)ci;
    out.cutoff_j = (int)cj;
    for (DctFace& f : out.faces) {
        f.M = (int)M;
        f.N = (int)N;
        for (int ch = 0; ch < 3; ++ch) {
            f.coeffs[ch].assign((size_t)N * M, 0.0);
            for (uint32_t i = 0; i < ci; ++i)
                for (uint32_t j = 0; j < cj; ++j)
                    f.coeffs[ch][(size_t)i * M + j] = read_f64(in);
        }
    }
    if (!in) throw std::runtime_error(path + ": truncated coefficient data");
    return out;
}

} // namespace clight
