#include "stegadv/image.hpp"

#include <cmath>

namespace stegadv {

const std::array<int, 64> kZigZag = {
    0,  1,  8,  16, 9,  2,  3,  10, 17, 24, 32, 25, 18, 11, 4,  5,
    12, 19, 26, 33, 40, 48, 41, 34, 27, 20, 13, 6,  7,  14, 21, 28,
    35, 42, 49, 56, 57, 50, 43, 36, 29, 22, 15, 23, 30, 37, 44, 51,
    58, 59, 52, 45, 38, 31, 39, 46, 53, 60, 61, 54, 47, 55, 62, 63};

const std::array<int, 64> kZigZagInv = [] {
    std::array<int, 64> inv{};
    for (int i = 0; i < 64; ++i) inv[kZigZag[i]] = i;
    return inv;
}();

const std::array<int, 64> kBaseLuminanceTable = {
    16, 11, 10, 16, 24,  40,  51,  61,
    12, 12, 14, 19, 26,  58,  60,  55,
    14, 13, 16, 24, 40,  57,  69,  56,
    14, 17, 22, 29, 51,  87,  80,  62,
    18, 22, 37, 56, 68,  109, 103, 77,
    24, 35, 55, 64, 81,  104, 113, 92,
    49, 64, 78, 87, 103, 121, 120, 101,
    72, 92, 95, 98, 112, 100, 103, 99};

std::array<uint16_t, 64> scaled_quant_table(int quality_factor) {
    if (quality_factor < 1 || quality_factor > 100)
        throw UsageError("quality factor must be in [1, 100]");
    const int scale = quality_factor < 50 ? 5000 / quality_factor : 200 - 2 * quality_factor;
    std::array<uint16_t, 64> table{};
    for (int zz = 0; zz < 64; ++zz) {
        int q = (kBaseLuminanceTable[kZigZag[zz]] * scale + 50) / 100;
        if (q < 1) q = 1;
        if (q > 255) q = 255;
        table[zz] = static_cast<uint16_t>(q);
    }
    return table;
}

uint16_t CoefficientImage::quant_at(int u, int v) const {
    return quant_table[kZigZagInv[u * 8 + v]];
}

void CoefficientImage::validate() const {
    if (width <= 0 || height <= 0 || width % 8 != 0 || height % 8 != 0)
        throw DataError("coefficient image dimensions must be positive multiples of 8");
    if (coeffs.height() != height || coeffs.width() != width)
        throw DataError("coefficient grid does not match declared dimensions");
    for (int zz = 0; zz < 64; ++zz)
        if (quant_table[zz] < 1 || quant_table[zz] > 255)
            throw DataError("quantization step out of [1, 255]");
    for (int by = 0; by < blocks_y(); ++by)
        for (int bx = 0; bx < blocks_x(); ++bx)
            for (int u = 0; u < 8; ++u)
                for (int v = 0; v < 8; ++v) {
                    const int32_t c = coeffs(by * 8 + u, bx * 8 + v);
                    const int64_t dequant = static_cast<int64_t>(c) * quant_at(u, v);
                    if (std::abs(dequant) > 2047 * 8)
                        throw DataError("dequantized coefficient exceeds representable magnitude");
                }
}

uint64_t CoefficientImage::content_hash() const {
    uint64_t h = fnv1a64(&width, sizeof width);
    h = fnv1a64(&height, sizeof height, h);
    h = fnv1a64(quant_table.data(), quant_table.size() * sizeof(uint16_t), h);
    return fnv1a64_grid(coeffs, h);
}

namespace {

// 1-D orthonormal DCT matrix: M[u][x] = c(u)/2 * cos((2x+1) u pi / 16),
// c(0) = 1/sqrt(2), else 1. M * M^T = I.
struct DctTables {
    double m[8][8];
    DctTables() {
        for (int u = 0; u < 8; ++u) {
            const double cu = u == 0 ? 1.0 / std::sqrt(2.0) : 1.0;
            for (int x = 0; x < 8; ++x)
                m[u][x] = 0.5 * cu * std::cos((2 * x + 1) * u * M_PI / 16.0);
        }
    }
};
const DctTables kDct;

}  // namespace

void Dct8::forward(const double* in, double* out) {
    double tmp[64];
    // rows: tmp = in * M^T  (transform along y)
    for (int x = 0; x < 8; ++x)
        for (int v = 0; v < 8; ++v) {
            double s = 0.0;
            for (int y = 0; y < 8; ++y) s += in[x * 8 + y] * kDct.m[v][y];
            tmp[x * 8 + v] = s;
        }
    // cols: out = M * tmp
    for (int u = 0; u < 8; ++u)
        for (int v = 0; v < 8; ++v) {
            double s = 0.0;
            for (int x = 0; x < 8; ++x) s += kDct.m[u][x] * tmp[x * 8 + v];
            out[u * 8 + v] = s;
        }
}

void Dct8::inverse(const double* in, double* out) {
    double tmp[64];
    // cols: tmp = M^T * in
    for (int x = 0; x < 8; ++x)
        for (int v = 0; v < 8; ++v) {
            double s = 0.0;
            for (int u = 0; u < 8; ++u) s += kDct.m[u][x] * in[u * 8 + v];
            tmp[x * 8 + v] = s;
        }
    // rows: out = tmp * M
    for (int x = 0; x < 8; ++x)
        for (int y = 0; y < 8; ++y) {
            double s = 0.0;
            for (int v = 0; v < 8; ++v) s += tmp[x * 8 + v] * kDct.m[v][y];
            out[x * 8 + y] = s;
        }
}

double Dct8::basis(int u, int v, int x, int y) { return kDct.m[u][x] * kDct.m[v][y]; }

}  // namespace stegadv
