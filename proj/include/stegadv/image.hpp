#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "stegadv/core.hpp"

namespace stegadv {

// Quantized DCT coefficients of a grayscale baseline JPEG. The grid is laid
// out in 8x8 block raster order: block (by, bx) occupies rows [8by, 8by+8)
// and cols [8bx, 8bx+8), and within a block entry (u, v) is the coefficient
// of vertical frequency u and horizontal frequency v. The quantization table
// is stored in zig-zag order, as in a DQT segment.
struct CoefficientImage {
    int width = 0;
    int height = 0;
    Grid<int32_t> coeffs;
    std::array<uint16_t, 64> quant_table{};
    std::optional<int> quality_factor;

    int blocks_x() const { return width / 8; }
    int blocks_y() const { return height / 8; }

    // Quant step for block-local frequency (u, v).
    uint16_t quant_at(int u, int v) const;

    // Throws DataError on any violated structural invariant.
    void validate() const;

    uint64_t content_hash() const;
};

// Real-valued luminance plane. Decompressed values are neither rounded nor
// clipped so that the analytic gradient chain stays exact.
struct SpatialImage {
    int width = 0;
    int height = 0;
    Grid<double> samples;
};

// Coefficient bounds encodable by the baseline entropy coder: DC values use
// difference categories up to 11, AC values categories up to 10.
inline constexpr int32_t kDcMin = -1024;
inline constexpr int32_t kDcMax = 1023;
inline constexpr int32_t kAcMin = -1023;
inline constexpr int32_t kAcMax = 1023;

// Zig-zag scan: kZigZag[i] = block-natural index of the i-th scanned entry.
extern const std::array<int, 64> kZigZag;
// Inverse map: natural index -> zig-zag position.
extern const std::array<int, 64> kZigZagInv;

// Annex-K base luminance quantization table, natural (row-major) order.
extern const std::array<int, 64> kBaseLuminanceTable;

// IJG quality scaling: scale = 5000/qf (qf < 50) or 200 - 2*qf, and each
// step is max(1, floor((base*scale + 50)/100)), clamped to 255.
std::array<uint16_t, 64> scaled_quant_table(int quality_factor);

// Orthonormal 8x8 DCT-II pair; forward then inverse is the identity.
class Dct8 {
public:
    // in/out may alias. Row-major 8x8 blocks.
    static void forward(const double* block_in, double* block_out);
    static void inverse(const double* block_in, double* block_out);
    // basis(u, v, x, y): pixel (x=row, y=col) of the (u, v) basis block.
    static double basis(int u, int v, int x, int y);
};

}  // namespace stegadv
