#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stegadv/image.hpp"

namespace stegadv {

// 8-bit grayscale raster used for ingestion (PGM P5).
struct GrayImage {
    int width = 0;
    int height = 0;
    Grid<uint8_t> samples;
};

// JPEG-compress a raw grayscale cover: level shift by -128, per-block
// orthonormal DCT, divide by the IJG-scaled luminance table, round half
// away from zero. Dimensions that are not multiples of 8 are padded by
// edge replication; `padded` (when non-null) reports whether that happened.
CoefficientImage compress_gray(const GrayImage& img, int quality_factor,
                               bool* padded = nullptr);

// Dequantize and inverse-transform. No rounding, no clipping to [0, 255]:
// downstream gradient computations need the smooth path.
SpatialImage decompress(const CoefficientImage& img);

// Number of nonzero AC coefficients (positions 1..63 of each block).
// Payloads in bits-per-nonzero-AC are always computed from the cover.
int64_t count_nzac(const CoefficientImage& img);

GrayImage read_pgm(const std::string& path);
void write_pgm(const GrayImage& img, const std::string& path);

}  // namespace stegadv
