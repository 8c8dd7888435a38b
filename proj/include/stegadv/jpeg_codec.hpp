#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stegadv/image.hpp"

namespace stegadv {

// Parse a baseline sequential, 8-bit, single-component JPEG down to its
// quantized DCT coefficients. The entropy stream is decoded exactly;
// decode_jpeg(encode_jpeg(x)) == x coefficient for coefficient.
// Throws ParseError naming the offending marker for progressive streams,
// color images, unsupported precision, or malformed segments.
CoefficientImage decode_jpeg(const std::vector<uint8_t>& bytes);

// Serialize a CoefficientImage as a standards-conformant baseline JPEG.
// Huffman tables are freshly optimized for the image. Throws DataError if a
// coefficient is outside the range the baseline entropy coder can represent.
std::vector<uint8_t> encode_jpeg(const CoefficientImage& img);

std::vector<uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<uint8_t>& bytes);

}  // namespace stegadv
