#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stegadv/image.hpp"

namespace stegadv {

// SCF1: little-endian binary container for coefficient grids and the real
// planes exchanged with external tools.
//
//   offset  size  field
//   0       4     magic "SCF1"
//   4       1     version (1)
//   5       1     plane type tag
//   6       2     reserved (0)
//   8       4     u32 width
//   12      4     u32 height
//   16      4     u32 plane count
//   20      4     reserved (0)
//   [tag 1 only: 64 x u16 quant table (zig-zag), i32 quality factor or -1]
//   then    plane_count row-major planes of the tag's element type
enum class PlaneType : uint8_t {
    kCoefficients = 1,  // int16
    kCosts = 2,         // float64
    kGradients = 3,     // float64
    kMask = 4,          // uint8
};

struct Scf1File {
    PlaneType type = PlaneType::kCosts;
    int width = 0;
    int height = 0;
    std::vector<Grid<double>> real_planes;    // tags 2, 3
    std::vector<Grid<int32_t>> coeff_planes;  // tag 1 (stored as int16)
    std::vector<Grid<uint8_t>> mask_planes;   // tag 4
    std::array<uint16_t, 64> quant_table{};   // tag 1
    int quality_factor = -1;                  // tag 1, -1 = unset

    // Set on read when a float plane carries NaN or infinity. The payload is
    // passed through bit-exactly either way.
    bool has_non_finite = false;
};

std::vector<uint8_t> write_container(const Scf1File& file);
Scf1File read_container(const std::vector<uint8_t>& bytes);

// Convenience wrappers for the common single-object cases.
std::vector<uint8_t> coefficients_to_container(const CoefficientImage& img);
CoefficientImage container_to_coefficients(const Scf1File& file);

void write_container_file(const Scf1File& file, const std::string& path);
Scf1File read_container_file(const std::string& path);

}  // namespace stegadv
