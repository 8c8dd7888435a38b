#include "stegadv/container.hpp"

#include <cmath>
#include <cstring>

#include "stegadv/jpeg_codec.hpp"

namespace stegadv {

namespace {

constexpr char kMagic[4] = {'S', 'C', 'F', '1'};
constexpr uint8_t kVersion = 1;

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 24));
}
void put_u16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v));
    out.push_back(static_cast<uint8_t>(v >> 8));
}

class Cursor {
public:
    explicit Cursor(const std::vector<uint8_t>& b) : bytes_(b) {}
    const uint8_t* take(size_t n) {
        if (pos_ + n > bytes_.size()) throw ParseError("truncated SCF1 container");
        const uint8_t* p = bytes_.data() + pos_;
        pos_ += n;
        return p;
    }
    uint8_t u8() { return *take(1); }
    uint16_t u16() {
        const uint8_t* p = take(2);
        return static_cast<uint16_t>(p[0] | (p[1] << 8));
    }
    uint32_t u32() {
        const uint8_t* p = take(4);
        return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
               (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
    }
    int32_t i32() { return static_cast<int32_t>(u32()); }
    bool done() const { return pos_ == bytes_.size(); }

private:
    const std::vector<uint8_t>& bytes_;
    size_t pos_ = 0;
};

static_assert(sizeof(double) == 8, "IEEE-754 binary64 layout assumed");

}  // namespace

std::vector<uint8_t> write_container(const Scf1File& file) {
    if (file.width <= 0 || file.height <= 0) throw DataError("SCF1 requires positive dimensions");

    std::vector<uint8_t> out;
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(kVersion);
    out.push_back(static_cast<uint8_t>(file.type));
    put_u16(out, 0);
    put_u32(out, static_cast<uint32_t>(file.width));
    put_u32(out, static_cast<uint32_t>(file.height));

    const size_t cells = static_cast<size_t>(file.width) * file.height;
    auto check_shape = [&](int h, int w) {
        if (h != file.height || w != file.width) throw DataError("SCF1 plane shape mismatch");
    };

    switch (file.type) {
        case PlaneType::kCoefficients: {
            put_u32(out, static_cast<uint32_t>(file.coeff_planes.size()));
            put_u32(out, 0);
            for (int i = 0; i < 64; ++i) put_u16(out, file.quant_table[i]);
            put_u32(out, static_cast<uint32_t>(file.quality_factor));
            for (const auto& plane : file.coeff_planes) {
                check_shape(plane.height(), plane.width());
                for (size_t i = 0; i < cells; ++i) {
                    const int32_t v = plane[i];
                    if (v < INT16_MIN || v > INT16_MAX)
                        throw DataError("coefficient outside int16 payload range");
                    put_u16(out, static_cast<uint16_t>(static_cast<int16_t>(v)));
                }
            }
            break;
        }
        case PlaneType::kCosts:
        case PlaneType::kGradients: {
            put_u32(out, static_cast<uint32_t>(file.real_planes.size()));
            put_u32(out, 0);
            for (const auto& plane : file.real_planes) {
                check_shape(plane.height(), plane.width());
                const size_t base = out.size();
                out.resize(base + cells * 8);
                std::memcpy(out.data() + base, plane.data(), cells * 8);
            }
            break;
        }
        case PlaneType::kMask: {
            put_u32(out, static_cast<uint32_t>(file.mask_planes.size()));
            put_u32(out, 0);
            for (const auto& plane : file.mask_planes) {
                check_shape(plane.height(), plane.width());
                out.insert(out.end(), plane.data(), plane.data() + cells);
            }
            break;
        }
    }
    return out;
}

Scf1File read_container(const std::vector<uint8_t>& bytes) {
    Cursor c(bytes);
    const uint8_t* magic = c.take(4);
    if (std::memcmp(magic, kMagic, 4) != 0) throw ParseError("bad SCF1 magic");
    const uint8_t version = c.u8();
    if (version != kVersion)
        throw ParseError("unsupported container version " + std::to_string(version));
    const uint8_t tag = c.u8();
    if (tag < 1 || tag > 4) throw ParseError("unknown SCF1 plane type tag");
    c.u16();  // reserved

    Scf1File file;
    file.type = static_cast<PlaneType>(tag);
    file.width = static_cast<int>(c.u32());
    file.height = static_cast<int>(c.u32());
    if (file.width <= 0 || file.height <= 0) throw ParseError("bad SCF1 dimensions");
    const uint32_t plane_count = c.u32();
    c.u32();  // reserved
    const size_t cells = static_cast<size_t>(file.width) * file.height;

    switch (file.type) {
        case PlaneType::kCoefficients: {
            for (int i = 0; i < 64; ++i) file.quant_table[i] = c.u16();
            file.quality_factor = c.i32();
            for (uint32_t p = 0; p < plane_count; ++p) {
                Grid<int32_t> plane(file.height, file.width);
                for (size_t i = 0; i < cells; ++i)
                    plane[i] = static_cast<int16_t>(c.u16());
                file.coeff_planes.push_back(std::move(plane));
            }
            break;
        }
        case PlaneType::kCosts:
        case PlaneType::kGradients: {
            for (uint32_t p = 0; p < plane_count; ++p) {
                Grid<double> plane(file.height, file.width);
                std::memcpy(plane.data(), c.take(cells * 8), cells * 8);
                for (size_t i = 0; i < cells; ++i)
                    if (!std::isfinite(plane[i])) file.has_non_finite = true;
                file.real_planes.push_back(std::move(plane));
            }
            break;
        }
        case PlaneType::kMask: {
            for (uint32_t p = 0; p < plane_count; ++p) {
                Grid<uint8_t> plane(file.height, file.width);
                std::memcpy(plane.data(), c.take(cells), cells);
                file.mask_planes.push_back(std::move(plane));
            }
            break;
        }
    }
    if (!c.done()) throw ParseError("SCF1 payload size mismatch (trailing bytes)");
    return file;
}

std::vector<uint8_t> coefficients_to_container(const CoefficientImage& img) {
    Scf1File file;
    file.type = PlaneType::kCoefficients;
    file.width = img.width;
    file.height = img.height;
    file.coeff_planes.push_back(img.coeffs);
    file.quant_table = img.quant_table;
    file.quality_factor = img.quality_factor.value_or(-1);
    return write_container(file);
}

CoefficientImage container_to_coefficients(const Scf1File& file) {
    if (file.type != PlaneType::kCoefficients || file.coeff_planes.size() != 1)
        throw DataError("container does not hold a single coefficient plane");
    CoefficientImage img;
    img.width = file.width;
    img.height = file.height;
    img.coeffs = file.coeff_planes[0];
    img.quant_table = file.quant_table;
    if (file.quality_factor >= 0) img.quality_factor = file.quality_factor;
    return img;
}

void write_container_file(const Scf1File& file, const std::string& path) {
    write_file(path, write_container(file));
}

Scf1File read_container_file(const std::string& path) {
    return read_container(read_file(path));
}

}  // namespace stegadv
