#include "stegadv/jpegio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace stegadv {

CoefficientImage compress_gray(const GrayImage& img, int quality_factor, bool* padded) {
    if (img.width <= 0 || img.height <= 0) throw DataError("empty input image");
    const int w = (img.width + 7) / 8 * 8;
    const int h = (img.height + 7) / 8 * 8;
    if (padded) *padded = (w != img.width || h != img.height);

    CoefficientImage out;
    out.width = w;
    out.height = h;
    out.coeffs = Grid<int32_t>(h, w);
    out.quant_table = scaled_quant_table(quality_factor);
    out.quality_factor = quality_factor;

    double block[64], freq[64];
    for (int by = 0; by < h / 8; ++by)
        for (int bx = 0; bx < w / 8; ++bx) {
            for (int x = 0; x < 8; ++x)
                for (int y = 0; y < 8; ++y) {
                    // edge replication for the padded band
                    const int sy = std::min(by * 8 + x, img.height - 1);
                    const int sx = std::min(bx * 8 + y, img.width - 1);
                    block[x * 8 + y] = static_cast<double>(img.samples(sy, sx)) - 128.0;
                }
            Dct8::forward(block, freq);
            for (int u = 0; u < 8; ++u)
                for (int v = 0; v < 8; ++v) {
                    const double q = out.quant_at(u, v);
                    int32_t c = static_cast<int32_t>(std::round(freq[u * 8 + v] / q));
                    // baseline entropy-coder bounds; unreachable for 8-bit
                    // input except the AC corner value -1024
                    if (u == 0 && v == 0) {
                        if (c < kDcMin) c = kDcMin;
                        if (c > kDcMax) c = kDcMax;
                    } else {
                        if (c < kAcMin) c = kAcMin;
                        if (c > kAcMax) c = kAcMax;
                    }
                    out.coeffs(by * 8 + u, bx * 8 + v) = c;
                }
        }
    return out;
}

SpatialImage decompress(const CoefficientImage& img) {
    SpatialImage out;
    out.width = img.width;
    out.height = img.height;
    out.samples = Grid<double>(img.height, img.width);

    double freq[64], block[64];
    for (int by = 0; by < img.blocks_y(); ++by)
        for (int bx = 0; bx < img.blocks_x(); ++bx) {
            for (int u = 0; u < 8; ++u)
                for (int v = 0; v < 8; ++v)
                    freq[u * 8 + v] =
                        static_cast<double>(img.coeffs(by * 8 + u, bx * 8 + v)) * img.quant_at(u, v);
            Dct8::inverse(freq, block);
            for (int x = 0; x < 8; ++x)
                for (int y = 0; y < 8; ++y)
                    out.samples(by * 8 + x, bx * 8 + y) = block[x * 8 + y] + 128.0;
        }
    return out;
}

int64_t count_nzac(const CoefficientImage& img) {
    int64_t n = 0;
    for (int by = 0; by < img.blocks_y(); ++by)
        for (int bx = 0; bx < img.blocks_x(); ++bx)
            for (int u = 0; u < 8; ++u)
                for (int v = 0; v < 8; ++v)
                    if ((u != 0 || v != 0) && img.coeffs(by * 8 + u, bx * 8 + v) != 0) ++n;
    return n;
}

GrayImage read_pgm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot open PGM file: " + path);

    auto next_token = [&f, &path]() -> std::string {
        std::string tok;
        int c;
        while ((c = f.get()) != EOF) {
            if (c == '#') {
                while ((c = f.get()) != EOF && c != '\n') {
                }
                continue;
            }
            if (std::isspace(c)) {
                if (!tok.empty()) return tok;
                continue;
            }
            tok.push_back(static_cast<char>(c));
        }
        if (tok.empty()) throw ParseError("truncated PGM header: " + path);
        return tok;
    };

    if (next_token() != "P5") throw ParseError("not a binary PGM (P5) file: " + path);
    const int w = std::stoi(next_token());
    const int h = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (w <= 0 || h <= 0) throw ParseError("bad PGM dimensions: " + path);
    if (maxval != 255) throw ParseError("only 8-bit PGM supported: " + path);

    GrayImage img;
    img.width = w;
    img.height = h;
    img.samples = Grid<uint8_t>(h, w);
    f.read(reinterpret_cast<char*>(img.samples.data()), static_cast<std::streamsize>(img.samples.size()));
    if (f.gcount() != static_cast<std::streamsize>(img.samples.size()))
        throw ParseError("truncated PGM pixel data: " + path);
    return img;
}

void write_pgm(const GrayImage& img, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write PGM file: " + path);
    f << "P5\n" << img.width << " " << img.height << "\n255\n";
    f.write(reinterpret_cast<const char*>(img.samples.data()),
            static_cast<std::streamsize>(img.samples.size()));
    if (!f) throw DataError("short write to PGM file: " + path);
}

}  // namespace stegadv
