#include "stegadv/jpeg_codec.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>

namespace stegadv {

namespace {

// ---------------------------------------------------------------- markers
constexpr uint8_t kSOI = 0xd8, kEOI = 0xd9, kSOS = 0xda, kDQT = 0xdb;
constexpr uint8_t kDRI = 0xdd, kDHT = 0xc4, kCOM = 0xfe;
constexpr uint8_t kSOF0 = 0xc0;

std::string marker_name(uint8_t m) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "FF%02X", m);
    switch (m) {
        case kSOF0: return "SOF0";
        case 0xc1: return "SOF1";
        case 0xc2: return "SOF2";
        case 0xc3: return "SOF3";
        case kDHT: return "DHT";
        case kSOI: return "SOI";
        case kEOI: return "EOI";
        case kSOS: return "SOS";
        case kDQT: return "DQT";
        case kDRI: return "DRI";
        case kCOM: return "COM";
        default: return std::string(buf);
    }
}

// ------------------------------------------------------------ byte reader
class ByteReader {
public:
    explicit ByteReader(const std::vector<uint8_t>& b) : bytes_(b) {}

    uint8_t u8(const char* where) {
        if (pos_ >= bytes_.size()) throw ParseError(std::string("truncated stream in ") + where);
        return bytes_[pos_++];
    }
    uint16_t u16(const char* where) {
        const uint16_t hi = u8(where);
        return static_cast<uint16_t>((hi << 8) | u8(where));
    }
    void skip(size_t n, const char* where) {
        if (pos_ + n > bytes_.size()) throw ParseError(std::string("truncated stream in ") + where);
        pos_ += n;
    }
    size_t pos() const { return pos_; }
    bool eof() const { return pos_ >= bytes_.size(); }

private:
    const std::vector<uint8_t>& bytes_;
    size_t pos_ = 0;
};

// Huffman decoding tables in the canonical min/max-code form.
struct HuffDecoder {
    bool present = false;
    std::array<int32_t, 17> mincode{};
    std::array<int32_t, 17> maxcode{};  // -1 where no codes of that length
    std::array<int, 17> valptr{};
    std::vector<uint8_t> values;

    void build(const uint8_t* bits /*1..16*/, const std::vector<uint8_t>& vals) {
        values = vals;
        int code = 0, k = 0;
        for (int len = 1; len <= 16; ++len) {
            valptr[len] = k;
            mincode[len] = code;
            code += bits[len - 1];
            k += bits[len - 1];
            maxcode[len] = bits[len - 1] ? code - 1 : -1;
            code <<= 1;
        }
        present = true;
    }
};

// MSB-first bit reader over the entropy-coded segment; undoes 0xFF00 byte
// stuffing and stops at any real marker.
class BitReader {
public:
    BitReader(const std::vector<uint8_t>& bytes, size_t pos) : bytes_(bytes), pos_(pos) {}

    int bit() {
        if (count_ == 0) fill();
        --count_;
        return (acc_ >> count_) & 1;
    }
    int bits(int n) {
        int v = 0;
        for (int i = 0; i < n; ++i) v = (v << 1) | bit();
        return v;
    }

    int decode(const HuffDecoder& h) {
        int code = bit();
        for (int len = 1; len <= 16; ++len) {
            if (h.maxcode[len] >= 0 && code <= h.maxcode[len])
                return h.values[h.valptr[len] + code - h.mincode[len]];
            code = (code << 1) | bit();
        }
        throw ParseError("invalid Huffman code in scan data");
    }

    // Consumes a restart marker and realigns; the expected index cycles 0..7.
    void restart(int expected) {
        count_ = 0;  // discard padding bits
        if (pos_ + 2 > bytes_.size()) throw ParseError("truncated stream at restart marker");
        if (bytes_[pos_] != 0xff || (bytes_[pos_ + 1] & 0xf8) != 0xd0)
            throw ParseError("expected RST marker in scan data");
        if ((bytes_[pos_ + 1] & 0x07) != expected)
            throw ParseError("restart marker out of sequence");
        pos_ += 2;
    }

    size_t byte_pos() const { return pos_; }

private:
    void fill() {
        if (pos_ >= bytes_.size()) throw ParseError("truncated entropy-coded data before EOI");
        uint8_t b = bytes_[pos_++];
        if (b == 0xff) {
            if (pos_ >= bytes_.size()) throw ParseError("truncated entropy-coded data before EOI");
            const uint8_t next = bytes_[pos_];
            if (next == 0x00) {
                ++pos_;  // stuffed byte
            } else {
                throw ParseError("scan data ended early at marker " + marker_name(next));
            }
        }
        acc_ = b;
        count_ = 8;
    }

    const std::vector<uint8_t>& bytes_;
    size_t pos_;
    uint32_t acc_ = 0;
    int count_ = 0;
};

int extend(int v, int size) {
    // T.81 F.2.2.1 sign extension of a magnitude-category value
    return v < (1 << (size - 1)) ? v - (1 << size) + 1 : v;
}

// ------------------------------------------------------------- bit writer
class BitWriter {
public:
    explicit BitWriter(std::vector<uint8_t>& out) : out_(out) {}

    void put(uint32_t value, int nbits) {
        for (int i = nbits - 1; i >= 0; --i) {
            acc_ = (acc_ << 1) | ((value >> i) & 1);
            if (++count_ == 8) flush_byte();
        }
    }
    void pad_to_byte() {
        while (count_ != 0) {
            acc_ = (acc_ << 1) | 1;
            if (++count_ == 8) flush_byte();
        }
    }

private:
    void flush_byte() {
        out_.push_back(static_cast<uint8_t>(acc_));
        if (static_cast<uint8_t>(acc_) == 0xff) out_.push_back(0x00);
        acc_ = 0;
        count_ = 0;
    }
    std::vector<uint8_t>& out_;
    uint32_t acc_ = 0;
    int count_ = 0;
};

int category(int32_t v) {
    int a = std::abs(v), s = 0;
    while (a) {
        ++s;
        a >>= 1;
    }
    return s;
}

// Optimal Huffman code lengths for the observed symbol frequencies, per the
// classic two-least-frequent merge with the 16-bit length adjustment and a
// reserved guard symbol so no code is all ones.
struct HuffSpec {
    std::array<uint8_t, 16> bits{};
    std::vector<uint8_t> values;
};

HuffSpec optimal_table(std::array<int64_t, 257> freq) {
    freq[256] = 1;  // guard
    std::array<int, 257> codesize{};
    std::array<int, 257> others{};
    others.fill(-1);

    for (;;) {
        int c1 = -1;
        int64_t v = INT64_MAX;
        for (int i = 0; i <= 256; ++i)
            if (freq[i] && freq[i] <= v) {
                v = freq[i];
                c1 = i;
            }
        int c2 = -1;
        v = INT64_MAX;
        for (int i = 0; i <= 256; ++i)
            if (freq[i] && freq[i] <= v && i != c1) {
                v = freq[i];
                c2 = i;
            }
        if (c2 < 0) break;

        freq[c1] += freq[c2];
        freq[c2] = 0;
        for (++codesize[c1]; others[c1] >= 0; ++codesize[c1]) c1 = others[c1];
        others[c1] = c2;
        for (++codesize[c2]; others[c2] >= 0; ++codesize[c2]) c2 = others[c2];
    }

    std::array<int, 33> counts{};
    for (int i = 0; i <= 256; ++i)
        if (codesize[i]) ++counts[std::min(codesize[i], 32)];

    for (int i = 32; i > 16; --i)
        while (counts[i] > 0) {
            int j = i - 2;
            while (counts[j] == 0) --j;
            counts[i] -= 2;
            ++counts[i - 1];
            counts[j + 1] += 2;
            --counts[j];
        }
    int i = 16;
    while (counts[i] == 0) --i;
    --counts[i];  // drop the guard symbol's slot

    HuffSpec spec;
    for (int len = 1; len <= 16; ++len) spec.bits[len - 1] = static_cast<uint8_t>(counts[len]);
    for (int len = 1; len <= 32; ++len)
        for (int sym = 0; sym <= 255; ++sym)
            if (codesize[sym] == len) spec.values.push_back(static_cast<uint8_t>(sym));
    return spec;
}

// Canonical code assignment (T.81 C.2) for encoding.
struct HuffEncoder {
    std::array<uint16_t, 256> code{};
    std::array<uint8_t, 256> size{};

    void build(const HuffSpec& spec) {
        int k = 0, c = 0;
        for (int len = 1; len <= 16; ++len) {
            for (int n = 0; n < spec.bits[len - 1]; ++n) {
                const uint8_t sym = spec.values[k++];
                code[sym] = static_cast<uint16_t>(c++);
                size[sym] = static_cast<uint8_t>(len);
            }
            c <<= 1;
        }
    }
};

void append_u16(std::vector<uint8_t>& out, uint16_t v) {
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v & 0xff));
}

void append_marker(std::vector<uint8_t>& out, uint8_t m) {
    out.push_back(0xff);
    out.push_back(m);
}

struct BlockSymbols {
    // per-block DC diff plus (run, size, value) AC triples, zig-zag order
    int32_t dc_diff = 0;
    struct Ac {
        uint8_t rs;
        int32_t value;
    };
    std::vector<Ac> ac;
};

}  // namespace

CoefficientImage decode_jpeg(const std::vector<uint8_t>& bytes) {
    ByteReader r(bytes);
    if (r.u8("SOI") != 0xff || r.u8("SOI") != kSOI) throw ParseError("missing SOI marker");

    bool have_dqt = false, have_sof = false, have_dc = false, have_ac = false;
    std::array<std::array<uint16_t, 64>, 4> qtables{};
    std::array<bool, 4> qpresent{};
    std::array<HuffDecoder, 4> dc_tables, ac_tables;
    int width = 0, height = 0, comp_tq = 0, restart_interval = 0;

    for (;;) {
        if (r.eof()) throw ParseError(have_sof ? "missing SOS" : "missing SOF0");
        uint8_t b = r.u8("marker stream");
        if (b != 0xff) throw ParseError("expected marker, found stray byte");
        uint8_t m = r.u8("marker stream");
        while (m == 0xff) m = r.u8("marker stream");  // fill bytes

        if (m == kSOS) break;

        if (m == kEOI)
            throw ParseError(have_sof ? "missing SOS" : "missing SOF0");

        if ((m >= 0xc1 && m <= 0xcf) && m != kDHT && m != 0xc8) {
            if (m == 0xc2) throw ParseError("progressive JPEG (SOF2) not supported");
            throw ParseError("unsupported frame type " + marker_name(m) + "; baseline SOF0 required");
        }

        const uint16_t len = r.u16(marker_name(m).c_str());
        if (len < 2) throw ParseError("bad segment length in " + marker_name(m));
        size_t remain = len - 2;

        if (m == kDQT) {
            while (remain > 0) {
                const uint8_t pq_tq = r.u8("DQT");
                --remain;
                const int pq = pq_tq >> 4, tq = pq_tq & 0x0f;
                if (pq != 0) throw ParseError("16-bit quantization table in DQT not supported");
                if (tq > 3) throw ParseError("bad table id in DQT");
                if (remain < 64) throw ParseError("truncated stream in DQT");
                for (int i = 0; i < 64; ++i) qtables[tq][i] = r.u8("DQT");
                remain -= 64;
                qpresent[tq] = true;
            }
            have_dqt = true;
        } else if (m == kSOF0) {
            if (have_sof) throw ParseError("duplicate SOF0");
            if (remain < 6) throw ParseError("truncated stream in SOF0");
            const uint8_t precision = r.u8("SOF0");
            if (precision != 8) throw ParseError("unsupported precision in SOF0 (8-bit required)");
            height = r.u16("SOF0");
            width = r.u16("SOF0");
            const uint8_t ncomp = r.u8("SOF0");
            if (ncomp != 1)
                throw ParseError("color JPEG not supported (SOF0 declares " +
                                 std::to_string(ncomp) + " components)");
            if (remain < 6 + 3u) throw ParseError("truncated stream in SOF0");
            r.u8("SOF0");  // component id
            const uint8_t hv = r.u8("SOF0");
            if (hv != 0x11) throw ParseError("subsampled component in SOF0 not supported");
            comp_tq = r.u8("SOF0");
            if (comp_tq > 3) throw ParseError("bad quantization table selector in SOF0");
            if (width == 0 || height == 0) throw ParseError("zero dimensions in SOF0");
            have_sof = true;
        } else if (m == kDHT) {
            while (remain > 0) {
                if (remain < 17) throw ParseError("truncated stream in DHT");
                const uint8_t tc_th = r.u8("DHT");
                const int tc = tc_th >> 4, th = tc_th & 0x0f;
                if (tc > 1 || th > 3) throw ParseError("bad table class or id in DHT");
                uint8_t bits[16];
                size_t total = 0;
                for (int i = 0; i < 16; ++i) {
                    bits[i] = r.u8("DHT");
                    total += bits[i];
                }
                remain -= 17;
                if (total > 256 || remain < total) throw ParseError("truncated stream in DHT");
                std::vector<uint8_t> vals(total);
                for (auto& v : vals) v = r.u8("DHT");
                remain -= total;
                (tc == 0 ? dc_tables : ac_tables)[th].build(bits, vals);
                (tc == 0 ? have_dc : have_ac) = true;
            }
        } else if (m == kDRI) {
            if (remain != 2) throw ParseError("bad DRI length");
            restart_interval = r.u16("DRI");
            remain = 0;
        } else if ((m >= 0xe0 && m <= 0xef) || m == kCOM) {
            r.skip(remain, marker_name(m).c_str());
            remain = 0;
        } else {
            throw ParseError("unexpected marker " + marker_name(m) + " before SOS");
        }
        if (m == kDQT || m == kSOF0 || m == kDHT) {
            if (remain != 0) throw ParseError("trailing bytes in " + marker_name(m));
        }
    }

    if (!have_sof) throw ParseError("missing SOF0");
    if (!have_dqt || !qpresent[comp_tq]) throw ParseError("missing DQT");
    if (!have_dc || !have_ac) throw ParseError("missing DHT");

    // SOS header
    const uint16_t slen = r.u16("SOS");
    if (slen < 2) throw ParseError("bad segment length in SOS");
    const uint8_t ns = r.u8("SOS");
    if (ns != 1) throw ParseError("multi-component scan in SOS not supported");
    r.u8("SOS");  // component selector
    const uint8_t td_ta = r.u8("SOS");
    const int td = td_ta >> 4, ta = td_ta & 0x0f;
    if (!dc_tables[td].present || !ac_tables[ta].present)
        throw ParseError("SOS references undefined Huffman table");
    const uint8_t ss = r.u8("SOS"), se = r.u8("SOS"), ahal = r.u8("SOS");
    if (ss != 0 || se != 63 || ahal != 0)
        throw ParseError("non-baseline spectral selection in SOS");

    CoefficientImage img;
    img.width = (width + 7) / 8 * 8;
    img.height = (height + 7) / 8 * 8;
    img.coeffs = Grid<int32_t>(img.height, img.width);
    img.quant_table = qtables[comp_tq];
    for (int i = 0; i < 64; ++i)
        if (img.quant_table[i] == 0) throw ParseError("zero quantization step in DQT");

    const HuffDecoder& dc = dc_tables[td];
    const HuffDecoder& ac = ac_tables[ta];
    BitReader bits(bytes, r.pos());

    int32_t dc_pred = 0;
    int rst_index = 0, blocks_since_restart = 0;
    const int nby = img.blocks_y(), nbx = img.blocks_x();
    for (int by = 0; by < nby; ++by)
        for (int bx = 0; bx < nbx; ++bx) {
            if (restart_interval && blocks_since_restart == restart_interval) {
                bits.restart(rst_index);
                rst_index = (rst_index + 1) & 7;
                blocks_since_restart = 0;
                dc_pred = 0;
            }
            int32_t block[64] = {};
            const int s = bits.decode(dc);
            if (s > 11) throw ParseError("DC category above 11 in scan data");
            if (s) dc_pred += extend(bits.bits(s), s);
            block[0] = dc_pred;

            for (int k = 1; k < 64;) {
                const int rs = bits.decode(ac);
                const int run = rs >> 4, size = rs & 0x0f;
                if (size == 0) {
                    if (run == 15) {
                        k += 16;  // ZRL
                        continue;
                    }
                    break;  // EOB
                }
                if (size > 10) throw ParseError("AC category above 10 in scan data");
                k += run;
                if (k > 63) throw ParseError("AC run overflows block in scan data");
                block[kZigZag[k]] = extend(bits.bits(size), size);
                ++k;
            }

            for (int u = 0; u < 8; ++u)
                for (int v = 0; v < 8; ++v)
                    img.coeffs(by * 8 + u, bx * 8 + v) = block[u * 8 + v];
            ++blocks_since_restart;
        }

    for (int by = 0; by < nby; ++by)
        for (int bx = 0; bx < nbx; ++bx) {
            const int32_t d = img.coeffs(by * 8, bx * 8);
            if (d < kDcMin || d > kDcMax) throw ParseError("decoded DC coefficient out of range");
        }

    // Expect EOI after the scan (tolerate padding/restart remnants).
    ByteReader tail(bytes);
    tail.skip(bits.byte_pos(), "scan tail");
    for (;;) {
        if (tail.eof()) throw ParseError("missing EOI");
        uint8_t b = tail.u8("scan tail");
        if (b != 0xff) continue;
        if (tail.eof()) throw ParseError("missing EOI");
        const uint8_t m = tail.u8("scan tail");
        if (m == kEOI) break;
        if (m == 0x00 || (m >= 0xd0 && m <= 0xd7) || m == 0xff) continue;
        throw ParseError("unexpected marker " + marker_name(m) + " after scan");
    }
    return img;
}

std::vector<uint8_t> encode_jpeg(const CoefficientImage& img) {
    img.validate();

    // Pass 1: serialize blocks to symbols and gather code statistics.
    const int nby = img.blocks_y(), nbx = img.blocks_x();
    std::vector<BlockSymbols> blocks;
    blocks.reserve(static_cast<size_t>(nby) * nbx);
    std::array<int64_t, 257> dc_freq{}, ac_freq{};

    int32_t dc_pred = 0;
    for (int by = 0; by < nby; ++by)
        for (int bx = 0; bx < nbx; ++bx) {
            BlockSymbols bs;
            const int32_t dc_val = img.coeffs(by * 8, bx * 8);
            if (dc_val < kDcMin || dc_val > kDcMax)
                throw DataError("DC coefficient out of representable range");
            bs.dc_diff = dc_val - dc_pred;
            dc_pred = dc_val;
            ++dc_freq[category(bs.dc_diff)];

            int run = 0;
            for (int k = 1; k < 64; ++k) {
                const int32_t v = img.coeffs(by * 8 + kZigZag[k] / 8, bx * 8 + kZigZag[k] % 8);
                if (v == 0) {
                    ++run;
                    continue;
                }
                if (v < kAcMin || v > kAcMax)
                    throw DataError("AC coefficient out of representable range");
                while (run > 15) {
                    bs.ac.push_back({0xf0, 0});  // ZRL
                    ++ac_freq[0xf0];
                    run -= 16;
                }
                const int size = category(v);
                const uint8_t rs = static_cast<uint8_t>((run << 4) | size);
                bs.ac.push_back({rs, v});
                ++ac_freq[rs];
                run = 0;
            }
            if (run > 0) {
                bs.ac.push_back({0x00, 0});  // EOB
                ++ac_freq[0x00];
            }
            blocks.push_back(std::move(bs));
        }

    const HuffSpec dc_spec = optimal_table(dc_freq);
    const HuffSpec ac_spec = optimal_table(ac_freq);
    HuffEncoder dc_enc, ac_enc;
    dc_enc.build(dc_spec);
    ac_enc.build(ac_spec);

    // Pass 2: emit the stream.
    std::vector<uint8_t> out;
    append_marker(out, kSOI);

    append_marker(out, kDQT);
    append_u16(out, 2 + 1 + 64);
    out.push_back(0x00);  // Pq=0, Tq=0
    for (int i = 0; i < 64; ++i) out.push_back(static_cast<uint8_t>(img.quant_table[i]));

    append_marker(out, kSOF0);
    append_u16(out, 2 + 6 + 3);
    out.push_back(8);  // precision
    append_u16(out, static_cast<uint16_t>(img.height));
    append_u16(out, static_cast<uint16_t>(img.width));
    out.push_back(1);     // one component
    out.push_back(1);     // component id
    out.push_back(0x11);  // no subsampling
    out.push_back(0);     // quant table 0

    auto emit_dht = [&out](int tc, const HuffSpec& spec) {
        append_marker(out, kDHT);
        append_u16(out, static_cast<uint16_t>(2 + 1 + 16 + spec.values.size()));
        out.push_back(static_cast<uint8_t>(tc << 4));
        for (int i = 0; i < 16; ++i) out.push_back(spec.bits[i]);
        out.insert(out.end(), spec.values.begin(), spec.values.end());
    };
    emit_dht(0, dc_spec);
    emit_dht(1, ac_spec);

    append_marker(out, kSOS);
    append_u16(out, 2 + 1 + 2 + 3);
    out.push_back(1);     // one component in scan
    out.push_back(1);     // component id
    out.push_back(0x00);  // DC table 0, AC table 0
    out.push_back(0);     // Ss
    out.push_back(63);    // Se
    out.push_back(0);     // AhAl

    BitWriter bw(out);
    auto put_value = [&bw](int32_t v, int size) {
        if (v < 0) v += (1 << size) - 1;
        bw.put(static_cast<uint32_t>(v), size);
    };
    for (const auto& bs : blocks) {
        const int s = category(bs.dc_diff);
        bw.put(dc_enc.code[s], dc_enc.size[s]);
        if (s) put_value(bs.dc_diff, s);
        for (const auto& a : bs.ac) {
            bw.put(ac_enc.code[a.rs], ac_enc.size[a.rs]);
            const int size = a.rs & 0x0f;
            if (size) put_value(a.value, size);
        }
    }
    bw.pad_to_byte();

    append_marker(out, kEOI);
    return out;
}

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary | std::ios::ate);
    if (!f) throw DataError("cannot open file: " + path);
    const auto size = f.tellg();
    f.seekg(0);
    std::vector<uint8_t> bytes(static_cast<size_t>(size));
    f.read(reinterpret_cast<char*>(bytes.data()), size);
    if (!f) throw DataError("short read from file: " + path);
    return bytes;
}

void write_file(const std::string& path, const std::vector<uint8_t>& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DataError("cannot write file: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw DataError("short write to file: " + path);
}

}  // namespace stegadv
