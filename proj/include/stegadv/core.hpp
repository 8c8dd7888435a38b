#pragma once

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace stegadv {

// Error taxonomy shared by the whole pipeline. Parse errors name the
// offending JPEG marker or container field; usage errors map to CLI exit 1,
// data errors to exit 2, numerical failures to exit 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : Error {
    using Error::Error;
};
struct DataError : Error {
    using Error::Error;
};
struct NumericalError : Error {
    using Error::Error;
};
struct UsageError : Error {
    using Error::Error;
};

// Sentinel cost marking a forbidden modification direction.
inline constexpr double kWetCost = 1e10;

inline bool is_wet(double rho) { return rho >= kWetCost; }

// Row-major 2-D grid. Value semantics; (y, x) indexing.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(int height, int width, T fill = T{})
        : height_(height), width_(width),
          data_(static_cast<size_t>(height) * width, fill) {}

    int height() const { return height_; }
    int width() const { return width_; }
    size_t size() const { return data_.size(); }

    T& operator()(int y, int x) { return data_[static_cast<size_t>(y) * width_ + x]; }
    const T& operator()(int y, int x) const { return data_[static_cast<size_t>(y) * width_ + x]; }
    T& operator[](size_t i) { return data_[i]; }
    const T& operator[](size_t i) const { return data_[i]; }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }
    auto begin() { return data_.begin(); }
    auto end() { return data_.end(); }
    auto begin() const { return data_.begin(); }
    auto end() const { return data_.end(); }

    bool same_shape(const Grid& o) const { return height_ == o.height_ && width_ == o.width_; }
    bool operator==(const Grid& o) const = default;

private:
    int height_ = 0;
    int width_ = 0;
    std::vector<T> data_;
};

// FNV-1a, used for content hashes and file checksums.
inline uint64_t fnv1a64(const void* bytes, size_t n, uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const uint8_t*>(bytes);
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

template <typename T>
uint64_t fnv1a64_grid(const Grid<T>& g, uint64_t h = 0xcbf29ce484222325ull) {
    return fnv1a64(g.data(), g.size() * sizeof(T), h);
}

std::string to_hex(uint64_t v);

}  // namespace stegadv
