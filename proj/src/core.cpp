#include "stegadv/core.hpp"
#include "stegadv/parallel.hpp"
#include "stegadv/rng.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace stegadv {

std::string to_hex(uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[v & 0xf];
        v >>= 4;
    }
    return s;
}

double SplitMix::normal() {
    // Box-Muller; consumes two draws per call.
    double u1 = unit();
    double u2 = unit();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

namespace {
std::atomic<int> g_threads{0};  // 0 = use hardware concurrency
}

void set_parallelism(int threads) { g_threads.store(threads > 0 ? threads : 0); }

int parallelism() {
    int t = g_threads.load();
    if (t > 0) return t;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
    const int nthreads = parallelism();
    if (n == 0) return;
    if (nthreads <= 1 || n == 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const size_t chunk = (n + nthreads - 1) / nthreads;
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::atomic<bool> have_err{false};
    for (int t = 0; t < nthreads; ++t) {
        const size_t lo = t * chunk;
        if (lo >= n) break;
        const size_t hi = std::min(n, lo + chunk);
        pool.emplace_back([&, lo, hi] {
            try {
                for (size_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                bool expected = false;
                if (have_err.compare_exchange_strong(expected, true)) err = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (have_err.load()) std::rethrow_exception(err);
}

}  // namespace stegadv
