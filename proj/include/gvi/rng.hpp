#pragma once

#include <cmath>
#include <cstdint>

namespace gvi {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937 because the
// standard does not pin down distribution output across implementations, and
// experiment CSVs must be byte-identical for a given seed on any platform.
// The generator itself plus the draw helpers below are fully specified here.
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) using the top 53 bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n) by rejection (Lemire 2019), bias-free.
    uint64_t next_below(uint64_t n) {
        uint64_t x = next_u64();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto l = static_cast<uint64_t>(m);
        if (l < n) {
            uint64_t t = (0 - n) % n;
            while (l < t) {
                x = next_u64();
                m = static_cast<__uint128_t>(x) * n;
                l = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    int next_int(int lo, int hi) {  // inclusive range
        return lo + static_cast<int>(next_below(static_cast<uint64_t>(hi - lo + 1)));
    }

    /// Standard normal via Box-Muller; one fresh pair of uniforms per call
    /// (the second variate is discarded to keep the draw count predictable).
    double next_gaussian() {
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    double next_gaussian(double mean, double stddev) { return mean + stddev * next_gaussian(); }

  private:
    uint64_t state_;
};

/// Decorrelated child seed for a numbered stream (run index, phase, ...).
/// Runs one SplitMix64 output step on a mix of base and stream so nearby
/// bases or streams do not produce overlapping sequences.
inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
    SplitMix64 g(base ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    return g.next_u64();
}

}  // namespace gvi
