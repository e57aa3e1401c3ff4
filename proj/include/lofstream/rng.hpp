#pragma once

#include <cmath>
#include <cstdint>

namespace lofstream {

// SplitMix64: a Weyl counter (increment 0x9E3779B97F4A7C15) pushed through a
// fixed 64-bit finaliser (multipliers 0xBF58476D1CE4E5B9, 0x94D049BB133111EB;
// shifts 30, 27, 31). Output depends only on seed and draw count, so streams
// are reproducible across compilers and standard libraries, unlike the
// std:: distributions.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on [0, n), n > 0 (Lemire's multiply-shift).
    std::uint64_t below(std::uint64_t n) noexcept {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    // Standard normal via Box-Muller; the second variate of each pair is cached.
    double normal() noexcept {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 6.283185307179586 * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

template <class RandomIt>
void shuffle(RandomIt first, RandomIt last, SplitMix64& rng) {
    for (auto n = last - first; n > 1; --n) {
        const auto j = static_cast<decltype(n)>(rng.below(static_cast<std::uint64_t>(n)));
        std::swap(first[n - 1], first[j]);
    }
}

}  // namespace lofstream
