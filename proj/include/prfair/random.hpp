#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace prfair {

/// Seeded 64-bit generator. Only the raw mt19937_64 stream is used (its output is fixed by
/// the standard); all derived draws are computed here so results match across standard libraries.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : seed_{seed}, engine_{seed} {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, n).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    /// Standard normal via Box-Muller; the second variate is discarded.
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::uint64_t   seed_;
    std::mt19937_64 engine_;
};

}  // namespace prfair
