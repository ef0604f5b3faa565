#include "seqforge/seqlib.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace seqforge {

UnitModulusSequence frank(std::size_t m) {
    if (m < 1) {
        throw ConfigError("frank(): m must be >= 1");
    }
    const double mm = static_cast<double>(m);
    std::vector<double> phases(m * m);
    for (std::size_t n = 0; n < m; ++n) {
        for (std::size_t k = 0; k < m; ++k) {
            phases[n * m + k] =
                2.0 * std::numbers::pi * static_cast<double>(n * k) / mm;
        }
    }
    return UnitModulusSequence{std::move(phases)};
}

UnitModulusSequence golomb(std::size_t n) {
    if (n < 1) {
        throw ConfigError("golomb(): n must be >= 1");
    }
    std::vector<double> phases(n);
    for (std::size_t i = 1; i <= n; ++i) {
        phases[i - 1] = std::numbers::pi * static_cast<double>((i - 1) * i) /
                        static_cast<double>(n);
    }
    return UnitModulusSequence{std::move(phases)};
}

UnitModulusSequence random_unimodular(std::size_t n, std::uint64_t seed) {
    if (n < 2) {
        throw ConfigError("random_unimodular(): n must be >= 2");
    }
    std::mt19937_64 rng(seed);
    // (u >> 11) keeps the top 53 bits: uniform on [0,1) at double resolution,
    // identical on every conforming implementation.
    constexpr double kInv53 = 1.0 / 9007199254740992.0; // 2^-53
    std::vector<double> phases(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = static_cast<double>(rng() >> 11) * kInv53;
        phases[i] = 2.0 * std::numbers::pi * u;
    }
    return UnitModulusSequence{std::move(phases)};
}

std::optional<std::size_t> perfect_square_root(std::size_t n) {
    const auto root = static_cast<std::size_t>(
        std::llround(std::sqrt(static_cast<double>(n))));
    for (std::size_t r : {root > 0 ? root - 1 : 0, root, root + 1}) {
        if (r * r == n) {
            return r;
        }
    }
    return std::nullopt;
}

} // namespace seqforge
