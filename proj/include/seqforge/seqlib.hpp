#pragma once

#include <cstdint>
#include <optional>

#include "seqforge/corr.hpp"

namespace seqforge {

/// Length m^2 polyphase sequence with phases 2*pi*n*k/m laid out row-major
/// over n, k in 0..m-1. m >= 1.
UnitModulusSequence frank(std::size_t m);

/// Length n sequence with phases pi*(i-1)*i/n for i = 1..n. n >= 1.
UnitModulusSequence golomb(std::size_t n);

/// i.i.d. phases uniform on [0, 2*pi), n >= 2. Reproducible bit-for-bit
/// across platforms: the generator is std::mt19937_64 (fully pinned by the
/// C++ standard) seeded with `seed`, and each phase is derived from one raw
/// draw as 2*pi * (u >> 11) / 2^53 rather than through a distribution object.
UnitModulusSequence random_unimodular(std::size_t n, std::uint64_t seed);

/// Integer square root when n is a perfect square.
std::optional<std::size_t> perfect_square_root(std::size_t n);

} // namespace seqforge
