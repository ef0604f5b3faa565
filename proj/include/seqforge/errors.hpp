#pragma once

#include <stdexcept>
#include <string>

namespace seqforge {

/// Invalid user-supplied configuration: bad lengths, negative weights,
/// malformed files, impossible initializations. CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A quantity that is real or zero in exact arithmetic came back with a
/// residue beyond the documented threshold. Indicates a broken invariant,
/// not bad input. CLI exit code 3.
class NumericalConsistencyError : public std::runtime_error {
public:
    explicit NumericalConsistencyError(const std::string& what)
        : std::runtime_error(what) {}
};

} // namespace seqforge
