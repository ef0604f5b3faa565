#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "seqforge/corr.hpp"
#include "seqforge/solvers.hpp"

// Plain-text formats. Phases and weights are one value per line below a
// `# seqforge <kind> v1 N=<n>` header, printed with 17 significant digits so
// a write/read round trip reproduces every bit. Malformed input surfaces as
// ConfigError naming the offending file.

namespace seqforge {

void write_sequence(const std::filesystem::path& path,
                    const UnitModulusSequence& seq);
UnitModulusSequence read_sequence(const std::filesystem::path& path);

struct WeightsFile {
    std::size_t n = 0;   // sequence length the weights apply to
    WeightVector weights; // n - 1 lag weights
};

void write_weights(const std::filesystem::path& path, std::size_t n,
                   const WeightVector& weights);
WeightsFile read_weights(const std::filesystem::path& path);

/// iter,objective,cum_seconds,backtracks; one row per trace entry.
void write_convergence_csv(const std::filesystem::path& path,
                           const ConvergenceRecord& record);

/// lag,level_db for lags -(N-1) .. N-1; levels must have 2N-1 entries.
void write_correlation_levels_csv(const std::filesystem::path& path,
                                  std::span<const double> levels);

struct MetricsReport {
    std::size_t n = 0;
    double isl = 0.0;
    double psl = 0.0;
    std::optional<double> wisl; // present when weights were supplied
    std::optional<double> lp;   // present when an exponent was supplied
    std::optional<double> p;    // exponent the lp entry was computed with
    std::string correlation_level_path;
};

void write_metrics_json(const std::filesystem::path& path,
                        const MetricsReport& report);

} // namespace seqforge
