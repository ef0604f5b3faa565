#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "seqforge/errors.hpp"

namespace seqforge {

using cxd = std::complex<double>;

// ---------------------------------------------------------------------------
// Core value types
// ---------------------------------------------------------------------------

/// Constant-modulus sequence, stored as phases in radians. The n-th element
/// of the signal is exp(j * phases[n]).
struct UnitModulusSequence {
    std::vector<double> phases;

    std::size_t length() const { return phases.size(); }
};

/// Validating constructor. Length must be >= 1; every phase must be finite.
UnitModulusSequence make_sequence(std::vector<double> phases);

/// phases -> complex samples exp(j*phase).
std::vector<cxd> to_complex(const UnitModulusSequence& seq);

/// complex samples -> phases via arg(); callers own the guarantee that the
/// input is (close to) unit modulus.
UnitModulusSequence phases_of(std::span<const cxd> x);

/// One-sided aperiodic autocorrelation, lags 0..N-1. r[0] is real and equals
/// N whenever the profile came from a unit-modulus sequence; negative lags
/// are conj-symmetric and not stored.
struct CorrelationProfile {
    std::vector<cxd> r;

    std::size_t length() const { return r.size(); }
};

/// Nonnegative per-lag weights for lags 1..N-1 (w[k-1] is the weight of lag
/// k). All-zero is constructible (the dense reference builders need it); the
/// solvers reject it at entry because the majorizer curvature degenerates.
struct WeightVector {
    std::vector<double> w;

    std::size_t lags() const { return w.size(); }
};

/// Validates nonnegativity and finiteness.
WeightVector make_weights(std::vector<double> w);

bool any_positive(const WeightVector& w);

// ---------------------------------------------------------------------------
// Spectrum workspace
// ---------------------------------------------------------------------------

/// Owns the 2N-point transform plans and aligned buffers for one sequence
/// length. The convention is the unnormalized DFT
///
///     forward(v)[m] = sum_n v[n] * exp(-j*2*pi*m*n / (2N)),
///
/// adjoint() applies the conjugate-transpose operator (also unnormalized), so
/// the inverse of forward() is adjoint() followed by division by 2N.
///
/// Not thread safe; create one workspace per thread. Every executed transform
/// increments a counter so iteration budgets can be asserted exactly.
class SpectrumWorkspace {
public:
    /// n = sequence length (N >= 1); the transform size is fixed at 2N.
    explicit SpectrumWorkspace(std::size_t n);
    ~SpectrumWorkspace();

    SpectrumWorkspace(SpectrumWorkspace&&) noexcept;
    SpectrumWorkspace& operator=(SpectrumWorkspace&&) noexcept;
    SpectrumWorkspace(const SpectrumWorkspace&) = delete;
    SpectrumWorkspace& operator=(const SpectrumWorkspace&) = delete;

    std::size_t seq_length() const { return n_; }
    std::size_t transform_size() const { return 2 * n_; }

    /// out = F * in. Both spans must have transform_size() elements; in and
    /// out may alias.
    void forward(std::span<const cxd> in, std::span<cxd> out);

    /// out = F^H * in (unnormalized adjoint).
    void adjoint(std::span<const cxd> in, std::span<cxd> out);

    std::uint64_t transform_count() const { return count_; }
    void reset_transform_count() { count_ = 0; }

    /// Scratch vectors of transform_size(), owned by the workspace so the
    /// solver inner loops stay allocation free. Slots 0..2 are free for
    /// callers; slot 3 is clobbered by transform_and_autocorr(). Transforms
    /// themselves never touch any slot.
    std::span<cxd> scratch(std::size_t slot);

private:
    struct Impl;
    std::size_t n_ = 0;
    std::uint64_t count_ = 0;
    std::unique_ptr<Impl> impl_;
};

// ---------------------------------------------------------------------------
// Autocorrelation
// ---------------------------------------------------------------------------

/// FFT-path autocorrelation: zero-pad to 2N, forward transform, squared
/// magnitudes, adjoint transform, scale by 1/(2N). Asserts the structural
/// zero at position N (|value| <= 1e-9) and that lag 0 is real (imag residue
/// < 1e-8 * N) and equals N to 1e-9 for unit-modulus input; violations throw
/// NumericalConsistencyError.
CorrelationProfile autocorrelation(const UnitModulusSequence& seq,
                                   SpectrumWorkspace& ws);
CorrelationProfile autocorrelation(const UnitModulusSequence& seq);
/// Span overload for solver iterates; every entry must be unit modulus (the
/// lag-0 check above assumes it).
CorrelationProfile autocorrelation(std::span<const cxd> x, SpectrumWorkspace& ws);

/// Literal O(N^2) sum r_k = sum_n conj(x[n]) * x[n+k]; no transforms
/// involved. Reference path for equivalence tests.
CorrelationProfile autocorr_direct(const UnitModulusSequence& seq);
CorrelationProfile autocorr_direct(std::span<const cxd> x);

/// Shared machinery for the solver steps: writes the padded spectrum
/// f = F*[x; 0] into f_out and the full 2N correlation vector
/// (1/2N) * F^H |f|^2 into rfull_out (positions 0..N-1 hold r_0..r_{N-1},
/// position N is the checked structural zero, N+1..2N-1 hold the negative
/// lags). Runs the same consistency checks as autocorrelation(). Exactly two
/// transforms.
void transform_and_autocorr(std::span<const cxd> x, SpectrumWorkspace& ws,
                            std::span<cxd> f_out, std::span<cxd> rfull_out);

/// Imaginary-residue policy: checks max |imag| < 1e-8 * scale and returns the
/// truncated real parts; throws NumericalConsistencyError (mentioning `what`)
/// on violation.
std::vector<double> real_part_checked(std::span<const cxd> v, double scale,
                                      const char* what);

// ---------------------------------------------------------------------------
// Sidelobe metrics
// ---------------------------------------------------------------------------

/// Integrated sidelobe level: sum_{k>=1} |r_k|^2.
double isl(const CorrelationProfile& profile);

/// Peak sidelobe level: max_{k>=1} |r_k| (0 when N == 1).
double psl(const CorrelationProfile& profile);

/// Weighted ISL: sum_{k>=1} w_k |r_k|^2. Weight count must be N-1.
double wisl(const CorrelationProfile& profile, const WeightVector& weights);

/// Rooted lp metric over the sidelobes, (sum_{k>=1} |r_k|^p)^(1/p), computed
/// in scaled form so large p cannot overflow. Requires p >= 2.
double lp_metric(const CorrelationProfile& profile, double p);

/// Correlation level in dB for lags 1-N .. N-1 (length 2N-1, symmetric):
/// 20*log10(|r_k| / r_0), clamped below at floor_db; |r_k| = 0 maps to the
/// floor. Index i corresponds to lag i - (N-1).
std::vector<double> correlation_level_db(const CorrelationProfile& profile,
                                         double floor_db = -200.0);

} // namespace seqforge
