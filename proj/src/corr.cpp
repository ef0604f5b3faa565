#include "seqforge/corr.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <mutex>
#include <sstream>

namespace seqforge {

namespace {

// FFTW's planner is not thread safe; executions on distinct plans are.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

// ---------------------------------------------------------------------------
// Value types
// ---------------------------------------------------------------------------

UnitModulusSequence make_sequence(std::vector<double> phases) {
    if (phases.empty()) {
        throw ConfigError("sequence length must be >= 1");
    }
    for (double p : phases) {
        if (!std::isfinite(p)) {
            throw ConfigError("sequence phases must be finite");
        }
    }
    return UnitModulusSequence{std::move(phases)};
}

std::vector<cxd> to_complex(const UnitModulusSequence& seq) {
    std::vector<cxd> x(seq.length());
    for (std::size_t n = 0; n < x.size(); ++n) {
        x[n] = std::polar(1.0, seq.phases[n]);
    }
    return x;
}

UnitModulusSequence phases_of(std::span<const cxd> x) {
    std::vector<double> phases(x.size());
    for (std::size_t n = 0; n < x.size(); ++n) {
        phases[n] = std::arg(x[n]);
    }
    return UnitModulusSequence{std::move(phases)};
}

WeightVector make_weights(std::vector<double> w) {
    for (double v : w) {
        if (!std::isfinite(v) || v < 0.0) {
            throw ConfigError("weights must be finite and nonnegative");
        }
    }
    return WeightVector{std::move(w)};
}

bool any_positive(const WeightVector& w) {
    return std::any_of(w.w.begin(), w.w.end(), [](double v) { return v > 0.0; });
}

// ---------------------------------------------------------------------------
// SpectrumWorkspace
// ---------------------------------------------------------------------------

struct SpectrumWorkspace::Impl {
    fftw_complex* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    std::vector<std::vector<cxd>> scratch;
    std::size_t size = 0;

    explicit Impl(std::size_t transform_size) : size(transform_size) {
        in = fftw_alloc_complex(size);
        out = fftw_alloc_complex(size);
        if (in == nullptr || out == nullptr) {
            throw std::bad_alloc();
        }
        {
            std::lock_guard<std::mutex> lock(planner_mutex());
            // FFTW_ESTIMATE keeps planning deterministic and cheap; these
            // transforms are executed far more often than planned.
            fwd = fftw_plan_dft_1d(static_cast<int>(size), in, out,
                                   FFTW_FORWARD, FFTW_ESTIMATE);
            bwd = fftw_plan_dft_1d(static_cast<int>(size), in, out,
                                   FFTW_BACKWARD, FFTW_ESTIMATE);
        }
        scratch.assign(4, std::vector<cxd>(size));
    }

    ~Impl() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (fwd != nullptr) fftw_destroy_plan(fwd);
        if (bwd != nullptr) fftw_destroy_plan(bwd);
        fftw_free(in);
        fftw_free(out);
    }

    void execute(fftw_plan plan, std::span<const cxd> src, std::span<cxd> dst) {
        // std::complex<double> is layout-compatible with fftw_complex.
        std::memcpy(static_cast<void*>(in), src.data(), size * sizeof(cxd));
        fftw_execute(plan);
        std::memcpy(static_cast<void*>(dst.data()), out, size * sizeof(cxd));
    }
};

SpectrumWorkspace::SpectrumWorkspace(std::size_t n) : n_(n) {
    if (n < 1) {
        throw ConfigError("workspace length must be >= 1");
    }
    if (n > (1u << 24)) {
        throw ConfigError("workspace length is implausibly large");
    }
    impl_ = std::make_unique<Impl>(2 * n);
}

SpectrumWorkspace::~SpectrumWorkspace() = default;
SpectrumWorkspace::SpectrumWorkspace(SpectrumWorkspace&&) noexcept = default;
SpectrumWorkspace& SpectrumWorkspace::operator=(SpectrumWorkspace&&) noexcept =
    default;

void SpectrumWorkspace::forward(std::span<const cxd> in, std::span<cxd> out) {
    if (in.size() != transform_size() || out.size() != transform_size()) {
        throw ConfigError("forward(): span size must equal the transform size");
    }
    impl_->execute(impl_->fwd, in, out);
    ++count_;
}

void SpectrumWorkspace::adjoint(std::span<const cxd> in, std::span<cxd> out) {
    if (in.size() != transform_size() || out.size() != transform_size()) {
        throw ConfigError("adjoint(): span size must equal the transform size");
    }
    impl_->execute(impl_->bwd, in, out);
    ++count_;
}

std::span<cxd> SpectrumWorkspace::scratch(std::size_t slot) {
    if (slot >= impl_->scratch.size()) {
        throw ConfigError("scratch slot out of range");
    }
    return impl_->scratch[slot];
}

// ---------------------------------------------------------------------------
// Residue policy
// ---------------------------------------------------------------------------

std::vector<double> real_part_checked(std::span<const cxd> v, double scale,
                                      const char* what) {
    const double limit = 1e-8 * std::max(scale, 1.0);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double im = std::abs(v[i].imag());
        if (!(im < limit)) {
            std::ostringstream msg;
            msg << what << ": imaginary residue " << im
                << " exceeds threshold " << limit << " at index " << i;
            throw NumericalConsistencyError(msg.str());
        }
        out[i] = v[i].real();
    }
    return out;
}

// ---------------------------------------------------------------------------
// Autocorrelation
// ---------------------------------------------------------------------------

namespace {

constexpr double kStructuralZeroTol = 1e-9;
constexpr double kLagZeroTol = 1e-9;

void check_full_correlation(std::span<const cxd> rfull, std::size_t n,
                            bool unit_modulus_input) {
    const cxd r0 = rfull[0];
    if (!(std::abs(r0.imag()) < 1e-8 * static_cast<double>(n))) {
        throw NumericalConsistencyError(
            "autocorrelation: lag-0 value has a non-real residue");
    }
    if (unit_modulus_input &&
        std::abs(r0.real() - static_cast<double>(n)) > kLagZeroTol) {
        throw NumericalConsistencyError(
            "autocorrelation: lag-0 value does not equal the sequence length");
    }
    if (std::abs(rfull[n]) > kStructuralZeroTol) {
        throw NumericalConsistencyError(
            "autocorrelation: structural zero at position N exceeds 1e-9");
    }
}

} // namespace

void transform_and_autocorr(std::span<const cxd> x, SpectrumWorkspace& ws,
                            std::span<cxd> f_out, std::span<cxd> rfull_out) {
    const std::size_t n = ws.seq_length();
    const std::size_t size = ws.transform_size();
    if (x.size() != n) {
        throw ConfigError("transform_and_autocorr(): input length mismatch");
    }
    if (f_out.size() != size || rfull_out.size() != size) {
        throw ConfigError("transform_and_autocorr(): output span size mismatch");
    }

    // f = F [x; 0]
    std::span<cxd> padded = ws.scratch(3);
    std::copy(x.begin(), x.end(), padded.begin());
    std::fill(padded.begin() + static_cast<std::ptrdiff_t>(n), padded.end(),
              cxd(0.0, 0.0));
    ws.forward(padded, f_out);

    // r = (1/2N) F^H |f|^2
    for (std::size_t m = 0; m < size; ++m) {
        rfull_out[m] = cxd(std::norm(f_out[m]), 0.0);
    }
    ws.adjoint(rfull_out, rfull_out);
    const double inv = 1.0 / static_cast<double>(size);
    for (std::size_t m = 0; m < size; ++m) {
        rfull_out[m] *= inv;
    }

    check_full_correlation(rfull_out, n, /*unit_modulus_input=*/true);
}

CorrelationProfile autocorrelation(std::span<const cxd> x,
                                   SpectrumWorkspace& ws) {
    const std::size_t n = ws.seq_length();
    std::vector<cxd> f(ws.transform_size());
    std::vector<cxd> rfull(ws.transform_size());
    transform_and_autocorr(x, ws, f, rfull);

    CorrelationProfile profile;
    profile.r.assign(rfull.begin(), rfull.begin() + static_cast<std::ptrdiff_t>(n));
    profile.r[0] = cxd(profile.r[0].real(), 0.0);
    return profile;
}

CorrelationProfile autocorrelation(const UnitModulusSequence& seq,
                                   SpectrumWorkspace& ws) {
    if (seq.length() != ws.seq_length()) {
        throw ConfigError("autocorrelation(): workspace length mismatch");
    }
    return autocorrelation(std::span<const cxd>(to_complex(seq)), ws);
}

CorrelationProfile autocorrelation(const UnitModulusSequence& seq) {
    SpectrumWorkspace ws(seq.length());
    return autocorrelation(seq, ws);
}

CorrelationProfile autocorr_direct(std::span<const cxd> x) {
    const std::size_t n = x.size();
    CorrelationProfile profile;
    profile.r.assign(n, cxd(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        cxd acc(0.0, 0.0);
        for (std::size_t i = 0; i + k < n; ++i) {
            acc += std::conj(x[i]) * x[i + k];
        }
        profile.r[k] = acc;
    }
    return profile;
}

CorrelationProfile autocorr_direct(const UnitModulusSequence& seq) {
    return autocorr_direct(std::span<const cxd>(to_complex(seq)));
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

double isl(const CorrelationProfile& profile) {
    double acc = 0.0;
    for (std::size_t k = 1; k < profile.length(); ++k) {
        acc += std::norm(profile.r[k]);
    }
    return acc;
}

double psl(const CorrelationProfile& profile) {
    double peak = 0.0;
    for (std::size_t k = 1; k < profile.length(); ++k) {
        peak = std::max(peak, std::abs(profile.r[k]));
    }
    return peak;
}

double wisl(const CorrelationProfile& profile, const WeightVector& weights) {
    if (weights.lags() + 1 != profile.length()) {
        throw ConfigError("wisl(): weight count must be N-1");
    }
    double acc = 0.0;
    for (std::size_t k = 1; k < profile.length(); ++k) {
        acc += weights.w[k - 1] * std::norm(profile.r[k]);
    }
    return acc;
}

double lp_metric(const CorrelationProfile& profile, double p) {
    if (!(p >= 2.0)) {
        throw ConfigError("lp_metric(): p must be >= 2");
    }
    double peak = psl(profile);
    if (peak == 0.0) {
        return 0.0;
    }
    // Scaled form: peak * (sum (|r_k|/peak)^p)^(1/p). Ratios are <= 1, so
    // arbitrarily large p underflows instead of overflowing.
    double acc = 0.0;
    for (std::size_t k = 1; k < profile.length(); ++k) {
        const double ratio = std::abs(profile.r[k]) / peak;
        if (ratio > 0.0) {
            acc += std::pow(ratio, p);
        }
    }
    return peak * std::pow(acc, 1.0 / p);
}

std::vector<double> correlation_level_db(const CorrelationProfile& profile,
                                         double floor_db) {
    const std::size_t n = profile.length();
    const double r0 = std::abs(profile.r[0]);
    if (r0 == 0.0) {
        throw ConfigError("correlation_level_db(): lag-0 value is zero");
    }
    std::vector<double> level(2 * n - 1, floor_db);
    for (std::size_t k = 0; k < n; ++k) {
        const double mag = std::abs(profile.r[k]);
        double db = floor_db;
        if (mag > 0.0) {
            db = std::max(20.0 * std::log10(mag / r0), floor_db);
        }
        level[(n - 1) + k] = db;
        level[(n - 1) - k] = db;
    }
    return level;
}

} // namespace seqforge
