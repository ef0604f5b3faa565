#include "seqforge/toeplitz.hpp"

#include <algorithm>
#include <cmath>

namespace seqforge {

namespace {

double abs_sum(std::span<const cxd> v) {
    double acc = 0.0;
    for (const cxd& z : v) {
        acc += std::abs(z);
    }
    return acc;
}

} // namespace

HermitianToeplitzSpec make_toeplitz(std::vector<cxd> t) {
    if (t.empty()) {
        throw ConfigError("toeplitz spec needs at least the diagonal entry");
    }
    const double scale = std::max(abs_sum(t), 1.0);
    if (std::abs(t[0].imag()) > 1e-12 * scale) {
        throw ConfigError("toeplitz diagonal entry must be real");
    }
    t[0] = cxd(t[0].real(), 0.0);
    return HermitianToeplitzSpec{std::move(t)};
}

std::vector<cxd> embed_first_column(const HermitianToeplitzSpec& spec) {
    const std::size_t n = spec.order();
    std::vector<cxd> c(2 * n, cxd(0.0, 0.0));
    c[0] = spec.t[0];
    for (std::size_t k = 1; k < n; ++k) {
        c[k] = spec.t[k];
        c[2 * n - k] = std::conj(spec.t[k]);
    }
    // c[n] stays zero: the embedding gap.
    return c;
}

ToeplitzSpectrum circulant_spectrum(const HermitianToeplitzSpec& spec,
                                    SpectrumWorkspace& ws) {
    if (ws.seq_length() != spec.order()) {
        throw ConfigError("circulant_spectrum(): workspace length mismatch");
    }
    const std::vector<cxd> c = embed_first_column(spec);
    std::vector<cxd> mu_c(c.size());
    ws.forward(c, mu_c);
    return ToeplitzSpectrum{
        real_part_checked(mu_c, abs_sum(spec.t), "circulant spectrum")};
}

double parity_bound_upper(std::span<const double> mu) {
    if (mu.size() < 2 || mu.size() % 2 != 0) {
        throw ConfigError("parity bounds need an even-length spectrum");
    }
    double even = mu[0];
    double odd = mu[1];
    for (std::size_t i = 2; i < mu.size(); i += 2) {
        even = std::max(even, mu[i]);
    }
    for (std::size_t i = 3; i < mu.size(); i += 2) {
        odd = std::max(odd, mu[i]);
    }
    return 0.5 * (even + odd);
}

double parity_bound_lower(std::span<const double> mu) {
    if (mu.size() < 2 || mu.size() % 2 != 0) {
        throw ConfigError("parity bounds need an even-length spectrum");
    }
    double even = mu[0];
    double odd = mu[1];
    for (std::size_t i = 2; i < mu.size(); i += 2) {
        even = std::min(even, mu[i]);
    }
    for (std::size_t i = 3; i < mu.size(); i += 2) {
        odd = std::min(odd, mu[i]);
    }
    return 0.5 * (even + odd);
}

double eig_upper_bound(const ToeplitzSpectrum& spectrum) {
    return parity_bound_upper(spectrum.mu);
}

double eig_lower_bound(const ToeplitzSpectrum& spectrum) {
    return parity_bound_lower(spectrum.mu);
}

std::vector<cxd> toeplitz_matvec(const ToeplitzSpectrum& spectrum,
                                 std::span<const cxd> x, SpectrumWorkspace& ws) {
    const std::size_t n = ws.seq_length();
    const std::size_t size = ws.transform_size();
    if (spectrum.mu.size() != size) {
        throw ConfigError("toeplitz_matvec(): spectrum size mismatch");
    }
    if (x.size() != n) {
        throw ConfigError("toeplitz_matvec(): vector length mismatch");
    }
    std::span<cxd> padded = ws.scratch(0);
    std::copy(x.begin(), x.end(), padded.begin());
    std::fill(padded.begin() + static_cast<std::ptrdiff_t>(n), padded.end(),
              cxd(0.0, 0.0));
    std::span<cxd> freq = ws.scratch(1);
    ws.forward(padded, freq);
    for (std::size_t m = 0; m < size; ++m) {
        freq[m] *= spectrum.mu[m];
    }
    ws.adjoint(freq, freq);
    const double inv = 1.0 / static_cast<double>(size);
    std::vector<cxd> result(n);
    for (std::size_t i = 0; i < n; ++i) {
        result[i] = freq[i] * inv;
    }
    return result;
}

std::vector<cxd> toeplitz_matvec(const HermitianToeplitzSpec& spec,
                                 std::span<const cxd> x, SpectrumWorkspace& ws) {
    return toeplitz_matvec(circulant_spectrum(spec, ws), x, ws);
}

} // namespace seqforge
