#pragma once

#include <complex>
#include <span>
#include <vector>

#include "seqforge/corr.hpp"

namespace seqforge {

/// Hermitian Toeplitz matrix described by its first column t[0..N-1];
/// t[0] must be real (the diagonal).
struct HermitianToeplitzSpec {
    std::vector<cxd> t;

    std::size_t order() const { return t.size(); }
};

/// Validates t[0] real (residue < 1e-12 * sum |t_k| tolerated and truncated)
/// and order >= 1.
HermitianToeplitzSpec make_toeplitz(std::vector<cxd> t);

/// First column of the 2N circulant that embeds the Toeplitz matrix:
/// [t_0, t_1, .., t_{N-1}, 0, conj(t_{N-1}), .., conj(t_1)].
std::vector<cxd> embed_first_column(const HermitianToeplitzSpec& spec);

/// Real circulant eigenvalue vector mu = F * embed_first_column(spec),
/// length 2N. Mathematically real by conjugate symmetry of the embedding;
/// checked with the residue policy at scale sum |t_k|.
struct ToeplitzSpectrum {
    std::vector<double> mu;

    std::size_t transform_size() const { return mu.size(); }
};

ToeplitzSpectrum circulant_spectrum(const HermitianToeplitzSpec& spec,
                                    SpectrumWorkspace& ws);

/// Parity-split bounds on the extreme eigenvalues of the Toeplitz matrix.
/// With 0-based storage of mu, the upper bound is
/// (max over even indices + max over odd indices) / 2 and the lower bound the
/// same with minima. Both are tight for e.g. the identity and the exchange
/// matrix; dense-eigensolver tests pin the index mapping.
double parity_bound_upper(std::span<const double> mu);
double parity_bound_lower(std::span<const double> mu);

double eig_upper_bound(const ToeplitzSpectrum& spectrum);
double eig_lower_bound(const ToeplitzSpectrum& spectrum);

/// O(N log N) Toeplitz mat-vec through the circulant embedding: pad x with N
/// zeros, multiply the spectrum in, transform back, keep the first N entries
/// scaled by 1/(2N).
std::vector<cxd> toeplitz_matvec(const HermitianToeplitzSpec& spec,
                                 std::span<const cxd> x, SpectrumWorkspace& ws);
std::vector<cxd> toeplitz_matvec(const ToeplitzSpectrum& spectrum,
                                 std::span<const cxd> x, SpectrumWorkspace& ws);

} // namespace seqforge
