#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "seqforge/corr.hpp"

// Dense reference implementations used only by tests. Everything here is
// written at the matrix-definition level (explicit DFT matrices, explicit
// shift matrices, O(N^2)+ arithmetic) so the fast transform-based paths can
// be checked against code that shares none of their machinery.

namespace seqforge::oracle {

struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<cxd> data; // row-major

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c)
        : rows(r), cols(c), data(r * c, cxd(0.0, 0.0)) {}

    cxd& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    const cxd& at(std::size_t i, std::size_t j) const {
        return data[i * cols + j];
    }
};

DenseMatrix identity(std::size_t n);

/// F with entries exp(-i 2 pi m n / size); unnormalized, matching the
/// workspace's forward transform.
DenseMatrix dft_matrix(std::size_t size);

/// Circulant matrix with the given first column: C(i, j) = c[(i - j) mod n].
DenseMatrix circulant(std::span<const cxd> first_column);

std::vector<cxd> matvec(const DenseMatrix& a, std::span<const cxd> x);
DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix adjoint(const DenseMatrix& a);
DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b);
bool is_hermitian(const DenseMatrix& a, double tol);
double frobenius_norm(const DenseMatrix& a);

struct EigenDecomposition {
    std::vector<double> values; // ascending
    DenseMatrix vectors;        // column j pairs with values[j]
};

/// Cyclic complex Jacobi for Hermitian input. Throws
/// NumericalConsistencyError when the input is not Hermitian or the sweep
/// budget runs out before the off-diagonal mass is negligible.
EigenDecomposition eig_hermitian_jacobi(DenseMatrix a);

/// Shift matrix with ones where column = row + k; k may be negative.
/// x^H U_k x is the lag-k aperiodic autocorrelation.
DenseMatrix build_shift_u(std::size_t n, std::ptrdiff_t k);

/// Quadratic-form matrix of the weighted ISL in vec(x x^H) coordinates:
/// sum over k != 0 of w_|k| vec(U_k) vec(U_k)^H. Dimension n^2 grows fast,
/// so lengths above 8 are rejected.
DenseMatrix build_l_dense(const WeightVector& weights, std::size_t n);

/// Weighted correlation Toeplitz matrix: sum over k != 0 of
/// w_|k| r_{-k} U_k, with r taken from the supplied profile.
DenseMatrix build_r_dense(const WeightVector& weights,
                          const CorrelationProfile& profile);

/// Lag-mass Toeplitz matrix: sum over k != 0 of w_|k| (n - |k|) U_k.
DenseMatrix build_b_dense(const WeightVector& weights, std::size_t n);

/// Smallest eigenvalue of Diag(L 1) - L; nonnegative (up to roundoff) for
/// any entrywise-nonnegative Hermitian L.
double diag_dominance_margin(const DenseMatrix& l);

/// Max abs difference between (A o B) x and diag(A Diag(x) B^T).
double hadamard_diag_identity_gap(const DenseMatrix& a, const DenseMatrix& b,
                                  std::span<const cxd> x);

/// Max abs difference between the sorted spectra of Hermitian b and
/// b o (x x^H) for unit-modulus x: equal because the Hadamard factor is a
/// unitary diagonal similarity.
double eigset_match_under_unimodular_hadamard(const DenseMatrix& b,
                                              std::span<const cxd> x);

/// Coefficients of the quadratic a u^2 + linear u + constant that touches
/// u^p at u = x0 and dominates it on [0, t].
struct QuadMajorizer {
    double a = 0.0;
    double linear = 0.0;
    double constant = 0.0;
};

QuadMajorizer majorizer_quadratic(double x0, double t, double p);

/// Central-difference gradient of the weighted ISL with respect to the
/// phases, using the direct O(N^2) correlation.
std::vector<double> wisl_phase_gradient_fd(const UnitModulusSequence& seq,
                                           const WeightVector& weights,
                                           double h = 1e-6);

// One-iteration references for the three step maps, written from the update
// equations with dense matrices and the direct correlation.
std::vector<cxd> dense_mwisl_step(std::span<const cxd> x,
                                  const WeightVector& weights);
std::vector<cxd> dense_mwisl_diag_step(std::span<const cxd> x,
                                       const WeightVector& weights);
std::vector<cxd> dense_mm_psl_step(std::span<const cxd> x, double p);

} // namespace seqforge::oracle
