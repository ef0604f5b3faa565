#include "seqforge/oracle.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "seqforge/errors.hpp"

namespace seqforge::oracle {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Relative gap below which the closed-form curvature of the tangent
// quadratic is evaluated as its g -> 0 limit. The literal numerator cancels
// to O(g^2) against terms of size O(p), so double precision loses it near
// the peak; quad precision pushes the usable range down to roughly this
// cutoff, and below it the limit value carries the smaller error.
double curvature_gap_cutoff(double p) {
    return 1e-11 * std::pow(p, -2.0 / 3.0);
}

// (t^p - x0^p - p x0^(p-1) (t - x0)) / (t - x0)^2 in quad precision. Inputs
// are doubles, so products and differences of them are exact in quad; the
// only rounding left is powq itself.
double curvature_literal(double x0, double t, double p) {
    const __float128 tq = t;
    const __float128 xq = x0;
    const __float128 pq = p;
    const __float128 gq = tq - xq;
    const __float128 num =
        powq(tq, pq) - powq(xq, pq) - pq * powq(xq, pq - 1) * gq;
    return static_cast<double>(num / (gq * gq));
}

std::vector<double> real_checked(std::span<const cxd> v, double scale,
                                 const char* what) {
    const double limit = 1e-8 * std::max(scale, 1.0);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(std::abs(v[i].imag()) < limit)) {
            throw NumericalConsistencyError(
                std::string(what) + ": imaginary residue exceeds threshold");
        }
        out[i] = v[i].real();
    }
    return out;
}

struct ParityBounds {
    double upper; // (max over even indices + max over odd indices) / 2
    double lower; // same with minima
};

ParityBounds parity_bounds(std::span<const double> mu) {
    double max_e = mu[0], min_e = mu[0], max_o = mu[1], min_o = mu[1];
    for (std::size_t i = 0; i < mu.size(); ++i) {
        double& mx = i % 2 == 0 ? max_e : max_o;
        double& mn = i % 2 == 0 ? min_e : min_o;
        mx = std::max(mx, mu[i]);
        mn = std::min(mn, mu[i]);
    }
    return ParityBounds{0.5 * (max_e + max_o), 0.5 * (min_e + min_o)};
}

std::vector<cxd> project_onto_circle(std::span<const cxd> y,
                                     std::span<const cxd> reference) {
    std::vector<cxd> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double mag = std::abs(y[i]);
        out[i] = mag > 0.0 ? y[i] / mag : reference[i];
    }
    return out;
}

// Circulant first column [0, w_1 r_1, .., w_{N-1} r_{N-1}, 0, conj mirror];
// reused by the step references to reach the parity bound spectrum.
std::vector<cxd> weighted_column(const CorrelationProfile& profile,
                                 std::span<const double> lag_weights) {
    const std::size_t n = profile.r.size();
    std::vector<cxd> c(2 * n, cxd(0.0, 0.0));
    for (std::size_t k = 1; k < n; ++k) {
        c[k] = lag_weights[k - 1] * profile.r[k];
        c[2 * n - k] = lag_weights[k - 1] * std::conj(profile.r[k]);
    }
    return c;
}

std::vector<double> column_spectrum(std::span<const cxd> column,
                                    const char* what) {
    const DenseMatrix f = dft_matrix(column.size());
    double scale = 0.0;
    for (const cxd& v : column) {
        scale += std::abs(v);
    }
    return real_checked(matvec(f, column),
                        std::max(scale, static_cast<double>(column.size() / 2)),
                        what);
}

} // namespace

DenseMatrix identity(std::size_t n) {
    DenseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a.at(i, i) = cxd(1.0, 0.0);
    }
    return a;
}

DenseMatrix dft_matrix(std::size_t size) {
    DenseMatrix f(size, size);
    for (std::size_t m = 0; m < size; ++m) {
        for (std::size_t n = 0; n < size; ++n) {
            const std::size_t phase_index = (m * n) % size;
            f.at(m, n) = std::polar(
                1.0, -2.0 * kPi * static_cast<double>(phase_index) /
                         static_cast<double>(size));
        }
    }
    return f;
}

DenseMatrix circulant(std::span<const cxd> first_column) {
    const std::size_t n = first_column.size();
    DenseMatrix c(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            c.at(i, j) = first_column[(i + n - j) % n];
        }
    }
    return c;
}

std::vector<cxd> matvec(const DenseMatrix& a, std::span<const cxd> x) {
    if (a.cols != x.size()) {
        throw ConfigError("matvec(): dimension mismatch");
    }
    std::vector<cxd> y(a.rows, cxd(0.0, 0.0));
    for (std::size_t i = 0; i < a.rows; ++i) {
        cxd acc(0.0, 0.0);
        for (std::size_t j = 0; j < a.cols; ++j) {
            acc += a.at(i, j) * x[j];
        }
        y[i] = acc;
    }
    return y;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows) {
        throw ConfigError("multiply(): dimension mismatch");
    }
    DenseMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const cxd aik = a.at(i, k);
            if (aik == cxd(0.0, 0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols; ++j) {
                c.at(i, j) += aik * b.at(k, j);
            }
        }
    }
    return c;
}

DenseMatrix adjoint(const DenseMatrix& a) {
    DenseMatrix b(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) {
            b.at(j, i) = std::conj(a.at(i, j));
        }
    }
    return b;
}

DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw ConfigError("hadamard(): dimension mismatch");
    }
    DenseMatrix c(a.rows, a.cols);
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        c.data[i] = a.data[i] * b.data[i];
    }
    return c;
}

bool is_hermitian(const DenseMatrix& a, double tol) {
    if (a.rows != a.cols) {
        return false;
    }
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = i; j < a.cols; ++j) {
            if (std::abs(a.at(i, j) - std::conj(a.at(j, i))) > tol) {
                return false;
            }
        }
    }
    return true;
}

double frobenius_norm(const DenseMatrix& a) {
    double acc = 0.0;
    for (const cxd& v : a.data) {
        acc += std::norm(v);
    }
    return std::sqrt(acc);
}

EigenDecomposition eig_hermitian_jacobi(DenseMatrix a) {
    const std::size_t n = a.rows;
    if (n == 0 || a.cols != n) {
        throw ConfigError("eig_hermitian_jacobi(): square input required");
    }
    const double norm = frobenius_norm(a);
    if (!is_hermitian(a, 1e-9 * std::max(norm, 1.0))) {
        throw NumericalConsistencyError(
            "eig_hermitian_jacobi(): input is not Hermitian");
    }
    DenseMatrix v = identity(n);

    bool converged = false;
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        double off2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    off2 += std::norm(a.at(i, j));
                }
            }
        }
        if (std::sqrt(off2) <= 1e-13 * std::max(norm, 1e-300)) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cxd g = a.at(p, q);
                const double absg = std::abs(g);
                if (absg == 0.0) {
                    continue;
                }
                const double tau =
                    (a.at(q, q).real() - a.at(p, p).real()) / (2.0 * absg);
                double tt;
                if (std::abs(tau) > 1e150) {
                    tt = 0.5 / tau;
                } else {
                    tt = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                }
                const double c = 1.0 / std::sqrt(1.0 + tt * tt);
                const double s = tt * c;
                const cxd phase = g / absg;
                const cxd phase_conj = std::conj(phase);

                // A <- U^H A with U = [[c, s e^{i phi}], [-s e^{-i phi}, c]]
                for (std::size_t j = 0; j < n; ++j) {
                    const cxd apj = a.at(p, j);
                    const cxd aqj = a.at(q, j);
                    a.at(p, j) = c * apj - s * phase * aqj;
                    a.at(q, j) = s * phase_conj * apj + c * aqj;
                }
                // A <- A U, V <- V U
                for (std::size_t i = 0; i < n; ++i) {
                    const cxd aip = a.at(i, p);
                    const cxd aiq = a.at(i, q);
                    a.at(i, p) = c * aip - s * phase_conj * aiq;
                    a.at(i, q) = s * phase * aip + c * aiq;

                    const cxd vip = v.at(i, p);
                    const cxd viq = v.at(i, q);
                    v.at(i, p) = c * vip - s * phase_conj * viq;
                    v.at(i, q) = s * phase * vip + c * viq;
                }
            }
        }
    }
    if (!converged) {
        throw NumericalConsistencyError(
            "eig_hermitian_jacobi(): sweep budget exhausted");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a.at(i, i).real() < a.at(j, j).real();
    });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = DenseMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a.at(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors.at(i, j) = v.at(i, order[j]);
        }
    }
    return out;
}

DenseMatrix build_shift_u(std::size_t n, std::ptrdiff_t k) {
    if (static_cast<std::size_t>(std::abs(k)) >= n) {
        throw ConfigError("build_shift_u(): |k| must be below n");
    }
    DenseMatrix u(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) + k;
        if (j >= 0 && j < static_cast<std::ptrdiff_t>(n)) {
            u.at(i, static_cast<std::size_t>(j)) = cxd(1.0, 0.0);
        }
    }
    return u;
}

DenseMatrix build_l_dense(const WeightVector& weights, std::size_t n) {
    if (weights.lags() + 1 != n) {
        throw ConfigError("build_l_dense(): weight count must be n-1");
    }
    if (n > 8) {
        throw ConfigError("build_l_dense(): n above 8 is too large to expand");
    }
    DenseMatrix l(n * n, n * n);
    for (std::size_t a = 1; a < n; ++a) {
        for (const std::ptrdiff_t k :
             {static_cast<std::ptrdiff_t>(a), -static_cast<std::ptrdiff_t>(a)}) {
            const DenseMatrix u = build_shift_u(n, k);
            // vec() stacks columns: entry (i, j) lands at index j*n + i.
            std::vector<cxd> vec_u(n * n, cxd(0.0, 0.0));
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    vec_u[j * n + i] = u.at(i, j);
                }
            }
            for (std::size_t r = 0; r < n * n; ++r) {
                for (std::size_t c = 0; c < n * n; ++c) {
                    l.at(r, c) +=
                        weights.w[a - 1] * vec_u[r] * std::conj(vec_u[c]);
                }
            }
        }
    }
    return l;
}

DenseMatrix build_r_dense(const WeightVector& weights,
                          const CorrelationProfile& profile) {
    const std::size_t n = profile.r.size();
    if (weights.lags() + 1 != n) {
        throw ConfigError("build_r_dense(): weight count must be n-1");
    }
    DenseMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i > j) {
                r.at(i, j) = weights.w[i - j - 1] * profile.r[i - j];
            } else if (j > i) {
                r.at(i, j) = weights.w[j - i - 1] * std::conj(profile.r[j - i]);
            }
        }
    }
    return r;
}

DenseMatrix build_b_dense(const WeightVector& weights, std::size_t n) {
    if (weights.lags() + 1 != n) {
        throw ConfigError("build_b_dense(): weight count must be n-1");
    }
    DenseMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) {
                const std::size_t k = i > j ? i - j : j - i;
                b.at(i, j) = weights.w[k - 1] * static_cast<double>(n - k);
            }
        }
    }
    return b;
}

double diag_dominance_margin(const DenseMatrix& l) {
    if (l.rows != l.cols) {
        throw ConfigError("diag_dominance_margin(): square input required");
    }
    DenseMatrix m(l.rows, l.rows);
    for (std::size_t i = 0; i < l.rows; ++i) {
        cxd row_sum(0.0, 0.0);
        for (std::size_t j = 0; j < l.cols; ++j) {
            row_sum += l.at(i, j);
            m.at(i, j) = -l.at(i, j);
        }
        m.at(i, i) += row_sum;
    }
    return eig_hermitian_jacobi(m).values.front();
}

double hadamard_diag_identity_gap(const DenseMatrix& a, const DenseMatrix& b,
                                  std::span<const cxd> x) {
    const std::vector<cxd> lhs = matvec(hadamard(a, b), x);

    DenseMatrix diag_x(x.size(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        diag_x.at(i, i) = x[i];
    }
    DenseMatrix b_t(b.cols, b.rows);
    for (std::size_t i = 0; i < b.rows; ++i) {
        for (std::size_t j = 0; j < b.cols; ++j) {
            b_t.at(j, i) = b.at(i, j);
        }
    }
    const DenseMatrix product = multiply(multiply(a, diag_x), b_t);

    double gap = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        gap = std::max(gap, std::abs(lhs[i] - product.at(i, i)));
    }
    return gap;
}

double eigset_match_under_unimodular_hadamard(const DenseMatrix& b,
                                              std::span<const cxd> x) {
    if (b.rows != x.size()) {
        throw ConfigError("eigset match: dimension mismatch");
    }
    DenseMatrix outer(x.size(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            outer.at(i, j) = x[i] * std::conj(x[j]);
        }
    }
    const std::vector<double> base = eig_hermitian_jacobi(b).values;
    const std::vector<double> hd = eig_hermitian_jacobi(hadamard(b, outer)).values;
    double gap = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        gap = std::max(gap, std::abs(base[i] - hd[i]));
    }
    return gap;
}

QuadMajorizer majorizer_quadratic(double x0, double t, double p) {
    if (!(t > 0.0) || !(p >= 2.0) || !(x0 >= 0.0) || !(x0 <= t)) {
        throw ConfigError("majorizer_quadratic(): need 0 <= x0 <= t, p >= 2");
    }
    QuadMajorizer q;
    const double gap = t - x0;
    if (gap < curvature_gap_cutoff(p) * t) {
        q.a = 0.5 * p * (p - 1.0) * std::pow(t, p - 2.0);
    } else {
        q.a = curvature_literal(x0, t, p);
    }
    q.linear = p * std::pow(x0, p - 1.0) - 2.0 * q.a * x0;
    q.constant = q.a * x0 * x0 - (p - 1.0) * std::pow(x0, p);
    return q;
}

std::vector<double> wisl_phase_gradient_fd(const UnitModulusSequence& seq,
                                           const WeightVector& weights,
                                           double h) {
    if (!(h > 0.0)) {
        throw ConfigError("wisl_phase_gradient_fd(): h must be positive");
    }
    const std::size_t n = seq.length();
    std::vector<double> grad(n);
    UnitModulusSequence bumped = seq;
    for (std::size_t i = 0; i < n; ++i) {
        const double saved = bumped.phases[i];
        bumped.phases[i] = saved + h;
        const double up = wisl(autocorr_direct(bumped), weights);
        bumped.phases[i] = saved - h;
        const double down = wisl(autocorr_direct(bumped), weights);
        bumped.phases[i] = saved;
        grad[i] = (up - down) / (2.0 * h);
    }
    return grad;
}

std::vector<cxd> dense_mwisl_step(std::span<const cxd> x,
                                  const WeightVector& weights) {
    const std::size_t n = x.size();
    if (weights.lags() + 1 != n || !any_positive(weights)) {
        throw ConfigError("dense_mwisl_step(): bad weights");
    }
    const CorrelationProfile profile = autocorr_direct(x);

    double lambda_l = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        lambda_l = std::max(lambda_l,
                            weights.w[k - 1] * static_cast<double>(n - k));
    }
    const std::vector<double> mu =
        column_spectrum(weighted_column(profile, weights.w), "dense mwisl mu");
    const double lambda_u = parity_bounds(mu).upper;

    const std::vector<cxd> rx = matvec(build_r_dense(weights, profile), x);
    const double denom = lambda_l * static_cast<double>(n) + lambda_u;
    std::vector<cxd> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = x[i] - rx[i] / denom;
    }
    return project_onto_circle(y, x);
}

std::vector<cxd> dense_mwisl_diag_step(std::span<const cxd> x,
                                       const WeightVector& weights) {
    const std::size_t n = x.size();
    if (weights.lags() + 1 != n || !any_positive(weights)) {
        throw ConfigError("dense_mwisl_diag_step(): bad weights");
    }
    const CorrelationProfile profile = autocorr_direct(x);

    std::vector<cxd> wt(2 * n, cxd(0.0, 0.0));
    for (std::size_t k = 1; k < n; ++k) {
        const double v = weights.w[k - 1] * static_cast<double>(n - k);
        wt[k] = cxd(v, 0.0);
        wt[2 * n - k] = cxd(v, 0.0);
    }
    const double lambda_b = parity_bounds(column_spectrum(wt, "dense nu")).lower;

    const std::vector<double> mu =
        column_spectrum(weighted_column(profile, weights.w), "dense diag mu");
    const double lambda_u = parity_bounds(mu).upper;

    const std::vector<cxd> ones(n, cxd(1.0, 0.0));
    const std::vector<cxd> p_vec = matvec(build_b_dense(weights, n), ones);
    const std::vector<cxd> rx = matvec(build_r_dense(weights, profile), x);

    const double gap = lambda_u - lambda_b;
    std::vector<cxd> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = x[i] + (p_vec[i].real() * x[i] - rx[i]) / gap;
    }
    return project_onto_circle(y, x);
}

std::vector<cxd> dense_mm_psl_step(std::span<const cxd> x, double p) {
    const std::size_t n = x.size();
    if (n < 2) {
        throw ConfigError("dense_mm_psl_step(): n must be at least 2");
    }
    const CorrelationProfile profile = autocorr_direct(x);

    double peak = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        peak = std::max(peak, std::abs(profile.r[k]));
    }
    if (peak == 0.0) {
        return std::vector<cxd>(x.begin(), x.end());
    }
    double acc = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double m = std::abs(profile.r[k]);
        if (m > 0.0) {
            acc += std::pow(m / peak, p);
        }
    }
    const double t = peak * std::pow(acc, 1.0 / p);

    std::vector<double> w_hat(n - 1);
    double lambda_l = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double m = std::abs(profile.r[k]);
        const double u = std::min(m / t, 1.0);
        double a;
        if (1.0 - u < curvature_gap_cutoff(p)) {
            a = 0.5 * p * (p - 1.0) / (t * t) * std::pow(u, p - 2.0);
        } else {
            a = curvature_literal(u, 1.0, p) / (t * t);
        }
        w_hat[k - 1] = 0.5 * p / (t * t) * std::pow(u, p - 2.0);
        lambda_l = std::max(lambda_l, a * static_cast<double>(n - k));
    }

    const std::vector<double> mu =
        column_spectrum(weighted_column(profile, w_hat), "dense psl mu");
    const double lambda_u = parity_bounds(mu).upper;

    WeightVector hat;
    hat.w = w_hat;
    const std::vector<cxd> rx = matvec(build_r_dense(hat, profile), x);
    const double denom = lambda_l * static_cast<double>(n) + lambda_u;
    std::vector<cxd> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = x[i] - rx[i] / denom;
    }
    return project_onto_circle(y, x);
}

} // namespace seqforge::oracle
