#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <vector>

#include "seqforge/corr.hpp"
#include "seqforge/errors.hpp"
#include "seqforge/oracle.hpp"
#include "seqforge/seqlib.hpp"
#include "seqforge/toeplitz.hpp"

using namespace seqforge;

namespace {

// Random Hermitian Toeplitz column: real t_0, arbitrary complex tail.
HermitianToeplitzSpec random_spec(std::size_t n, std::uint64_t seed) {
    const UnitModulusSequence a = random_unimodular(2 * n, seed);
    std::vector<cxd> t(n);
    t[0] = cxd(std::cos(a.phases[0]), 0.0);
    for (std::size_t k = 1; k < n; ++k) {
        t[k] = cxd(std::cos(a.phases[2 * k]), std::sin(a.phases[2 * k + 1]));
    }
    return make_toeplitz(std::move(t));
}

oracle::DenseMatrix dense_from(const HermitianToeplitzSpec& spec) {
    const std::size_t n = spec.order();
    oracle::DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m.at(i, j) = i >= j ? spec.t[i - j] : std::conj(spec.t[j - i]);
        }
    }
    return m;
}

} // namespace

TEST_CASE("embedding examples") {
    const auto check_embed = [](std::vector<cxd> t,
                                const std::vector<cxd>& expected) {
        const std::vector<cxd> c =
            embed_first_column(make_toeplitz(std::move(t)));
        REQUIRE(c.size() == expected.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK(std::abs(c[i] - expected[i]) == 0.0);
        }
    };
    check_embed({{1, 0}, {0, 0}, {0, 0}, {0, 0}},
                {{1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}});
    check_embed({{0, 0}, {1, 0}, {0, 0}, {0, 0}},
                {{0, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {1, 0}});
    check_embed({{2, 0}, {0, 1}}, {{2, 0}, {0, 1}, {0, 0}, {0, -1}});
}

TEST_CASE("make_toeplitz validates the diagonal") {
    CHECK_THROWS_AS(make_toeplitz({cxd(0.0, 1.0), cxd(1.0, 0.0)}), ConfigError);
    CHECK_THROWS_AS(make_toeplitz({}), ConfigError);
    // tiny imaginary residue is truncated, not rejected
    const HermitianToeplitzSpec spec =
        make_toeplitz({cxd(1.0, 1e-14), cxd(0.5, 0.5)});
    CHECK(spec.t[0].imag() == 0.0);
}

TEST_CASE("identity spectrum gives tight unit bounds") {
    const HermitianToeplitzSpec spec =
        make_toeplitz({{1, 0}, {0, 0}, {0, 0}, {0, 0}});
    SpectrumWorkspace ws(spec.order());
    const ToeplitzSpectrum spectrum = circulant_spectrum(spec, ws);
    REQUIRE(spectrum.mu.size() == 8);
    for (double mu : spectrum.mu) {
        CHECK(mu == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(eig_upper_bound(spectrum) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig_lower_bound(spectrum) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("exchange matrix bounds are tight at +-1") {
    // t = [0, 1]: T = [[0,1],[1,0]], eigenvalues -1 and 1. The embedding
    // spectrum is [2, 0, -2, 0], so a wrong parity split would report 2.
    const HermitianToeplitzSpec spec = make_toeplitz({{0, 0}, {1, 0}});
    SpectrumWorkspace ws(spec.order());
    const ToeplitzSpectrum spectrum = circulant_spectrum(spec, ws);
    REQUIRE(spectrum.mu.size() == 4);
    CHECK(spectrum.mu[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(spectrum.mu[2] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(eig_upper_bound(spectrum) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eig_lower_bound(spectrum) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("bounds bracket the dense spectrum across seeds") {
    for (const std::size_t n : {2u, 5u, 16u}) {
        SpectrumWorkspace ws(n);
        for (std::uint64_t seed = 0; seed < (n == 16 ? 1000u : 100u); ++seed) {
            const HermitianToeplitzSpec spec = random_spec(n, seed);
            const ToeplitzSpectrum spectrum = circulant_spectrum(spec, ws);
            const auto eig = oracle::eig_hermitian_jacobi(dense_from(spec));
            const double slack = 1e-9 * (1.0 + std::abs(eig.values.back()));
            CHECK(eig_upper_bound(spectrum) >= eig.values.back() - slack);
            CHECK(eig_lower_bound(spectrum) <= eig.values.front() + slack);
        }
    }
}

TEST_CASE("matvec identity and exchange examples") {
    SpectrumWorkspace ws(2);
    const HermitianToeplitzSpec exchange = make_toeplitz({{0, 0}, {1, 0}});
    const std::vector<cxd> x = {{0.3, -0.4}, {-1.5, 2.0}};
    const std::vector<cxd> swapped = toeplitz_matvec(exchange, x, ws);
    CHECK(std::abs(swapped[0] - x[1]) < 1e-12);
    CHECK(std::abs(swapped[1] - x[0]) < 1e-12);

    SpectrumWorkspace ws4(4);
    const HermitianToeplitzSpec ident =
        make_toeplitz({{1, 0}, {0, 0}, {0, 0}, {0, 0}});
    const std::vector<cxd> y = to_complex(random_unimodular(4, 5));
    const std::vector<cxd> same = toeplitz_matvec(ident, y, ws4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::abs(same[i] - y[i]) < 1e-12);
    }
}

TEST_CASE("matvec agrees with dense multiplication") {
    for (const std::size_t n : {3u, 17u, 128u}) {
        SpectrumWorkspace ws(n);
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const HermitianToeplitzSpec spec = random_spec(n, seed);
            std::vector<cxd> x(n);
            const UnitModulusSequence u = random_unimodular(2 * n, seed + 1000);
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = cxd(std::cos(u.phases[i]), std::sin(u.phases[n + i]));
            }
            const std::vector<cxd> fast = toeplitz_matvec(spec, x, ws);
            const std::vector<cxd> dense =
                oracle::matvec(dense_from(spec), x);
            double scale = 0.0, gap = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                scale = std::max(scale, std::abs(dense[i]));
                gap = std::max(gap, std::abs(fast[i] - dense[i]));
            }
            CHECK(gap <= 1e-10 * std::max(scale, 1.0) * n);
        }
    }
}

TEST_CASE("matvec is linear") {
    const std::size_t n = 24;
    SpectrumWorkspace ws(n);
    const HermitianToeplitzSpec spec = random_spec(n, 77);
    const ToeplitzSpectrum spectrum = circulant_spectrum(spec, ws);

    const std::vector<cxd> x = to_complex(random_unimodular(n, 1));
    const std::vector<cxd> y = to_complex(random_unimodular(n, 2));
    const cxd alpha(0.7, -1.1), beta(-0.2, 0.35);

    std::vector<cxd> combo(n);
    for (std::size_t i = 0; i < n; ++i) {
        combo[i] = alpha * x[i] + beta * y[i];
    }
    const std::vector<cxd> lhs = toeplitz_matvec(spectrum, combo, ws);
    const std::vector<cxd> tx = toeplitz_matvec(spectrum, x, ws);
    const std::vector<cxd> ty = toeplitz_matvec(spectrum, y, ws);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(lhs[i] - (alpha * tx[i] + beta * ty[i])) < 1e-10 * n);
    }
}

TEST_CASE("circulant embedding is diagonalized by the DFT") {
    for (const std::size_t n : {2u, 4u, 8u}) {
        const HermitianToeplitzSpec spec = random_spec(n, 31 + n);
        const std::vector<cxd> column = embed_first_column(spec);
        const std::size_t size = column.size();

        const oracle::DenseMatrix f = oracle::dft_matrix(size);
        const std::vector<cxd> mu = oracle::matvec(f, column);
        oracle::DenseMatrix diag(size, size);
        for (std::size_t i = 0; i < size; ++i) {
            diag.at(i, i) = mu[i];
        }
        oracle::DenseMatrix rebuilt =
            oracle::multiply(oracle::multiply(oracle::adjoint(f), diag), f);
        const double inv = 1.0 / static_cast<double>(size);
        const oracle::DenseMatrix direct = oracle::circulant(column);
        double gap = 0.0;
        for (std::size_t i = 0; i < size * size; ++i) {
            gap = std::max(gap,
                           std::abs(rebuilt.data[i] * inv - direct.data[i]));
        }
        CHECK(gap < 1e-10 * size);
    }
}

TEST_CASE("parity bound input validation") {
    std::vector<double> odd_len = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(parity_bound_upper(odd_len), ConfigError);
    std::vector<double> too_short = {1.0};
    CHECK_THROWS_AS(parity_bound_lower(too_short), ConfigError);
}
