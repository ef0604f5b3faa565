#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqforge/accel.hpp"
#include "seqforge/corr.hpp"

namespace seqforge {

// ---------------------------------------------------------------------------
// Step maps
// ---------------------------------------------------------------------------

struct StepResult {
    std::vector<cxd> next;  ///< projected next iterate
    double objective;       ///< objective at the *input* iterate
    double lambda_u;        ///< parity upper bound used in the denominator
};

/// Largest eigenvalue of the weighted lag-mass quadratic-form matrix, in
/// closed form: max_k w_k * (N - k) over lags 1..N-1. Errors if no weight is
/// positive (the surrogate curvature would vanish).
double lambda_max_L(const WeightVector& weights, std::size_t n);

/// One weighted-ISL minimization step. Four transforms: padded spectrum,
/// correlation, circulant spectrum of the weighted correlation column, and
/// the adjoint that applies the Toeplitz quadratic-term product. The shift
/// y = x - F^H_{:,1:N}(mu .* f) / (2N (lambda_L * N + lambda_u)) is projected
/// elementwise onto the unit circle; zero entries keep their input sample.
StepResult mwisl_step(std::span<const cxd> x, const WeightVector& weights,
                      double lambda_L, SpectrumWorkspace& ws);

/// One-time setup for the diagonal-majorizer variant: p_vec is the row-sum
/// vector B*1 of the lag-mass Toeplitz matrix B = sum_k w_k (N-|k|) U_k
/// (computed spectrally, three transforms), and lambda_B is the parity lower
/// bound on B's eigenvalues.
struct DiagPrecompute {
    std::vector<double> p_vec;
    double lambda_B = 0.0;
};

DiagPrecompute precompute_diag(const WeightVector& weights, std::size_t n,
                               SpectrumWorkspace& ws);

/// One diagonal-majorizer weighted-ISL step, also exactly four transforms:
/// y = x + (p_vec .* x - R x) / (lambda_u - lambda_B), projected.
StepResult mwisl_diag_step(std::span<const cxd> x, const WeightVector& weights,
                           const DiagPrecompute& pre, SpectrumWorkspace& ws);

/// Coefficients of the two-stage lp majorization at the current correlation
/// magnitudes (all normalized by t^p so huge p stays in range):
///   a[k-1]     quadratic coefficient of the scalar majorizer at lag k
///   b[k-1]     linear coefficient (<= 0)
///   w_hat[k-1] equivalent per-lag weight a + b/(2|r_k|) = (p/2)|r_k|^{p-2}/t^p
///   t          rooted lp value of the sidelobes (0 when all vanish)
///   lambda_L   max_k a[k-1] * (N - k)
/// Near the singular point |r_k| -> t the quadratic coefficient switches to
/// its analytic limit p(p-1)/(2 t^2) * (|r_k|/t)^{p-2} (relative gap 1e-12).
struct MajorizerCoefficients {
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> w_hat;
    double t = 0.0;
    double lambda_L = 0.0;
};

MajorizerCoefficients psl_majorizer(std::span<const double> sidelobe_mags,
                                    double p);

/// One lp-metric (PSL surrogate) minimization step with exponent p >= 2.
/// Four transforms. If every sidelobe is exactly zero the input is already
/// optimal and is returned unchanged with objective 0. With p = 2 the
/// iterates coincide with unit-weight mwisl_step ones (the shift only scales).
StepResult mm_psl_step(std::span<const cxd> x, double p, SpectrumWorkspace& ws);

// ---------------------------------------------------------------------------
// Outer driver
// ---------------------------------------------------------------------------

enum class Method { mwisl, mwisl_diag, mm_psl, mm_psl_adaptive };
enum class InitKind { random, frank, golomb, file };

Method method_from_name(const std::string& name);        // ConfigError on junk
std::string method_name(Method method);
InitKind init_from_name(const std::string& name);
std::string init_name(InitKind init);

struct SolverConfig {
    Method method = Method::mwisl;
    std::size_t n = 0;
    WeightVector weights;                 ///< WISL methods; must be N-1 lags
    double p = 2.0;                       ///< fixed-p metric exponent
    std::vector<double> p_schedule =      ///< adaptive ladder 2^1 .. 2^13
        {2, 4, 8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096, 8192};
    /// Plain/fixed-p: total iteration cap. Adaptive: per-stage cap (the
    /// reported budget is 5000 per stage).
    std::size_t max_iter = 5000;
    /// Relative objective-change stop. Adaptive mode supersedes this with the
    /// per-stage rule 1e-5 / p.
    double rel_tol = 1e-10;
    /// Optional absolute objective floor: stop as soon as the objective falls
    /// to or below it. Ignored in adaptive mode.
    std::optional<double> abs_floor;
    bool accelerate = false;
    std::uint64_t seed = 0;
    InitKind init = InitKind::random;
    std::vector<double> init_phases;      ///< used when init == file
};

/// Objective trace and counters for one run. objective[i] is the value at
/// iterate i (index 0 = initial point), so the vector has iterations + 1
/// entries; cum_seconds and backtracks line up with it. In adaptive mode the
/// trace restarts criteria per stage: p_segments marks (p, first index) and
/// monotonicity holds within segments only.
struct ConvergenceRecord {
    std::vector<double> objective;
    std::vector<double> cum_seconds;
    std::vector<int> backtracks;
    std::vector<std::pair<double, std::size_t>> p_segments;
    std::size_t iterations = 0;    ///< accepted iterate advances
    double wall_seconds = 0.0;
    std::size_t map_calls = 0;     ///< step-map applications (incl. discarded)
    std::size_t total_backtracks = 0;
    std::size_t fallbacks = 0;     ///< halving-budget exhaustions
    double final_step_inf_norm = 0.0; ///< ||x_last - x_prev||_inf at the stop
    std::uint64_t transforms_total = 0;
    std::uint64_t transforms_in_steps = 0; ///< counted across step calls only
    std::string stop_reason;       ///< floor | rel_tol | max_iter | fixed_point
};

struct SolverOutput {
    UnitModulusSequence sequence;
    ConvergenceRecord record;
};

/// Full run: builds the initial sequence, iterates the configured step map
/// (optionally squared-extrapolation accelerated), applies the stopping rules
/// and returns the final sequence plus the trace. Deterministic given the
/// config.
SolverOutput run_solver(const SolverConfig& cfg);

} // namespace seqforge
