#include "seqforge/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "seqforge/seqlib.hpp"
#include "seqforge/toeplitz.hpp"

namespace seqforge {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
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

double wisl_from_rfull(std::span<const cxd> rfull, const WeightVector& w) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= w.lags(); ++k) {
        acc += w.w[k - 1] * std::norm(rfull[k]);
    }
    return acc;
}

// Weighted correlation column in circulant layout:
// [0, w_1 r_1, .., w_{N-1} r_{N-1}, 0, w_{N-1} r_{1-N}, .., w_1 r_{-1}].
// Returns sum |c| for the residue scale of the subsequent transform.
double build_weighted_column(std::span<const cxd> rfull,
                             std::span<const double> lag_weights,
                             std::span<cxd> c) {
    const std::size_t size = rfull.size();
    const std::size_t n = size / 2;
    c[0] = cxd(0.0, 0.0);
    c[n] = cxd(0.0, 0.0);
    double sum_abs = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        c[k] = lag_weights[k - 1] * rfull[k];
        c[size - k] = lag_weights[k - 1] * rfull[size - k];
        sum_abs += std::abs(c[k]) + std::abs(c[size - k]);
    }
    return sum_abs;
}

struct ParityExtrema {
    double max_even, max_odd, min_even, min_odd;
};

// Extracts the parity extrema of a mathematically-real spectrum, enforcing
// the imaginary-residue policy at the given scale.
ParityExtrema parity_extrema_checked(std::span<const cxd> mu, double scale,
                                     const char* what) {
    const double limit = 1e-8 * std::max(scale, 1.0);
    ParityExtrema e{mu[0].real(), mu[1].real(), mu[0].real(), mu[1].real()};
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (!(std::abs(mu[i].imag()) < limit)) {
            throw NumericalConsistencyError(
                std::string(what) + ": imaginary residue exceeds threshold");
        }
        const double v = mu[i].real();
        if (i % 2 == 0) {
            e.max_even = std::max(e.max_even, v);
            e.min_even = std::min(e.min_even, v);
        } else {
            e.max_odd = std::max(e.max_odd, v);
            e.min_odd = std::min(e.min_odd, v);
        }
    }
    return e;
}

} // namespace

// ---------------------------------------------------------------------------
// Step maps
// ---------------------------------------------------------------------------

double lambda_max_L(const WeightVector& weights, std::size_t n) {
    if (weights.lags() + 1 != n) {
        throw ConfigError("lambda_max_L(): weight count must be N-1");
    }
    if (!any_positive(weights)) {
        throw ConfigError("lambda_max_L(): at least one weight must be positive");
    }
    double best = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        best = std::max(best, weights.w[k - 1] * static_cast<double>(n - k));
    }
    return best;
}

StepResult mwisl_step(std::span<const cxd> x, const WeightVector& weights,
                      double lambda_L, SpectrumWorkspace& ws) {
    const std::size_t n = ws.seq_length();
    const std::size_t size = ws.transform_size();
    if (x.size() != n || weights.lags() + 1 != n) {
        throw ConfigError("mwisl_step(): length mismatch");
    }
    std::span<cxd> f = ws.scratch(0);
    std::span<cxd> rfull = ws.scratch(1);
    std::span<cxd> c = ws.scratch(2);

    transform_and_autocorr(x, ws, f, rfull);
    const double objective = wisl_from_rfull(rfull, weights);

    const double sum_abs_c = build_weighted_column(rfull, weights.w, c);
    ws.forward(c, c); // c now holds the real spectrum mu
    const ParityExtrema pe = parity_extrema_checked(
        c, std::max(static_cast<double>(n), sum_abs_c), "mwisl mu");
    const double lambda_u = 0.5 * (pe.max_even + pe.max_odd);

    const double denom =
        static_cast<double>(size) *
        (lambda_L * static_cast<double>(n) + lambda_u);
    if (!(denom > 0.0) || !std::isfinite(denom)) {
        throw NumericalConsistencyError("mwisl_step(): nonpositive shift scale");
    }

    for (std::size_t m = 0; m < size; ++m) {
        f[m] *= c[m].real();
    }
    ws.adjoint(f, f);

    std::vector<cxd> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = x[i] - f[i] / denom;
    }
    return StepResult{project_onto_circle(y, x), objective, lambda_u};
}

DiagPrecompute precompute_diag(const WeightVector& weights, std::size_t n,
                               SpectrumWorkspace& ws) {
    if (weights.lags() + 1 != n || ws.seq_length() != n) {
        throw ConfigError("precompute_diag(): length mismatch");
    }
    if (!any_positive(weights)) {
        throw ConfigError(
            "precompute_diag(): at least one weight must be positive");
    }
    const std::size_t size = 2 * n;

    // Circulant column of the lag-mass Toeplitz matrix B.
    std::vector<cxd> wt(size, cxd(0.0, 0.0));
    double scale = 0.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double v = weights.w[k - 1] * static_cast<double>(n - k);
        wt[k] = cxd(v, 0.0);
        wt[size - k] = cxd(v, 0.0);
        scale += 2.0 * std::abs(v);
    }
    std::vector<cxd> nu_c(size);
    ws.forward(wt, nu_c);
    const std::vector<double> nu = real_part_checked(nu_c, scale, "diag nu");

    DiagPrecompute pre;
    pre.lambda_B = parity_bound_lower(nu);

    // B*1 through the circulant: (1/2N) first N of F^H (nu .* F [1; 0]).
    std::vector<cxd> ones(size, cxd(0.0, 0.0));
    std::fill(ones.begin(), ones.begin() + static_cast<std::ptrdiff_t>(n),
              cxd(1.0, 0.0));
    ws.forward(ones, ones);
    for (std::size_t m = 0; m < size; ++m) {
        ones[m] *= nu[m];
    }
    ws.adjoint(ones, ones);
    const double inv = 1.0 / static_cast<double>(size);
    std::vector<cxd> pv(n);
    for (std::size_t i = 0; i < n; ++i) {
        pv[i] = ones[i] * inv;
    }
    pre.p_vec = real_part_checked(pv, scale, "diag row sums");
    return pre;
}

StepResult mwisl_diag_step(std::span<const cxd> x, const WeightVector& weights,
                           const DiagPrecompute& pre, SpectrumWorkspace& ws) {
    const std::size_t n = ws.seq_length();
    const std::size_t size = ws.transform_size();
    if (x.size() != n || weights.lags() + 1 != n || pre.p_vec.size() != n) {
        throw ConfigError("mwisl_diag_step(): length mismatch");
    }
    std::span<cxd> f = ws.scratch(0);
    std::span<cxd> rfull = ws.scratch(1);
    std::span<cxd> c = ws.scratch(2);

    transform_and_autocorr(x, ws, f, rfull);
    const double objective = wisl_from_rfull(rfull, weights);

    const double sum_abs_c = build_weighted_column(rfull, weights.w, c);
    ws.forward(c, c);
    const ParityExtrema pe = parity_extrema_checked(
        c, std::max(static_cast<double>(n), sum_abs_c), "mwisl-diag mu");
    const double lambda_u = 0.5 * (pe.max_even + pe.max_odd);

    const double gap = lambda_u - pre.lambda_B;
    if (!(gap > 0.0) || !std::isfinite(gap)) {
        throw NumericalConsistencyError(
            "mwisl_diag_step(): majorizer curvature gap is nonpositive");
    }

    for (std::size_t m = 0; m < size; ++m) {
        f[m] *= c[m].real();
    }
    ws.adjoint(f, f); // f now holds 2N * (R x) on the first N entries

    const double inv = 1.0 / static_cast<double>(size);
    std::vector<cxd> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = x[i] + (pre.p_vec[i] * x[i] - f[i] * inv) / gap;
    }
    return StepResult{project_onto_circle(y, x), objective, lambda_u};
}

MajorizerCoefficients psl_majorizer(std::span<const double> sidelobe_mags,
                                    double p) {
    if (!(p >= 2.0) || !std::isfinite(p)) {
        throw ConfigError("psl_majorizer(): p must be >= 2 and finite");
    }
    const std::size_t lags = sidelobe_mags.size();
    MajorizerCoefficients mc;
    mc.a.assign(lags, 0.0);
    mc.b.assign(lags, 0.0);
    mc.w_hat.assign(lags, 0.0);

    double peak = 0.0;
    for (double m : sidelobe_mags) {
        peak = std::max(peak, m);
    }
    if (peak == 0.0) {
        return mc; // t = 0: every sidelobe already vanished
    }
    double acc = 0.0;
    for (double m : sidelobe_mags) {
        if (m > 0.0) {
            acc += std::pow(m / peak, p);
        }
    }
    const double t = peak * std::pow(acc, 1.0 / p);
    mc.t = t;

    const double inv_t2 = 1.0 / (t * t);
    for (std::size_t i = 0; i < lags; ++i) {
        const double u = std::min(sidelobe_mags[i] / t, 1.0);
        const double g = 1.0 - u;
        // Scalar majorizer numerator n(u) = 1 + (p-1)u^p - p u^{p-1}
        //                                 = p(p-1) * I,  I = int_u^1 s^{p-2}(1-s) ds.
        // The literal form cancels catastrophically for small gaps, so near
        // u = 1 the integral is evaluated by its binomial series in g, which
        // reduces to the analytic limit p(p-1)/(2 t^2) as g -> 0.
        double a;
        if ((p - 2.0) * g <= 0.5 && g <= 0.5) {
            // I = sum_j C(p-2, j) (-1)^j g^{j+2} / (j+2); term ratio <= 1/2.
            double coef = 1.0;      // C(p-2, j) * (-g)^j
            double series = 0.5;    // accumulates I / g^2
            for (int j = 1; j <= 64; ++j) {
                coef *= -(p - 1.0 - static_cast<double>(j)) * g /
                        static_cast<double>(j);
                const double term = coef / static_cast<double>(j + 2);
                series += term;
                if (std::abs(term) < 1e-17 * std::abs(series)) {
                    break;
                }
            }
            a = p * (p - 1.0) * series * inv_t2;
        } else {
            const double num =
                1.0 + (p - 1.0) * std::pow(u, p) - p * std::pow(u, p - 1.0);
            a = num / (t * g) / (t * g);
        }
        const double u_pm1 = std::pow(u, p - 1.0);
        const double u_pm2 = std::pow(u, p - 2.0);
        mc.a[i] = a;
        mc.b[i] = p * u_pm1 / t - 2.0 * a * sidelobe_mags[i];
        mc.w_hat[i] = 0.5 * p * inv_t2 * u_pm2;
        const double lag_mass =
            a * static_cast<double>(lags - i); // (N - k) with k = i + 1
        mc.lambda_L = std::max(mc.lambda_L, lag_mass);
    }
    return mc;
}

StepResult mm_psl_step(std::span<const cxd> x, double p, SpectrumWorkspace& ws) {
    const std::size_t n = ws.seq_length();
    const std::size_t size = ws.transform_size();
    if (x.size() != n) {
        throw ConfigError("mm_psl_step(): length mismatch");
    }
    std::span<cxd> f = ws.scratch(0);
    std::span<cxd> rfull = ws.scratch(1);
    std::span<cxd> c = ws.scratch(2);

    transform_and_autocorr(x, ws, f, rfull);

    std::vector<double> mags(n - 1);
    for (std::size_t k = 1; k < n; ++k) {
        mags[k - 1] = std::abs(rfull[k]);
    }
    const MajorizerCoefficients mc = psl_majorizer(mags, p);
    if (mc.t == 0.0) {
        return StepResult{std::vector<cxd>(x.begin(), x.end()), 0.0, 0.0};
    }

    const double sum_abs_c = build_weighted_column(rfull, mc.w_hat, c);
    ws.forward(c, c);
    const ParityExtrema pe = parity_extrema_checked(
        c, std::max(static_cast<double>(n), sum_abs_c), "mm-psl mu");
    const double lambda_u = 0.5 * (pe.max_even + pe.max_odd);

    const double denom =
        static_cast<double>(size) *
        (mc.lambda_L * static_cast<double>(n) + lambda_u);
    if (!(denom > 0.0) || !std::isfinite(denom)) {
        throw NumericalConsistencyError("mm_psl_step(): nonpositive shift scale");
    }

    for (std::size_t m = 0; m < size; ++m) {
        f[m] *= c[m].real();
    }
    ws.adjoint(f, f);

    std::vector<cxd> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = x[i] - f[i] / denom;
    }
    return StepResult{project_onto_circle(y, x), mc.t, lambda_u};
}

// ---------------------------------------------------------------------------
// Outer driver
// ---------------------------------------------------------------------------

Method method_from_name(const std::string& name) {
    if (name == "mwisl") return Method::mwisl;
    if (name == "mwisl-diag") return Method::mwisl_diag;
    if (name == "mm-psl") return Method::mm_psl;
    if (name == "mm-psl-adaptive") return Method::mm_psl_adaptive;
    throw ConfigError("unknown method: " + name);
}

std::string method_name(Method method) {
    switch (method) {
        case Method::mwisl: return "mwisl";
        case Method::mwisl_diag: return "mwisl-diag";
        case Method::mm_psl: return "mm-psl";
        case Method::mm_psl_adaptive: return "mm-psl-adaptive";
    }
    throw ConfigError("unknown method enum value");
}

InitKind init_from_name(const std::string& name) {
    if (name == "random") return InitKind::random;
    if (name == "frank") return InitKind::frank;
    if (name == "golomb") return InitKind::golomb;
    if (name == "file") return InitKind::file;
    throw ConfigError("unknown init: " + name);
}

std::string init_name(InitKind init) {
    switch (init) {
        case InitKind::random: return "random";
        case InitKind::frank: return "frank";
        case InitKind::golomb: return "golomb";
        case InitKind::file: return "file";
    }
    throw ConfigError("unknown init enum value");
}

namespace {

bool is_wisl_method(Method m) {
    return m == Method::mwisl || m == Method::mwisl_diag;
}

void validate_config(const SolverConfig& cfg) {
    if (cfg.n < 2) {
        throw ConfigError("solver needs n >= 2");
    }
    if (cfg.max_iter < 1) {
        throw ConfigError("max_iter must be >= 1");
    }
    if (!(cfg.rel_tol > 0.0) || !std::isfinite(cfg.rel_tol)) {
        throw ConfigError("rel_tol must be positive");
    }
    if (cfg.abs_floor && (!(*cfg.abs_floor >= 0.0) ||
                          !std::isfinite(*cfg.abs_floor))) {
        throw ConfigError("abs_floor must be nonnegative");
    }
    if (is_wisl_method(cfg.method)) {
        if (cfg.weights.lags() + 1 != cfg.n) {
            throw ConfigError("weight count must be n-1");
        }
        if (!any_positive(cfg.weights)) {
            throw ConfigError("at least one weight must be positive");
        }
    }
    if (cfg.method == Method::mm_psl && !(cfg.p >= 2.0)) {
        throw ConfigError("p must be >= 2");
    }
    if (cfg.method == Method::mm_psl_adaptive) {
        if (cfg.p_schedule.empty()) {
            throw ConfigError("p_schedule must be nonempty");
        }
        double prev = 0.0;
        for (double p : cfg.p_schedule) {
            if (!(p >= 2.0) || p <= prev) {
                throw ConfigError("p_schedule must be >= 2 and strictly increasing");
            }
            prev = p;
        }
    }
    if (cfg.init == InitKind::frank && !perfect_square_root(cfg.n)) {
        throw ConfigError("frank init requires a perfect-square length");
    }
    if (cfg.init == InitKind::file && cfg.init_phases.size() != cfg.n) {
        throw ConfigError("init phases length must equal n");
    }
}

std::vector<cxd> initial_iterate(const SolverConfig& cfg) {
    switch (cfg.init) {
        case InitKind::random:
            return to_complex(random_unimodular(cfg.n, cfg.seed));
        case InitKind::frank:
            return to_complex(frank(*perfect_square_root(cfg.n)));
        case InitKind::golomb:
            return to_complex(golomb(cfg.n));
        case InitKind::file:
            return to_complex(make_sequence(cfg.init_phases));
    }
    throw ConfigError("unknown init enum value");
}

double rel_change(double prev, double curr) {
    return std::abs(curr - prev) / std::max(std::abs(prev), 1e-300);
}

double inf_distance(std::span<const cxd> a, std::span<const cxd> b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

struct StageControls {
    std::size_t max_iter;
    double rel_tol;
    std::optional<double> abs_floor;
};

using StepFn = std::function<StepResult(std::span<const cxd>)>;

// Plain MM iteration. The trace gains one row per iterate (index 0 = initial
// point); on budget exhaustion the final iterate's objective costs one extra
// correlation, which is excluded from the per-step transform counter.
std::vector<cxd> plain_stage(std::vector<cxd> x, const StepFn& step,
                             const ObjectiveFn& objective,
                             const StageControls& ctl, SpectrumWorkspace& ws,
                             clock_type::time_point t0,
                             ConvergenceRecord& rec) {
    std::vector<cxd> x_prev = x;
    bool have_prev_obj = false; // objective comparisons never cross stages
    double prev_obj = 0.0;
    for (std::size_t iter = 0; iter < ctl.max_iter; ++iter) {
        const std::uint64_t before = ws.transform_count();
        StepResult s = step(x);
        rec.transforms_in_steps += ws.transform_count() - before;
        ++rec.map_calls;
        rec.objective.push_back(s.objective);
        rec.cum_seconds.push_back(seconds_since(t0));
        rec.backtracks.push_back(0);

        if (ctl.abs_floor && s.objective <= *ctl.abs_floor) {
            rec.stop_reason = "floor";
            rec.final_step_inf_norm = iter == 0 ? 0.0 : inf_distance(x, x_prev);
            return x;
        }
        if (have_prev_obj && rel_change(prev_obj, s.objective) <= ctl.rel_tol) {
            rec.stop_reason = "rel_tol";
            rec.final_step_inf_norm = iter == 0 ? 0.0 : inf_distance(x, x_prev);
            return x;
        }
        prev_obj = s.objective;
        have_prev_obj = true;
        x_prev = std::move(x);
        x = std::move(s.next);
        ++rec.iterations;
    }
    rec.objective.push_back(objective(x));
    rec.cum_seconds.push_back(seconds_since(t0));
    rec.backtracks.push_back(0);
    rec.stop_reason = "max_iter";
    rec.final_step_inf_norm = inf_distance(x, x_prev);
    return x;
}

// Squared-extrapolation outer loop around the same step map.
std::vector<cxd> accelerated_stage(std::vector<cxd> x, const StepFn& step,
                                   const ObjectiveFn& objective,
                                   const StageControls& ctl,
                                   SpectrumWorkspace& ws,
                                   clock_type::time_point t0,
                                   ConvergenceRecord& rec) {
    IterationMap map = [&](std::span<const cxd> z) {
        const std::uint64_t before = ws.transform_count();
        StepResult s = step(z);
        rec.transforms_in_steps += ws.transform_count() - before;
        ++rec.map_calls;
        return std::move(s.next);
    };

    double f_x = objective(x);
    rec.objective.push_back(f_x);
    rec.cum_seconds.push_back(seconds_since(t0));
    rec.backtracks.push_back(0);

    std::vector<cxd> x_prev = x;
    for (std::size_t outer = 0; outer < ctl.max_iter; ++outer) {
        SquaremOutcome out = squarem_step(map, objective, x, f_x);
        rec.total_backtracks += static_cast<std::size_t>(out.backtracks);
        rec.fallbacks += out.fallback ? 1u : 0u;

        const double f_prev = f_x;
        x_prev = std::move(x);
        x = std::move(out.x);
        f_x = out.objective;
        ++rec.iterations;
        rec.objective.push_back(f_x);
        rec.cum_seconds.push_back(seconds_since(t0));
        rec.backtracks.push_back(out.backtracks);

        if (ctl.abs_floor && f_x <= *ctl.abs_floor) {
            rec.stop_reason = "floor";
            rec.final_step_inf_norm = inf_distance(x, x_prev);
            return x;
        }
        if (out.fixed_point) {
            rec.stop_reason = "fixed_point";
            rec.final_step_inf_norm = inf_distance(x, x_prev);
            return x;
        }
        if (rel_change(f_prev, f_x) <= ctl.rel_tol) {
            rec.stop_reason = "rel_tol";
            rec.final_step_inf_norm = inf_distance(x, x_prev);
            return x;
        }
    }
    rec.stop_reason = "max_iter";
    rec.final_step_inf_norm = inf_distance(x, x_prev);
    return x;
}

std::vector<cxd> run_stage(std::vector<cxd> x, const StepFn& step,
                           const ObjectiveFn& objective, bool accelerate,
                           const StageControls& ctl, SpectrumWorkspace& ws,
                           clock_type::time_point t0, ConvergenceRecord& rec) {
    return accelerate
               ? accelerated_stage(std::move(x), step, objective, ctl, ws, t0, rec)
               : plain_stage(std::move(x), step, objective, ctl, ws, t0, rec);
}

} // namespace

SolverOutput run_solver(const SolverConfig& cfg) {
    validate_config(cfg);
    const auto t0 = clock_type::now();

    SpectrumWorkspace ws(cfg.n);
    std::vector<cxd> x = initial_iterate(cfg);

    ConvergenceRecord rec;
    StageControls ctl{cfg.max_iter, cfg.rel_tol, cfg.abs_floor};

    switch (cfg.method) {
        case Method::mwisl: {
            const double lam = lambda_max_L(cfg.weights, cfg.n);
            StepFn step = [&](std::span<const cxd> z) {
                return mwisl_step(z, cfg.weights, lam, ws);
            };
            ObjectiveFn obj = [&](std::span<const cxd> z) {
                return wisl(autocorrelation(z, ws), cfg.weights);
            };
            x = run_stage(std::move(x), step, obj, cfg.accelerate, ctl, ws, t0, rec);
            break;
        }
        case Method::mwisl_diag: {
            const DiagPrecompute pre = precompute_diag(cfg.weights, cfg.n, ws);
            StepFn step = [&](std::span<const cxd> z) {
                return mwisl_diag_step(z, cfg.weights, pre, ws);
            };
            ObjectiveFn obj = [&](std::span<const cxd> z) {
                return wisl(autocorrelation(z, ws), cfg.weights);
            };
            x = run_stage(std::move(x), step, obj, cfg.accelerate, ctl, ws, t0, rec);
            break;
        }
        case Method::mm_psl: {
            StepFn step = [&](std::span<const cxd> z) {
                return mm_psl_step(z, cfg.p, ws);
            };
            ObjectiveFn obj = [&](std::span<const cxd> z) {
                return lp_metric(autocorrelation(z, ws), cfg.p);
            };
            x = run_stage(std::move(x), step, obj, cfg.accelerate, ctl, ws, t0, rec);
            break;
        }
        case Method::mm_psl_adaptive: {
            // Warm-started exponent ladder; stage tolerance 1e-5 / p on the
            // rooted objective, stage cap = max_iter, no floor.
            for (double p : cfg.p_schedule) {
                rec.p_segments.emplace_back(p, rec.objective.size());
                StepFn step = [&, p](std::span<const cxd> z) {
                    return mm_psl_step(z, p, ws);
                };
                ObjectiveFn obj = [&, p](std::span<const cxd> z) {
                    return lp_metric(autocorrelation(z, ws), p);
                };
                StageControls stage_ctl{cfg.max_iter, 1e-5 / p, std::nullopt};
                x = run_stage(std::move(x), step, obj, cfg.accelerate, stage_ctl,
                              ws, t0, rec);
            }
            break;
        }
    }

    rec.wall_seconds = seconds_since(t0);
    rec.transforms_total = ws.transform_count();
    return SolverOutput{phases_of(x), std::move(rec)};
}

} // namespace seqforge
