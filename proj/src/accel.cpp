#include "seqforge/accel.hpp"

#include <cmath>

namespace seqforge {

namespace {

double norm2(std::span<const cxd> v) {
    double acc = 0.0;
    for (const cxd& z : v) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

// Elementwise phase projection; zero entries keep the reference sample.
std::vector<cxd> project_phases(std::span<const cxd> y,
                                std::span<const cxd> reference) {
    std::vector<cxd> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double mag = std::abs(y[i]);
        out[i] = mag > 0.0 ? y[i] / mag : reference[i];
    }
    return out;
}

} // namespace

SquaremOutcome squarem_step(const IterationMap& map, const ObjectiveFn& objective,
                            std::span<const cxd> x, double objective_at_x,
                            const SquaremOptions& opts) {
    const std::size_t n = x.size();
    SquaremOutcome out;

    std::vector<cxd> x1 = map(x);
    out.map_calls = 1;

    std::vector<cxd> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = x1[i] - x[i];
    }
    const double dn = norm2(d);
    if (dn < opts.fixed_point_tol * std::sqrt(static_cast<double>(n))) {
        out.objective = objective(x1);
        out.x = std::move(x1);
        out.fixed_point = true;
        return out;
    }

    std::vector<cxd> x2 = map(x1);
    out.map_calls = 2;

    std::vector<cxd> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = x2[i] - x1[i] - d[i];
    }
    const double vn = norm2(v);
    if (vn == 0.0) {
        out.objective = objective(x2);
        out.x = std::move(x2);
        return out;
    }

    double alpha = -dn / vn;
    if (alpha > -1.0) {
        alpha = -1.0;
    }

    std::vector<cxd> y(n);
    for (int halvings = 0;; ++halvings) {
        if (halvings > opts.max_backtracks) {
            // Safety valve; the plain double step is always a descent step.
            out.objective = objective(x2);
            out.x = std::move(x2);
            out.backtracks = opts.max_backtracks;
            out.fallback = true;
            return out;
        }
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = x[i] - 2.0 * alpha * d[i] + (alpha * alpha) * v[i];
        }
        std::vector<cxd> candidate = project_phases(y, x);
        const double fc = objective(candidate);
        if (fc <= objective_at_x) {
            out.objective = fc;
            out.x = std::move(candidate);
            out.backtracks = halvings;
            return out;
        }
        alpha = (alpha - 1.0) / 2.0;
    }
}

} // namespace seqforge
