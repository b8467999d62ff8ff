#include "gfd/regparam.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace gfd {

namespace {

// Per-frequency quantities that do not depend on lambda. Bisection
// evaluates the residual dozens of times per selection; precomputing
// |OTF|^2 and the mismatch power keeps each probe a single pass.
struct ResidualTables {
    std::vector<double> otf_sq;
    std::vector<double> mismatch;  // |OTF*FuE - Fy|^2
    double n = 0.0;
};

ResidualTables build_tables(const DiscrepancyContext& ctx) {
    if (!ctx.Fy.same_shape(ctx.FuE) || !ctx.Fy.same_shape(ctx.otf))
        throw std::invalid_argument("residual_at: spectrum shape mismatch");
    ResidualTables t;
    std::size_t n = ctx.Fy.size();
    t.otf_sq.resize(n);
    t.mismatch.resize(n);
    t.n = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        t.otf_sq[i] = std::norm(ctx.otf[i]);
        t.mismatch[i] = std::norm(ctx.otf[i] * ctx.FuE[i] - ctx.Fy[i]);
    }
    return t;
}

double residual_from_tables(const ResidualTables& t, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("residual_at: lambda must be finite and positive");
    CompensatedSum acc;
    for (std::size_t i = 0; i < t.mismatch.size(); ++i) {
        double ratio = lambda / (t.otf_sq[i] + lambda);
        acc.add(ratio * ratio * t.mismatch[i]);
    }
    return acc.value() / t.n;
}

// Residual limit for lambda -> infinity: (1/n) sum |OTF FuE - Fy|^2,
// which is ||h * u_E - y||^2 by Parseval. Evaluated spectrally so the
// infinity decision and the bisection walk the same numbers.
double residual_limit(const ResidualTables& t) {
    CompensatedSum acc;
    for (double m : t.mismatch) acc.add(m);
    return acc.value() / t.n;
}

std::string bracket_message(const char* what, double lo, double hi, double r_lo,
                            double r_hi, double target) {
    std::ostringstream os;
    os << what << ": lo=" << lo << " (residual " << r_lo << "), hi=" << hi
       << " (residual " << r_hi << "), target " << target;
    return os.str();
}

}  // namespace

double compute_rho(const Image& y, const Kernel& h, const NoiseModel& noise) {
    double mean = image_mean(y);
    CompensatedSum acc;
    for (double v : y.pixels()) {
        double d = v - mean;
        acc.add(d * d);
    }
    double centered = acc.value();
    double n = static_cast<double>(y.size());
    double l1 = kernel_l1(h);
    double energy = sq_norm(y);
    if (l1 == 0.0 || energy == 0.0)
        throw std::invalid_argument("compute_rho: degenerate kernel or observation");

    double radicand = 1.0 - (centered - n * noise.sigma * noise.sigma) / (l1 * l1 * energy);
    radicand = std::clamp(radicand, 0.05 * 0.05, 1.0);
    return std::sqrt(radicand);
}

double residual_at(const DiscrepancyContext& ctx, double lambda) {
    return residual_from_tables(build_tables(ctx), lambda);
}

RegSelection select_lambda(const DiscrepancyContext& ctx) {
    if (!(ctx.sigma > 0.0))
        throw std::invalid_argument("select_lambda: sigma must be positive");

    ResidualTables tables = build_tables(ctx);
    double target = ctx.target();
    double limit = residual_limit(tables);
    if (limit <= target)
        return RegSelection{std::nullopt, limit, target, 0};

    double lo = 1e-10, hi = 1e10;
    double r_lo = residual_from_tables(tables, lo);
    double r_hi = residual_from_tables(tables, hi);
    for (int i = 0; i < 3 && r_lo > target; ++i) {
        lo /= 100.0;
        r_lo = residual_from_tables(tables, lo);
    }
    for (int i = 0; i < 3 && r_hi < target; ++i) {
        hi *= 100.0;
        r_hi = residual_from_tables(tables, hi);
    }
    if (r_lo > target || r_hi < target)
        throw BracketError(
            bracket_message("select_lambda: discrepancy root not bracketed",
                            lo, hi, r_lo, r_hi, target),
            lo, hi, r_lo, r_hi, target);

    const double rel_tol = 1e-3;
    const int max_steps = 200;
    for (int step = 1; step <= max_steps; ++step) {
        double mid = std::sqrt(lo * hi);
        double r = residual_from_tables(tables, mid);
        if (std::abs(r - target) <= rel_tol * target)
            return RegSelection{mid, r, target, step};
        if (r < target)
            lo = mid;
        else
            hi = mid;
    }
    throw BracketError(
        bracket_message("select_lambda: bisection did not converge", lo, hi,
                        residual_from_tables(tables, lo),
                        residual_from_tables(tables, hi), target),
        lo, hi, residual_from_tables(tables, lo),
        residual_from_tables(tables, hi), target);
}

}  // namespace gfd
