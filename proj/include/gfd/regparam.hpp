#pragma once

#include <optional>

#include "gfd/errors.hpp"
#include "gfd/image.hpp"
#include "gfd/psf.hpp"
#include "gfd/spectral.hpp"

namespace gfd {

// Everything residual_at needs, frozen for one selection: spectra of the
// observation and the current estimate, the OTF, and the discrepancy
// target rho * n * sigma^2 (n = pixel count, sigma on [0,1] scale).
struct DiscrepancyContext {
    Spectrum Fy;
    Spectrum FuE;
    Spectrum otf;
    double sigma = 0.0;
    double rho = 1.0;

    std::size_t n_pixels() const { return Fy.size(); }
    double target() const {
        return rho * static_cast<double>(n_pixels()) * sigma * sigma;
    }
};

// Result of one lambda selection. lambda is empty when the current
// estimate already satisfies the discrepancy bound, i.e. the limit
// lambda -> infinity applies and the deblur step must pass u_E through.
struct RegSelection {
    std::optional<double> lambda;
    double residual = 0.0;
    double target = 0.0;
    int iterations = 0;
};

// Thrown when no bracket [lo, hi] with residual_at(lo) <= target <=
// residual_at(hi) can be established, or bisection fails to converge.
struct BracketError : NumericalError {
    BracketError(std::string msg, double lo, double hi, double r_lo, double r_hi,
                 double target)
        : NumericalError(std::move(msg)),
          lo(lo), hi(hi), r_lo(r_lo), r_hi(r_hi), target(target) {}

    double lo, hi, r_lo, r_hi, target;
};

// Fidelity weight for the discrepancy target:
//   rho = sqrt(1 - (||y - mean(y)||^2 - n sigma^2) / (||h||_1^2 ||y||^2))
// with the radicand clamped to [0.05^2, 1].
double compute_rho(const Image& y, const Kernel& h, const NoiseModel& noise);

// Spatial-domain residual ||h * u_p(lambda) - y||^2 evaluated spectrally:
//   (1/n) sum_i lambda^2 |OTF_i FuE_i - Fy_i|^2 / (|OTF_i|^2 + lambda)^2.
// Continuous and nondecreasing in lambda on (0, inf).
double residual_at(const DiscrepancyContext& ctx, double lambda);

// Solves residual_at(ctx, lambda) = ctx.target() by bisection on
// log(lambda), to 1e-3 relative accuracy on the residual. The initial
// bracket is [1e-10, 1e10]; each failing side is widened by a factor of
// 100 at most three times before BracketError. If the residual limit at
// lambda -> infinity (that is, ||h * u_E - y||^2) already meets the
// target, returns an empty lambda.
RegSelection select_lambda(const DiscrepancyContext& ctx);

}  // namespace gfd
