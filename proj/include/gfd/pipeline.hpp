#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gfd/guided_filter.hpp"
#include "gfd/image.hpp"
#include "gfd/psf.hpp"
#include "gfd/regparam.hpp"

namespace gfd {

struct RestorationParams {
    int w = 3;                  // guided filter window radius
    double epsilon = 7.5e-4;    // guided filter regularizer
    int max_iter = 30;
    double sigma = 0.0;         // noise std, [0,1] scale
    std::optional<double> rho_override;  // must lie in (0,1] when set

    // Starts from u_E = y instead of u_E = 0. Experimental; the stock
    // algorithm zero-initializes.
    bool warm_start = false;

    // Stops early when ||u_next - u||^2 / ||u||^2 < 1e-8. Off by default
    // so run times stay comparable across inputs.
    bool early_stop = false;

    void validate() const;
};

struct TraceRecord {
    int k = 0;
    std::optional<double> lambda;  // empty = the infinite-lambda branch
    double residual = 0.0;
    std::optional<double> isnr_db;
};

using RestorationTrace = std::vector<TraceRecord>;

// Optional per-iteration tap for tests and tooling; receives the two
// deblurred estimates and the filtered result of iteration k.
using IterationObserver =
    std::function<void(int k, const Image& u_I, const Image& u_p, const Image& u)>;

struct RestorationResult {
    Image restored;
    RestorationTrace trace;
};

// Full restoration loop: starting from u_E = 0, each iteration selects
// lambda by the discrepancy rule, solves the guidance and input deblur
// systems with that single lambda, fuses them with the guided filter,
// and feeds the result back as the next u_E. Runs exactly
// params.max_iter iterations unless early_stop triggers. reference, if
// given, only populates the trace isnr column.
RestorationResult deconvolve(const Image& y, const Kernel& h,
                             const RestorationParams& params,
                             const Image* reference = nullptr,
                             const IterationObserver& observer = {});

// CSV with header "iter,lambda,residual,isnr"; lambda writes "inf" for
// the infinite branch; isnr is empty when no reference was supplied.
void write_trace_csv(const RestorationTrace& trace, const std::string& path);
std::string trace_to_csv(const RestorationTrace& trace);

}  // namespace gfd
